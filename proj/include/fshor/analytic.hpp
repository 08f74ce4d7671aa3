#pragma once

#include "fshor/numtheory.hpp"

#include <vector>

namespace fshor {

/// Closed-form first-register distribution for an order r = 2^l measured with
/// n qubits, where exactly A = 2^n / r values of x share each value of a^x mod N.
struct AnalyticDistribution {
    unsigned n = 0;
    u64 r = 0;
    u64 A = 0;
    std::vector<double> probabilities;
};

/// sin^2(pi r x A / 2^n) / (2^n A sin^2(pi r x / 2^n)), with the removable
/// singularity at r x = 0 mod 2^n filled by its limit 1/r. Throws ContractError
/// unless r is a power of two no larger than 2^n.
double prob_x(u64 x, u64 r, unsigned n);

/// x = j 2^(n-l) for j = 0..r-1.
std::vector<u64> peak_positions(u64 r, unsigned n);

AnalyticDistribution analytic_distribution(u64 r, unsigned n);

}  // namespace fshor
