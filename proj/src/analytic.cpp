#include "fshor/analytic.hpp"

#include <cmath>
#include <numbers>

namespace fshor {

namespace {

void check_domain(u64 r, unsigned n) {
    if (n < 1 || n > 62) throw ContractError("analytic: register size out of range");
    if (!is_power_of_two(r)) throw ContractError("analytic: order must be a power of two");
    if (r > (u64{1} << n)) throw ContractError("analytic: order exceeds 2^n");
}

// sin(pi * num / den) with num reduced mod den first, so integer multiples of pi give exactly 0.
// Only ever squared, so the sign flip from dropping odd multiples of pi is harmless.
double sin_pi_ratio(unsigned __int128 num, u64 den) {
    const u64 reduced = static_cast<u64>(num % den);
    return std::sin(std::numbers::pi * static_cast<double>(reduced) / static_cast<double>(den));
}

}  // namespace

double prob_x(u64 x, u64 r, unsigned n) {
    check_domain(r, n);
    const u64 two_n = u64{1} << n;
    if (x >= two_n) throw ContractError("analytic: outcome out of range");
    const u64 A = two_n / r;
    const unsigned __int128 rx = static_cast<unsigned __int128>(r) * x;
    if (rx % two_n == 0) return 1.0 / static_cast<double>(r);
    const double num = sin_pi_ratio(rx * A, two_n);
    const double den = sin_pi_ratio(rx, two_n);
    return (num * num) / (static_cast<double>(two_n) * static_cast<double>(A) * den * den);
}

std::vector<u64> peak_positions(u64 r, unsigned n) {
    check_domain(r, n);
    const u64 spacing = (u64{1} << n) / r;
    std::vector<u64> peaks;
    peaks.reserve(r);
    for (u64 j = 0; j < r; ++j) peaks.push_back(j * spacing);
    return peaks;
}

AnalyticDistribution analytic_distribution(u64 r, unsigned n) {
    check_domain(r, n);
    if (n > 30) throw ContractError("analytic: distribution too large to tabulate");
    AnalyticDistribution d;
    d.n = n;
    d.r = r;
    d.A = (u64{1} << n) / r;
    d.probabilities.resize(u64{1} << n);
    for (u64 x = 0; x < d.probabilities.size(); ++x) d.probabilities[x] = prob_x(x, r, n);
    return d;
}

}  // namespace fshor
