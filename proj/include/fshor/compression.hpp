#pragma once

#include "fshor/numtheory.hpp"

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace fshor {

/// The classical relabelling a^x mod N -> x mod r for one base.
class CompressionMap {
public:
    CompressionMap(u64 N, u64 a);

    u64 modulus() const { return N_; }
    u64 base() const { return a_; }
    u64 order() const { return r_; }
    /// r = 2^l
    unsigned exponent() const { return l_; }

    /// Entry x is a^x mod N, for 0 <= x < r.
    const std::vector<u64>& power_table() const { return power_table_; }

    /// a^x mod N -> x mod r. Throws ContractError for values outside the orbit of a.
    u64 compress(u64 value) const;

private:
    u64 N_;
    u64 a_;
    u64 r_ = 0;
    unsigned l_ = 0;
    std::vector<u64> power_table_;
    std::unordered_map<u64, u64> index_;
};

CompressionMap build_compression_map(const FermatProduct& fp, u64 a);

/// Which of the four compressed circuits a base needs: l CNOTs copying the l
/// least-significant first-register qubits.
struct CircuitClass {
    unsigned l = 0;
    /// 'a'..'d' for l = 1..4; absent for larger l.
    std::optional<char> figure_label;
};

CircuitClass circuit_class(const CompressionMap& map);

/// Every coprime base 1 < a < N bucketed by log2 of its order; buckets ascending.
std::map<unsigned, std::vector<u64>> table_assignments(const FermatProduct& fp);

/// a^(r/2) = -1 mod N: the classical post-processing only finds trivial divisors.
bool is_trivial_failure_base(const FermatProduct& fp, u64 a);

}  // namespace fshor
