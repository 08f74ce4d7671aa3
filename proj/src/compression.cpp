#include "fshor/compression.hpp"

#include <string>

namespace fshor {

CompressionMap::CompressionMap(u64 N, u64 a) : N_(N), a_(a) {
    if (a <= 1 || a >= N) throw ContractError("compression map: base must satisfy 1 < a < N");
    if (gcd(a, N) != 1) throw ContractError("compression map: base " + std::to_string(a) + " shares a factor with N");
    r_ = multiplicative_order(a, N);
    if (!is_power_of_two(r_))
        throw std::domain_error("compression map: order " + std::to_string(r_) + " is not a power of two");
    l_ = floor_log2(r_);
    power_table_.reserve(r_);
    index_.reserve(r_);
    u64 value = 1;
    for (u64 x = 0; x < r_; ++x) {
        power_table_.push_back(value);
        index_.emplace(value, x);
        value = mul_mod(value, a, N);
    }
}

u64 CompressionMap::compress(u64 value) const {
    const auto it = index_.find(value);
    if (it == index_.end())
        throw ContractError("compression map: " + std::to_string(value) + " is not a power of the base");
    return it->second;
}

CompressionMap build_compression_map(const FermatProduct& fp, u64 a) { return CompressionMap(fp.N, a); }

CircuitClass circuit_class(const CompressionMap& map) {
    CircuitClass cls;
    cls.l = map.exponent();
    if (cls.l >= 1 && cls.l <= 4) cls.figure_label = static_cast<char>('a' + cls.l - 1);
    return cls;
}

std::map<unsigned, std::vector<u64>> table_assignments(const FermatProduct& fp) {
    if (fp.N > kExhaustiveLimit) throw ContractError("table_assignments: N exceeds exhaustive limit");
    std::map<unsigned, std::vector<u64>> buckets;
    for (u64 a = 2; a < fp.N; ++a) {
        if (gcd(a, fp.N) != 1) continue;
        const u64 r = multiplicative_order(a, fp.N);
        if (!is_power_of_two(r))
            throw std::domain_error("table_assignments: order of " + std::to_string(a) + " is not a power of two");
        buckets[floor_log2(r)].push_back(a);
    }
    return buckets;
}

bool is_trivial_failure_base(const FermatProduct& fp, u64 a) {
    if (gcd(a, fp.N) != 1) throw ContractError("is_trivial_failure_base: base not coprime to N");
    const u64 r = multiplicative_order(a, fp.N);
    if (r % 2 != 0) return false;
    return mod_pow(a, r / 2, fp.N) == fp.N - 1;
}

}  // namespace fshor
