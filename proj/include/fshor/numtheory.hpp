#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace fshor {

using u64 = std::uint64_t;

/// Exhaustive scans over [1, N) refuse to run above this modulus.
inline constexpr u64 kExhaustiveLimit = 10'000'000;

/// Raised when a precondition on an argument is violated (non-coprime base,
/// out-of-family modulus, exhaustive guard exceeded, ...).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// j / r in lowest terms (x = 0 is represented as 0 / 1).
struct Fraction {
    u64 numerator = 0;
    u64 denominator = 1;

    friend bool operator==(const Fraction&, const Fraction&) = default;
};

u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);

/// (a * b) mod N through a 128-bit intermediate.
u64 mul_mod(u64 a, u64 b, u64 N);

/// a^x mod N by square-and-multiply. Requires N >= 2.
u64 mod_pow(u64 a, u64 x, u64 N);

/// Inverse of a modulo N; requires gcd(a, N) = 1.
u64 mod_inverse(u64 a, u64 N);

constexpr bool is_power_of_two(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

/// floor(log2 v) for v > 0.
unsigned floor_log2(u64 v);

/// Number of bits needed to write N, i.e. ceil(log2 N) for N not a power of two.
unsigned bit_count(u64 N);

/// (p - 1)(p' - 1); primality of the arguments is the caller's business.
u64 totient_semiprime(u64 p, u64 p_prime);

/// Counts 1 <= a < N with gcd(a, N) = 1 by linear scan. Guarded to N <= kExhaustiveLimit.
u64 totient_bruteforce(u64 N);

/// Prime factorisation by trial division, ascending primes with multiplicity.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// Smallest r > 0 with a^r = 1 mod N.
///
/// Works for any modulus: phi(N) is factored and each prime-power component of
/// the order is recovered separately, so nothing here assumes the order is a
/// power of two.
u64 multiplicative_order(u64 a, u64 N);

/// p_k = 2^(2^k) + 1 for k in [0, 4].
u64 fermat_number(unsigned k);

/// N = p_k * p_k' together with the quantities the circuits are sized from.
struct FermatProduct {
    u64 N = 0;
    unsigned k = 0;
    unsigned k_prime = 0;
    u64 p = 0;
    u64 p_prime = 0;
    u64 phi = 0;
    unsigned b = 0;
    unsigned l_max = 0;
    /// False when l_max came from a sampled scan and is only a lower bound.
    bool l_max_exact = false;

    /// 2^k + 2^k' - 1, the upper bound on l_max implied by r | phi / 2.
    unsigned l_max_bound() const { return (1u << k) + (1u << k_prime) - 1; }
};

struct ExhaustiveScan {};
struct SampledScan {
    u64 count = 1000;
    u64 seed = 0;
};
using LmaxMode = std::variant<ExhaustiveScan, SampledScan>;

struct LmaxResult {
    unsigned l_max = 0;
    bool exact = false;
    u64 bases_scanned = 0;
};

/// Largest log2(order) over coprime bases 1 < a < N. Throws std::domain_error if
/// a base with a non-power-of-two order is encountered.
LmaxResult compute_l_max(u64 N, const LmaxMode& mode);

/// Builds the product for k != k' (either order), computing l_max exhaustively
/// when N <= kExhaustiveLimit and by a seeded 4096-base sample otherwise.
FermatProduct make_fermat_product(unsigned k, unsigned k_prime);

/// All ten products, ascending. Computed once and cached.
const std::vector<FermatProduct>& fermat_products();

std::optional<FermatProduct> find_fermat_product(u64 N);

/// Same as find_fermat_product but throws ContractError for out-of-family N.
const FermatProduct& require_fermat_product(u64 N);

/// x / denom in lowest terms; denom must be a power of two and x < denom.
Fraction reduce_fraction(u64 x, u64 denom);

/// Continued-fraction convergents of x / denom, in order.
std::vector<Fraction> convergents(u64 x, u64 denom);

}  // namespace fshor
