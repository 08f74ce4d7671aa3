#include "fshor/numtheory.hpp"

#include "fshor/random.hpp"

#include <algorithm>
#include <string>

namespace fshor {

u64 gcd(u64 a, u64 b) {
    while (b != 0) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

u64 mul_mod(u64 a, u64 b, u64 N) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % N);
}

u64 mod_pow(u64 a, u64 x, u64 N) {
    if (N < 2) throw ContractError("mod_pow: modulus must be >= 2");
    u64 result = 1;
    a %= N;
    while (x > 0) {
        if (x & 1u) result = mul_mod(result, a, N);
        a = mul_mod(a, a, N);
        x >>= 1;
    }
    return result;
}

u64 mod_inverse(u64 a, u64 N) {
    // extended Euclid on signed 128-bit to keep the Bezout coefficients exact
    __int128 t = 0, new_t = 1;
    __int128 r = N, new_r = a % N;
    while (new_r != 0) {
        const __int128 q = r / new_r;
        std::swap(t, new_t);
        new_t -= q * t;
        std::swap(r, new_r);
        new_r -= q * r;
    }
    if (r != 1) throw ContractError("mod_inverse: argument not invertible");
    if (t < 0) t += N;
    return static_cast<u64>(t);
}

unsigned floor_log2(u64 v) {
    if (v == 0) throw ContractError("floor_log2 of zero");
    return 63u - static_cast<unsigned>(__builtin_clzll(v));
}

unsigned bit_count(u64 N) {
    if (N < 2) throw ContractError("bit_count: N must be >= 2");
    return is_power_of_two(N) ? floor_log2(N) : floor_log2(N) + 1;
}

u64 totient_semiprime(u64 p, u64 p_prime) {
    if (p < 2 || p_prime < 2) throw ContractError("totient_semiprime: primes must be >= 2");
    return (p - 1) * (p_prime - 1);
}

u64 totient_bruteforce(u64 N) {
    if (N < 2) throw ContractError("totient_bruteforce: N must be >= 2");
    if (N > kExhaustiveLimit) throw ContractError("totient_bruteforce: N exceeds exhaustive limit");
    u64 count = 0;
    for (u64 a = 1; a < N; ++a)
        if (gcd(a, N) == 1) ++count;
    return count;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e > 0) out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

namespace {

u64 totient_from_factors(u64 N) {
    u64 phi = N;
    for (const auto& [q, e] : factorize(N)) phi = phi / q * (q - 1);
    return phi;
}

// phi(N) and its factorisation, shared across many order computations mod N.
struct OrderContext {
    u64 N;
    u64 phi;
    std::vector<std::pair<u64, u64>> prime_powers;  // (q, q^e)

    explicit OrderContext(u64 modulus) : N(modulus), phi(totient_from_factors(modulus)) {
        for (const auto& [q, e] : factorize(phi)) {
            u64 q_e = 1;
            for (unsigned i = 0; i < e; ++i) q_e *= q;
            prime_powers.emplace_back(q, q_e);
        }
    }

    u64 order(u64 a) const {
        a %= N;
        if (gcd(a, N) != 1) throw ContractError("multiplicative_order: base not coprime to modulus");
        u64 r = 1;
        for (const auto& [q, q_e] : prime_powers) {
            // the q-part of the order is the order of a^(phi / q^e)
            u64 y = mod_pow(a, phi / q_e, N);
            while (y != 1) {
                y = mod_pow(y, q, N);
                r *= q;
            }
        }
        return r;
    }
};

}  // namespace

u64 multiplicative_order(u64 a, u64 N) {
    if (N < 2) throw ContractError("multiplicative_order: N must be >= 2");
    return OrderContext(N).order(a);
}

u64 fermat_number(unsigned k) {
    if (k > 4) throw ContractError("fermat_number: only k in [0, 4] gives a known Fermat prime");
    return (u64{1} << (u64{1} << k)) + 1;
}

LmaxResult compute_l_max(u64 N, const LmaxMode& mode) {
    if (N < 3) throw ContractError("compute_l_max: N must be >= 3");
    LmaxResult result;
    const OrderContext ctx(N);
    auto visit_base = [&](u64 a) {
        const u64 r = ctx.order(a);
        if (!is_power_of_two(r))
            throw std::domain_error("order of " + std::to_string(a) + " mod " + std::to_string(N) +
                                    " is " + std::to_string(r) + ", not a power of two");
        result.l_max = std::max(result.l_max, floor_log2(r));
        ++result.bases_scanned;
    };
    if (std::holds_alternative<ExhaustiveScan>(mode)) {
        if (N > kExhaustiveLimit) throw ContractError("compute_l_max: exhaustive scan above limit");
        for (u64 a = 2; a < N; ++a)
            if (gcd(a, N) == 1) visit_base(a);
        result.exact = true;
    } else {
        const auto& sampled = std::get<SampledScan>(mode);
        Rng rng(sampled.seed);
        while (result.bases_scanned < sampled.count) {
            const u64 a = 2 + uniform_below(rng, N - 2);
            if (gcd(a, N) == 1) visit_base(a);
        }
        result.exact = false;
    }
    return result;
}

FermatProduct make_fermat_product(unsigned k, unsigned k_prime) {
    if (k == k_prime) throw ContractError("make_fermat_product: indices must differ");
    if (k > k_prime) std::swap(k, k_prime);
    FermatProduct fp;
    fp.k = k;
    fp.k_prime = k_prime;
    fp.p = fermat_number(k);
    fp.p_prime = fermat_number(k_prime);
    fp.N = fp.p * fp.p_prime;
    fp.phi = totient_semiprime(fp.p, fp.p_prime);
    fp.b = bit_count(fp.N);
    const LmaxResult lm = fp.N <= kExhaustiveLimit
                              ? compute_l_max(fp.N, ExhaustiveScan{})
                              : compute_l_max(fp.N, SampledScan{4096, 0x51f3a5});
    fp.l_max = lm.l_max;
    fp.l_max_exact = lm.exact;
    return fp;
}

const std::vector<FermatProduct>& fermat_products() {
    static const std::vector<FermatProduct> products = [] {
        std::vector<FermatProduct> out;
        for (unsigned k = 0; k < 5; ++k)
            for (unsigned kp = k + 1; kp < 5; ++kp) out.push_back(make_fermat_product(k, kp));
        std::sort(out.begin(), out.end(),
                  [](const FermatProduct& x, const FermatProduct& y) { return x.N < y.N; });
        return out;
    }();
    return products;
}

std::optional<FermatProduct> find_fermat_product(u64 N) {
    for (const auto& fp : fermat_products())
        if (fp.N == N) return fp;
    return std::nullopt;
}

const FermatProduct& require_fermat_product(u64 N) {
    for (const auto& fp : fermat_products())
        if (fp.N == N) return fp;
    throw ContractError(std::to_string(N) + " is not a product of two distinct Fermat primes");
}

Fraction reduce_fraction(u64 x, u64 denom) {
    if (!is_power_of_two(denom)) throw ContractError("reduce_fraction: denominator must be a power of two");
    if (x >= denom) throw ContractError("reduce_fraction: numerator must be below denominator");
    if (x == 0) return {0, 1};
    const u64 g = gcd(x, denom);
    return {x / g, denom / g};
}

std::vector<Fraction> convergents(u64 x, u64 denom) {
    if (denom == 0) throw ContractError("convergents: zero denominator");
    if (x >= denom) throw ContractError("convergents: numerator must be below denominator");
    std::vector<Fraction> out;
    // h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1
    u64 h_prev = 1, h_prev2 = 0;
    u64 k_prev = 0, k_prev2 = 1;
    u64 num = x, den = denom;
    while (true) {
        const u64 a = num / den;
        const u64 h = a * h_prev + h_prev2;
        const u64 k = a * k_prev + k_prev2;
        out.push_back({h, k});
        const u64 rem = num % den;
        if (rem == 0) break;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        num = den;
        den = rem;
    }
    return out;
}

}  // namespace fshor
