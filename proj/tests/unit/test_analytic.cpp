#include "fshor/analytic.hpp"

#include "fshor/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace fshor;

namespace {

// |sum_{j<A} exp(2 pi i x r j / 2^n)|^2 / (2^n A), the sum the closed form comes from.
double prob_by_direct_sum(u64 x, u64 r, unsigned n) {
    const u64 two_n = u64{1} << n;
    const u64 A = two_n / r;
    std::complex<double> s{0, 0};
    for (u64 j = 0; j < A; ++j)
        s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>((x * r * j) % two_n) / two_n);
    return std::norm(s) / (static_cast<double>(two_n) * static_cast<double>(A));
}

}  // namespace

TEST_CASE("prob_x examples") {
    CHECK(prob_x(0, 4, 4) == 0.25);
    CHECK(prob_x(4, 4, 4) == 0.25);
    CHECK(prob_x(3, 4, 4) == 0.0);
    CHECK_THROWS_AS(prob_x(0, 3, 4), ContractError);
    CHECK_THROWS_AS(prob_x(0, 32, 4), ContractError);
    CHECK_THROWS_AS(prob_x(16, 4, 4), ContractError);
}

TEST_CASE("prob_x agrees with the direct geometric sum") {
    for (unsigned n = 1; n <= 8; ++n)
        for (u64 r = 1; r <= (u64{1} << n); r <<= 1)
            for (u64 x = 0; x < (u64{1} << n); ++x) CHECK(std::abs(prob_x(x, r, n) - prob_by_direct_sum(x, r, n)) < 1e-12);
}

TEST_CASE("peak positions") {
    CHECK(peak_positions(2, 4) == std::vector<u64>{0, 8});
    std::vector<u64> all(16);
    for (u64 i = 0; i < 16; ++i) all[i] = i;
    CHECK(peak_positions(16, 4) == all);
    CHECK(peak_positions(1, 4) == std::vector<u64>{0});
}

TEST_CASE("analytic distribution") {
    const auto d8 = analytic_distribution(8, 4);
    CHECK(d8.A == 2);
    for (u64 x = 0; x < 16; ++x) CHECK(d8.probabilities[x] == (x % 2 == 0 ? 0.125 : 0.0));

    const auto d4 = analytic_distribution(4, 4);
    const std::vector<double> expected{0.25, 0, 0, 0, 0.25, 0, 0, 0, 0.25, 0, 0, 0, 0.25, 0, 0, 0};
    CHECK(d4.probabilities == expected);

    for (unsigned n = 1; n <= 8; ++n) {
        for (u64 r = 1; r <= (u64{1} << n); r <<= 1) {
            const auto d = analytic_distribution(r, n);
            double sum = 0.0, on_peaks = 0.0;
            for (double p : d.probabilities) sum += p;
            for (u64 x : peak_positions(r, n)) {
                CHECK(d.probabilities[x] == 1.0 / static_cast<double>(r));
                on_peaks += d.probabilities[x];
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
            CHECK(std::abs(on_peaks - 1.0) < 1e-12);
            CHECK(on_peaks > 4 / (std::numbers::pi * std::numbers::pi));
            CHECK(sum - on_peaks < 1e-14);
        }
    }
}

TEST_CASE("simulated compressed circuits match the closed form") {
    for (u64 N : {51u, 85u}) {
        const auto& fp = require_fermat_product(N);
        for (u64 a = 2; a < N; ++a) {
            if (gcd(a, N) != 1) continue;
            const auto sim = simulate(build_compressed_circuit(fp, a)).first_register_distribution();
            const auto ana = analytic_distribution(multiplicative_order(a, N), 4);
            for (std::size_t x = 0; x < sim.size(); ++x) CHECK(std::abs(sim[x] - ana.probabilities[x]) < 1e-10);
        }
    }
}
