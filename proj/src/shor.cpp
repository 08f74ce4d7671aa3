#include "fshor/shor.hpp"

#include "fshor/random.hpp"
#include "fshor/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace fshor {

std::string to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::trivial_minus_one: return "trivial_minus_one";
        case FailureKind::order_extraction_failed: return "order_extraction_failed";
    }
    return "unknown";
}

std::string to_string(SamplingMode mode) { return mode == SamplingMode::exact ? "exact" : "sampled"; }

SamplingMode parse_sampling_mode(const std::string& text) {
    if (text == "exact") return SamplingMode::exact;
    if (text == "sampled") return SamplingMode::sampled;
    throw ContractError("unknown sampling mode '" + text + "'");
}

BaseChoice classify_base(const FermatProduct& fp, u64 a) {
    if (a <= 1 || a >= fp.N) throw ContractError("base must satisfy 1 < a < N");
    const u64 g = gcd(a, fp.N);
    if (g > 1) return LuckyGcd{g};
    return a;
}

namespace {

u64 draw_base(const FermatProduct& fp, u64 seed) {
    Rng rng(mix_seed(seed, 0));
    return 2 + uniform_below(rng, fp.N - 2);
}

}  // namespace

BaseChoice choose_base(const FermatProduct& fp, u64 seed) { return classify_base(fp, draw_base(fp, seed)); }

OrderResult extract_order(std::span<const u64> samples, unsigned n, u64 a, u64 N) {
    OrderResult res;
    res.a = a;
    res.samples.assign(samples.begin(), samples.end());
    res.attempts = 1;
    const u64 two_n = u64{1} << n;
    u64 rejected_lcm = 1;
    for (const u64 x : samples) {
        if (x == 0 || x >= two_n) continue;
        const Fraction f = reduce_fraction(x, two_n);
        const u64 candidate = f.denominator;
        if (mod_pow(a, candidate, N) == 1) {
            res.order = candidate;
            res.status = OrderStatus::ok;
            return res;
        }
        rejected_lcm = lcm(rejected_lcm, candidate);
        if (rejected_lcm > 1 && mod_pow(a, rejected_lcm, N) == 1) {
            res.order = rejected_lcm;
            res.status = OrderStatus::ok;
            return res;
        }
    }
    res.status = OrderStatus::exhausted_retries;
    return res;
}

Outcome postprocess(const FermatProduct& fp, u64 a, u64 r) {
    if (r == 0 || r % 2 != 0) throw ContractError("postprocess: order must be even");
    if (mod_pow(a, r, fp.N) != 1) throw ContractError("postprocess: a^r != 1 mod N");
    const u64 s = mod_pow(a, r / 2, fp.N);
    if (s == fp.N - 1) return Failure{FailureKind::trivial_minus_one};
    const u64 d1 = gcd((s + fp.N - 1) % fp.N, fp.N);
    const u64 d2 = gcd(s + 1, fp.N);
    // s != +-1 because r is the order and s != -1, so both divisors are proper
    if (d1 <= 1 || d2 <= 1 || d1 * d2 != fp.N) throw std::logic_error("postprocess: gcd step produced trivial divisors");
    return Factors{std::min(d1, d2), std::max(d1, d2)};
}

namespace {

std::vector<u64> exact_support(const std::vector<double>& dist) {
    std::vector<u64> xs;
    for (u64 x = 1; x < dist.size(); ++x)
        if (dist[x] > 1e-12) xs.push_back(x);
    // weights equal up to rounding tie, so the ascending x order decides
    auto weight = [&](u64 x) { return std::llround(dist[x] * 1e9); };
    std::stable_sort(xs.begin(), xs.end(), [&](u64 l, u64 r) { return weight(l) > weight(r); });
    return xs;
}

}  // namespace

RunRecord factor(const FermatProduct& fp, const FactorConfig& config) {
    RunRecord rec;
    rec.N = fp.N;
    rec.seed = config.seed;

    rec.a = config.base_override ? *config.base_override : draw_base(fp, config.seed);
    const BaseChoice choice = classify_base(fp, rec.a);
    if (const auto* lucky = std::get_if<LuckyGcd>(&choice)) {
        rec.outcome = *lucky;
        return rec;
    }

    const Circuit circuit = build_compressed_circuit(fp, rec.a);
    const unsigned n = circuit.layout.n;
    const std::vector<double> dist = simulate(circuit).first_register_distribution();

    OrderResult order;
    if (config.mode == SamplingMode::exact) {
        const auto support = exact_support(dist);
        order = extract_order(support, n, rec.a, fp.N);
    } else {
        if (config.max_attempts == 0 || config.shots == 0)
            throw ContractError("factor: shots and max_attempts must be positive");
        std::vector<u64> drawn;
        for (unsigned attempt = 1; attempt <= config.max_attempts; ++attempt) {
            const auto batch = sample(dist, mix_seed(config.seed, attempt), config.shots);
            drawn.insert(drawn.end(), batch.begin(), batch.end());
            order = extract_order(drawn, n, rec.a, fp.N);
            order.attempts = attempt;
            if (order.status == OrderStatus::ok) break;
        }
    }
    rec.order_result = order;

    if (order.status != OrderStatus::ok) {
        rec.outcome = Failure{FailureKind::order_extraction_failed};
        return rec;
    }
    rec.outcome = postprocess(fp, rec.a, *order.order);
    return rec;
}

CoherenceReport verify_coherence(const FermatProduct& fp, u64 a, bool dephased) {
    const Circuit circuit = build_verification_circuit(fp, a);
    CoherenceReport rep;
    rep.N = fp.N;
    rep.a = a;
    rep.r = multiplicative_order(a, fp.N);
    rep.dephased = dephased;
    rep.distribution = dephased ? dephased_first_register_distribution(circuit)
                                : simulate(circuit).first_register_distribution();
    rep.p_zero = rep.distribution.at(0);
    rep.pass = std::abs(rep.p_zero - 1.0) < 1e-10;
    return rep;
}

nlohmann::ordered_json to_json(const RunRecord& record) {
    nlohmann::ordered_json j;
    j["N"] = record.N;
    j["base"] = record.a;
    const auto& order = record.order_result;
    if (order && order->order)
        j["order"] = *order->order;
    else
        j["order"] = nullptr;
    j["samples"] = order ? order->samples : std::vector<u64>{};
    if (const auto* f = std::get_if<Factors>(&record.outcome)) {
        j["factors"] = {f->p, f->q};
    } else if (const auto* l = std::get_if<LuckyGcd>(&record.outcome)) {
        j["factors"] = {std::min(l->divisor, record.N / l->divisor), std::max(l->divisor, record.N / l->divisor)};
        j["lucky_gcd"] = l->divisor;
    } else {
        j["failure"] = to_string(std::get<Failure>(record.outcome).kind);
    }
    j["attempts"] = order ? order->attempts : 0u;
    j["seed"] = record.seed;
    return j;
}

nlohmann::ordered_json to_json(const CoherenceReport& report) {
    nlohmann::ordered_json j;
    j["N"] = report.N;
    j["base"] = report.a;
    j["order"] = report.r;
    j["dephased"] = report.dephased;
    j["p_zero"] = report.p_zero;
    j["pass"] = report.pass;
    j["distribution"] = report.distribution;
    return j;
}

}  // namespace fshor
