#pragma once

#include "fshor/numtheory.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fshor {

enum class OrderStatus { ok, exhausted_retries };

struct OrderResult {
    u64 a = 0;
    std::vector<u64> samples;
    std::optional<u64> order;
    unsigned attempts = 0;
    OrderStatus status = OrderStatus::exhausted_retries;
};

enum class FailureKind { trivial_minus_one, order_extraction_failed };

struct Factors {
    u64 p = 0;
    u64 q = 0;
    friend bool operator==(const Factors&, const Factors&) = default;
};

struct Failure {
    FailureKind kind;
    friend bool operator==(const Failure&, const Failure&) = default;
};

/// The candidate base shared a factor with N; no quantum step was needed.
struct LuckyGcd {
    u64 divisor = 0;
    friend bool operator==(const LuckyGcd&, const LuckyGcd&) = default;
};

using Outcome = std::variant<Factors, Failure, LuckyGcd>;
using BaseChoice = std::variant<u64, LuckyGcd>;

enum class SamplingMode { exact, sampled };

struct FactorConfig {
    u64 seed = 0;
    unsigned shots = 16;
    unsigned max_attempts = 32;
    SamplingMode mode = SamplingMode::sampled;
    std::optional<u64> base_override;
};

struct RunRecord {
    u64 N = 0;
    u64 a = 0;
    u64 seed = 0;
    std::optional<OrderResult> order_result;
    Outcome outcome = Failure{FailureKind::order_extraction_failed};

    bool succeeded() const { return !std::holds_alternative<Failure>(outcome); }
};

struct CoherenceReport {
    u64 N = 0;
    u64 a = 0;
    u64 r = 0;
    bool dephased = false;
    double p_zero = 0.0;
    bool pass = false;
    std::vector<double> distribution;
};

std::string to_string(FailureKind kind);
std::string to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(const std::string& text);

/// Seeded-uniform a in (1, N). A base sharing a factor with N is returned as a LuckyGcd.
BaseChoice choose_base(const FermatProduct& fp, u64 seed);

/// Classifies a base the caller picked: LuckyGcd when gcd(a, N) > 1, otherwise a itself.
BaseChoice classify_base(const FermatProduct& fp, u64 a);

/// Reads order candidates off first-register outcomes.
///
/// Each nonzero x is reduced to j / r' in lowest terms; the first r' with
/// a^r' = 1 mod N is accepted. Rejected candidates are folded into a running
/// least common multiple, which is accepted as soon as it verifies, so a run
/// of outcomes whose j shared a factor with r still recovers r. x = 0 yields
/// no candidate. attempts is left at 1.
OrderResult extract_order(std::span<const u64> samples, unsigned n, u64 a, u64 N);

/// Turns a verified even order into factors via gcd(a^(r/2) +- 1, N), or reports
/// the a^(r/2) = -1 case. Throws ContractError for odd or unverified r.
Outcome postprocess(const FermatProduct& fp, u64 a, u64 r);

/// End-to-end run on the compressed circuit.
///
/// Exact mode uses the full simulated distribution: its nonzero-x support,
/// heaviest first (ties by ascending x), stands in for the sample list.
/// Sampled mode draws `shots` fresh outcomes per attempt and re-runs
/// extraction on everything drawn so far, up to max_attempts attempts.
RunRecord factor(const FermatProduct& fp, const FactorConfig& config);

/// Runs the |+>-input circuit and reports P(first register = 0). With `dephased`
/// set, the modexp CNOTs are replaced by dephasing on their controls.
CoherenceReport verify_coherence(const FermatProduct& fp, u64 a, bool dephased = false);

nlohmann::ordered_json to_json(const RunRecord& record);
nlohmann::ordered_json to_json(const CoherenceReport& report);

}  // namespace fshor
