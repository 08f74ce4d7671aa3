#include "fshor/cli.hpp"

#include "fshor/analytic.hpp"
#include "fshor/circuit_io.hpp"
#include "fshor/compression.hpp"
#include "fshor/numtheory.hpp"
#include "fshor/shor.hpp"
#include "fshor/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace fshor::cli {

namespace {

using ojson = nlohmann::ordered_json;

const std::map<std::string, OutputFormat> kFormats{
    {"text", OutputFormat::text}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};

std::string default_format() {
    if (const char* env = std::getenv(kFormatEnv); env && kFormats.count(env)) return env;
    return "text";
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string fmt_prob(double p) {
    std::ostringstream s;
    s << std::setprecision(17) << p;
    return s.str();
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(OutputFormat format, std::ostream& out) {
    const auto& products = fermat_products();
    if (format == OutputFormat::json) {
        ojson rows = ojson::array();
        for (const auto& fp : products) {
            ojson j;
            j["N"] = fp.N;
            j["k"] = fp.k;
            j["k_prime"] = fp.k_prime;
            j["p"] = fp.p;
            j["p_prime"] = fp.p_prime;
            j["phi"] = fp.phi;
            j["b"] = fp.b;
            j["l_max"] = fp.l_max;
            j["l_max_exact"] = fp.l_max_exact;
            j["l_max_bound"] = fp.l_max_bound();
            rows.push_back(j);
        }
        out << rows.dump(2) << '\n';
    } else if (format == OutputFormat::csv) {
        out << "N,k,k_prime,p,p_prime,phi,b,l_max,l_max_exact,l_max_bound\n";
        for (const auto& fp : products)
            out << fp.N << ',' << fp.k << ',' << fp.k_prime << ',' << fp.p << ',' << fp.p_prime << ',' << fp.phi
                << ',' << fp.b << ',' << fp.l_max << ',' << (fp.l_max_exact ? "true" : "false") << ','
                << fp.l_max_bound() << '\n';
    } else {
        out << std::left << std::setw(10) << "N" << std::setw(3) << "k" << std::setw(4) << "k'" << std::setw(7)
            << "p" << std::setw(7) << "p'" << std::setw(12) << "phi" << std::setw(4) << "b"
            << "l_max\n";
        for (const auto& fp : products) {
            std::string lmax = std::to_string(fp.l_max);
            if (!fp.l_max_exact)
                lmax = ">=" + lmax + " (sampled lower bound; upper bound " + std::to_string(fp.l_max_bound()) + ")";
            out << std::left << std::setw(10) << fp.N << std::setw(3) << fp.k << std::setw(4) << fp.k_prime
                << std::setw(7) << fp.p << std::setw(7) << fp.p_prime << std::setw(12) << fp.phi << std::setw(4)
                << fp.b << lmax << '\n';
        }
    }
    return kSuccess;
}

// ---------------------------------------------------------------- tables

int cmd_tables(const FermatProduct& fp, OutputFormat format, std::ostream& out) {
    const auto buckets = table_assignments(fp);
    auto label = [](unsigned l) -> std::string {
        return l >= 1 && l <= 4 ? std::string(1, static_cast<char>('a' + l - 1)) : std::string("-");
    };
    if (format == OutputFormat::json) {
        ojson j;
        j["N"] = fp.N;
        j["rows"] = ojson::array();
        for (const auto& [l, bases] : buckets) {
            ojson row;
            row["l"] = l;
            row["r"] = u64{1} << l;
            row["figure"] = label(l);
            row["bases"] = bases;
            ojson marks = ojson::array();
            for (u64 a : bases)
                if (is_trivial_failure_base(fp, a)) marks.push_back(a);
            row["trivial_failure"] = marks;
            j["rows"].push_back(row);
        }
        out << j.dump(2) << '\n';
    } else if (format == OutputFormat::csv) {
        out << "l,r,figure,base,trivial_failure\n";
        for (const auto& [l, bases] : buckets)
            for (u64 a : bases)
                out << l << ',' << (u64{1} << l) << ',' << label(l) << ',' << a << ','
                    << (is_trivial_failure_base(fp, a) ? "true" : "false") << '\n';
    } else {
        out << "N = " << fp.N << " circuit assignments (* marks a^(r/2) = -1 mod N)\n";
        out << std::left << std::setw(4) << "l" << std::setw(6) << "r" << std::setw(9) << "circuit" << std::setw(7)
            << "count"
            << "bases\n";
        for (const auto& [l, bases] : buckets) {
            std::vector<std::string> cells;
            for (u64 a : bases) cells.push_back(std::to_string(a) + (is_trivial_failure_base(fp, a) ? "*" : ""));
            out << std::left << std::setw(4) << l << std::setw(6) << (u64{1} << l) << std::setw(9) << label(l)
                << std::setw(7) << bases.size() << join(cells, ", ") << '\n';
        }
    }
    return kSuccess;
}

// ---------------------------------------------------------------- factor

int exit_code_for(const RunRecord& rec) { return rec.succeeded() ? kSuccess : kClassifiedFailure; }

void write_record_text(const RunRecord& rec, std::ostream& out) {
    out << "N=" << rec.N << " base=" << rec.a;
    if (rec.order_result && rec.order_result->order) out << " order=" << *rec.order_result->order;
    if (const auto* f = std::get_if<Factors>(&rec.outcome)) {
        out << " factors " << f->p << " x " << f->q;
    } else if (const auto* l = std::get_if<LuckyGcd>(&rec.outcome)) {
        out << " lucky gcd " << l->divisor << " (factors " << std::min(l->divisor, rec.N / l->divisor) << " x "
            << std::max(l->divisor, rec.N / l->divisor) << ")";
    } else {
        out << " failure " << to_string(std::get<Failure>(rec.outcome).kind);
    }
    if (rec.order_result) out << " attempts=" << rec.order_result->attempts;
    out << '\n';
}

void write_record_csv(const RunRecord& rec, std::ostream& out) {
    out << rec.N << ',' << rec.a << ',';
    if (rec.order_result && rec.order_result->order) out << *rec.order_result->order;
    out << ',';
    if (const auto* f = std::get_if<Factors>(&rec.outcome))
        out << "factors," << f->p << ',' << f->q;
    else if (const auto* l = std::get_if<LuckyGcd>(&rec.outcome))
        out << "lucky_gcd," << std::min(l->divisor, rec.N / l->divisor) << ','
            << std::max(l->divisor, rec.N / l->divisor);
    else
        out << to_string(std::get<Failure>(rec.outcome).kind) << ",,";
    out << ',' << (rec.order_result ? rec.order_result->attempts : 0u) << ',' << rec.seed << '\n';
}

constexpr const char* kRecordCsvHeader = "N,base,order,outcome,p,q,attempts,seed\n";

std::vector<RunRecord> sweep_all_bases(const FermatProduct& fp, const FactorConfig& base_config) {
    std::vector<u64> bases;
    for (u64 a = 2; a < fp.N; ++a) bases.push_back(a);
    std::vector<RunRecord> records(bases.size());
    std::vector<std::exception_ptr> errors(bases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < bases.size(); i = next++) {
            FactorConfig cfg = base_config;
            cfg.base_override = bases[i];
            try {
                records[i] = factor(fp, cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return records;
}

int cmd_factor(const FermatProduct& fp, const FactorConfig& config, bool all_bases, OutputFormat format,
               std::ostream& out) {
    if (all_bases) {
        const auto records = sweep_all_bases(fp, config);
        if (format == OutputFormat::json) {
            ojson arr = ojson::array();
            for (const auto& r : records) arr.push_back(to_json(r));
            out << arr.dump(2) << '\n';
        } else if (format == OutputFormat::csv) {
            out << kRecordCsvHeader;
            for (const auto& r : records) write_record_csv(r, out);
        } else {
            std::size_t ok = 0;
            for (const auto& r : records) {
                write_record_text(r, out);
                ok += r.succeeded();
            }
            out << ok << " of " << records.size() << " bases factored N\n";
        }
        return kSuccess;
    }
    const RunRecord rec = factor(fp, config);
    if (format == OutputFormat::json)
        out << to_json(rec).dump() << '\n';
    else if (format == OutputFormat::csv) {
        out << kRecordCsvHeader;
        write_record_csv(rec, out);
    } else
        write_record_text(rec, out);
    return exit_code_for(rec);
}

// ---------------------------------------------------------------- distribution

int cmd_distribution(const FermatProduct& fp, u64 a, OutputFormat format, std::ostream& out) {
    const Circuit circuit = build_compressed_circuit(fp, a);
    const auto simulated = simulate(circuit).first_register_distribution();
    const u64 r = multiplicative_order(a, fp.N);
    const auto analytic = analytic_distribution(r, circuit.layout.n);
    double max_diff = 0.0;
    for (std::size_t x = 0; x < simulated.size(); ++x)
        max_diff = std::max(max_diff, std::abs(simulated[x] - analytic.probabilities[x]));

    if (format == OutputFormat::json) {
        ojson j;
        j["N"] = fp.N;
        j["base"] = a;
        j["order"] = r;
        j["n"] = circuit.layout.n;
        j["rows"] = ojson::array();
        for (std::size_t x = 0; x < simulated.size(); ++x) {
            ojson row;
            row["x"] = x;
            row["analytic"] = analytic.probabilities[x];
            row["simulated"] = simulated[x];
            row["abs_diff"] = std::abs(simulated[x] - analytic.probabilities[x]);
            j["rows"].push_back(row);
        }
        j["max_abs_diff"] = max_diff;
        out << j.dump(2) << '\n';
    } else if (format == OutputFormat::csv) {
        out << "x,analytic,simulated,abs_diff\n";
        for (std::size_t x = 0; x < simulated.size(); ++x)
            out << x << ',' << fmt_prob(analytic.probabilities[x]) << ',' << fmt_prob(simulated[x]) << ','
                << fmt_prob(std::abs(simulated[x] - analytic.probabilities[x])) << '\n';
    } else {
        out << "N=" << fp.N << " base=" << a << " r=" << r << " n=" << circuit.layout.n << '\n';
        out << std::left << std::setw(6) << "x" << std::setw(16) << "analytic" << std::setw(16) << "simulated"
            << "|diff|\n";
        for (std::size_t x = 0; x < simulated.size(); ++x)
            out << std::left << std::setw(6) << x << std::fixed << std::setprecision(12) << std::setw(16)
                << analytic.probabilities[x] << std::setw(16) << simulated[x] << std::scientific
                << std::setprecision(2) << std::abs(simulated[x] - analytic.probabilities[x])
                << std::defaultfloat << '\n';
        out << "max |diff| = " << std::scientific << std::setprecision(3) << max_diff << std::defaultfloat << '\n';
    }
    return kSuccess;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const FermatProduct& fp, u64 a, bool decohere, OutputFormat format, std::ostream& out) {
    const CoherenceReport rep = verify_coherence(fp, a, decohere);
    if (format == OutputFormat::json) {
        out << to_json(rep).dump() << '\n';
    } else if (format == OutputFormat::csv) {
        out << "N,base,order,dephased,p_zero,pass\n"
            << rep.N << ',' << rep.a << ',' << rep.r << ',' << (rep.dephased ? "true" : "false") << ','
            << fmt_prob(rep.p_zero) << ',' << (rep.pass ? "true" : "false") << '\n';
    } else {
        out << "N=" << rep.N << " base=" << rep.a << " r=" << rep.r << (rep.dephased ? " dephased" : "")
            << " p_zero=" << std::fixed << std::setprecision(12) << rep.p_zero << std::defaultfloat << ' '
            << (rep.pass ? "PASS" : "FAIL") << '\n';
    }
    return rep.pass ? kSuccess : kClassifiedFailure;
}

// ---------------------------------------------------------------- export-circuit

int cmd_export(const FermatProduct& fp, u64 a, const std::string& kind, const std::string& path,
               std::ostream& out) {
    Circuit c;
    if (kind == "compressed")
        c = build_compressed_circuit(fp, a);
    else if (kind == "verification")
        c = build_verification_circuit(fp, a);
    else
        c = build_standard_circuit(fp, a, fp.l_max, fp.b);
    write_circuit_file(c, path);
    out << "wrote " << path << ": " << c.gates.size() << " gates on " << c.layout.total() << " qubits, "
        << c.count(GateKind::cnot, Stage::modexp) << " CNOTs in the modexp block\n";
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shor order finding for products of Fermat primes", "fshor"};
    app.require_subcommand(1);

    std::string format_name = default_format();
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "text | json | csv (default from $FSHOR_FORMAT)")
            ->check(CLI::IsMember({"text", "json", "csv"}));
    };

    u64 N = 0;
    u64 base = 0;

    auto* enumerate = app.add_subcommand("enumerate", "List the ten Fermat-prime products");
    add_format(enumerate);

    auto* tables = app.add_subcommand("tables", "Bucket every coprime base by circuit class");
    tables->add_option("N", N, "composite")->required();
    add_format(tables);

    FactorConfig config;
    std::optional<u64> base_flag;
    std::string mode_name = "sampled";
    bool all_bases = false;
    auto* factor_cmd = app.add_subcommand("factor", "Factor N by simulated order finding");
    factor_cmd->add_option("N", N, "composite")->required();
    factor_cmd->add_option("--base", base_flag, "use this base instead of drawing one");
    factor_cmd->add_option("--seed", config.seed, "seed for base choice and sampling");
    factor_cmd->add_option("--shots", config.shots, "samples drawn per attempt")->check(CLI::PositiveNumber);
    factor_cmd->add_option("--max-attempts", config.max_attempts, "sampling attempts before giving up")
        ->check(CLI::PositiveNumber);
    factor_cmd->add_option("--mode", mode_name, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
    factor_cmd->add_flag("--all-bases", all_bases, "run every base 1 < a < N");
    add_format(factor_cmd);

    auto* dist_cmd = app.add_subcommand("distribution", "Analytic vs simulated first-register distribution");
    dist_cmd->add_option("N", N, "composite")->required();
    dist_cmd->add_option("base", base, "base")->required();
    add_format(dist_cmd);

    bool decohere = false;
    auto* verify_cmd = app.add_subcommand("verify", "Coherence check with |+> second-register inputs");
    verify_cmd->add_option("N", N, "composite")->required();
    verify_cmd->add_option("base", base, "base")->required();
    verify_cmd->add_flag("--decohere", decohere, "replace the CNOTs by dephasing on their controls");
    add_format(verify_cmd);

    std::string path;
    std::string kind = "compressed";
    auto* export_cmd = app.add_subcommand("export-circuit", "Write a circuit as a JSON gate list");
    export_cmd->add_option("N", N, "composite")->required();
    export_cmd->add_option("base", base, "base")->required();
    export_cmd->add_option("path", path, "output file")->required();
    export_cmd->add_option("--kind", kind, "compressed | verification | standard")
        ->check(CLI::IsMember({"compressed", "verification", "standard"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    const OutputFormat format = kFormats.at(format_name);
    try {
        if (*enumerate) return cmd_enumerate(format, out);
        const FermatProduct& fp = require_fermat_product(N);
        if (*tables) return cmd_tables(fp, format, out);
        if (*factor_cmd) {
            config.mode = parse_sampling_mode(mode_name);
            config.base_override = base_flag;
            return cmd_factor(fp, config, all_bases, format, out);
        }
        if (*dist_cmd) return cmd_distribution(fp, base, format, out);
        if (*verify_cmd) return cmd_verify(fp, base, decohere, format, out);
        if (*export_cmd) return cmd_export(fp, base, kind, path, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace fshor::cli
