#include "fshor/simulator.hpp"

#include "fshor/compression.hpp"
#include "fshor/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fshor {

void RegisterLayout::validate() const {
    if (n < 1) throw ContractError("layout: first register needs at least one qubit");
    if (total() > kMaxQubits)
        throw ContractError("layout: " + std::to_string(total()) + " qubits exceeds the " +
                            std::to_string(kMaxQubits) + "-qubit limit");
}

void Gate::validate(const RegisterLayout& layout) const {
    const unsigned total = layout.total();
    auto in_range = [&](unsigned q) { return q >= 1 && q <= total; };
    switch (kind) {
        case GateKind::hadamard:
        case GateKind::pauli_x:
        case GateKind::pauli_z:
            if (!in_range(q0)) throw ContractError("gate: qubit index out of range");
            break;
        case GateKind::controlled_phase:
            if (!(angle > -2 * std::numbers::pi && angle < 2 * std::numbers::pi))
                throw ContractError("gate: controlled-phase angle outside (-2pi, 2pi)");
            [[fallthrough]];
        case GateKind::cnot:
        case GateKind::swap:
            if (!in_range(q0) || !in_range(q1)) throw ContractError("gate: qubit index out of range");
            if (q0 == q1) throw ContractError("gate: qubit indices must be distinct");
            break;
        case GateKind::permutation_oracle:
            if (!oracle) throw ContractError("gate: permutation oracle without a table");
            if (oracle->modulus < 2 || (u64{1} << layout.m) < oracle->modulus)
                throw ContractError("gate: oracle modulus does not fit the second register");
            if (gcd(oracle->base % oracle->modulus, oracle->modulus) != 1)
                throw ContractError("gate: oracle base not coprime to modulus, not a permutation");
            break;
    }
}

void Circuit::validate() const {
    layout.validate();
    if (initial >= layout.dimension()) throw ContractError("circuit: initial state out of range");
    for (const auto& g : gates) g.validate(layout);
}

std::size_t Circuit::count(GateKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [&](const Gate& g) { return g.kind == kind; }));
}

std::size_t Circuit::count(GateKind kind, Stage stage) const {
    return static_cast<std::size_t>(std::count_if(
        gates.begin(), gates.end(), [&](const Gate& g) { return g.kind == kind && g.stage == stage; }));
}

std::string Circuit::initial_bits() const {
    std::string bits(layout.total(), '0');
    for (unsigned q = 1; q <= layout.total(); ++q)
        if ((initial >> (layout.total() - q)) & 1u) bits[q - 1] = '1';
    return bits;
}

Circuit adjoint(const Circuit& circuit) {
    Circuit out{circuit.layout, circuit.initial, {}};
    out.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::permutation_oracle) throw ContractError("adjoint: oracle gates have no stored inverse");
        if (g.kind == GateKind::controlled_phase) g.angle = -g.angle;
        out.gates.push_back(g);
    }
    return out;
}

StateVector::StateVector(RegisterLayout layout, u64 basis_index) : layout_(layout) {
    layout_.validate();
    if (basis_index >= layout_.dimension()) throw ContractError("state: basis index out of range");
    amps_.assign(layout_.dimension(), complex_t{0.0, 0.0});
    amps_[basis_index] = 1.0;
}

StateVector::StateVector(RegisterLayout layout, std::vector<complex_t> amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
    layout_.validate();
    if (amps_.size() != layout_.dimension()) throw ContractError("state: amplitude count does not match layout");
}

double StateVector::norm_squared() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return sum;
}

void StateVector::apply(const Gate& gate) {
    gate.validate(layout_);
    const u64 dim = amps_.size();
    switch (gate.kind) {
        case GateKind::hadamard: {
            const u64 bit = mask(gate.q0);
            const double s = std::numbers::sqrt2 / 2;
            for (u64 i = 0; i < dim; ++i) {
                if (i & bit) continue;
                const complex_t a = amps_[i];
                const complex_t b = amps_[i | bit];
                amps_[i] = (a + b) * s;
                amps_[i | bit] = (a - b) * s;
            }
            break;
        }
        case GateKind::pauli_x: {
            const u64 bit = mask(gate.q0);
            for (u64 i = 0; i < dim; ++i)
                if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
            break;
        }
        case GateKind::pauli_z: {
            const u64 bit = mask(gate.q0);
            for (u64 i = 0; i < dim; ++i)
                if (i & bit) amps_[i] = -amps_[i];
            break;
        }
        case GateKind::cnot: {
            const u64 c = mask(gate.q0);
            const u64 t = mask(gate.q1);
            for (u64 i = 0; i < dim; ++i)
                if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
            break;
        }
        case GateKind::controlled_phase: {
            const u64 both = mask(gate.q0) | mask(gate.q1);
            const complex_t phase = std::polar(1.0, gate.angle);
            for (u64 i = 0; i < dim; ++i)
                if ((i & both) == both) amps_[i] *= phase;
            break;
        }
        case GateKind::swap: {
            const u64 a = mask(gate.q0);
            const u64 b = mask(gate.q1);
            for (u64 i = 0; i < dim; ++i)
                if ((i & a) && !(i & b)) std::swap(amps_[i], amps_[(i & ~a) | b]);
            break;
        }
        case GateKind::permutation_oracle:
            apply_oracle(*gate.oracle);
            break;
    }
}

void StateVector::apply_oracle(const ModExpOracle& oracle) {
    const u64 rows = u64{1} << layout_.n;
    std::vector<u64> powers(rows);
    u64 value = 1;
    const u64 a = oracle.base % oracle.modulus;
    for (u64 x = 0; x < rows; ++x) {
        powers[x] = value;
        value = mul_mod(value, a, oracle.modulus);
    }
    apply_permutation([&](u64 x, u64 y) { return y < oracle.modulus ? mul_mod(y, powers[x], oracle.modulus) : y; });
}

void StateVector::apply_permutation(const std::function<u64(u64 x, u64 y)>& f) {
    const u64 rows = u64{1} << layout_.n;
    const u64 cols = u64{1} << layout_.m;
    std::vector<complex_t> out(amps_.size());
    std::vector<char> hit(cols);
    for (u64 x = 0; x < rows; ++x) {
        std::fill(hit.begin(), hit.end(), 0);
        const u64 row = x * cols;
        for (u64 y = 0; y < cols; ++y) {
            const u64 fy = f(x, y);
            if (fy >= cols || hit[fy])
                throw ContractError("permutation oracle: map is not a bijection for x = " + std::to_string(x));
            hit[fy] = 1;
            out[row + fy] = amps_[row + y];
        }
    }
    amps_ = std::move(out);
}

std::vector<double> StateVector::first_register_distribution() const {
    const u64 rows = u64{1} << layout_.n;
    const u64 cols = u64{1} << layout_.m;
    std::vector<double> dist(rows, 0.0);
    for (u64 x = 0; x < rows; ++x) {
        double sum = 0.0;
        for (u64 y = 0; y < cols; ++y) sum += std::norm(amps_[x * cols + y]);
        dist[x] = sum;
    }
    return dist;
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    state.apply(gate);
    return state;
}

StateVector apply_permutation_oracle(StateVector state, const std::function<u64(u64, u64)>& f) {
    state.apply_permutation(f);
    return state;
}

std::vector<double> first_register_distribution(const StateVector& state) {
    return state.first_register_distribution();
}

StateVector simulate(const Circuit& circuit, const GateObserver& observer) {
    circuit.validate();
    StateVector state(circuit.layout, circuit.initial);
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        state.apply(circuit.gates[i]);
        if (observer) observer(i, state);
    }
    return state;
}

Circuit inverse_qft(unsigned n) {
    if (n < 1 || n > RegisterLayout::kMaxQubits) throw ContractError("inverse_qft: qubit count out of range");
    Circuit c{{n, 0}, 0, {}};
    for (unsigned j = 1; j <= n; ++j) {
        for (unsigned k = 1; k < j; ++k)
            c.gates.push_back(Gate::cphase(k, j, -std::numbers::pi / static_cast<double>(u64{1} << (j - k)),
                                           Stage::inverse_qft));
        c.gates.push_back(Gate::h(j, Stage::inverse_qft));
    }
    for (unsigned j = 1; j <= n / 2; ++j) c.gates.push_back(Gate::swap(j, n + 1 - j, Stage::inverse_qft));
    return c;
}

namespace {

void append_hadamards(Circuit& c, unsigned first, unsigned last) {
    for (unsigned q = first; q <= last; ++q) c.gates.push_back(Gate::h(q, Stage::prep));
}

void append_inverse_qft(Circuit& c) {
    const Circuit iqft = inverse_qft(c.layout.n);
    c.gates.insert(c.gates.end(), iqft.gates.begin(), iqft.gates.end());
}

void require_base(const FermatProduct& fp, u64 a) {
    if (a <= 1 || a >= fp.N) throw ContractError("base must satisfy 1 < a < N");
    if (gcd(a, fp.N) != 1) throw ContractError("base " + std::to_string(a) + " shares a factor with N");
}

}  // namespace

Circuit build_standard_circuit(const FermatProduct& fp, u64 a, unsigned n, unsigned m) {
    require_base(fp, a);
    if (m >= 64 || (u64{1} << m) < fp.N) throw ContractError("standard circuit: second register cannot hold N");
    Circuit c{{n, m}, 1, {}};
    c.layout.validate();
    append_hadamards(c, 1, n);
    c.gates.push_back(Gate::modexp({a, fp.N}));
    append_inverse_qft(c);
    return c;
}

Circuit build_compressed_circuit(const FermatProduct& fp, u64 a) {
    require_base(fp, a);
    if (!fp.l_max_exact) throw ContractError("compressed circuit: l_max of " + std::to_string(fp.N) + " is not known exactly");
    const CompressionMap map = build_compression_map(fp, a);
    const unsigned n = fp.l_max;
    Circuit c{{n, n}, 0, {}};
    c.layout.validate();
    append_hadamards(c, 1, n);
    // copy the l least significant bits of x; qubit n is the LSB of register 1, 2n of register 2
    for (unsigned i = map.exponent(); i-- > 0;) c.gates.push_back(Gate::cnot(n - i, 2 * n - i, Stage::modexp));
    append_inverse_qft(c);
    return c;
}

Circuit build_copy_circuit(unsigned n) {
    Circuit c{{n, n}, 0, {}};
    c.layout.validate();
    for (unsigned j = 1; j <= n; ++j) c.gates.push_back(Gate::cnot(j, n + j, Stage::modexp));
    return c;
}

Circuit build_verification_circuit(const FermatProduct& fp, u64 a) {
    Circuit c = build_compressed_circuit(fp, a);
    std::vector<Gate> plus;
    for (unsigned q = c.layout.n + 1; q <= c.layout.total(); ++q) plus.push_back(Gate::h(q, Stage::prep));
    c.gates.insert(c.gates.begin(), plus.begin(), plus.end());
    return c;
}

std::vector<double> dephased_first_register_distribution(const Circuit& circuit) {
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < circuit.gates.size(); ++i)
        if (circuit.gates[i].kind == GateKind::cnot && circuit.gates[i].stage == Stage::modexp) sites.push_back(i);
    if (sites.size() > 16) throw ContractError("dephased simulation: too many CNOTs to enumerate");

    const u64 patterns = u64{1} << sites.size();
    std::vector<double> mixture(u64{1} << circuit.layout.n, 0.0);
    for (u64 pattern = 0; pattern < patterns; ++pattern) {
        Circuit branch{circuit.layout, circuit.initial, {}};
        std::size_t site = 0;
        for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
            if (site < sites.size() && sites[site] == i) {
                if ((pattern >> site) & 1u) branch.gates.push_back(Gate::z(circuit.gates[i].q0, Stage::modexp));
                ++site;
                continue;
            }
            branch.gates.push_back(circuit.gates[i]);
        }
        const auto dist = simulate(branch).first_register_distribution();
        for (std::size_t x = 0; x < dist.size(); ++x) mixture[x] += dist[x];
    }
    for (auto& p : mixture) p /= static_cast<double>(patterns);
    return mixture;
}

std::vector<u64> sample(std::span<const double> distribution, u64 seed, std::size_t shots) {
    if (distribution.empty()) throw ContractError("sample: empty distribution");
    std::vector<double> cdf(distribution.size());
    double total = 0.0;
    for (std::size_t i = 0; i < distribution.size(); ++i) {
        const double p = distribution[i];
        if (!(p >= -1e-12) || !std::isfinite(p)) throw ContractError("sample: negative or non-finite probability");
        total += std::max(p, 0.0);
        cdf[i] = total;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ContractError("sample: probabilities do not sum to 1");

    // last outcome with positive weight absorbs any rounding slack at the top of the CDF
    std::size_t last = distribution.size() - 1;
    while (last > 0 && distribution[last] <= 0.0) --last;

    Rng rng(seed);
    std::vector<u64> out;
    out.reserve(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = uniform_unit(rng) * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min(static_cast<std::size_t>(it - cdf.begin()), last);
        out.push_back(idx);
    }
    return out;
}

}  // namespace fshor
