#pragma once

#include "fshor/numtheory.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fshor {

using complex_t = std::complex<double>;

/// First register of n qubits (measured), second register of m qubits.
///
/// Qubits are numbered 1..n+m across both registers. Qubit 1 is the most
/// significant bit of the first-register value x, qubit n+1 the most
/// significant bit of the second-register value y, and the global basis index
/// is x * 2^m + y.
struct RegisterLayout {
    static constexpr unsigned kMaxQubits = 24;

    unsigned n = 1;
    unsigned m = 0;

    unsigned total() const { return n + m; }
    u64 dimension() const { return u64{1} << total(); }
    void validate() const;

    friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

enum class GateKind { hadamard, pauli_x, pauli_z, cnot, controlled_phase, swap, permutation_oracle };

/// Which part of the order-finding circuit a gate belongs to.
enum class Stage { prep, modexp, inverse_qft, other };

/// |x>|y> -> |x>|y * base^x mod modulus> for y < modulus, identity for y >= modulus.
struct ModExpOracle {
    u64 base = 0;
    u64 modulus = 0;

    friend bool operator==(const ModExpOracle&, const ModExpOracle&) = default;
};

struct Gate {
    GateKind kind = GateKind::hadamard;
    /// Target of single-qubit gates; control of cnot / controlled_phase; first of a swap.
    unsigned q0 = 0;
    /// Target of cnot / controlled_phase; second of a swap.
    unsigned q1 = 0;
    /// Radians, controlled_phase only.
    double angle = 0.0;
    std::optional<ModExpOracle> oracle;
    Stage stage = Stage::other;

    static Gate h(unsigned q, Stage s = Stage::other) { return {GateKind::hadamard, q, 0, 0.0, {}, s}; }
    static Gate x(unsigned q, Stage s = Stage::other) { return {GateKind::pauli_x, q, 0, 0.0, {}, s}; }
    static Gate z(unsigned q, Stage s = Stage::other) { return {GateKind::pauli_z, q, 0, 0.0, {}, s}; }
    static Gate cnot(unsigned control, unsigned target, Stage s = Stage::other) {
        return {GateKind::cnot, control, target, 0.0, {}, s};
    }
    static Gate cphase(unsigned control, unsigned target, double angle, Stage s = Stage::other) {
        return {GateKind::controlled_phase, control, target, angle, {}, s};
    }
    static Gate swap(unsigned a, unsigned b, Stage s = Stage::other) { return {GateKind::swap, a, b, 0.0, {}, s}; }
    static Gate modexp(ModExpOracle o, Stage s = Stage::modexp) {
        return {GateKind::permutation_oracle, 0, 0, 0.0, o, s};
    }

    /// Throws ContractError if the gate does not fit the layout.
    void validate(const RegisterLayout& layout) const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
    RegisterLayout layout;
    /// Computational basis state the register starts in (global index).
    u64 initial = 0;
    std::vector<Gate> gates;

    void validate() const;
    std::size_t count(GateKind kind) const;
    std::size_t count(GateKind kind, Stage stage) const;
    /// Initial state as a bitstring, qubit 1 first.
    std::string initial_bits() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Reversed gate order with each gate inverted. Oracles are not invertible here.
Circuit adjoint(const Circuit& circuit);

class StateVector {
public:
    explicit StateVector(RegisterLayout layout, u64 basis_index = 0);
    StateVector(RegisterLayout layout, std::vector<complex_t> amplitudes);

    const RegisterLayout& layout() const { return layout_; }
    std::span<const complex_t> amplitudes() const { return amps_; }
    const complex_t& operator[](u64 index) const { return amps_[index]; }
    u64 size() const { return amps_.size(); }

    double norm_squared() const;

    void apply(const Gate& gate);

    /// Moves the amplitude at (x, y) to (x, f(x, y)). f(x, .) must permute [0, 2^m)
    /// for every x; otherwise ContractError is thrown and the state is unchanged.
    void apply_permutation(const std::function<u64(u64 x, u64 y)>& f);

    /// Marginal over the second register, length 2^n.
    std::vector<double> first_register_distribution() const;

private:
    u64 mask(unsigned qubit) const { return u64{1} << (layout_.total() - qubit); }
    void apply_oracle(const ModExpOracle& oracle);

    RegisterLayout layout_;
    std::vector<complex_t> amps_;
};

StateVector apply_gate(StateVector state, const Gate& gate);
StateVector apply_permutation_oracle(StateVector state, const std::function<u64(u64 x, u64 y)>& f);
std::vector<double> first_register_distribution(const StateVector& state);

using GateObserver = std::function<void(std::size_t gate_index, const StateVector& state)>;

/// Runs the circuit from its initial basis state; the observer sees the state after each gate.
StateVector simulate(const Circuit& circuit, const GateObserver& observer = {});

/// Inverse QFT on qubits 1..n of an n-qubit register, gates tagged Stage::inverse_qft.
///
/// Qubit j receives controlled phases of -pi / 2^(j - k) from every earlier qubit
/// k, then a Hadamard; a trailing swap layer reverses the qubit order so that
/// the measured value reads with qubit 1 as the most significant bit. Maps
/// sum_x exp(2 pi i s x / 2^n) |x> / 2^(n/2) to |s>.
Circuit inverse_qft(unsigned n);

/// H on the first register, second register set to 1, modular exponentiation
/// oracle for base a, inverse QFT. Requires 2^m >= N and gcd(a, N) = 1.
Circuit build_standard_circuit(const FermatProduct& fp, u64 a, unsigned n, unsigned m);

/// n = m = l_max; second register starts at 0 and the l = log2 r(a) least
/// significant first-register qubits are copied onto the matching second-register
/// qubits, realising |x>|0> -> |x>|x mod r>.
Circuit build_compressed_circuit(const FermatProduct& fp, u64 a);

/// n CNOTs copying register 1 onto register 2 (layout n + n).
Circuit build_copy_circuit(unsigned n);

/// The compressed circuit with every second-register qubit prepared in |+>.
Circuit build_verification_circuit(const FermatProduct& fp, u64 a);

/// First-register marginal when each modexp-stage CNOT is replaced by a full
/// dephasing channel on its control qubit. Computed exactly as the uniform mixture
/// over all 2^k patterns of {identity, Z} on the k controls.
std::vector<double> dephased_first_register_distribution(const Circuit& circuit);

/// Inverse-CDF sampling; deterministic for a given seed.
std::vector<u64> sample(std::span<const double> distribution, u64 seed, std::size_t shots);

}  // namespace fshor
