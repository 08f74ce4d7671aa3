#include "fshor/circuit_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fshor {

using ojson = nlohmann::ordered_json;

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::hadamard: return "h";
        case GateKind::pauli_x: return "x";
        case GateKind::pauli_z: return "z";
        case GateKind::cnot: return "cnot";
        case GateKind::controlled_phase: return "cphase";
        case GateKind::swap: return "swap";
        case GateKind::permutation_oracle: return "modexp_oracle";
    }
    return "unknown";
}

std::string to_string(Stage stage) {
    switch (stage) {
        case Stage::prep: return "prep";
        case Stage::modexp: return "modexp";
        case Stage::inverse_qft: return "iqft";
        case Stage::other: return "other";
    }
    return "unknown";
}

namespace {

GateKind parse_kind(const std::string& s) {
    for (auto k : {GateKind::hadamard, GateKind::pauli_x, GateKind::pauli_z, GateKind::cnot,
                   GateKind::controlled_phase, GateKind::swap, GateKind::permutation_oracle})
        if (to_string(k) == s) return k;
    throw ContractError("circuit json: unknown gate kind '" + s + "'");
}

Stage parse_stage(const std::string& s) {
    for (auto st : {Stage::prep, Stage::modexp, Stage::inverse_qft, Stage::other})
        if (to_string(st) == s) return st;
    throw ContractError("circuit json: unknown stage '" + s + "'");
}

ojson gate_to_json(const Gate& g) {
    ojson j;
    j["kind"] = to_string(g.kind);
    switch (g.kind) {
        case GateKind::hadamard:
        case GateKind::pauli_x:
        case GateKind::pauli_z:
            j["qubit"] = g.q0;
            break;
        case GateKind::cnot:
            j["control"] = g.q0;
            j["target"] = g.q1;
            break;
        case GateKind::controlled_phase:
            j["control"] = g.q0;
            j["target"] = g.q1;
            j["angle"] = g.angle;
            break;
        case GateKind::swap:
            j["qubits"] = {g.q0, g.q1};
            break;
        case GateKind::permutation_oracle:
            j["base"] = g.oracle->base;
            j["modulus"] = g.oracle->modulus;
            break;
    }
    j["stage"] = to_string(g.stage);
    return j;
}

Gate gate_from_json(const ojson& j) {
    Gate g;
    g.kind = parse_kind(j.at("kind").get<std::string>());
    switch (g.kind) {
        case GateKind::hadamard:
        case GateKind::pauli_x:
        case GateKind::pauli_z:
            g.q0 = j.at("qubit").get<unsigned>();
            break;
        case GateKind::controlled_phase:
            g.angle = j.at("angle").get<double>();
            [[fallthrough]];
        case GateKind::cnot:
            g.q0 = j.at("control").get<unsigned>();
            g.q1 = j.at("target").get<unsigned>();
            break;
        case GateKind::swap: {
            const auto& qs = j.at("qubits");
            if (!qs.is_array() || qs.size() != 2) throw ContractError("circuit json: swap needs two qubits");
            g.q0 = qs[0].get<unsigned>();
            g.q1 = qs[1].get<unsigned>();
            break;
        }
        case GateKind::permutation_oracle:
            g.oracle = ModExpOracle{j.at("base").get<u64>(), j.at("modulus").get<u64>()};
            break;
    }
    g.stage = parse_stage(j.value("stage", std::string{"other"}));
    return g;
}

}  // namespace

std::string circuit_to_json(const Circuit& circuit) {
    std::ostringstream out;
    ojson layout;
    layout["n"] = circuit.layout.n;
    layout["m"] = circuit.layout.m;
    out << "{\"layout\": " << layout.dump() << ",\n";
    out << " \"initial\": " << ojson(circuit.initial_bits()).dump() << ",\n";
    out << " \"gates\": [";
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        out << (i == 0 ? "\n  " : ",\n  ") << gate_to_json(circuit.gates[i]).dump();
    }
    out << "\n ]}\n";
    return out.str();
}

Circuit circuit_from_json(std::string_view text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("circuit json: ") + e.what());
    }
    Circuit c;
    try {
        c.layout.n = j.at("layout").at("n").get<unsigned>();
        c.layout.m = j.at("layout").at("m").get<unsigned>();
        c.layout.validate();
        const auto bits = j.at("initial").get<std::string>();
        if (bits.size() != c.layout.total()) throw ContractError("circuit json: initial state has wrong length");
        c.initial = 0;
        for (char ch : bits) {
            if (ch != '0' && ch != '1') throw ContractError("circuit json: initial state must be a bitstring");
            c.initial = (c.initial << 1) | static_cast<u64>(ch - '0');
        }
        for (const auto& gj : j.at("gates")) c.gates.push_back(gate_from_json(gj));
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("circuit json: ") + e.what());
    }
    c.validate();
    return c;
}

void write_circuit_file(const Circuit& circuit, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << circuit_to_json(circuit);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Circuit read_circuit_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return circuit_from_json(buf.str());
}

}  // namespace fshor
