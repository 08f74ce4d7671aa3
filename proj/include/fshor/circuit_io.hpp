#pragma once

#include "fshor/simulator.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace fshor {

// Gate-list JSON, one gate per line:
//
//   {"layout": {"n": 4, "m": 4},
//    "initial": "00000000",
//    "gates": [
//     {"kind": "h", "qubit": 1, "stage": "prep"},
//     {"kind": "cnot", "control": 4, "target": 8, "stage": "modexp"},
//     ...
//    ]}
//
// Qubits are 1-based across both registers, angles are radians.

std::string circuit_to_json(const Circuit& circuit);

/// Parses and validates; throws ContractError on malformed input.
Circuit circuit_from_json(std::string_view text);

void write_circuit_file(const Circuit& circuit, const std::filesystem::path& path);
Circuit read_circuit_file(const std::filesystem::path& path);

std::string to_string(GateKind kind);
std::string to_string(Stage stage);

}  // namespace fshor
