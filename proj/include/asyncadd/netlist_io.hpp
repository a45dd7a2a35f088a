#pragma once

#include <string>
#include <string_view>

#include "asyncadd/netlist.hpp"

namespace asyncadd {

/// JSON interchange:
///   {"variant": str, "width": int,
///    "nets":  [{"id": int, "name": str}, ...],
///    "gates": [{"id": int, "kind": "AND2"|"OR2"|"AO21"|"C2",
///               "inputs": [net ids], "output": net id}, ...],
///    "ports": {name: {"dir": "in"|"out", "nets": [net ids in rail order]}, ...}}
/// AO21 inputs are ordered (a, b, c). Output is deterministic.
std::string export_json(const Netlist& netlist);

/// Throws SchemaViolation with a JSON-pointer location for malformed text,
/// and the build() errors for structurally invalid netlists.
Netlist import_json(std::string_view text);

/// Graphviz digraph: one node statement per gate labelled by kind, one edge
/// per net connection. Primary inputs/outputs appear as "in:NAME" /
/// "out:NAME" endpoints. Deterministic.
std::string export_dot(const Netlist& netlist);

}  // namespace asyncadd
