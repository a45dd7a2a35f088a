#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asyncadd/encoding.hpp"
#include "asyncadd/equations.hpp"
#include "asyncadd/netlist.hpp"

namespace asyncadd {

enum class CodeKind : std::uint8_t { Single, DualRail, OneOfFour };

/// Operand and position encoded in a port-group name: "A3" is bit 3 of A,
/// "A_d1" is digit 1 of A, "CIN" is bit 0 of CIN.
struct PortName {
  std::string operand;
  unsigned position = 0;
};
PortName parse_port_name(std::string_view name);

/// The port groups that together carry one integer operand.
struct OperandLayout {
  std::string name;
  PortDir dir = PortDir::In;
  CodeKind code = CodeKind::DualRail;
  std::vector<std::size_t> ports;  // indices into Netlist::ports(), LSB first
  unsigned width = 0;              // in bits

  bool is_control() const { return code == CodeKind::Single; }
};

/// Operands in order of first appearance among the ports. Throws
/// ConfigInvalid for inconsistent groups (mixed codes, gaps in positions).
std::vector<OperandLayout> operand_layouts(const Netlist& netlist);

/// Rail levels (net, level) that carry `value` on the operand's ports.
/// Throws ValueOutOfRange.
std::vector<std::pair<NetId, Level>> operand_rails(const Netlist& netlist, const OperandLayout& op,
                                                   std::uint64_t value);

/// Reads the operand word from a net-level vector.
Decoded read_operand(const Netlist& netlist, const OperandLayout& op, std::span<const Level> levels);

/// Codeword text, most significant codeword first ("10|01").
std::string render_operand(const Netlist& netlist, const OperandLayout& op,
                           std::span<const Level> levels);

}  // namespace asyncadd
