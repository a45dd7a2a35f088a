#include "asyncadd/operands.hpp"

#include <algorithm>
#include <cctype>

#include "asyncadd/error.hpp"

namespace asyncadd {

PortName parse_port_name(std::string_view name) {
  std::size_t end = name.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
  if (end == 0) return {std::string(name), 0};
  unsigned position = 0;
  for (std::size_t i = end; i < name.size(); ++i) position = position * 10 + (name[i] - '0');
  std::string_view stem = name.substr(0, end);
  if (stem.ends_with("_d") && stem.size() > 2) stem.remove_suffix(2);
  return {std::string(stem), position};
}

namespace {

CodeKind code_of(const Port& p) {
  switch (p.nets.size()) {
    case 1: return CodeKind::Single;
    case 2: return CodeKind::DualRail;
    case 4: return CodeKind::OneOfFour;
    default:
      throw Error(ErrorCode::ConfigInvalid,
                  "port '" + p.name + "' has " + std::to_string(p.nets.size()) + " rails");
  }
}

unsigned bits_per_group(CodeKind code) { return code == CodeKind::OneOfFour ? 2 : 1; }

}  // namespace

std::vector<OperandLayout> operand_layouts(const Netlist& netlist) {
  std::vector<OperandLayout> ops;
  std::vector<std::vector<unsigned>> positions;
  const auto ports = netlist.ports();
  for (std::size_t i = 0; i < ports.size(); ++i) {
    const auto parsed = parse_port_name(ports[i].name);
    const CodeKind code = code_of(ports[i]);
    auto it = std::find_if(ops.begin(), ops.end(), [&](const OperandLayout& o) {
      return o.name == parsed.operand && o.dir == ports[i].dir;
    });
    if (it == ops.end()) {
      ops.push_back({parsed.operand, ports[i].dir, code, {}, 0});
      positions.emplace_back();
      it = std::prev(ops.end());
    } else if (it->code != code) {
      throw Error(ErrorCode::ConfigInvalid, "operand '" + parsed.operand + "' mixes codes");
    }
    it->ports.push_back(i);
    positions[static_cast<std::size_t>(it - ops.begin())].push_back(parsed.position);
  }
  for (std::size_t o = 0; o < ops.size(); ++o) {
    auto& op = ops[o];
    auto& pos = positions[o];
    std::vector<std::size_t> order(op.ports.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return pos[x] < pos[y]; });
    std::vector<std::size_t> sorted_ports;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (pos[order[i]] != i) {
        throw Error(ErrorCode::ConfigInvalid, "operand '" + op.name + "' has a gap or duplicate at position " +
                                                  std::to_string(i));
      }
      sorted_ports.push_back(op.ports[order[i]]);
    }
    op.ports = std::move(sorted_ports);
    op.width = static_cast<unsigned>(op.ports.size()) * bits_per_group(op.code);
  }
  return ops;
}

std::vector<std::pair<NetId, Level>> operand_rails(const Netlist& netlist, const OperandLayout& op,
                                                   std::uint64_t value) {
  if (op.width < 64 && (value >> op.width) != 0) {
    throw Error(ErrorCode::ValueOutOfRange, std::to_string(value) + " does not fit operand '" +
                                                op.name + "' (" + std::to_string(op.width) + " bits)");
  }
  std::vector<std::pair<NetId, Level>> rails;
  for (std::size_t k = 0; k < op.ports.size(); ++k) {
    const Port& p = netlist.ports()[op.ports[k]];
    switch (op.code) {
      case CodeKind::Single:
        rails.emplace_back(p.nets[0], static_cast<Level>((value >> k) & 1U));
        break;
      case CodeKind::DualRail: {
        const auto pair = DualRailPair::encode(((value >> k) & 1U) != 0);
        rails.emplace_back(p.nets[0], pair.d1);
        rails.emplace_back(p.nets[1], pair.d0);
        break;
      }
      case CodeKind::OneOfFour: {
        const auto digit = OneOfFourDigit::encode(static_cast<unsigned>((value >> (2 * k)) & 3U));
        for (unsigned v = 0; v < 4; ++v) rails.emplace_back(p.nets[v], digit.e(v));
        break;
      }
    }
  }
  return rails;
}

Decoded read_operand(const Netlist& netlist, const OperandLayout& op, std::span<const Level> levels) {
  const auto ports = netlist.ports();
  switch (op.code) {
    case CodeKind::Single: {
      std::uint64_t v = 0;
      for (std::size_t k = 0; k < op.ports.size(); ++k) {
        if (levels[ports[op.ports[k]].nets[0]] != 0) v |= std::uint64_t{1} << k;
      }
      return {WordClass::Valid, v};
    }
    case CodeKind::DualRail: {
      DualRailWord w;
      for (auto pi : op.ports) {
        const auto& n = ports[pi].nets;
        w.bits.push_back({levels[n[0]] != 0, levels[n[1]] != 0});
      }
      return decode(w);
    }
    case CodeKind::OneOfFour: {
      OneOfFourWord w;
      for (auto pi : op.ports) {
        const auto& n = ports[pi].nets;
        w.digits.push_back(OneOfFourDigit::from_rails(levels[n[0]] != 0, levels[n[1]] != 0,
                                                      levels[n[2]] != 0, levels[n[3]] != 0));
      }
      return decode(w);
    }
  }
  return {};
}

std::string render_operand(const Netlist& netlist, const OperandLayout& op,
                           std::span<const Level> levels) {
  const auto ports = netlist.ports();
  std::string s;
  for (auto it = op.ports.rbegin(); it != op.ports.rend(); ++it) {
    if (!s.empty()) s.push_back('|');
    const auto& n = ports[*it].nets;
    if (op.code == CodeKind::OneOfFour) {
      for (int v = 3; v >= 0; --v) s.push_back(levels[n[static_cast<std::size_t>(v)]] ? '1' : '0');
    } else {
      for (NetId net : n) s.push_back(levels[net] ? '1' : '0');
    }
  }
  return s;
}

}  // namespace asyncadd
