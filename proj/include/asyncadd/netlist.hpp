#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asyncadd {

using NetId = std::uint32_t;
using GateId = std::uint32_t;

/// Gate alphabet. Every kind is positive unate in all of its inputs.
/// AO21 inputs are ordered (a, b, c) with out = (a & b) | c.
/// C2 is the two-input Muller C-element; its state lives inside the gate.
enum class GateKind : std::uint8_t { And2 = 0, Or2 = 1, Ao21 = 2, C2 = 3 };

inline constexpr std::array<GateKind, 4> kAllGateKinds = {GateKind::And2, GateKind::Or2,
                                                          GateKind::Ao21, GateKind::C2};

constexpr std::size_t arity(GateKind kind) { return kind == GateKind::Ao21 ? 3 : 2; }
constexpr std::size_t index_of(GateKind kind) { return static_cast<std::size_t>(kind); }

std::string_view to_string(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view text);

struct Gate {
  GateId id = 0;
  GateKind kind = GateKind::And2;
  std::vector<NetId> inputs;
  NetId output = 0;

  bool operator==(const Gate&) const = default;
};

struct Net {
  NetId id = 0;
  std::string name;

  bool operator==(const Net&) const = default;
};

enum class PortDir : std::uint8_t { In, Out };

/// A named group of rails forming one codeword (or a single control rail).
/// Rail order: dual-rail groups are (rail1, rail0); 1-of-4 groups are
/// (E0, E1, E2, E3).
struct Port {
  std::string name;
  PortDir dir = PortDir::In;
  std::vector<NetId> nets;

  bool operator==(const Port&) const = default;
};

struct Metadata {
  std::string variant;
  int width = 0;

  bool operator==(const Metadata&) const = default;
};

/// Who drives a net: a primary-input port or a gate output.
struct Driver {
  enum class Kind : std::uint8_t { Port, Gate } kind;
  std::uint32_t index;  // port index or gate id
};

/// Immutable, validated gate-level netlist. Net and gate ids are dense
/// (id == position) and stable for identical construction order.
class Netlist {
 public:
  /// Validates and builds. Throws Error with MultipleDrivers, ArityMismatch,
  /// CycleDetected or DanglingNet naming the offending ids.
  static Netlist build(std::vector<Net> nets, std::vector<Gate> gates, std::vector<Port> ports,
                       Metadata metadata = {});

  std::span<const Net> nets() const { return nets_; }
  std::span<const Gate> gates() const { return gates_; }
  std::span<const Port> ports() const { return ports_; }
  const Metadata& metadata() const { return metadata_; }

  const Net& net(NetId id) const { return nets_.at(id); }
  const Gate& gate(GateId id) const { return gates_.at(id); }
  Driver driver(NetId id) const { return drivers_.at(id); }
  bool is_primary_input(NetId id) const { return drivers_.at(id).kind == Driver::Kind::Port; }

  /// Gates reading `net`, ascending by gate id.
  std::span<const GateId> fanout(NetId net) const {
    return {fanout_.data() + fanout_offset_[net], fanout_.data() + fanout_offset_[net + 1]};
  }

  /// Gate ids in a topological order (inputs before readers), ties by id.
  std::span<const GateId> topo_order() const { return topo_; }

  const Port* find_port(std::string_view name) const;
  std::optional<NetId> find_net(std::string_view name) const;

  std::size_t count(GateKind kind) const;

  /// Structural equality: same nets, gates, ports and metadata.
  bool operator==(const Netlist& other) const {
    return nets_ == other.nets_ && gates_ == other.gates_ && ports_ == other.ports_ &&
           metadata_ == other.metadata_;
  }

 private:
  Netlist() = default;

  std::vector<Net> nets_;
  std::vector<Gate> gates_;
  std::vector<Port> ports_;
  Metadata metadata_;
  std::vector<Driver> drivers_;
  std::vector<std::uint32_t> fanout_offset_;
  std::vector<GateId> fanout_;
  std::vector<GateId> topo_;
};

/// Incremental construction helper used by the generators. Nets are
/// numbered in creation order, so identical call sequences give identical
/// netlists.
class NetlistBuilder {
 public:
  NetId add_net(std::string name);
  NetId add_gate(GateKind kind, std::vector<NetId> inputs, std::string name = {});

  /// Balanced tree of 2-input `kind` gates over `operands`, pairing
  /// neighbours left to right level by level. A single operand is returned
  /// unchanged.
  NetId tree(GateKind kind, std::span<const NetId> operands, std::string_view name_prefix = {});

  void add_port(std::string name, PortDir dir, std::vector<NetId> nets);
  void rename(NetId net, std::string name);

  Netlist finish(Metadata metadata) &&;

 private:
  std::vector<Net> nets_;
  std::vector<Gate> gates_;
  std::vector<Port> ports_;
};

/// Per-kind weights for path analysis (indexed by index_of(kind)).
struct GateWeights {
  std::array<double, 4> by_kind{1.0, 1.0, 1.0, 1.0};

  static GateWeights unit() { return {}; }
  double operator()(GateKind kind) const { return by_kind[index_of(kind)]; }
};

struct PathReport {
  double depth = 0.0;
  std::vector<GateId> path;  // source side first
};

/// Maximum-weight path from any rail of `source_ports` to any rail of
/// `sink_ports`. Among equal-weight paths the lexicographically smallest
/// gate-id sequence wins. Throws NoPath, UnknownPort, ConfigInvalid.
PathReport longest_path(const Netlist& netlist, std::span<const std::string> source_ports,
                        std::span<const std::string> sink_ports,
                        const GateWeights& weights = GateWeights::unit());

}  // namespace asyncadd
