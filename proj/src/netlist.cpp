#include "asyncadd/netlist.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "asyncadd/error.hpp"

namespace asyncadd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MultipleDrivers: return "MultipleDrivers";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DanglingNet: return "DanglingNet";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::UnknownPort: return "UnknownPort";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::OddWidth: return "OddWidth";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::EmptyPortList: return "EmptyPortList";
    case ErrorCode::NonMonotoneStimulusTime: return "NonMonotoneStimulusTime";
    case ErrorCode::UnknownNet: return "UnknownNet";
    case ErrorCode::OutputsIllegal: return "OutputsIllegal";
    case ErrorCode::ResidualState: return "ResidualState";
    case ErrorCode::AssertionFailed: return "AssertionFailed";
  }
  return "Unknown";
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And2: return "AND2";
    case GateKind::Or2: return "OR2";
    case GateKind::Ao21: return "AO21";
    case GateKind::C2: return "C2";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view text) {
  for (GateKind kind : kAllGateKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

namespace {

std::string describe_driver(const Driver& d, std::span<const Port> ports) {
  if (d.kind == Driver::Kind::Port) return "input port '" + ports[d.index].name + "'";
  return "gate " + std::to_string(d.index);
}

}  // namespace

Netlist Netlist::build(std::vector<Net> nets, std::vector<Gate> gates, std::vector<Port> ports,
                       Metadata metadata) {
  const auto num_nets = nets.size();
  for (std::size_t i = 0; i < num_nets; ++i) {
    if (nets[i].id != i) {
      throw Error(ErrorCode::DanglingNet, "net '" + nets[i].name + "' has id " +
                                              std::to_string(nets[i].id) + " at position " +
                                              std::to_string(i) + "; ids must be dense");
    }
  }
  auto check_net = [&](NetId id, const std::string& where) {
    if (id >= num_nets) {
      throw Error(ErrorCode::DanglingNet,
                  where + " references undeclared net " + std::to_string(id));
    }
  };

  std::set<std::string, std::less<>> port_names;
  for (const auto& port : ports) {
    if (!port_names.insert(port.name).second) {
      throw Error(ErrorCode::ConfigInvalid, "duplicate port name '" + port.name + "'");
    }
    if (port.nets.empty()) {
      throw Error(ErrorCode::ConfigInvalid, "port '" + port.name + "' has no rails");
    }
    for (NetId id : port.nets) check_net(id, "port '" + port.name + "'");
  }

  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    if (g.id != i) {
      throw Error(ErrorCode::ConfigInvalid, "gate id " + std::to_string(g.id) + " at position " +
                                                std::to_string(i) + "; ids must be dense");
    }
    if (g.inputs.size() != arity(g.kind)) {
      throw Error(ErrorCode::ArityMismatch,
                  "gate " + std::to_string(g.id) + " (" + std::string(to_string(g.kind)) +
                      ") has " + std::to_string(g.inputs.size()) + " inputs, expected " +
                      std::to_string(arity(g.kind)));
    }
    for (NetId in : g.inputs) check_net(in, "gate " + std::to_string(g.id));
    check_net(g.output, "gate " + std::to_string(g.id));
  }

  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<Driver> drivers(num_nets, Driver{Driver::Kind::Port, kNone});
  auto claim = [&](NetId net, Driver d) {
    if (drivers[net].index != kNone) {
      throw Error(ErrorCode::MultipleDrivers,
                  "net " + std::to_string(net) + " ('" + nets[net].name + "') driven by " +
                      describe_driver(drivers[net], ports) + " and " +
                      describe_driver(d, ports));
    }
    drivers[net] = d;
  };
  for (std::uint32_t p = 0; p < ports.size(); ++p) {
    if (ports[p].dir != PortDir::In) continue;
    for (NetId net : ports[p].nets) claim(net, {Driver::Kind::Port, p});
  }
  for (const auto& g : gates) claim(g.output, {Driver::Kind::Gate, g.id});
  for (NetId n = 0; n < num_nets; ++n) {
    if (drivers[n].index == kNone) {
      throw Error(ErrorCode::DanglingNet,
                  "net " + std::to_string(n) + " ('" + nets[n].name + "') has no driver");
    }
  }

  // Fanout in CSR form, gate ids ascending within each net. A gate reading
  // the same net twice appears once.
  std::vector<std::uint32_t> offset(num_nets + 1, 0);
  std::vector<GateId> fanout;
  {
    std::vector<std::vector<GateId>> readers(num_nets);
    for (const auto& g : gates) {
      for (NetId in : g.inputs) {
        if (readers[in].empty() || readers[in].back() != g.id) readers[in].push_back(g.id);
      }
    }
    for (std::size_t n = 0; n < num_nets; ++n) {
      fanout.insert(fanout.end(), readers[n].begin(), readers[n].end());
      offset[n + 1] = static_cast<std::uint32_t>(fanout.size());
    }
  }

  // Kahn's algorithm with a min-heap so the order is unique.
  std::vector<std::uint32_t> pending(gates.size(), 0);
  for (const auto& g : gates) {
    for (NetId in : g.inputs) {
      if (drivers[in].kind == Driver::Kind::Gate) ++pending[g.id];
    }
  }
  std::priority_queue<GateId, std::vector<GateId>, std::greater<>> ready;
  for (const auto& g : gates) {
    if (pending[g.id] == 0) ready.push(g.id);
  }
  std::vector<GateId> topo;
  topo.reserve(gates.size());
  while (!ready.empty()) {
    const GateId id = ready.top();
    ready.pop();
    topo.push_back(id);
    const NetId out = gates[id].output;
    for (auto i = offset[out]; i < offset[out + 1]; ++i) {
      const GateId reader = fanout[i];
      for (NetId in : gates[reader].inputs) {
        if (in == out && --pending[reader] == 0) ready.push(reader);
      }
    }
  }
  if (topo.size() != gates.size()) {
    std::ostringstream msg;
    msg << "gates on or behind a cycle:";
    for (const auto& g : gates) {
      if (pending[g.id] != 0) msg << ' ' << g.id;
    }
    throw Error(ErrorCode::CycleDetected, msg.str());
  }

  Netlist n;
  n.nets_ = std::move(nets);
  n.gates_ = std::move(gates);
  n.ports_ = std::move(ports);
  n.metadata_ = std::move(metadata);
  n.drivers_ = std::move(drivers);
  n.fanout_offset_ = std::move(offset);
  n.fanout_ = std::move(fanout);
  n.topo_ = std::move(topo);
  return n;
}

const Port* Netlist::find_port(std::string_view name) const {
  for (const auto& p : ports_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::optional<NetId> Netlist::find_net(std::string_view name) const {
  for (const auto& n : nets_) {
    if (n.name == name) return n.id;
  }
  return std::nullopt;
}

std::size_t Netlist::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [&](const Gate& g) { return g.kind == kind; }));
}

// ---------------------------------------------------------------------------

NetId NetlistBuilder::add_net(std::string name) {
  const auto id = static_cast<NetId>(nets_.size());
  if (name.empty()) name = "n" + std::to_string(id);
  nets_.push_back({id, std::move(name)});
  return id;
}

NetId NetlistBuilder::add_gate(GateKind kind, std::vector<NetId> inputs, std::string name) {
  const NetId out = add_net(std::move(name));
  const auto id = static_cast<GateId>(gates_.size());
  gates_.push_back({id, kind, std::move(inputs), out});
  return out;
}

NetId NetlistBuilder::tree(GateKind kind, std::span<const NetId> operands,
                           std::string_view name_prefix) {
  if (operands.empty()) throw Error(ErrorCode::ConfigInvalid, "tree over zero operands");
  std::vector<NetId> level(operands.begin(), operands.end());
  while (level.size() > 1) {
    std::vector<NetId> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i < level.size(); i += 2) {
      if (i + 1 < level.size()) {
        std::string name;
        if (!name_prefix.empty()) name = std::string(name_prefix) + "_" + std::to_string(nets_.size());
        next.push_back(add_gate(kind, {level[i], level[i + 1]}, std::move(name)));
      } else {
        next.push_back(level[i]);
      }
    }
    level = std::move(next);
  }
  return level.front();
}

void NetlistBuilder::add_port(std::string name, PortDir dir, std::vector<NetId> nets) {
  ports_.push_back({std::move(name), dir, std::move(nets)});
}

void NetlistBuilder::rename(NetId net, std::string name) { nets_.at(net).name = std::move(name); }

Netlist NetlistBuilder::finish(Metadata metadata) && {
  return Netlist::build(std::move(nets_), std::move(gates_), std::move(ports_),
                        std::move(metadata));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<NetId> rails_of(const Netlist& netlist, std::span<const std::string> names) {
  std::vector<NetId> rails;
  for (const auto& name : names) {
    const Port* port = netlist.find_port(name);
    if (port == nullptr) throw Error(ErrorCode::UnknownPort, "no port named '" + name + "'");
    rails.insert(rails.end(), port->nets.begin(), port->nets.end());
  }
  return rails;
}

}  // namespace

PathReport longest_path(const Netlist& netlist, std::span<const std::string> source_ports,
                        std::span<const std::string> sink_ports, const GateWeights& weights) {
  for (double w : weights.by_kind) {
    if (!(w >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "gate weights must be non-negative");
  }
  const auto sources = rails_of(netlist, source_ports);
  const auto sinks = rails_of(netlist, sink_ports);

  struct Best {
    bool reached = false;
    double depth = 0.0;
    std::vector<GateId> path;
  };
  auto better = [](double depth, const std::vector<GateId>& path, const Best& current) {
    if (!current.reached) return true;
    if (depth != current.depth) return depth > current.depth;
    return path < current.path;
  };

  std::vector<Best> best(netlist.nets().size());
  for (NetId s : sources) best[s] = {true, 0.0, {}};

  for (GateId id : netlist.topo_order()) {
    const Gate& g = netlist.gate(id);
    Best& out = best[g.output];
    for (NetId in : g.inputs) {
      const Best& b = best[in];
      if (!b.reached) continue;
      const double depth = b.depth + weights(g.kind);
      std::vector<GateId> path = b.path;
      path.push_back(id);
      if (better(depth, path, out)) out = {true, depth, std::move(path)};
    }
  }

  const Best* winner = nullptr;
  for (NetId s : sinks) {
    const Best& b = best[s];
    if (!b.reached) continue;
    if (winner == nullptr || better(b.depth, b.path, *winner)) winner = &b;
  }
  if (winner == nullptr) throw Error(ErrorCode::NoPath, "no sink rail is reachable from the sources");
  return {winner->depth, winner->path};
}

}  // namespace asyncadd
