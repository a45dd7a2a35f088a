#include "asyncadd/simulator.hpp"

#include <charconv>
#include <random>
#include <sstream>

#include "asyncadd/error.hpp"

namespace asyncadd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<Tick> assign_delays(const Netlist& netlist, const DelayModel& model) {
  const auto gates = netlist.gates();
  std::vector<Tick> delays(gates.size(), 1);
  std::visit(overloaded{
                 [](const UnitDelay&) {},
                 [&](const TableDelay& t) {
                   for (Tick d : t.by_kind) {
                     if (d == 0) throw Error(ErrorCode::ConfigInvalid, "gate delays must be positive");
                   }
                   for (std::size_t i = 0; i < gates.size(); ++i) delays[i] = t.by_kind[index_of(gates[i].kind)];
                 },
                 [&](const RandomDelay& r) {
                   if (r.min == 0 || r.min > r.max) {
                     throw Error(ErrorCode::ConfigInvalid, "random delay range must satisfy 1 <= min <= max");
                   }
                   std::mt19937_64 rng(r.seed);
                   std::uniform_int_distribution<Tick> dist(r.min, r.max);
                   for (auto& d : delays) d = dist(rng);
                 },
             },
             model);
  return delays;
}

DelayModel parse_delay_model(std::string_view text) {
  if (text == "unit") return UnitDelay{};
  if (text.starts_with("table:")) {
    TableDelay t;
    for (auto item : split(text.substr(6), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorCode::ConfigInvalid, "bad table entry '" + std::string(item) + "'");
      const auto kind = parse_gate_kind(item.substr(0, eq));
      if (!kind) throw Error(ErrorCode::ConfigInvalid, "unknown gate kind '" + std::string(item.substr(0, eq)) + "'");
      t.by_kind[index_of(*kind)] = parse_uint(item.substr(eq + 1), "delay");
    }
    return t;
  }
  if (text.starts_with("random:")) {
    const auto parts = split(text.substr(7), ':');
    RandomDelay r;
    if (parts.size() != 1 && parts.size() != 3) {
      throw Error(ErrorCode::ConfigInvalid, "expected random:SEED or random:SEED:MIN:MAX");
    }
    r.seed = parse_uint(parts[0], "seed");
    if (parts.size() == 3) {
      r.min = parse_uint(parts[1], "min delay");
      r.max = parse_uint(parts[2], "max delay");
    }
    return r;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown delay model '" + std::string(text) + "'");
}

std::string describe(const DelayModel& model) {
  return std::visit(overloaded{
                        [](const UnitDelay&) { return std::string("unit"); },
                        [](const TableDelay& t) {
                          std::ostringstream os;
                          os << "table:";
                          for (std::size_t i = 0; i < kAllGateKinds.size(); ++i) {
                            if (i) os << ',';
                            os << to_string(kAllGateKinds[i]) << '=' << t.by_kind[i];
                          }
                          return os.str();
                        },
                        [](const RandomDelay& r) {
                          return "random:" + std::to_string(r.seed) + ":" + std::to_string(r.min) + ":" +
                                 std::to_string(r.max);
                        },
                    },
                    model);
}

Simulator::Simulator(const Netlist& netlist, std::vector<Tick> delays)
    : netlist_(&netlist), delays_(std::move(delays)) {
  if (delays_.size() != netlist.gates().size()) {
    throw Error(ErrorCode::ConfigInvalid, "one delay per gate required");
  }
  for (Tick d : delays_) {
    if (d == 0) throw Error(ErrorCode::ConfigInvalid, "gate delays must be positive");
  }
  stamp_.assign(netlist.gates().size(), 0);
  reset();
}

Simulator::Simulator(const Netlist& netlist, const DelayModel& model)
    : Simulator(netlist, assign_delays(netlist, model)) {}

void Simulator::reset() {
  levels_.assign(netlist_->nets().size(), 0);
  projected_.assign(netlist_->gates().size(), 0);
  queue_ = {};
  seq_ = 0;
  now_ = 0;
  trace_.clear();
}

void Simulator::schedule(std::span<const Event> stimuli) {
  Tick last = now_;
  for (const auto& e : stimuli) {
    if (e.net >= levels_.size()) {
      throw Error(ErrorCode::UnknownNet, "net " + std::to_string(e.net) + " does not exist");
    }
    if (!netlist_->is_primary_input(e.net)) {
      throw Error(ErrorCode::UnknownNet, "net '" + netlist_->net(e.net).name + "' is not a primary input");
    }
    if (e.time < last) {
      throw Error(ErrorCode::NonMonotoneStimulusTime,
                  "stimulus at " + std::to_string(e.time) + " after " + std::to_string(last));
    }
    last = e.time;
  }
  for (const auto& e : stimuli) push(e.time, e.net, e.level != 0 ? 1 : 0);
}

void Simulator::push(Tick time, NetId net, Level level) { queue_.push({time, net, seq_++, level}); }

Level Simulator::evaluate(const Gate& g) const {
  const auto& in = g.inputs;
  switch (g.kind) {
    case GateKind::And2: return levels_[in[0]] & levels_[in[1]];
    case GateKind::Or2: return levels_[in[0]] | levels_[in[1]];
    case GateKind::Ao21: return (levels_[in[0]] & levels_[in[1]]) | levels_[in[2]];
    case GateKind::C2:
      return levels_[in[0]] == levels_[in[1]] ? levels_[in[0]] : projected_[g.id];
  }
  return 0;
}

bool Simulator::step() {
  if (queue_.empty()) return false;
  const Tick t = queue_.top().time;
  now_ = t;
  ++epoch_;
  std::vector<GateId> touched;
  while (!queue_.empty() && queue_.top().time == t) {
    const Pending p = queue_.top();
    queue_.pop();
    if (levels_[p.net] == p.level) continue;
    levels_[p.net] = p.level;
    trace_.push_back({t, p.net, p.level});
    for (GateId g : netlist_->fanout(p.net)) {
      if (stamp_[g] != epoch_) {
        stamp_[g] = epoch_;
        touched.push_back(g);
      }
    }
  }
  const auto gates = netlist_->gates();
  for (GateId id : touched) {
    const Gate& g = gates[id];
    const Level v = evaluate(g);
    if (v != projected_[id]) {
      projected_[id] = v;
      push(t + delays_[id], g.output, v);
    }
  }
  return true;
}

void Simulator::run() {
  while (step()) {
  }
}

SimResult simulate(const Netlist& netlist, const DelayModel& model, std::span<const Event> stimuli) {
  Simulator sim(netlist, model);
  sim.schedule(stimuli);
  sim.run();
  return {sim.trace(), std::vector<Level>(sim.levels().begin(), sim.levels().end()), sim.now()};
}

std::size_t gate_transitions(const Netlist& netlist, const Trace& trace) {
  std::size_t n = 0;
  for (const auto& e : trace) {
    if (!netlist.is_primary_input(e.net)) ++n;
  }
  return n;
}

}  // namespace asyncadd
