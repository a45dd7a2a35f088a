#include "asyncadd/protocol.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

#include "asyncadd/error.hpp"

namespace asyncadd {

OperandValues adder_operands(const AdderVector& v) {
  return {{"A", v.a}, {"B", v.b}, {"CIN", v.cin ? 1U : 0U}};
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kMaxReportedFailures = 8;

struct Context {
  const Netlist& nl;
  std::vector<OperandLayout> ops;
  std::vector<std::size_t> input_ops;
  std::vector<std::size_t> output_ops;
  std::vector<std::size_t> input_ordinal;  // per net: position among input ports, or kNone
  std::vector<std::uint8_t> data_out;      // per net
  std::vector<std::uint8_t> cd_out;        // per net
  std::size_t input_ports = 0;

  explicit Context(const Netlist& netlist) : nl(netlist), ops(operand_layouts(netlist)) {
    const auto n = netlist.nets().size();
    input_ordinal.assign(n, kNone);
    data_out.assign(n, 0);
    cd_out.assign(n, 0);
    for (const auto& p : netlist.ports()) {
      if (p.dir != PortDir::In) continue;
      for (NetId net : p.nets) input_ordinal[net] = input_ports;
      ++input_ports;
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].dir == PortDir::In) {
        input_ops.push_back(i);
        continue;
      }
      output_ops.push_back(i);
      for (auto pi : ops[i].ports) {
        for (NetId net : netlist.ports()[pi].nets) (ops[i].is_control() ? cd_out : data_out)[net] = 1;
      }
    }
  }

  /// Value per entry of `ops` (inputs only).
  std::vector<std::uint64_t> resolve(const OperandValues& values) const {
    std::vector<std::uint64_t> out(ops.size(), 0);
    std::vector<std::uint8_t> seen(ops.size(), 0);
    for (const auto& v : values) {
      auto it = std::find_if(input_ops.begin(), input_ops.end(), [&](auto i) { return ops[i].name == v.operand; });
      if (it == input_ops.end()) throw Error(ErrorCode::UnknownPort, "no input operand '" + v.operand + "'");
      if (seen[*it]) throw Error(ErrorCode::ConfigInvalid, "operand '" + v.operand + "' given twice");
      seen[*it] = 1;
      out[*it] = v.value;
    }
    for (auto i : input_ops) {
      if (!seen[i]) throw Error(ErrorCode::ConfigInvalid, "no value for operand '" + ops[i].name + "'");
    }
    return out;
  }

  Tick offset(NetId net, const std::vector<Tick>& schedule) const {
    return schedule.empty() ? 0 : schedule[input_ordinal[net]];
  }

  void check_schedule(const std::vector<Tick>& schedule) const {
    if (!schedule.empty() && schedule.size() != input_ports) {
      throw Error(ErrorCode::ConfigInvalid, "schedule needs one offset per input port (" +
                                                std::to_string(input_ports) + "), got " +
                                                std::to_string(schedule.size()));
    }
  }

  /// Rails rising to carry `values`, at base + per-port offset.
  std::vector<Event> valid_events(const std::vector<std::uint64_t>& values, Tick base,
                                  const std::vector<Tick>& schedule) const {
    std::vector<Event> events;
    for (auto i : input_ops) {
      for (auto [net, level] : operand_rails(nl, ops[i], values[i])) {
        if (level) events.push_back({base + offset(net, schedule), net, 1});
      }
    }
    sort_events(events);
    return events;
  }

  /// Every high input rail falling, or only those on ports selected by `only`.
  std::vector<Event> spacer_events(std::span<const Level> levels, Tick base, const std::vector<Tick>& schedule,
                                   const std::vector<std::uint8_t>* only = nullptr) const {
    std::vector<Event> events;
    for (NetId net = 0; net < levels.size(); ++net) {
      if (input_ordinal[net] == kNone || !levels[net]) continue;
      if (only && !(*only)[input_ordinal[net]]) continue;
      events.push_back({base + offset(net, schedule), net, 0});
    }
    sort_events(events);
    return events;
  }

  static void sort_events(std::vector<Event>& events) {
    std::sort(events.begin(), events.end(),
              [](const Event& x, const Event& y) { return std::tie(x.time, x.net) < std::tie(y.time, y.net); });
  }

  std::vector<OutputReading> read_outputs(std::span<const Level> levels) const {
    std::vector<OutputReading> out;
    for (auto i : output_ops) {
      const auto d = read_operand(nl, ops[i], levels);
      out.push_back({ops[i].name, d.status, d.value, render_operand(nl, ops[i], levels)});
    }
    return out;
  }

  bool data_outputs_are(std::span<const Level> levels, WordClass cls) const {
    for (auto i : output_ops) {
      if (!ops[i].is_control() && read_operand(nl, ops[i], levels).status != cls) return false;
    }
    return true;
  }

  bool data_output_illegal(std::span<const Level> levels) const {
    for (auto i : output_ops) {
      if (!ops[i].is_control() && read_operand(nl, ops[i], levels).status == WordClass::Illegal) return true;
    }
    return false;
  }

  void require_spacer_start(const Simulator& sim) const {
    if (!sim.quiescent()) throw Error(ErrorCode::ConfigInvalid, "simulator is not quiescent");
    const auto levels = sim.levels();
    for (NetId net = 0; net < levels.size(); ++net) {
      if (levels[net]) throw Error(ErrorCode::ResidualState, "net '" + nl.net(net).name + "' is high before the cycle");
    }
  }
};

enum class PhaseKind { Valid, Rtz };

PhaseOutcome run_phase(Simulator& sim, const Context& ctx, const std::vector<Event>& events, Tick base,
                       PhaseKind kind, bool strict) {
  sim.clear_trace();
  sim.schedule(events);
  sim.run();

  PhaseOutcome out;
  if (!events.empty()) {
    out.first_input = events.front().time - base;
    out.last_input = events.back().time - base;
  }
  std::optional<Tick> last_data;
  for (const auto& e : sim.trace()) {
    const Event rel{e.time - base, e.net, e.level};
    out.trace.push_back(rel);
    if (ctx.data_out[e.net]) last_data = rel.time;
    if (ctx.cd_out[e.net]) out.cd_time = rel.time;
  }
  if (last_data) out.latency = *last_data - out.first_input;
  out.transitions = gate_transitions(ctx.nl, sim.trace());
  out.outputs = ctx.read_outputs(sim.levels());

  const auto levels = sim.levels();
  if (kind == PhaseKind::Valid) {
    out.complete = ctx.data_outputs_are(levels, WordClass::Valid);
    if (strict && !out.complete) {
      std::string detail;
      for (const auto& r : out.outputs) {
        if (r.status != WordClass::Valid) detail += " " + r.operand + "=" + r.text + " (" + to_string(r.status) + ")";
      }
      throw Error(ErrorCode::OutputsIllegal, "outputs not valid after settling:" + detail);
    }
  } else {
    out.complete = std::all_of(levels.begin(), levels.end(), [](Level l) { return l == 0; });
    if (strict && !out.complete) {
      std::string detail;
      std::size_t shown = 0;
      for (NetId net = 0; net < levels.size() && shown < kMaxReportedFailures; ++net) {
        if (levels[net]) {
          detail += " " + ctx.nl.net(net).name;
          ++shown;
        }
      }
      throw Error(ErrorCode::ResidualState, "nets still high after return-to-zero:" + detail);
    }
  }
  return out;
}

CycleOutcome run_cycle(Simulator& sim, const Context& ctx, const OperandValues& values, const CycleOptions& options) {
  ctx.check_schedule(options.schedule);
  const auto resolved = ctx.resolve(values);
  ctx.require_spacer_start(sim);

  CycleOutcome out;
  const Tick base_valid = sim.now();
  out.valid = run_phase(sim, ctx, ctx.valid_events(resolved, base_valid, options.schedule), base_valid,
                        PhaseKind::Valid, options.strict);
  const Tick base_rtz = sim.now();
  out.rtz = run_phase(sim, ctx, ctx.spacer_events(sim.levels(), base_rtz, options.schedule), base_rtz,
                      PhaseKind::Rtz, options.strict);
  return out;
}

std::string readings_text(const Context& ctx, const std::vector<OutputReading>& outputs) {
  std::string s;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (ctx.ops[ctx.output_ops[k]].is_control()) continue;
    if (!s.empty()) s += ' ';
    s += outputs[k].operand + "=" + outputs[k].text;
  }
  return s;
}

std::string data_outputs_text(const Context& ctx, std::span<const Level> levels) {
  std::string s;
  for (auto i : ctx.output_ops) {
    if (ctx.ops[i].is_control()) continue;
    if (!s.empty()) s += ' ';
    s += ctx.ops[i].name + "=" + render_operand(ctx.nl, ctx.ops[i], levels);
  }
  return s;
}

void note_failure(DiReport& report, std::string msg) {
  report.pass = false;
  if (report.failures.size() < kMaxReportedFailures) report.failures.push_back(std::move(msg));
}

}  // namespace

CycleOutcome run_4phase_cycle(Simulator& sim, const OperandValues& values, const CycleOptions& options) {
  const Context ctx(sim.netlist());
  return run_cycle(sim, ctx, values, options);
}

CycleOutcome run_4phase_cycle(const Netlist& netlist, const OperandValues& values, const DelayModel& delay,
                              const CycleOptions& options) {
  Simulator sim(netlist, delay);
  return run_4phase_cycle(sim, values, options);
}

MonotonicReport check_monotonic(const Trace& trace) {
  NetId max_net = 0;
  for (const auto& e : trace) max_net = std::max(max_net, e.net);
  std::vector<std::uint8_t> seen(trace.empty() ? 0 : max_net + 1, 0);
  for (const auto& e : trace) {
    if (seen[e.net]) return {false, e.net};
    seen[e.net] = 1;
  }
  return {};
}

DiReport check_delay_insensitive(const Netlist& netlist, std::span<const OperandValues> vectors,
                                 std::size_t trials, std::uint64_t seed, DiMode mode) {
  const Context ctx(netlist);
  DiReport report;
  report.trials = trials;
  report.vectors = vectors.size();
  report.seed = seed;

  std::vector<std::string> reference;
  {
    Simulator sim(netlist, UnitDelay{});
    for (const auto& v : vectors) {
      auto out = run_cycle(sim, ctx, v, {{}, false});
      reference.push_back(readings_text(ctx, out.valid.outputs));
      if (!out.rtz.complete) sim.reset();
    }
  }

  std::mt19937_64 seeds(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const RandomDelay delay{seeds()};
    Simulator sim(netlist, delay);
    const std::string tag = "trial " + std::to_string(t) + " (" + describe(delay) + ")";

    if (mode == DiMode::Quiescent) {
      for (std::size_t k = 0; k < vectors.size(); ++k) {
        auto out = run_cycle(sim, ctx, vectors[k], {{}, false});
        const auto got = readings_text(ctx, out.valid.outputs);
        if (got != reference[k]) {
          note_failure(report, tag + ", vector " + std::to_string(k) + ": " + got + ", expected " + reference[k]);
        }
        if (!out.rtz.complete) {
          note_failure(report, tag + ", vector " + std::to_string(k) + ": return-to-zero left nets high");
          sim.reset();
        }
      }
      continue;
    }

    bool illegal_seen = false;
    auto advance_until = [&](WordClass target) {
      while (sim.step()) {
        if (!illegal_seen && ctx.data_output_illegal(sim.levels())) {
          illegal_seen = true;
          note_failure(report, tag + ": illegal codeword at tick " + std::to_string(sim.now()) + ": " +
                                   data_outputs_text(ctx, sim.levels()));
        }
        if (ctx.data_outputs_are(sim.levels(), target)) return true;
      }
      return ctx.data_outputs_are(sim.levels(), target);
    };
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      const auto resolved = ctx.resolve(vectors[k]);
      sim.schedule(ctx.valid_events(resolved, sim.now(), {}));
      if (!advance_until(WordClass::Valid)) {
        note_failure(report, tag + ", vector " + std::to_string(k) + ": outputs never became valid");
      }
      const auto got = data_outputs_text(ctx, sim.levels());
      if (got != reference[k]) {
        note_failure(report, tag + ", vector " + std::to_string(k) + ": acknowledged " + got + ", expected " +
                                 reference[k]);
      }
      sim.schedule(ctx.spacer_events(sim.levels(), sim.now(), {}));
      advance_until(WordClass::Spacer);
    }
    sim.run();
    const auto levels = sim.levels();
    if (!std::all_of(levels.begin(), levels.end(), [](Level l) { return l == 0; })) {
      note_failure(report, tag + ": nets still high after the final return-to-zero");
    }
  }
  return report;
}

EarlyResetReport early_reset_probe(const Netlist& netlist, const OperandValues& values,
                                   std::span<const std::string> hold, std::span<const std::string> reset,
                                   const DelayModel& delay) {
  const Context ctx(netlist);
  std::vector<int> selected(ctx.input_ports, 0);  // 1 = hold, 2 = reset
  auto mark = [&](std::span<const std::string> selectors, int tag) {
    for (const auto& s : selectors) {
      bool matched = false;
      std::size_t ordinal = 0;
      for (const auto& p : netlist.ports()) {
        if (p.dir != PortDir::In) continue;
        if (p.name == s || parse_port_name(p.name).operand == s) {
          if (selected[ordinal] != 0 && selected[ordinal] != tag) {
            throw Error(ErrorCode::ConfigInvalid, "port '" + p.name + "' is both held and reset");
          }
          selected[ordinal] = tag;
          matched = true;
        }
        ++ordinal;
      }
      if (!matched) throw Error(ErrorCode::UnknownPort, "no input port or operand '" + s + "'");
    }
  };
  mark(hold, 1);
  mark(reset, 2);
  std::size_t ordinal = 0;
  for (const auto& p : netlist.ports()) {
    if (p.dir != PortDir::In) continue;
    if (selected[ordinal++] == 0) throw Error(ErrorCode::ConfigInvalid, "input port '" + p.name + "' is not selected");
  }

  Simulator sim(netlist, delay);
  const auto resolved = ctx.resolve(values);
  run_phase(sim, ctx, ctx.valid_events(resolved, 0, {}), 0, PhaseKind::Valid, true);

  std::vector<std::uint8_t> only(ctx.input_ports, 0);
  for (std::size_t i = 0; i < only.size(); ++i) only[i] = selected[i] == 2;
  const Tick base = sim.now();
  sim.clear_trace();
  sim.schedule(ctx.spacer_events(sim.levels(), base, {}, &only));
  sim.run();

  EarlyResetReport report;
  for (const auto& e : sim.trace()) report.trace.push_back({e.time - base, e.net, e.level});
  const auto levels = sim.levels();
  for (const auto& p : netlist.ports()) {
    if (p.dir != PortDir::Out) continue;
    SpacerArrival a;
    a.port = p.name;
    a.reached = std::all_of(p.nets.begin(), p.nets.end(), [&](NetId n) { return levels[n] == 0; });
    if (a.reached) {
      Tick t = 0;
      for (const auto& e : report.trace) {
        if (std::find(p.nets.begin(), p.nets.end(), e.net) != p.nets.end()) t = e.time;
      }
      a.time = t;
    }
    for (NetId n : p.nets) a.text.push_back(levels[n] ? '1' : '0');
    report.outputs.push_back(std::move(a));
  }
  return report;
}

std::string trace_to_csv(const Netlist& netlist, const Trace& trace) {
  std::ostringstream os;
  os << "tick,net,level\n";
  for (const auto& e : trace) os << e.time << ',' << netlist.net(e.net).name << ',' << int(e.level) << '\n';
  return os.str();
}

namespace {

nlohmann::ordered_json phase_json(const Netlist& netlist, const PhaseOutcome& p) {
  nlohmann::ordered_json j;
  j["complete"] = p.complete;
  j["first_input"] = p.first_input;
  j["last_input"] = p.last_input;
  j["latency"] = p.latency;
  j["cd_time"] = p.cd_time ? nlohmann::ordered_json(*p.cd_time) : nlohmann::ordered_json(nullptr);
  j["transitions"] = p.transitions;
  auto& outs = j["outputs"] = nlohmann::ordered_json::object();
  for (const auto& r : p.outputs) {
    outs[r.operand] = {{"status", to_string(r.status)},
                       {"value", r.value ? nlohmann::ordered_json(*r.value) : nlohmann::ordered_json(nullptr)},
                       {"text", r.text}};
  }
  j["monotonic"] = check_monotonic(p.trace).pass;
  auto& tr = j["trace"] = nlohmann::ordered_json::array();
  for (const auto& e : p.trace) tr.push_back({e.time, netlist.net(e.net).name, e.level});
  return j;
}

}  // namespace

std::string cycle_to_json(const Netlist& netlist, const CycleOutcome& outcome, const DelayModel& delay) {
  nlohmann::ordered_json j;
  j["variant"] = netlist.metadata().variant;
  j["width"] = netlist.metadata().width;
  j["delay"] = describe(delay);
  j["valid"] = phase_json(netlist, outcome.valid);
  j["rtz"] = phase_json(netlist, outcome.rtz);
  return j.dump(2) + "\n";
}

}  // namespace asyncadd
