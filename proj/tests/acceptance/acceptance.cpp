// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "asyncadd/analysis.hpp"
#include "asyncadd/equations.hpp"
#include "asyncadd/error.hpp"
#include "asyncadd/generators.hpp"
#include "asyncadd/protocol.hpp"
#include "asyncadd/simulator.hpp"

namespace {

using namespace asyncadd;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

constexpr Encoding kEncodings[] = {Encoding::Homogeneous, Encoding::Heterogeneous};

std::string enc_name(Encoding e) { return e == Encoding::Homogeneous ? "homo" : "hetero"; }

// Equation outputs against integer addition.
Verdict ac1() {
  const auto t0 = Clock::now();
  std::size_t checked = 0, wrong = 0;
  for (Encoding e : kEncodings) {
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = 0; b < 4; ++b) {
        for (unsigned cin = 0; cin < 2; ++cin) {
          ++checked;
          const auto out = decode_dbfa_outputs(e, eval_dbfa(e, dbfa_input_vector(e, a, b, cin != 0)));
          const unsigned s = a + b + cin;
          if (!out || out->sum != s % 4 || out->cout != (s / 4 == 1)) ++wrong;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  return {wrong == 0 && checked == 64 && t < 1.0,
          std::to_string(checked - wrong) + "/" + std::to_string(checked) + " inputs match, " + fmt(t) +
              " (limit 1 s)"};
}

// Gate-level DBFA against the equations, rail by rail, then full reset.
Verdict ac2() {
  const auto t0 = Clock::now();
  std::size_t cycles = 0, mismatches = 0, residual = 0;
  for (const auto& v : kAllVariants) {
    const Netlist n = gen_dbfa(v);
    const Encoding e = v.encoding;
    std::vector<NetId> in_nets, out_nets;
    for (auto name : dbfa_input_rails(e)) in_nets.push_back(*n.find_net(name));
    for (auto name : dbfa_output_rails(e)) out_nets.push_back(*n.find_net(name));
    std::vector<DelayModel> delays{UnitDelay{}};
    for (std::uint64_t s = 1; s <= 20; ++s) delays.emplace_back(RandomDelay{s});
    for (const auto& d : delays) {
      Simulator sim(n, d);
      for (unsigned i = 0; i < 32; ++i) {
        const auto rails = dbfa_input_vector(e, i >> 3, (i >> 1) & 3, (i & 1) != 0);
        std::vector<Event> set, clear;
        for (std::size_t r = 0; r < rails.size(); ++r) {
          if (rails[r]) {
            set.push_back({sim.now(), in_nets[r], 1});
          }
        }
        std::sort(set.begin(), set.end(), [](const Event& x, const Event& y) { return x.net < y.net; });
        sim.schedule(set);
        sim.run();
        const auto expect = eval_dbfa(e, rails);
        for (std::size_t o = 0; o < out_nets.size(); ++o) mismatches += sim.level(out_nets[o]) != expect[o];
        for (auto ev : set) clear.push_back({sim.now(), ev.net, 0});
        sim.schedule(clear);
        sim.run();
        residual += std::any_of(sim.levels().begin(), sim.levels().end(), [](Level l) { return l != 0; });
        ++cycles;
      }
    }
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && residual == 0 && cycles == 4 * 21 * 32 && t < 10.0,
          std::to_string(cycles) + " cycles (4 variants x 21 delay models x 32 inputs), " +
              std::to_string(mismatches) + " rail mismatches, " + std::to_string(residual) +
              " incomplete resets, " + fmt(t) + " (limit 10 s)"};
}

// At most one product term true per output per valid input.
Verdict ac3() {
  std::size_t worst = 0, outputs = 0;
  for (Encoding e : kEncodings) {
    for (const auto& eq : dbfa_equations(e)) {
      ++outputs;
      for (unsigned i = 0; i < 32; ++i) {
        const auto in = dbfa_input_vector(e, i >> 3, (i >> 1) & 3, (i & 1) != 0);
        const auto on = static_cast<std::size_t>(
            std::count_if(eq.products.begin(), eq.products.end(), [&](const Product& p) { return p.eval(in); }));
        worst = std::max(worst, on);
      }
    }
  }
  return {worst <= 1 && outputs == 12,
          std::to_string(outputs) + " outputs x 32 inputs, max true products per output " + std::to_string(worst) +
              " (limit 1)"};
}

// RCA against the arithmetic oracle.
Verdict ac4() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  for (const auto& v : kAllVariants) {
    const auto ex = run_campaign(gen_rca({8, v}), 8, VectorSet::exhaustive(8));
    const auto rnd = run_campaign(gen_rca({32, v}), 32, VectorSet::random(32, 1000, 2024));
    ok = ok && ex.pass() && rnd.pass() && ex.n == 131072 && rnd.n == 1000;
    os << v.name() << " w8 " << ex.n - ex.failures << "/" << ex.n << " w32 " << rnd.n - rnd.failures << "/"
       << rnd.n << "; ";
  }
  const double t = seconds_since(t0);
  os << fmt(t) << " (limit 300 s)";
  return {ok && t < 300.0, os.str()};
}

// Per-stage CIN -> COUT depth and the gates on that path.
Verdict ac5() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  const std::vector<std::string> src{"CIN"}, dst{"COUT"};
  for (const auto& v : kAllVariants) {
    const Netlist n = gen_dbfa(v);
    const auto p = longest_path(n, src, dst);
    std::vector<GateKind> kinds;
    for (GateId g : p.path) kinds.push_back(n.gate(g).kind);
    const bool red = v.redundancy == Redundancy::Redundant;
    const std::vector<GateKind> expect =
        red ? std::vector<GateKind>{GateKind::Ao21} : std::vector<GateKind>{GateKind::C2, GateKind::Or2};
    ok = ok && p.depth == (red ? 1.0 : 2.0) && kinds == expect;
    os << v.name() << " " << p.depth << " (";
    for (std::size_t i = 0; i < kinds.size(); ++i) os << (i ? "," : "") << to_string(kinds[i]);
    os << "); ";
  }
  const double t = seconds_since(t0);
  os << "expected 2 (C2,OR2) vs 1 (AO21), " << fmt(t) << " (limit 1 s)";
  return {ok && t < 1.0, os.str()};
}

// Worst-case unit latency, redundant vs nonredundant, widths 2..64.
Verdict ac6() {
  bool ok = true;
  std::ostringstream fails, sample;
  for (Encoding e : kEncodings) {
    for (int w = 2; w <= 64; w += 2) {
      const std::vector<OperandValues> worst{adder_operands(worst_case_vector(w))};
      const bool conv = e == Encoding::Heterogeneous;
      const Tick nr = measure_latency(gen_rca({w, {e, Redundancy::NonRedundant}, conv}), worst).latency;
      const Tick r = measure_latency(gen_rca({w, {e, Redundancy::Redundant}, conv}), worst).latency;
      const long diff = static_cast<long>(nr) - static_cast<long>(r);
      const bool strict = r < nr;
      const bool gap = w < 8 || diff >= w / 2 - 2;
      if (!strict || !gap) {
        ok = false;
        fails << enc_name(e) << " w" << w << " L_nr=" << nr << " L_r=" << r << "; ";
      }
      if (w == 8 || w == 32 || w == 64) sample << enc_name(e) << " w" << w << " " << nr << "/" << r << "; ";
    }
  }
  std::string detail = "need L_r < L_nr for w=2..64 and L_nr-L_r >= w/2-2 for w>=8; L_nr/L_r " + sample.str();
  if (!ok) detail += "violations: " + fails.str();
  return {ok, detail};
}

// Weighted area orderings.
Verdict ac7() {
  bool ok = true;
  std::ostringstream os;
  for (int w : {2, 8, 32, 64}) {
    double area[2][2][2];  // encoding, redundancy, converters
    for (int e = 0; e < 2; ++e) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          if (e == 0 && c == 1) continue;
          area[e][r][c] = area_report(gen_rca({w, {kEncodings[e], r ? Redundancy::Redundant : Redundancy::NonRedundant},
                                               c == 1}))
                              .total;
        }
      }
    }
    for (int e = 0; e < 2; ++e) ok = ok && area[e][1][0] >= area[e][0][0];
    ok = ok && area[1][1][1] >= area[1][0][1];
    for (int r = 0; r < 2; ++r) ok = ok && area[1][r][1] > area[0][r][0];
    if (w == 32) {
      os << "w32 homo nr/r " << area[0][0][0] << "/" << area[0][1][0] << ", hetero+conv nr/r " << area[1][0][1]
         << "/" << area[1][1][1] << "; ";
    }
  }
  os << "checked at widths 2, 8, 32, 64";
  return {ok, os.str()};
}

// Monotonic transitions and delay-invariant quiescent outputs at width 32.
Verdict ac8() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  for (const auto& v : kAllVariants) {
    const Netlist n = gen_rca({32, v});
    const VectorSet set = VectorSet::random(32, 100, 88);
    std::vector<OperandValues> vectors;
    for (std::size_t i = 0; i < set.size(); ++i) vectors.push_back(adder_operands(set[i]));
    std::size_t non_mono = 0;
    std::mt19937_64 seeds(31);
    for (int d = 0; d < 20; ++d) {
      Simulator sim(n, RandomDelay{seeds()});
      for (const auto& vec : vectors) {
        const auto c = run_4phase_cycle(sim, vec);
        non_mono += !check_monotonic(c.valid.trace).pass;
        non_mono += !check_monotonic(c.rtz.trace).pass;
      }
    }
    const auto di = check_delay_insensitive(n, vectors, 20, 31);
    ok = ok && non_mono == 0 && di.pass && di.trials == 20 && di.vectors == 100;
    os << v.name() << " non-monotone phases " << non_mono << ", delay-dependent outputs "
       << (di.pass ? "none" : di.failures.front()) << "; ";
  }
  const double t = seconds_since(t0);
  os << "100 vectors x 20 delay draws, " << fmt(t) << " (limit 600 s)";
  return {ok && t < 600.0, os.str()};
}

std::string cout_text(const EarlyResetReport& r, bool* reached) {
  for (const auto& o : r.outputs) {
    if (o.port == "COUT") {
      *reached = o.reached;
      return o.text;
    }
  }
  *reached = false;
  return "?";
}

// Early reset with CIN held valid.
Verdict ac9() {
  const std::vector<std::string> hold{"CIN"}, reset{"A", "B"};
  const OperandValues carry_from_c2{{"A", 1}, {"B", 2}, {"CIN", 1}};
  bool ok = true;
  std::ostringstream os;
  for (Redundancy red : {Redundancy::Redundant, Redundancy::NonRedundant}) {
    const Netlist n = gen_dbfa({Encoding::Homogeneous, red});
    const bool want_reset = red == Redundancy::Redundant;
    std::string first;
    for (int d = 0; d <= 20; ++d) {
      const DelayModel delay = d == 0 ? DelayModel{UnitDelay{}} : DelayModel{RandomDelay{static_cast<std::uint64_t>(d)}};
      bool reached = false;
      const auto text = cout_text(early_reset_probe(n, carry_from_c2, hold, reset, delay), &reached);
      if (d == 0) first = text;
      ok = ok && reached == want_reset && text == (want_reset ? "00" : "10");
    }
    os << (want_reset ? "redundant" : "nonredundant") << " COUT -> " << first << "; ";
  }
  os << "expected 00 and 10 under unit and 20 random delay draws";
  return {ok, os.str()};
}

// Completion detector waits for the last input codeword in both phases.
Verdict ac10() {
  bool ok = true;
  std::size_t runs = 0, early = 0;
  for (const auto& v : kAllVariants) {
    const Netlist n = gen_rca({8, v, false, true});
    const NetId cd = n.find_port("CD")->nets.front();
    std::size_t inputs = 0;
    for (const auto& p : n.ports()) inputs += p.dir == PortDir::In;
    std::mt19937_64 rng(100 + v.name().size());
    std::uniform_int_distribution<Tick> offset(0, 50);
    for (int i = 0; i < 100; ++i) {
      CycleOptions opt;
      for (std::size_t k = 0; k < inputs; ++k) opt.schedule.push_back(offset(rng));
      const AdderVector vec{rng() & 0xFF, rng() & 0xFF, (rng() & 1U) != 0};
      const auto c = run_4phase_cycle(n, adder_operands(vec), RandomDelay{rng()}, opt);
      for (const PhaseOutcome* p : {&c.valid, &c.rtz}) {
        std::size_t edges = 0;
        bool too_soon = false;
        for (const auto& e : p->trace) {
          if (e.net != cd) continue;
          ++edges;
          too_soon = too_soon || e.time <= p->last_input;
        }
        early += too_soon || edges != 1;
      }
      ++runs;
    }
  }
  ok = early == 0 && runs == 400;
  return {ok, std::to_string(runs) + " staggered schedules (100 per variant), " + std::to_string(early) +
                  " phases where CD_OUT moved before the last input codeword or not exactly once"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 equation oracle", ac1},          {"AC2 netlist vs equations", ac2},
      {"AC3 product orthogonality", ac3},    {"AC4 RCA functional", ac4},
      {"AC5 carry path depth", ac5},         {"AC6 latency ordering", ac6},
      {"AC7 area ordering", ac7},            {"AC8 monotonic, delay-insensitive", ac8},
      {"AC9 early reset", ac9},              {"AC10 completion detector", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
