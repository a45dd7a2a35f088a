#pragma once

#include <array>
#include <cstdint>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "asyncadd/equations.hpp"
#include "asyncadd/netlist.hpp"

namespace asyncadd {

using Tick = std::uint64_t;

struct Event {
  Tick time = 0;
  NetId net = 0;
  Level level = 0;
  bool operator==(const Event&) const = default;
};
using Trace = std::vector<Event>;

struct UnitDelay {};
struct TableDelay {
  std::array<Tick, 4> by_kind{1, 1, 1, 1};  // indexed by index_of(GateKind)
};
/// Per-gate integer delay drawn once from [min, max].
struct RandomDelay {
  std::uint64_t seed = 0;
  Tick min = 1;
  Tick max = 10;
};
using DelayModel = std::variant<UnitDelay, TableDelay, RandomDelay>;

/// Delay of every gate, indexed by gate id. Throws ConfigInvalid for zero
/// delays or an empty random range.
std::vector<Tick> assign_delays(const Netlist& netlist, const DelayModel& model);

/// "unit", "table:AND2=1,OR2=1,AO21=2,C2=2" (unlisted kinds keep 1),
/// "random:SEED" or "random:SEED:MIN:MAX".
DelayModel parse_delay_model(std::string_view text);
std::string describe(const DelayModel& model);

/// Two-valued event-driven simulation with transport delays. All nets start
/// at 0. Events that fall on the same tick are applied together in net-id
/// order before any gate is re-evaluated, so runs are deterministic.
class Simulator {
 public:
  Simulator(const Netlist& netlist, std::vector<Tick> delays);
  Simulator(const Netlist& netlist, const DelayModel& model);

  const Netlist& netlist() const { return *netlist_; }

  /// Back to the all-zero state at time 0 with an empty queue and trace.
  void reset();

  /// Queues primary-input changes at absolute times. Throws UnknownNet for a
  /// net that is not a primary input and NonMonotoneStimulusTime if times
  /// decrease or precede now().
  void schedule(std::span<const Event> stimuli);

  /// Processes the next tick. Returns false when the queue is empty.
  bool step();
  void run();

  bool quiescent() const { return queue_.empty(); }
  Tick now() const { return now_; }
  Level level(NetId net) const { return levels_[net]; }
  std::span<const Level> levels() const { return levels_; }

  const Trace& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }

 private:
  struct Pending {
    Tick time;
    NetId net;
    std::uint64_t seq;
    Level level;
    bool operator>(const Pending& o) const {
      if (time != o.time) return time > o.time;
      if (net != o.net) return net > o.net;
      return seq > o.seq;
    }
  };

  Level evaluate(const Gate& g) const;
  void push(Tick time, NetId net, Level level);

  const Netlist* netlist_;
  std::vector<Tick> delays_;
  std::vector<Level> levels_;
  std::vector<Level> projected_;  // last value scheduled on each gate output
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  Tick now_ = 0;
  Trace trace_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

struct SimResult {
  Trace trace;
  std::vector<Level> levels;
  Tick end_time = 0;
};

/// Runs `stimuli` from the all-zero state to quiescence.
SimResult simulate(const Netlist& netlist, const DelayModel& model, std::span<const Event> stimuli);

/// Number of trace events on gate-driven nets.
std::size_t gate_transitions(const Netlist& netlist, const Trace& trace);

}  // namespace asyncadd
