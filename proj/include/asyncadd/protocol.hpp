#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asyncadd/encoding.hpp"
#include "asyncadd/generators.hpp"
#include "asyncadd/netlist.hpp"
#include "asyncadd/operands.hpp"
#include "asyncadd/simulator.hpp"

namespace asyncadd {

struct OperandValue {
  std::string operand;
  std::uint64_t value = 0;
  bool operator==(const OperandValue&) const = default;
};
using OperandValues = std::vector<OperandValue>;

/// {"A", a}, {"B", b}, {"CIN", cin}.
OperandValues adder_operands(const AdderVector& v);

struct OutputReading {
  std::string operand;
  WordClass status = WordClass::Spacer;
  std::optional<std::uint64_t> value;
  std::string text;
};

/// Times in an outcome are relative to the tick the phase started.
struct PhaseOutcome {
  Tick first_input = 0;
  Tick last_input = 0;
  /// Last event on a data output minus first_input; 0 if outputs never moved.
  Tick latency = 0;
  /// Last event on the completion-detector rail, when there is one.
  std::optional<Tick> cd_time;
  Trace trace;
  std::size_t transitions = 0;  // gate-output events
  std::vector<OutputReading> outputs;
  /// Valid phase: every data output is a valid word. RTZ phase: every net is 0.
  bool complete = false;
};

struct CycleOutcome {
  PhaseOutcome valid;
  PhaseOutcome rtz;
};

struct CycleOptions {
  /// Application offset per input port, in Netlist::ports() order among the
  /// inputs. Empty means all inputs switch together at offset 0.
  std::vector<Tick> schedule;
  /// Throw OutputsIllegal / ResidualState instead of reporting.
  bool strict = true;
};

/// One 4-phase return-to-zero cycle from a quiescent all-spacer state:
/// drive every input operand valid, settle, return every input to spacer,
/// settle. Every input operand must be given exactly once (UnknownPort,
/// ConfigInvalid) and fit its width (ValueOutOfRange).
CycleOutcome run_4phase_cycle(Simulator& sim, const OperandValues& values, const CycleOptions& options = {});
CycleOutcome run_4phase_cycle(const Netlist& netlist, const OperandValues& values, const DelayModel& delay,
                              const CycleOptions& options = {});

struct MonotonicReport {
  bool pass = true;
  std::optional<NetId> net;  // first net seen switching twice
};
/// Passes iff no net switches more than once in the trace.
MonotonicReport check_monotonic(const Trace& trace);

enum class DiMode : std::uint8_t {
  /// Open-loop cycles run to quiescence; compares final output words.
  Quiescent,
  /// The environment answers the outputs: spacer goes in as soon as every
  /// data output is valid, the next vector as soon as every output is spacer.
  /// Compares the word seen at each acknowledgement and rejects illegal
  /// codewords observed at any instant.
  Handshake,
};

struct DiReport {
  bool pass = true;
  std::size_t trials = 0;
  std::size_t vectors = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;  // first few, human readable
};

/// Runs every vector under `trials` random delay assignments whose seeds are
/// drawn from mt19937_64(seed), comparing against a unit-delay reference.
DiReport check_delay_insensitive(const Netlist& netlist, std::span<const OperandValues> vectors,
                                 std::size_t trials, std::uint64_t seed, DiMode mode = DiMode::Quiescent);

struct SpacerArrival {
  std::string port;
  bool reached = false;
  std::optional<Tick> time;  // relative to the reset, when reached
  std::string text;          // final codeword
};

struct EarlyResetReport {
  std::vector<SpacerArrival> outputs;
  Trace trace;  // reset phase only, relative to the reset
};

/// Settles a valid cycle, then returns only the input ports named in `reset`
/// to spacer while those in `hold` stay valid. A selector names a port group
/// ("A1", "CIN") or a whole operand ("A"); every input must be selected by
/// exactly one list.
EarlyResetReport early_reset_probe(const Netlist& netlist, const OperandValues& values,
                                   std::span<const std::string> hold, std::span<const std::string> reset,
                                   const DelayModel& delay);

/// "tick,net,level" rows with net names.
std::string trace_to_csv(const Netlist& netlist, const Trace& trace);
std::string cycle_to_json(const Netlist& netlist, const CycleOutcome& outcome, const DelayModel& delay);

}  // namespace asyncadd
