#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asyncadd/generators.hpp"
#include "asyncadd/netlist.hpp"
#include "asyncadd/protocol.hpp"
#include "asyncadd/simulator.hpp"

namespace asyncadd {

/// Per-kind area weights, indexed by index_of(kind). The defaults count
/// transistors of static CMOS cells; C2 is a 12-transistor C-element.
struct AreaWeights {
  std::array<double, 4> by_kind{6, 6, 8, 12};

  double operator()(GateKind kind) const { return by_kind[index_of(kind)]; }
  /// Throws ConfigInvalid unless every weight is positive.
  void validate() const;
};

struct AreaReport {
  std::array<std::size_t, 4> counts{};
  double total = 0;
};
AreaReport area_report(const Netlist& netlist, const AreaWeights& weights = {});

struct LatencyResult {
  Tick latency = 0;
  std::size_t argmax = 0;  // index into the vectors
};
/// Largest forward latency over one 4-phase cycle per vector. Throws
/// ConfigInvalid for an empty vector list.
LatencyResult measure_latency(const Netlist& netlist, std::span<const OperandValues> vectors,
                              const DelayModel& delay = UnitDelay{});

/// A + B + CIN for `width`-bit operands: (sum mod 2^width, carry out).
std::pair<std::uint64_t, bool> add_oracle(const AdderVector& v, int width);

/// Adder input vectors, either drawn from mt19937_64(seed) or every one of
/// the 2^(2*width+1) combinations enumerated lazily (A outermost, CIN fastest).
class VectorSet {
 public:
  static VectorSet random(int width, std::size_t n, std::uint64_t seed);
  /// Throws ConfigInvalid above width 16.
  static VectorSet exhaustive(int width);

  std::size_t size() const { return size_; }
  AdderVector operator[](std::size_t i) const;
  bool is_exhaustive() const { return exhaustive_; }

 private:
  int width_ = 0;
  bool exhaustive_ = false;
  std::size_t size_ = 0;
  std::vector<AdderVector> drawn_;
};

struct CampaignResult {
  std::size_t n = 0;
  std::size_t failures = 0;             // wrong or non-valid sum/carry
  std::size_t monotonic_failures = 0;   // a net switched twice in a phase
  std::size_t reset_failures = 0;       // RTZ left a net high
  std::vector<std::string> first_failures;

  bool pass() const { return failures == 0 && monotonic_failures == 0 && reset_failures == 0; }
};
/// Runs one cycle per vector on an adder netlist (operands A, B, CIN in,
/// SUM, COUT out) and checks each result against add_oracle().
CampaignResult run_campaign(const Netlist& adder, int width, const VectorSet& vectors,
                            const DelayModel& delay = UnitDelay{});

struct VariantReport {
  DbfaVariant variant;
  int width = 0;
  bool converters = false;
  AreaReport area;
  std::size_t depth = 0;    // static CIN -> COUT unit depth
  Tick latency = 0;         // unit delay, worst-case propagate vector
  std::size_t transitions = 0;  // gate-output events over that cycle
  CampaignResult campaign;
};

struct OrderingCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct Comparison {
  int width = 0;
  std::size_t n_random = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  AreaWeights weights;
  std::vector<VariantReport> reports;  // kAllVariants order
  std::vector<OrderingCheck> checks;

  bool holds() const;
};

/// Builds the four RCAs (heterogeneous ones with converters so all take the
/// same dual-rail operands), runs the functional campaign, measures the
/// worst-case unit latency and the area, and evaluates the orderings:
/// redundant faster and not smaller than nonredundant within each encoding,
/// heterogeneous larger than homogeneous, every campaign clean.
Comparison compare_variants(int width, std::size_t n_random, std::uint64_t seed, bool exhaustive = false,
                            const AreaWeights& weights = {});

/// Throws AssertionFailed naming the first ordering that does not hold.
void require_orderings(const Comparison& comparison);

std::string comparison_to_json(const Comparison& comparison);
std::string comparison_to_markdown(const Comparison& comparison);

}  // namespace asyncadd
