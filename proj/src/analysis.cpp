#include "asyncadd/analysis.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

#include "asyncadd/error.hpp"

namespace asyncadd {

namespace {

constexpr std::size_t kMaxReportedFailures = 8;

std::uint64_t mask_of(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

const OutputReading* find_reading(const std::vector<OutputReading>& outputs, std::string_view name) {
  for (const auto& r : outputs) {
    if (r.operand == name) return &r;
  }
  return nullptr;
}

}  // namespace

void AreaWeights::validate() const {
  for (std::size_t i = 0; i < by_kind.size(); ++i) {
    if (!(by_kind[i] > 0)) {
      throw Error(ErrorCode::ConfigInvalid, "area weight for " + std::string(to_string(kAllGateKinds[i])) +
                                                " must be positive");
    }
  }
}

AreaReport area_report(const Netlist& netlist, const AreaWeights& weights) {
  weights.validate();
  AreaReport r;
  for (const auto& g : netlist.gates()) ++r.counts[index_of(g.kind)];
  for (std::size_t i = 0; i < r.counts.size(); ++i) r.total += static_cast<double>(r.counts[i]) * weights.by_kind[i];
  return r;
}

LatencyResult measure_latency(const Netlist& netlist, std::span<const OperandValues> vectors,
                              const DelayModel& delay) {
  if (vectors.empty()) throw Error(ErrorCode::ConfigInvalid, "no vectors to measure");
  Simulator sim(netlist, delay);
  LatencyResult best;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto out = run_4phase_cycle(sim, vectors[i]);
    if (i == 0 || out.valid.latency > best.latency) best = {out.valid.latency, i};
  }
  return best;
}

std::pair<std::uint64_t, bool> add_oracle(const AdderVector& v, int width) {
  const std::uint64_t partial = v.a + v.b;
  const std::uint64_t total = partial + (v.cin ? 1U : 0U);
  if (width >= 64) return {total, partial < v.a || total < partial};
  return {total & mask_of(width), ((total >> width) & 1U) != 0};
}

VectorSet VectorSet::random(int width, std::size_t n, std::uint64_t seed) {
  if (width < 1 || width > 64) throw Error(ErrorCode::ConfigInvalid, "width must be in [1, 64]");
  VectorSet s;
  s.width_ = width;
  s.size_ = n;
  std::mt19937_64 rng(seed);
  const auto mask = mask_of(width);
  s.drawn_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = rng() & mask;
    const auto b = rng() & mask;
    const bool cin = (rng() & 1U) != 0;
    s.drawn_.push_back({a, b, cin});
  }
  return s;
}

VectorSet VectorSet::exhaustive(int width) {
  if (width < 1 || width > 16) throw Error(ErrorCode::ConfigInvalid, "exhaustive mode needs width <= 16");
  VectorSet s;
  s.width_ = width;
  s.exhaustive_ = true;
  s.size_ = std::size_t{1} << (2 * width + 1);
  return s;
}

AdderVector VectorSet::operator[](std::size_t i) const {
  if (!exhaustive_) return drawn_.at(i);
  const auto mask = mask_of(width_);
  return {(i >> (width_ + 1)) & mask, (i >> 1) & mask, (i & 1U) != 0};
}

CampaignResult run_campaign(const Netlist& adder, int width, const VectorSet& vectors, const DelayModel& delay) {
  Simulator sim(adder, delay);
  CampaignResult r;
  auto fail = [&](std::size_t& counter, const std::string& msg) {
    ++counter;
    if (r.first_failures.size() < kMaxReportedFailures) r.first_failures.push_back(msg);
  };
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const AdderVector v = vectors[i];
    const std::string tag =
        "A=" + std::to_string(v.a) + " B=" + std::to_string(v.b) + " CIN=" + std::to_string(int(v.cin));
    const auto out = run_4phase_cycle(sim, adder_operands(v), {{}, false});
    ++r.n;
    const auto [sum, cout] = add_oracle(v, width);
    const auto* s = find_reading(out.valid.outputs, "SUM");
    const auto* c = find_reading(out.valid.outputs, "COUT");
    if (!s || !c) throw Error(ErrorCode::UnknownPort, "adder netlist lacks SUM or COUT outputs");
    if (!s->value || !c->value || *s->value != sum || (*c->value != 0) != cout) {
      fail(r.failures, tag + ": got SUM=" + s->text + " COUT=" + c->text + ", expected SUM=" +
                           std::to_string(sum) + " COUT=" + std::to_string(int(cout)));
    }
    for (const auto* phase : {&out.valid, &out.rtz}) {
      const auto mono = check_monotonic(phase->trace);
      if (!mono.pass) {
        fail(r.monotonic_failures, tag + ": net '" + adder.net(*mono.net).name + "' switched twice in the " +
                                       (phase == &out.valid ? "valid" : "return-to-zero") + " phase");
      }
    }
    if (!out.rtz.complete) {
      fail(r.reset_failures, tag + ": return-to-zero left nets high");
      sim.reset();
    }
  }
  return r;
}

bool Comparison::holds() const {
  return std::all_of(checks.begin(), checks.end(), [](const OrderingCheck& c) { return c.holds; });
}

namespace {

const VariantReport& report_for(const Comparison& c, Encoding e, Redundancy r) {
  for (const auto& rep : c.reports) {
    if (rep.variant.encoding == e && rep.variant.redundancy == r) return rep;
  }
  throw Error(ErrorCode::ConfigInvalid, "missing variant report");
}

std::string fmt_area(double a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

}  // namespace

Comparison compare_variants(int width, std::size_t n_random, std::uint64_t seed, bool exhaustive,
                            const AreaWeights& weights) {
  weights.validate();
  RcaConfig probe{width, kAllVariants[0]};
  probe.validate();
  if (!exhaustive && n_random < 1) throw Error(ErrorCode::ConfigInvalid, "n_random must be at least 1");

  Comparison cmp;
  cmp.width = width;
  cmp.n_random = n_random;
  cmp.exhaustive = exhaustive;
  cmp.seed = seed;
  cmp.weights = weights;

  const VectorSet vectors = exhaustive ? VectorSet::exhaustive(width) : VectorSet::random(width, n_random, seed);
  const std::vector<OperandValues> worst{adder_operands(worst_case_vector(width))};
  const std::vector<std::string> cin{"CIN"}, cout{"COUT"};

  for (const auto& variant : kAllVariants) {
    RcaConfig cfg{width, variant};
    cfg.include_converters = variant.encoding == Encoding::Heterogeneous;
    const Netlist rca = gen_rca(cfg);

    VariantReport rep;
    rep.variant = variant;
    rep.width = width;
    rep.converters = cfg.include_converters;
    rep.area = area_report(rca, weights);
    rep.depth = static_cast<std::size_t>(longest_path(rca, cin, cout).depth);
    const auto cycle = run_4phase_cycle(rca, worst.front(), UnitDelay{});
    rep.latency = cycle.valid.latency;
    rep.transitions = cycle.valid.transitions + cycle.rtz.transitions;
    rep.campaign = run_campaign(rca, width, vectors);
    cmp.reports.push_back(std::move(rep));
  }

  for (Encoding e : {Encoding::Homogeneous, Encoding::Heterogeneous}) {
    const auto& nr = report_for(cmp, e, Redundancy::NonRedundant);
    const auto& r = report_for(cmp, e, Redundancy::Redundant);
    const std::string enc = e == Encoding::Homogeneous ? "homo" : "hetero";
    cmp.checks.push_back({enc + ": redundant latency < nonredundant latency", r.latency < nr.latency,
                          std::to_string(r.latency) + " vs " + std::to_string(nr.latency) + " ticks"});
    cmp.checks.push_back({enc + ": redundant area >= nonredundant area", r.area.total >= nr.area.total,
                          fmt_area(r.area.total) + " vs " + fmt_area(nr.area.total)});
  }
  for (Redundancy red : {Redundancy::NonRedundant, Redundancy::Redundant}) {
    const auto& homo = report_for(cmp, Encoding::Homogeneous, red);
    const auto& het = report_for(cmp, Encoding::Heterogeneous, red);
    const std::string name = red == Redundancy::Redundant ? "redundant" : "nonredundant";
    cmp.checks.push_back({name + ": hetero area (with converters) > homo area", het.area.total > homo.area.total,
                          fmt_area(het.area.total) + " vs " + fmt_area(homo.area.total)});
  }
  for (const auto& rep : cmp.reports) {
    cmp.checks.push_back({rep.variant.name() + ": campaign clean", rep.campaign.pass(),
                          std::to_string(rep.campaign.n - rep.campaign.failures) + "/" +
                              std::to_string(rep.campaign.n) + " correct"});
  }
  return cmp;
}

void require_orderings(const Comparison& comparison) {
  for (const auto& c : comparison.checks) {
    if (!c.holds) throw Error(ErrorCode::AssertionFailed, c.name + " (" + c.detail + ")");
  }
}

namespace {

constexpr const char* kReportNote =
    "Gate-level unit-delay model with transistor-count area weights: compare rows by ordering and depth "
    "difference only, not as absolute latency or area.";

}  // namespace

std::string comparison_to_json(const Comparison& c) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["note"] = kReportNote;
  j["width"] = c.width;
  j["seed"] = c.seed;
  j["n_random"] = c.n_random;
  j["exhaustive"] = c.exhaustive;
  auto& w = j["weights"] = ordered_json::object();
  for (std::size_t i = 0; i < kAllGateKinds.size(); ++i) w[std::string(to_string(kAllGateKinds[i]))] = c.weights.by_kind[i];
  auto& variants = j["variants"] = ordered_json::array();
  for (const auto& r : c.reports) {
    ordered_json v;
    v["variant"] = r.variant.name();
    v["width"] = r.width;
    v["converters"] = r.converters;
    auto& counts = v["counts"] = ordered_json::object();
    for (std::size_t i = 0; i < kAllGateKinds.size(); ++i) counts[std::string(to_string(kAllGateKinds[i]))] = r.area.counts[i];
    v["area"] = r.area.total;
    v["depth"] = r.depth;
    v["latency"] = r.latency;
    v["transitions"] = r.transitions;
    v["campaign"] = {{"n", r.campaign.n},
                     {"failures", r.campaign.failures},
                     {"monotonic_failures", r.campaign.monotonic_failures},
                     {"reset_failures", r.campaign.reset_failures},
                     {"first_failures", r.campaign.first_failures}};
    variants.push_back(std::move(v));
  }
  auto& checks = j["orderings"] = ordered_json::array();
  for (const auto& k : c.checks) checks.push_back({{"name", k.name}, {"holds", k.holds}, {"detail", k.detail}});
  j["holds"] = c.holds();
  return j.dump(2) + "\n";
}

std::string comparison_to_markdown(const Comparison& c) {
  std::ostringstream os;
  os << "# " << c.width << "-bit asynchronous RCAs\n\n";
  os << "> " << kReportNote << "\n\n";
  os << "Seed " << c.seed << ", "
     << (c.exhaustive ? std::string("exhaustive campaign") : std::to_string(c.n_random) + " random vectors")
     << ". Area weights:";
  for (std::size_t i = 0; i < kAllGateKinds.size(); ++i) {
    os << (i ? ", " : " ") << to_string(kAllGateKinds[i]) << "=" << c.weights.by_kind[i];
  }
  os << ".\n\n";
  os << "| RCA type | DBFA | AND2 | OR2 | AO21 | C2 | Area | CIN-COUT depth | Latency (ticks) | Transitions | "
        "Campaign |\n";
  os << "|---|---|---:|---:|---:|---:|---:|---:|---:|---:|---|\n";
  for (const auto& r : c.reports) {
    const bool homo = r.variant.encoding == Encoding::Homogeneous;
    os << "| " << (homo ? "Homogeneous" : "Heterogeneous") << (r.converters ? " + converters" : "") << " | "
       << (r.variant.redundancy == Redundancy::Redundant ? "Redundant" : "Nonredundant");
    for (auto n : r.area.counts) os << " | " << n;
    os << " | " << r.area.total << " | " << r.depth << " | " << r.latency << " | " << r.transitions << " | "
       << (r.campaign.n - r.campaign.failures) << "/" << r.campaign.n << (r.campaign.pass() ? " pass" : " FAIL")
       << " |\n";
  }
  os << "\n## Orderings\n\n";
  for (const auto& k : c.checks) os << "- [" << (k.holds ? "x" : " ") << "] " << k.name << ": " << k.detail << "\n";
  return os.str();
}

}  // namespace asyncadd
