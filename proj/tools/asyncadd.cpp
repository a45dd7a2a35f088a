// asyncadd: generate, simulate, verify and compare asynchronous early-output
// dual-bit ripple-carry adders.
//
// Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "asyncadd/analysis.hpp"
#include "asyncadd/error.hpp"
#include "asyncadd/generators.hpp"
#include "asyncadd/netlist_io.hpp"
#include "asyncadd/protocol.hpp"

namespace {

using namespace asyncadd;
using nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct DesignArgs {
  std::string variant;
  int width = 2;
  bool converters = false;
  bool cd = false;
  std::string netlist_path;  // overrides variant/width when set; "-" reads stdin
};

void add_design_options(CLI::App* cmd, DesignArgs& d, bool allow_file) {
  cmd->add_option("--variant", d.variant, "homo-nonredundant | homo-redundant | hetero-nonredundant | hetero-redundant");
  cmd->add_option("--width", d.width, "Operand width in bits (even, 2..64)");
  cmd->add_flag("--converters", d.converters, "Wrap heterogeneous stages in dual-rail/1-of-4 converters");
  cmd->add_flag("--cd", d.cd, "Append a completion detector (output CD)");
  if (allow_file) cmd->add_option("--netlist", d.netlist_path, "Read a JSON netlist instead (\"-\" for stdin)");
}

DbfaVariant parse_variant(const std::string& name) {
  if (name.empty()) throw Error(ErrorCode::ConfigInvalid, "--variant is required");
  auto v = DbfaVariant::parse(name);
  if (!v) throw Error(ErrorCode::ConfigInvalid, "unknown variant '" + name + "'");
  return *v;
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Netlist load_design(const DesignArgs& d) {
  if (!d.netlist_path.empty()) {
    if (d.netlist_path == "-") return import_json(read_all(std::cin));
    std::ifstream in(d.netlist_path);
    if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open '" + d.netlist_path + "'");
    return import_json(read_all(in));
  }
  RcaConfig cfg{d.width, parse_variant(d.variant), d.converters, d.cd};
  return gen_rca(cfg);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write '" + path + "'");
  out << text;
}

std::string counts_line(const Netlist& n) {
  std::ostringstream os;
  os << "gates=" << n.gates().size();
  for (auto k : kAllGateKinds) os << ' ' << to_string(k) << '=' << n.count(k);
  return os.str();
}

int cmd_gen(const DesignArgs& d, std::string out_path, bool dot) {
  const Netlist n = load_design(d);
  if (out_path.empty()) out_path = d.variant + "_w" + std::to_string(d.width) + ".json";
  write_file(out_path, export_json(n));
  std::cout << "variant=" << n.metadata().variant << " width=" << n.metadata().width
            << " stages=" << n.metadata().width / 2 << ' ' << counts_line(n) << '\n';
  std::cout << "wrote " << out_path << '\n';
  if (dot) {
    auto dot_path = out_path;
    if (dot_path.ends_with(".json")) dot_path.resize(dot_path.size() - 5);
    dot_path += ".dot";
    write_file(dot_path, export_dot(n));
    std::cout << "wrote " << dot_path << '\n';
  }
  return 0;
}

struct VerifyArgs {
  bool exhaustive = false;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::size_t di_vectors = 100;
  std::string delay = "unit";
  std::string report;
};

int cmd_verify(const DesignArgs& d, const VerifyArgs& a) {
  const Netlist n = load_design(d);
  const int width = n.metadata().width;
  if (a.exhaustive && width > 16) throw Error(ErrorCode::ConfigInvalid, "--exhaustive needs width <= 16");
  const DelayModel delay = parse_delay_model(a.delay);

  const VectorSet vectors = a.exhaustive ? VectorSet::exhaustive(width) : VectorSet::random(width, a.n, a.seed);
  const CampaignResult campaign = run_campaign(n, width, vectors, delay);

  const VectorSet di_set = VectorSet::random(width, a.di_vectors, a.seed);
  std::vector<OperandValues> di_vectors;
  for (std::size_t i = 0; i < di_set.size(); ++i) di_vectors.push_back(adder_operands(di_set[i]));
  const DiReport di = check_delay_insensitive(n, di_vectors, a.trials, a.seed);

  const bool pass = campaign.pass() && di.pass;
  std::cout << "variant=" << n.metadata().variant << " width=" << width << " seed=" << a.seed
            << " delay=" << describe(delay) << '\n';
  std::cout << "campaign: " << (campaign.n - campaign.failures) << '/' << campaign.n << " correct"
            << (vectors.is_exhaustive() ? " (exhaustive)" : "") << ", monotonicity violations "
            << campaign.monotonic_failures << ", reset failures " << campaign.reset_failures << '\n';
  for (const auto& f : campaign.first_failures) std::cout << "  FAIL " << f << '\n';
  std::cout << "delay insensitivity: " << di.vectors << " vectors x " << di.trials << " random delay draws: "
            << (di.pass ? "pass" : "FAIL") << '\n';
  for (const auto& f : di.failures) std::cout << "  FAIL " << f << '\n';
  std::cout << (pass ? "PASS" : "FAIL") << '\n';

  if (!a.report.empty()) {
    ordered_json j;
    j["command"] = "verify";
    j["variant"] = n.metadata().variant;
    j["width"] = width;
    j["seed"] = a.seed;
    j["delay"] = describe(delay);
    j["exhaustive"] = vectors.is_exhaustive();
    j["campaign"] = {{"n", campaign.n},
                     {"failures", campaign.failures},
                     {"monotonic_failures", campaign.monotonic_failures},
                     {"reset_failures", campaign.reset_failures},
                     {"first_failures", campaign.first_failures}};
    j["delay_insensitivity"] = {{"vectors", di.vectors},
                                {"trials", di.trials},
                                {"seed", di.seed},
                                {"pass", di.pass},
                                {"failures", di.failures}};
    j["pass"] = pass;
    write_file(a.report, j.dump(2) + "\n");
  }
  return pass ? 0 : kExitFail;
}

struct CompareArgs {
  int width = 32;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::string md;
  std::string json;
};

int cmd_compare(const CompareArgs& a) {
  RcaConfig{a.width, {}}.validate();
  if (a.exhaustive && a.width > 16) throw Error(ErrorCode::ConfigInvalid, "--exhaustive needs width <= 16");
  const Comparison c = compare_variants(a.width, a.n, a.seed, a.exhaustive);
  const auto md = comparison_to_markdown(c);
  const auto md_path = a.md.empty() ? "compare_w" + std::to_string(a.width) + ".md" : a.md;
  const auto json_path = a.json.empty() ? "compare_w" + std::to_string(a.width) + ".json" : a.json;
  write_file(md_path, md);
  write_file(json_path, comparison_to_json(c));
  std::cout << md << "\nwrote " << md_path << " and " << json_path << '\n';
  if (!c.holds()) {
    for (const auto& k : c.checks) {
      if (!k.holds) std::cerr << "ordering violated: " << k.name << " (" << k.detail << ")\n";
    }
    return kExitFail;
  }
  return 0;
}

struct SimArgs {
  std::vector<std::string> set;
  std::string delay = "unit";
  std::string csv;
  std::string json;
};

OperandValues parse_assignments(const std::vector<std::string>& items) {
  OperandValues values;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::ConfigInvalid, "expected NAME=VALUE, got '" + s + "'");
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(s.substr(eq + 1), &used, 0);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigInvalid, "bad value in '" + s + "'");
    }
    values.push_back({s.substr(0, eq), v});
  }
  return values;
}

int cmd_sim(const DesignArgs& d, const SimArgs& a) {
  const Netlist n = load_design(d);
  const DelayModel delay = parse_delay_model(a.delay);
  const OperandValues values =
      a.set.empty() ? adder_operands(worst_case_vector(n.metadata().width)) : parse_assignments(a.set);
  const CycleOutcome out = run_4phase_cycle(n, values, delay, {{}, false});

  std::cout << "variant=" << n.metadata().variant << " width=" << n.metadata().width
            << " delay=" << describe(delay) << '\n';
  std::cout << "inputs:";
  for (const auto& v : values) std::cout << ' ' << v.operand << '=' << v.value;
  std::cout << "\nvalid phase: latency " << out.valid.latency << " ticks, " << out.valid.transitions
            << " gate transitions";
  if (out.valid.cd_time) std::cout << ", CD at " << *out.valid.cd_time;
  std::cout << '\n';
  for (const auto& r : out.valid.outputs) {
    std::cout << "  " << r.operand << " = " << r.text << " (" << to_string(r.status);
    if (r.value) std::cout << ", " << *r.value;
    std::cout << ")\n";
  }
  std::cout << "rtz phase: " << out.rtz.transitions << " gate transitions, "
            << (out.rtz.complete ? "all nets reset" : "RESIDUAL STATE") << '\n';

  const std::string json = cycle_to_json(n, out, delay);
  if (!a.json.empty()) write_file(a.json, json);
  if (!a.csv.empty()) {
    Trace all = out.valid.trace;
    const Tick shift = all.empty() ? 0 : all.back().time;
    for (auto e : out.rtz.trace) all.push_back({e.time + shift, e.net, e.level});
    write_file(a.csv, trace_to_csv(n, all));
  }
  return out.valid.complete && out.rtz.complete ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous early-output dual-bit adder toolkit"};
  app.require_subcommand(1);

  DesignArgs design;
  std::string gen_out;
  bool gen_dot = false;
  auto* gen = app.add_subcommand("gen", "Generate a ripple-carry adder netlist (JSON, optional DOT)");
  add_design_options(gen, design, false);
  gen->add_option("-o,--output", gen_out, "Output JSON path (default <variant>_w<width>.json)");
  gen->add_flag("--dot", gen_dot, "Also write a Graphviz file next to the JSON");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check an adder against the arithmetic oracle");
  add_design_options(verify, design, true);
  verify->add_flag("--exhaustive", verify_args.exhaustive, "Every input vector (width <= 16)");
  verify->add_option("--n", verify_args.n, "Random vectors (default 1000)");
  verify->add_option("--seed", verify_args.seed, "RNG seed (default 0)");
  verify->add_option("--trials", verify_args.trials, "Random delay draws for the delay check (default 20)");
  verify->add_option("--di-vectors", verify_args.di_vectors, "Vectors per delay draw (default 100)");
  verify->add_option("--delay", verify_args.delay, "Delay model for the campaign: unit | table:... | random:SEED");
  verify->add_option("-o,--report", verify_args.report, "Write a JSON report");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Compare the four adder variants");
  compare->add_option("--width", compare_args.width, "Operand width in bits (default 32)");
  compare->add_option("--n", compare_args.n, "Random vectors per variant (default 1000)");
  compare->add_option("--seed", compare_args.seed, "RNG seed (default 0)");
  compare->add_flag("--exhaustive", compare_args.exhaustive, "Every input vector (width <= 16)");
  compare->add_option("--md", compare_args.md, "Markdown output (default compare_w<width>.md)");
  compare->add_option("--json", compare_args.json, "JSON output (default compare_w<width>.json)");

  SimArgs sim_args;
  auto* sim = app.add_subcommand("sim", "Simulate one 4-phase cycle");
  add_design_options(sim, design, true);
  sim->add_option("--set", sim_args.set, "Operand value NAME=VALUE (repeatable; default worst-case vector)");
  sim->add_option("--delay", sim_args.delay, "unit | table:AND2=1,OR2=1,AO21=2,C2=2 | random:SEED[:MIN:MAX]");
  sim->add_option("--csv", sim_args.csv, "Write the event trace as CSV");
  sim->add_option("--json", sim_args.json, "Write the cycle outcome as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(design, gen_out, gen_dot);
    if (verify->parsed()) return cmd_verify(design, verify_args);
    if (compare->parsed()) return cmd_compare(compare_args);
    if (sim->parsed()) return cmd_sim(design, sim_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::AssertionFailed ? kExitFail : kExitUsage;
  }
  return kExitUsage;
}
