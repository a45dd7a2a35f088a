#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asyncadd/analysis.hpp"
#include "asyncadd/error.hpp"
#include "asyncadd/generators.hpp"
#include "asyncadd/netlist_io.hpp"
#include "asyncadd/protocol.hpp"

namespace py = pybind11;
using namespace asyncadd;

namespace {

DbfaVariant variant_of(const std::string& name) {
  auto v = DbfaVariant::parse(name);
  if (!v) throw Error(ErrorCode::ConfigInvalid, "unknown variant '" + name + "'");
  return *v;
}

py::dict phase_dict(const Netlist& n, const PhaseOutcome& p) {
  py::dict d;
  d["complete"] = p.complete;
  d["latency"] = p.latency;
  d["cd_time"] = p.cd_time ? py::object(py::int_(*p.cd_time)) : py::object(py::none());
  d["transitions"] = p.transitions;
  py::dict outs;
  for (const auto& r : p.outputs) {
    outs[py::str(r.operand)] = py::dict(py::arg("status") = to_string(r.status),
                                        py::arg("value") = r.value ? py::object(py::int_(*r.value)) : py::object(py::none()),
                                        py::arg("text") = r.text);
  }
  d["outputs"] = outs;
  py::list trace;
  for (const auto& e : p.trace) trace.append(py::make_tuple(e.time, n.net(e.net).name, int(e.level)));
  d["trace"] = trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Asynchronous early-output dual-bit adders: generation, simulation, analysis";

  py::register_exception<Error>(m, "AsyncAddError", PyExc_ValueError);

  py::class_<Netlist>(m, "Netlist")
      .def_property_readonly("variant", [](const Netlist& n) { return n.metadata().variant; })
      .def_property_readonly("width", [](const Netlist& n) { return n.metadata().width; })
      .def_property_readonly("num_nets", [](const Netlist& n) { return n.nets().size(); })
      .def_property_readonly("num_gates", [](const Netlist& n) { return n.gates().size(); })
      .def("gate_counts",
           [](const Netlist& n) {
             py::dict d;
             for (auto k : kAllGateKinds) d[py::str(std::string(to_string(k)))] = n.count(k);
             return d;
           })
      .def("ports",
           [](const Netlist& n) {
             py::dict d;
             for (const auto& p : n.ports()) {
               py::list rails;
               for (NetId id : p.nets) rails.append(n.net(id).name);
               d[py::str(p.name)] = py::make_tuple(p.dir == PortDir::In ? "in" : "out", rails);
             }
             return d;
           })
      .def("to_json", &export_json)
      .def("to_dot", &export_dot)
      .def("__eq__", [](const Netlist& a, const Netlist& b) { return a == b; })
      .def("__repr__", [](const Netlist& n) {
        return "<Netlist " + n.metadata().variant + " width=" + std::to_string(n.metadata().width) + " gates=" +
               std::to_string(n.gates().size()) + ">";
      });

  m.def("variants", [] {
    std::vector<std::string> names;
    for (const auto& v : kAllVariants) names.push_back(v.name());
    return names;
  });
  m.def("gen_dbfa", [](const std::string& variant) { return gen_dbfa(variant_of(variant)); }, py::arg("variant"));
  m.def(
      "gen_rca",
      [](int width, const std::string& variant, bool converters, bool cd) {
        return gen_rca({width, variant_of(variant), converters, cd});
      },
      py::arg("width"), py::arg("variant"), py::arg("converters") = false, py::arg("cd") = false);
  m.def("from_json", [](const std::string& text) { return import_json(text); }, py::arg("text"));

  m.def(
      "eval_dbfa",
      [](const std::string& encoding, unsigned a, unsigned b, bool cin) {
        const Encoding enc = encoding == "hetero" ? Encoding::Heterogeneous : Encoding::Homogeneous;
        const auto out = decode_dbfa_outputs(enc, eval_dbfa(enc, dbfa_input_vector(enc, a, b, cin)));
        if (!out) throw Error(ErrorCode::OutputsIllegal, "equations produced a non-valid output");
        return py::make_tuple(out->sum, out->cout);
      },
      py::arg("encoding"), py::arg("a"), py::arg("b"), py::arg("cin"));

  m.def(
      "encode_dual_rail",
      [](std::uint64_t value, unsigned width) { return render(encode_dual_rail(value, width)); },
      py::arg("value"), py::arg("width"));
  m.def(
      "encode_1of4", [](std::uint64_t value, unsigned width) { return render(encode_1of4(value, width)); },
      py::arg("value"), py::arg("width"));

  m.def(
      "depth",
      [](const Netlist& n, std::vector<std::string> sources, std::vector<std::string> sinks) {
        return longest_path(n, sources, sinks).depth;
      },
      py::arg("netlist"), py::arg("sources") = std::vector<std::string>{"CIN"},
      py::arg("sinks") = std::vector<std::string>{"COUT"});

  m.def(
      "area",
      [](const Netlist& n, std::array<double, 4> weights) { return area_report(n, {weights}).total; },
      py::arg("netlist"), py::arg("weights") = AreaWeights{}.by_kind);

  m.def(
      "run_cycle",
      [](const Netlist& n, std::map<std::string, std::uint64_t> values, const std::string& delay) {
        OperandValues ov;
        for (const auto& [k, v] : values) ov.push_back({k, v});
        const auto model = parse_delay_model(delay);
        const auto out = run_4phase_cycle(n, ov, model, {{}, false});
        py::dict d;
        d["delay"] = describe(model);
        d["valid"] = phase_dict(n, out.valid);
        d["rtz"] = phase_dict(n, out.rtz);
        return d;
      },
      py::arg("netlist"), py::arg("values"), py::arg("delay") = "unit");

  m.def(
      "verify",
      [](const Netlist& n, std::size_t count, std::uint64_t seed, bool exhaustive) {
        const int width = n.metadata().width;
        const auto vectors = exhaustive ? VectorSet::exhaustive(width) : VectorSet::random(width, count, seed);
        const auto r = run_campaign(n, width, vectors);
        return py::dict(py::arg("n") = r.n, py::arg("failures") = r.failures,
                        py::arg("monotonic_failures") = r.monotonic_failures,
                        py::arg("reset_failures") = r.reset_failures, py::arg("pass") = r.pass(),
                        py::arg("seed") = seed);
      },
      py::arg("netlist"), py::arg("n") = 1000, py::arg("seed") = 0, py::arg("exhaustive") = false);

  m.def(
      "compare_json",
      [](int width, std::size_t n, std::uint64_t seed, bool exhaustive) {
        return comparison_to_json(compare_variants(width, n, seed, exhaustive));
      },
      py::arg("width"), py::arg("n") = 1000, py::arg("seed") = 0, py::arg("exhaustive") = false);
  m.def(
      "compare_markdown",
      [](int width, std::size_t n, std::uint64_t seed, bool exhaustive) {
        return comparison_to_markdown(compare_variants(width, n, seed, exhaustive));
      },
      py::arg("width"), py::arg("n") = 1000, py::arg("seed") = 0, py::arg("exhaustive") = false);
}
