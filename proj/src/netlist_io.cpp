#include "asyncadd/netlist_io.hpp"

#include <sstream>

#include <json.hpp>

#include "asyncadd/error.hpp"

namespace asyncadd {

using ordered_json = nlohmann::ordered_json;

std::string export_json(const Netlist& netlist) {
  ordered_json doc;
  doc["variant"] = netlist.metadata().variant;
  doc["width"] = netlist.metadata().width;
  auto& nets = doc["nets"] = ordered_json::array();
  for (const auto& n : netlist.nets()) nets.push_back({{"id", n.id}, {"name", n.name}});
  auto& gates = doc["gates"] = ordered_json::array();
  for (const auto& g : netlist.gates()) {
    gates.push_back({{"id", g.id},
                     {"kind", std::string(to_string(g.kind))},
                     {"inputs", g.inputs},
                     {"output", g.output}});
  }
  auto& ports = doc["ports"] = ordered_json::object();
  for (const auto& p : netlist.ports()) {
    ports[p.name] = {{"dir", p.dir == PortDir::In ? "in" : "out"}, {"nets", p.nets}};
  }
  return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void violation(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, "at " + where + ": " + what);
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) violation(where, std::string("missing field '") + key + "'");
  return *it;
}

std::uint32_t as_id(const ordered_json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    violation(where, "expected a non-negative integer");
  }
  const auto x = v.get<std::uint64_t>();
  if (x > 0xFFFFFFFFULL) violation(where, "id out of range");
  return static_cast<std::uint32_t>(x);
}

std::vector<NetId> id_list(const ordered_json& v, const std::string& where) {
  if (!v.is_array()) violation(where, "expected an array of net ids");
  std::vector<NetId> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_id(v[i], where + "/" + std::to_string(i)));
  return out;
}

}  // namespace

Netlist import_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    violation("byte " + std::to_string(e.byte), "malformed JSON");
  }
  if (!doc.is_object()) violation("/", "expected an object");

  Metadata meta;
  const auto& variant = field(doc, "variant", "/");
  if (!variant.is_string()) violation("/variant", "expected a string");
  meta.variant = variant.get<std::string>();
  const auto& width = field(doc, "width", "/");
  if (!width.is_number_integer()) violation("/width", "expected an integer");
  meta.width = width.get<int>();

  std::vector<Net> nets;
  const auto& jnets = field(doc, "nets", "/");
  if (!jnets.is_array()) violation("/nets", "expected an array");
  for (std::size_t i = 0; i < jnets.size(); ++i) {
    const std::string where = "/nets/" + std::to_string(i);
    const auto& n = jnets[i];
    if (!n.is_object()) violation(where, "expected an object");
    const NetId id = as_id(field(n, "id", where), where + "/id");
    const auto& name = field(n, "name", where);
    if (!name.is_string()) violation(where + "/name", "expected a string");
    if (id != i) violation(where + "/id", "net ids must be dense and in order");
    nets.push_back({id, name.get<std::string>()});
  }

  std::vector<Gate> gates;
  const auto& jgates = field(doc, "gates", "/");
  if (!jgates.is_array()) violation("/gates", "expected an array");
  for (std::size_t i = 0; i < jgates.size(); ++i) {
    const std::string where = "/gates/" + std::to_string(i);
    const auto& g = jgates[i];
    if (!g.is_object()) violation(where, "expected an object");
    const GateId id = as_id(field(g, "id", where), where + "/id");
    if (id != i) violation(where + "/id", "gate ids must be dense and in order");
    const auto& jkind = field(g, "kind", where);
    if (!jkind.is_string()) violation(where + "/kind", "expected a string");
    const auto kind = parse_gate_kind(jkind.get<std::string>());
    if (!kind) violation(where + "/kind", "unknown gate kind '" + jkind.get<std::string>() + "'");
    auto inputs = id_list(field(g, "inputs", where), where + "/inputs");
    const NetId output = as_id(field(g, "output", where), where + "/output");
    gates.push_back({id, *kind, std::move(inputs), output});
  }

  std::vector<Port> ports;
  const auto& jports = field(doc, "ports", "/");
  if (!jports.is_object()) violation("/ports", "expected an object");
  for (const auto& [name, p] : jports.items()) {
    const std::string where = "/ports/" + name;
    if (!p.is_object()) violation(where, "expected an object");
    const auto& dir = field(p, "dir", where);
    if (!dir.is_string() || (dir != "in" && dir != "out")) violation(where + "/dir", "expected \"in\" or \"out\"");
    ports.push_back({name, dir == "in" ? PortDir::In : PortDir::Out,
                     id_list(field(p, "nets", where), where + "/nets")});
  }

  return Netlist::build(std::move(nets), std::move(gates), std::move(ports), std::move(meta));
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string export_dot(const Netlist& netlist) {
  std::ostringstream os;
  os << "digraph " << quoted(netlist.metadata().variant) << " {\n";
  os << "  rankdir=LR;\n";
  for (const auto& g : netlist.gates()) {
    os << "  g" << g.id << " [label=\"" << to_string(g.kind) << "\"];\n";
  }
  auto source = [&](NetId net) {
    const Driver d = netlist.driver(net);
    if (d.kind == Driver::Kind::Port) return quoted("in:" + netlist.net(net).name);
    return "g" + std::to_string(d.index);
  };
  for (const auto& g : netlist.gates()) {
    for (NetId in : g.inputs) {
      os << "  " << source(in) << " -> g" << g.id;
      if (!netlist.is_primary_input(in)) os << " [label=" << quoted(netlist.net(in).name) << "]";
      os << ";\n";
    }
  }
  for (const auto& p : netlist.ports()) {
    if (p.dir != PortDir::Out) continue;
    for (NetId net : p.nets) {
      os << "  " << source(net) << " -> " << quoted("out:" + netlist.net(net).name) << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace asyncadd
