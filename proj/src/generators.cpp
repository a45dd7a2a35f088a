#include "asyncadd/generators.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "asyncadd/error.hpp"

namespace asyncadd {

namespace {

using Key = std::vector<std::uint8_t>;

bool is_msb_rail(std::uint8_t rail) { return rail == 0 || rail == 1 || rail == 4 || rail == 5; }

/// Builds operand products (A/B literals only) with sharing.
class ProductNets {
 public:
  ProductNets(NetlistBuilder& b, Encoding enc, std::span<const NetId> inputs, std::string_view prefix)
      : b_(b), enc_(enc), inputs_(inputs), prefix_(prefix) {}

  NetId get(const Key& literals) {
    Key key = literals;
    std::sort(key.begin(), key.end());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    NetId net = 0;
    if (enc_ == Encoding::Homogeneous && key.size() == 4) {
      Key msb, lsb;
      for (auto l : key) (is_msb_rail(l) ? msb : lsb).push_back(l);
      net = b_.add_gate(GateKind::And2, {get(msb), get(lsb)}, name_of(key));
    } else if (key.size() == 2) {
      net = b_.add_gate(GateKind::And2, {inputs_[key[0]], inputs_[key[1]]}, name_of(key));
    } else {
      throw Error(ErrorCode::ConfigInvalid, "unsupported product shape");
    }
    cache_.emplace(std::move(key), net);
    return net;
  }

 private:
  std::string name_of(const Key& key) const {
    std::string s(prefix_);
    for (auto l : key) s += dbfa_input_rails(enc_)[l];
    return s;
  }

  NetlistBuilder& b_;
  Encoding enc_;
  std::span<const NetId> inputs_;
  std::string prefix_;
  std::map<Key, NetId> cache_;
};

Key sorted(Key k) {
  std::sort(k.begin(), k.end());
  return k;
}

const Equation& equation(Encoding enc, std::string_view output) {
  for (const auto& eq : dbfa_equations(enc)) {
    if (eq.output == output) return eq;
  }
  throw Error(ErrorCode::ConfigInvalid, "no equation for " + std::string(output));
}

std::set<Key> operand_keys(const Equation& eq, std::uint8_t cin) {
  std::set<Key> keys;
  for (const auto& p : eq.products) {
    if (p.cin_literal() == cin) keys.insert(sorted(p.operand_literals()));
  }
  return keys;
}

Key redundant_term(Encoding enc, bool cout1) {
  if (enc == Encoding::Homogeneous) return cout1 ? Key{0, 4} : Key{1, 5};  // A11B11 / A10B10
  return cout1 ? Key{3, 7} : Key{0, 4};                                     // A3B3 / A0B0
}

}  // namespace

std::vector<NetId> emit_dbfa(NetlistBuilder& b, DbfaVariant variant, std::span<const NetId> inputs,
                             std::string_view prefix, std::span<const std::string> output_names) {
  if (inputs.size() != 10 || output_names.size() != 6) {
    throw Error(ErrorCode::ArityMismatch, "dual-bit adder stage needs 10 inputs and 6 output names");
  }
  const Encoding enc = variant.encoding;
  const std::string pre(prefix);
  ProductNets products(b, enc, inputs, pre);
  const NetId cin1 = inputs[kCin1Index];
  const NetId cin0 = inputs[kCin0Index];

  const Equation& cout1_eq = equation(enc, "COUT1");
  const Equation& cout0_eq = equation(enc, "COUT0");

  // Propagate set: operand parts of the CIN-dependent carry products. The
  // same set appears under CIN1 in COUT1 and under CIN0 in COUT0.
  const auto p_keys = operand_keys(cout1_eq, kCin1Index);
  if (p_keys != operand_keys(cout0_eq, kCin0Index)) {
    throw Error(ErrorCode::AssertionFailed, "carry equations do not share a propagate set");
  }
  std::vector<NetId> p_terms;
  for (const auto& prod : cout1_eq.products) {
    if (prod.cin_literal()) p_terms.push_back(products.get(prod.operand_literals()));
  }
  const NetId p = b.tree(GateKind::Or2, p_terms, pre + "P");
  const NetId pc1 = b.add_gate(GateKind::C2, {p, cin1}, pre + "PC1");
  const NetId pc0 = b.add_gate(GateKind::C2, {p, cin0}, pre + "PC0");

  std::map<std::pair<NetId, NetId>, NetId> joins;
  auto join = [&](NetId part, NetId cin) {
    auto [it, fresh] = joins.try_emplace({part, cin}, 0);
    if (fresh) it->second = b.add_gate(GateKind::And2, {part, cin});
    return it->second;
  };

  std::vector<NetId> outputs;
  const auto& eqs = dbfa_equations(enc);
  for (std::size_t o = 0; o < eqs.size(); ++o) {
    const Equation& eq = eqs[o];
    NetId out = 0;
    if (eq.output == "COUT1" || eq.output == "COUT0") {
      const bool is1 = eq.output == "COUT1";
      std::vector<NetId> g_terms;
      for (const auto& prod : eq.products) {
        if (!prod.cin_literal()) g_terms.push_back(products.get(prod.operand_literals()));
      }
      const NetId g = b.tree(GateKind::Or2, g_terms, pre + (is1 ? "G1" : "G0"));
      if (variant.redundancy == Redundancy::NonRedundant) {
        out = b.add_gate(GateKind::Or2, {g, is1 ? pc1 : pc0});
      } else {
        const NetId k = products.get(redundant_term(enc, is1));
        const NetId pg = b.add_gate(GateKind::Or2, {p, k}, pre + (is1 ? "PK1" : "PK0"));
        out = b.add_gate(GateKind::Ao21, {pg, is1 ? cin1 : cin0, g});
      }
    } else {
      const bool p_under_cin1 = operand_keys(eq, kCin1Index) == p_keys;
      const bool p_under_cin0 = operand_keys(eq, kCin0Index) == p_keys;
      std::vector<NetId> terms;
      bool pc_placed = false;
      for (const auto& prod : eq.products) {
        const auto cin = prod.cin_literal();
        if (!cin) {
          terms.push_back(products.get(prod.operand_literals()));
        } else if ((*cin == kCin1Index && p_under_cin1) || (*cin == kCin0Index && p_under_cin0)) {
          if (!pc_placed) terms.push_back(*cin == kCin1Index ? pc1 : pc0);
          pc_placed = true;
        } else {
          terms.push_back(join(products.get(prod.operand_literals()), inputs[*cin]));
        }
      }
      out = b.tree(GateKind::Or2, terms, pre + std::string(eq.output));
    }
    b.rename(out, output_names[o]);
    outputs.push_back(out);
  }
  return outputs;
}

Netlist gen_dbfa(DbfaVariant variant) {
  NetlistBuilder b;
  const Encoding enc = variant.encoding;
  std::vector<NetId> in;
  for (auto rail : dbfa_input_rails(enc)) in.push_back(b.add_net(std::string(rail)));
  std::vector<std::string> out_names;
  for (auto rail : dbfa_output_rails(enc)) out_names.emplace_back(rail);
  const auto out = emit_dbfa(b, variant, in, "", out_names);

  if (enc == Encoding::Homogeneous) {
    b.add_port("A0", PortDir::In, {in[2], in[3]});
    b.add_port("A1", PortDir::In, {in[0], in[1]});
    b.add_port("B0", PortDir::In, {in[6], in[7]});
    b.add_port("B1", PortDir::In, {in[4], in[5]});
    b.add_port("CIN", PortDir::In, {in[8], in[9]});
    b.add_port("SUM0", PortDir::Out, {out[2], out[3]});
    b.add_port("SUM1", PortDir::Out, {out[0], out[1]});
  } else {
    b.add_port("A_d0", PortDir::In, {in[0], in[1], in[2], in[3]});
    b.add_port("B_d0", PortDir::In, {in[4], in[5], in[6], in[7]});
    b.add_port("CIN", PortDir::In, {in[8], in[9]});
    b.add_port("SUM_d0", PortDir::Out, {out[0], out[1], out[2], out[3]});
  }
  b.add_port("COUT", PortDir::Out, {out[4], out[5]});
  return std::move(b).finish({variant.name(), 2});
}

NetId emit_completion_detector(NetlistBuilder& b, std::span<const std::vector<NetId>> groups,
                               std::string_view prefix, std::string output_name) {
  if (groups.empty()) throw Error(ErrorCode::EmptyPortList, "completion detector needs at least one codeword");
  const std::string pre(prefix);
  std::vector<NetId> arrived;
  for (const auto& rails : groups) {
    if (rails.size() != 2 && rails.size() != 4) {
      throw Error(ErrorCode::ConfigInvalid, "codeword groups must have 2 or 4 rails");
    }
    arrived.push_back(b.tree(GateKind::Or2, rails, pre + "or"));
  }
  const NetId out = b.tree(GateKind::C2, arrived, pre + "c");
  b.rename(out, std::move(output_name));
  return out;
}

Netlist gen_completion_detector(std::span<const CodewordGroup> groups) {
  if (groups.empty()) throw Error(ErrorCode::EmptyPortList, "completion detector needs at least one codeword");
  NetlistBuilder b;
  std::vector<std::vector<NetId>> rails;
  for (const auto& g : groups) {
    std::vector<NetId> nets;
    for (const auto& r : g.rails) nets.push_back(b.add_net(r));
    b.add_port(g.name, PortDir::In, nets);
    rails.push_back(std::move(nets));
  }
  const NetId cd = emit_completion_detector(b, rails, "cd.", "CD_OUT");
  b.add_port("CD", PortDir::Out, {cd});
  return std::move(b).finish({"completion-detector", 0});
}

namespace {

/// E0..E3 from dual-rail (X1,X0), (Y1,Y0).
std::vector<NetId> emit_encoder(NetlistBuilder& b, NetId x1, NetId x0, NetId y1, NetId y0,
                                const std::string& prefix) {
  return {b.add_gate(GateKind::And2, {x0, y0}, prefix + "E0"),
          b.add_gate(GateKind::And2, {x0, y1}, prefix + "E1"),
          b.add_gate(GateKind::And2, {x1, y0}, prefix + "E2"),
          b.add_gate(GateKind::And2, {x1, y1}, prefix + "E3")};
}

struct DecodedRails {
  NetId x1, x0, y1, y0;
};

DecodedRails emit_decoder(NetlistBuilder& b, std::span<const NetId> e, const std::string& x1,
                          const std::string& x0, const std::string& y1, const std::string& y0) {
  return {b.add_gate(GateKind::Or2, {e[2], e[3]}, x1), b.add_gate(GateKind::Or2, {e[0], e[1]}, x0),
          b.add_gate(GateKind::Or2, {e[1], e[3]}, y1), b.add_gate(GateKind::Or2, {e[0], e[2]}, y0)};
}

}  // namespace

Converters gen_converters() {
  NetlistBuilder enc;
  const NetId x1 = enc.add_net("X1"), x0 = enc.add_net("X0");
  const NetId y1 = enc.add_net("Y1"), y0 = enc.add_net("Y0");
  enc.add_port("X", PortDir::In, {x1, x0});
  enc.add_port("Y", PortDir::In, {y1, y0});
  enc.add_port("E", PortDir::Out, emit_encoder(enc, x1, x0, y1, y0, ""));

  NetlistBuilder dec;
  std::vector<NetId> e;
  for (int v = 0; v < 4; ++v) e.push_back(dec.add_net("E" + std::to_string(v)));
  dec.add_port("E", PortDir::In, e);
  const auto r = emit_decoder(dec, e, "X1", "X0", "Y1", "Y0");
  dec.add_port("X", PortDir::Out, {r.x1, r.x0});
  dec.add_port("Y", PortDir::Out, {r.y1, r.y0});

  return {std::move(enc).finish({"encoder", 2}), std::move(dec).finish({"decoder", 2})};
}

void RcaConfig::validate() const {
  if (width < 2 || width % 2 != 0) {
    throw Error(ErrorCode::ConfigInvalid, "width must be even (got " + std::to_string(width) + ")");
  }
  if (width > 64) throw Error(ErrorCode::ConfigInvalid, "width must be at most 64");
  if (include_converters && variant.encoding != Encoding::Heterogeneous) {
    throw Error(ErrorCode::ConfigInvalid, "converters require heterogeneous encoding");
  }
}

Netlist gen_rca(const RcaConfig& config) {
  config.validate();
  const int w = config.width;
  const int stages = w / 2;
  const Encoding enc = config.variant.encoding;
  const bool dual_rail_io = enc == Encoding::Homogeneous || config.include_converters;
  NetlistBuilder b;

  struct Operand {
    std::vector<std::vector<NetId>> groups;  // per port group, LSB first
    std::vector<std::string> names;
  };
  auto make_operand = [&](const std::string& op) {
    Operand o;
    if (dual_rail_io) {
      for (int k = 0; k < w; ++k) {
        const std::string g = op + std::to_string(k);
        o.groups.push_back({b.add_net(g + "_1"), b.add_net(g + "_0")});
        o.names.push_back(g);
      }
    } else {
      for (int j = 0; j < stages; ++j) {
        const std::string g = op + "_d" + std::to_string(j);
        std::vector<NetId> rails;
        for (int v = 0; v < 4; ++v) rails.push_back(b.add_net(g + "_E" + std::to_string(v)));
        o.groups.push_back(std::move(rails));
        o.names.push_back(g);
      }
    }
    return o;
  };
  const Operand a = make_operand("A");
  const Operand bb = make_operand("B");
  const NetId cin1 = b.add_net("CIN1");
  const NetId cin0 = b.add_net("CIN0");

  std::vector<std::vector<NetId>> sum_groups;
  std::vector<std::string> sum_names;
  NetId carry1 = cin1, carry0 = cin0;
  for (int k = 0; k < stages; ++k) {
    const std::string pre = "s" + std::to_string(k) + ".";
    const bool last = k + 1 == stages;
    std::vector<NetId> in(10);
    if (enc == Encoding::Homogeneous) {
      const auto& ah = a.groups[2 * k + 1];
      const auto& al = a.groups[2 * k];
      const auto& bh = bb.groups[2 * k + 1];
      const auto& bl = bb.groups[2 * k];
      in = {ah[0], ah[1], al[0], al[1], bh[0], bh[1], bl[0], bl[1], carry1, carry0};
    } else {
      std::vector<NetId> ad, bd;
      if (config.include_converters) {
        const auto& ah = a.groups[2 * k + 1];
        const auto& al = a.groups[2 * k];
        const auto& bh = bb.groups[2 * k + 1];
        const auto& bl = bb.groups[2 * k];
        ad = emit_encoder(b, ah[0], ah[1], al[0], al[1], pre + "encA.");
        bd = emit_encoder(b, bh[0], bh[1], bl[0], bl[1], pre + "encB.");
      } else {
        ad = a.groups[k];
        bd = bb.groups[k];
      }
      in = {ad[0], ad[1], ad[2], ad[3], bd[0], bd[1], bd[2], bd[3], carry1, carry0};
    }

    std::vector<std::string> names(6);
    const std::string hi = "SUM" + std::to_string(2 * k + 1);
    const std::string lo = "SUM" + std::to_string(2 * k);
    const std::string digit = "SUM_d" + std::to_string(k);
    if (enc == Encoding::Homogeneous) {
      names[0] = hi + "_1";
      names[1] = hi + "_0";
      names[2] = lo + "_1";
      names[3] = lo + "_0";
    } else {
      for (int v = 0; v < 4; ++v) {
        names[v] = config.include_converters ? pre + "SUM" + std::to_string(v)
                                             : digit + "_E" + std::to_string(v);
      }
    }
    names[4] = last ? "COUT1" : pre + "COUT1";
    names[5] = last ? "COUT0" : pre + "COUT0";
    const auto out = emit_dbfa(b, config.variant, in, pre, names);

    if (enc == Encoding::Homogeneous) {
      sum_groups.push_back({out[2], out[3]});
      sum_names.push_back(lo);
      sum_groups.push_back({out[0], out[1]});
      sum_names.push_back(hi);
    } else if (config.include_converters) {
      const std::vector<NetId> e(out.begin(), out.begin() + 4);
      const auto r = emit_decoder(b, e, hi + "_1", hi + "_0", lo + "_1", lo + "_0");
      sum_groups.push_back({r.y1, r.y0});
      sum_names.push_back(lo);
      sum_groups.push_back({r.x1, r.x0});
      sum_names.push_back(hi);
    } else {
      sum_groups.push_back({out[0], out[1], out[2], out[3]});
      sum_names.push_back(digit);
    }
    carry1 = out[4];
    carry0 = out[5];
  }

  std::vector<std::vector<NetId>> input_groups;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    b.add_port(a.names[i], PortDir::In, a.groups[i]);
    input_groups.push_back(a.groups[i]);
  }
  for (std::size_t i = 0; i < bb.groups.size(); ++i) {
    b.add_port(bb.names[i], PortDir::In, bb.groups[i]);
    input_groups.push_back(bb.groups[i]);
  }
  b.add_port("CIN", PortDir::In, {cin1, cin0});
  input_groups.push_back({cin1, cin0});
  for (std::size_t i = 0; i < sum_groups.size(); ++i) {
    b.add_port(sum_names[i], PortDir::Out, sum_groups[i]);
  }
  b.add_port("COUT", PortDir::Out, {carry1, carry0});
  if (config.include_completion_detector) {
    const NetId cd = emit_completion_detector(b, input_groups, "cd.", "CD_OUT");
    b.add_port("CD", PortDir::Out, {cd});
  }
  return std::move(b).finish({config.variant.name(), w});
}

AdderVector worst_case_vector(int width) {
  if (width < 2 || width % 2 != 0 || width > 64) {
    throw Error(ErrorCode::ConfigInvalid, "width must be even and in [2, 64]");
  }
  const std::uint64_t a = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  return {a, 0, true};
}

}  // namespace asyncadd
