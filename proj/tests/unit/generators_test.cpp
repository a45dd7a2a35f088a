#include "asyncadd/generators.hpp"

#include <gtest/gtest.h>

#include <random>

#include "asyncadd/error.hpp"

namespace asyncadd {
namespace {

// Steady state reached from all-zero by a monotone rise of the inputs: every
// C2 has both inputs rise, so it settles to their AND.
std::vector<Level> settle(const Netlist& n, const std::vector<Level>& inputs_by_net) {
  std::vector<Level> v = inputs_by_net;
  v.resize(n.nets().size(), 0);
  for (GateId id : n.topo_order()) {
    const Gate& g = n.gate(id);
    const auto& in = g.inputs;
    switch (g.kind) {
      case GateKind::And2:
      case GateKind::C2: v[g.output] = v[in[0]] & v[in[1]]; break;
      case GateKind::Or2: v[g.output] = v[in[0]] | v[in[1]]; break;
      case GateKind::Ao21: v[g.output] = (v[in[0]] & v[in[1]]) | v[in[2]]; break;
    }
  }
  return v;
}

std::vector<Level> dbfa_settle(const Netlist& n, Encoding e, const std::vector<Level>& rails) {
  std::vector<Level> by_net(n.nets().size(), 0);
  const auto names = dbfa_input_rails(e);
  for (std::size_t i = 0; i < names.size(); ++i) by_net[*n.find_net(names[i])] = rails[i];
  const auto v = settle(n, by_net);
  std::vector<Level> out;
  for (auto name : dbfa_output_rails(e)) out.push_back(v[*n.find_net(name)]);
  return out;
}

TEST(GenDbfa, SteadyStateMatchesEquations) {
  for (const auto& variant : kAllVariants) {
    const Netlist n = gen_dbfa(variant);
    const Encoding e = variant.encoding;
    EXPECT_EQ(dbfa_settle(n, e, std::vector<Level>(10, 0)), std::vector<Level>(6, 0)) << variant.name();
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = 0; b < 4; ++b) {
        for (int cin = 0; cin < 2; ++cin) {
          const auto in = dbfa_input_vector(e, a, b, cin);
          EXPECT_EQ(dbfa_settle(n, e, in), eval_dbfa(e, in)) << variant.name() << " " << a << b << cin;
        }
      }
    }
  }
}

TEST(GenDbfa, RedundancyDoesNotChangeFunction) {
  for (Encoding e : {Encoding::Homogeneous, Encoding::Heterogeneous}) {
    const Netlist nr = gen_dbfa({e, Redundancy::NonRedundant});
    const Netlist r = gen_dbfa({e, Redundancy::Redundant});
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = 0; b < 4; ++b) {
        for (int cin = 0; cin < 2; ++cin) {
          const auto in = dbfa_input_vector(e, a, b, cin);
          EXPECT_EQ(dbfa_settle(nr, e, in), dbfa_settle(r, e, in));
        }
      }
    }
  }
}

TEST(GenDbfa, RedundantCarryCostsOneGatePerRail) {
  for (Encoding e : {Encoding::Homogeneous, Encoding::Heterogeneous}) {
    const Netlist nr = gen_dbfa({e, Redundancy::NonRedundant});
    const Netlist r = gen_dbfa({e, Redundancy::Redundant});
    EXPECT_EQ(r.gates().size(), nr.gates().size() + 2);
    EXPECT_EQ(r.count(GateKind::Ao21), 2u);
    EXPECT_EQ(nr.count(GateKind::Ao21), 0u);
    EXPECT_EQ(r.count(GateKind::C2), nr.count(GateKind::C2));
  }
}

TEST(GenDbfa, FirstLevelReadsOnlyOperandRails) {
  for (const auto& variant : kAllVariants) {
    const Netlist n = gen_dbfa(variant);
    const auto cin1 = *n.find_net("CIN1");
    const auto cin0 = *n.find_net("CIN0");
    for (const auto& g : n.gates()) {
      bool reads_pi = false, reads_operand = false;
      for (NetId in : g.inputs) {
        if (!n.is_primary_input(in)) continue;
        reads_pi = true;
        reads_operand = reads_operand || (in != cin1 && in != cin0);
      }
      if (reads_operand) {
        EXPECT_EQ(g.kind, GateKind::And2) << variant.name() << " gate " << g.id;
        for (NetId in : g.inputs) EXPECT_TRUE(n.is_primary_input(in) && in != cin1 && in != cin0);
      }
      (void)reads_pi;
    }
  }
}

TEST(GenDbfa, PortsAndDeterminism) {
  const Netlist homo = gen_dbfa({Encoding::Homogeneous, Redundancy::NonRedundant});
  ASSERT_NE(homo.find_port("A1"), nullptr);
  EXPECT_EQ(homo.net(homo.find_port("A1")->nets[0]).name, "A11");
  EXPECT_EQ(homo.net(homo.find_port("COUT")->nets[1]).name, "COUT0");
  const Netlist het = gen_dbfa({Encoding::Heterogeneous, Redundancy::Redundant});
  ASSERT_NE(het.find_port("A_d0"), nullptr);
  EXPECT_EQ(het.find_port("A_d0")->nets.size(), 4u);
  EXPECT_EQ(het.metadata().variant, "hetero-redundant");
  EXPECT_EQ(het.metadata().width, 2);
  EXPECT_EQ(gen_dbfa({Encoding::Heterogeneous, Redundancy::Redundant}), het);
}

std::vector<CodewordGroup> pairs(int n) {
  std::vector<CodewordGroup> g;
  for (int i = 0; i < n; ++i) {
    g.push_back({"P" + std::to_string(i), {"p" + std::to_string(i) + "_1", "p" + std::to_string(i) + "_0"}});
  }
  return g;
}

TEST(CompletionDetector, TreeArithmetic) {
  auto five = pairs(5);
  Netlist n = gen_completion_detector(five);
  EXPECT_EQ(n.count(GateKind::Or2), 5u);
  EXPECT_EQ(n.count(GateKind::C2), 4u);
  EXPECT_EQ(n.gates().size(), 9u);

  auto one = pairs(1);
  n = gen_completion_detector(one);
  EXPECT_EQ(n.count(GateKind::Or2), 1u);
  EXPECT_EQ(n.count(GateKind::C2), 0u);
  EXPECT_TRUE(n.find_net("CD_OUT"));

  std::vector<CodewordGroup> mixed{{"D0", {"a0", "a1", "a2", "a3"}}, {"D1", {"b0", "b1", "b2", "b3"}}};
  mixed.push_back(pairs(1)[0]);
  n = gen_completion_detector(mixed);
  EXPECT_EQ(n.count(GateKind::Or2), 7u);
  EXPECT_EQ(n.count(GateKind::C2), 2u);
}

TEST(CompletionDetector, Errors) {
  try {
    gen_completion_detector({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyPortList);
  }
  std::vector<CodewordGroup> three{{"T", {"a", "b", "c"}}};
  EXPECT_THROW(gen_completion_detector(three), Error);
}

TEST(CompletionDetector, FiresOnlyWhenEveryGroupIsValid) {
  auto groups = pairs(3);
  const Netlist n = gen_completion_detector(groups);
  const NetId out = *n.find_net("CD_OUT");
  for (unsigned valid_mask = 0; valid_mask < 8; ++valid_mask) {
    std::vector<Level> in(n.nets().size(), 0);
    for (int g = 0; g < 3; ++g) {
      if (valid_mask & (1U << g)) in[*n.find_net(groups[static_cast<std::size_t>(g)].rails[g % 2])] = 1;
    }
    EXPECT_EQ(settle(n, in)[out], valid_mask == 7 ? 1 : 0) << valid_mask;
  }
}

TEST(Converters, EncoderTableAndRoundTrip) {
  const Converters c = gen_converters();
  EXPECT_EQ(c.encoder.count(GateKind::And2), 4u);
  EXPECT_EQ(c.encoder.gates().size(), 4u);
  EXPECT_EQ(c.decoder.count(GateKind::Or2), 4u);
  EXPECT_EQ(c.decoder.gates().size(), 4u);
  const auto* x = c.encoder.find_port("X");
  const auto* y = c.encoder.find_port("Y");
  const auto* e = c.encoder.find_port("E");
  ASSERT_TRUE(x && y && e);
  for (unsigned xv = 0; xv < 2; ++xv) {
    for (unsigned yv = 0; yv < 2; ++yv) {
      std::vector<Level> in(c.encoder.nets().size(), 0);
      in[x->nets[xv ? 0 : 1]] = 1;
      in[y->nets[yv ? 0 : 1]] = 1;
      const auto v = settle(c.encoder, in);
      for (unsigned k = 0; k < 4; ++k) EXPECT_EQ(v[e->nets[k]], k == 2 * xv + yv ? 1 : 0) << xv << yv << k;

      // Decoder back to dual rail.
      const auto* de = c.decoder.find_port("E");
      std::vector<Level> din(c.decoder.nets().size(), 0);
      for (unsigned k = 0; k < 4; ++k) din[de->nets[k]] = v[e->nets[k]];
      const auto dv = settle(c.decoder, din);
      const auto* dx = c.decoder.find_port("X");
      const auto* dy = c.decoder.find_port("Y");
      EXPECT_EQ(dv[dx->nets[0]], xv);
      EXPECT_EQ(dv[dx->nets[1]], 1 - xv);
      EXPECT_EQ(dv[dy->nets[0]], yv);
      EXPECT_EQ(dv[dy->nets[1]], 1 - yv);
    }
  }
  const auto spacer = settle(c.encoder, std::vector<Level>(c.encoder.nets().size(), 0));
  for (Level l : spacer) EXPECT_EQ(l, 0);
  const auto dspacer = settle(c.decoder, std::vector<Level>(c.decoder.nets().size(), 0));
  for (Level l : dspacer) EXPECT_EQ(l, 0);
}

TEST(RcaConfig, Validation) {
  try {
    gen_rca({7, {Encoding::Heterogeneous, Redundancy::Redundant}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
    EXPECT_NE(std::string(e.what()).find("width must be even"), std::string::npos);
  }
  EXPECT_THROW(gen_rca({0, {}}), Error);
  EXPECT_THROW(gen_rca({66, {}}), Error);
  EXPECT_THROW(gen_rca({8, {Encoding::Homogeneous, Redundancy::Redundant}, true}), Error);
}

TEST(Rca, SingleStageMatchesDbfa) {
  for (const auto& v : kAllVariants) {
    const Netlist rca = gen_rca({2, v});
    const Netlist dbfa = gen_dbfa(v);
    EXPECT_EQ(rca.gates().size(), dbfa.gates().size()) << v.name();
    ASSERT_NE(rca.find_port("CIN"), nullptr);
    ASSERT_NE(rca.find_port("COUT"), nullptr);
    EXPECT_EQ(rca.net(rca.find_port("COUT")->nets[0]).name, "COUT1");
  }
}

TEST(Rca, CompositionArithmetic) {
  for (const auto& v : kAllVariants) {
    const auto stage = gen_dbfa(v).gates().size();
    EXPECT_EQ(gen_rca({32, v}).gates().size(), 16 * stage) << v.name();
    // Completion detector over 65 input codewords (dual rail) or 33 (1-of-4 + CIN).
    const auto with_cd = gen_rca({32, v, false, true});
    const std::size_t groups = v.encoding == Encoding::Homogeneous ? 65 : 33;
    const std::size_t cd_or = v.encoding == Encoding::Homogeneous ? 65 : 32 * 3 + 1;
    EXPECT_EQ(with_cd.gates().size(), 16 * stage + cd_or + (groups - 1)) << v.name();
    if (v.encoding == Encoding::Heterogeneous) {
      // Two 4-AND2 encoders and one 4-OR2 decoder per digit.
      EXPECT_EQ(gen_rca({32, v, true}).gates().size(), 16 * (stage + 12)) << v.name();
    }
  }
}

TEST(Rca, PortNaming) {
  const Netlist homo = gen_rca({4, {Encoding::Homogeneous, Redundancy::Redundant}, false, true});
  for (const char* p : {"A0", "A3", "B2", "CIN", "SUM3", "COUT", "CD"}) EXPECT_NE(homo.find_port(p), nullptr) << p;
  EXPECT_EQ(homo.net(homo.find_port("A3")->nets[0]).name, "A3_1");
  EXPECT_EQ(homo.net(homo.find_port("CD")->nets[0]).name, "CD_OUT");
  const Netlist het = gen_rca({4, {Encoding::Heterogeneous, Redundancy::Redundant}});
  for (const char* p : {"A_d0", "A_d1", "B_d1", "SUM_d1", "CIN", "COUT"}) EXPECT_NE(het.find_port(p), nullptr) << p;
  EXPECT_EQ(het.net(het.find_port("A_d1")->nets[3]).name, "A_d1_E3");
  const Netlist conv = gen_rca({4, {Encoding::Heterogeneous, Redundancy::Redundant}, true});
  EXPECT_NE(conv.find_port("A3"), nullptr);
  EXPECT_EQ(conv.find_port("A_d0"), nullptr);
}

// Drives an RCA through settle() with operands placed by port name.
std::pair<std::uint64_t, bool> settle_add(const Netlist& n, int width, std::uint64_t a, std::uint64_t b, bool cin) {
  std::vector<Level> in(n.nets().size(), 0);
  const bool dual = n.find_port("A0") != nullptr;
  auto place = [&](char op, std::uint64_t value) {
    if (dual) {
      for (int k = 0; k < width; ++k) {
        const auto* p = n.find_port(std::string(1, op) + std::to_string(k));
        in[p->nets[((value >> k) & 1U) ? 0 : 1]] = 1;
      }
    } else {
      for (int j = 0; j < width / 2; ++j) {
        const auto* p = n.find_port(std::string(1, op) + "_d" + std::to_string(j));
        in[p->nets[(value >> (2 * j)) & 3U]] = 1;
      }
    }
  };
  place('A', a);
  place('B', b);
  in[n.find_port("CIN")->nets[cin ? 0 : 1]] = 1;
  const auto v = settle(n, in);
  std::uint64_t sum = 0;
  if (dual) {
    for (int k = 0; k < width; ++k) {
      const auto* p = n.find_port("SUM" + std::to_string(k));
      EXPECT_NE(v[p->nets[0]], v[p->nets[1]]);
      if (v[p->nets[0]]) sum |= std::uint64_t{1} << k;
    }
  } else {
    for (int j = 0; j < width / 2; ++j) {
      const auto* p = n.find_port("SUM_d" + std::to_string(j));
      for (std::uint64_t d = 0; d < 4; ++d) {
        if (v[p->nets[d]]) sum |= d << (2 * j);
      }
    }
  }
  const auto* c = n.find_port("COUT");
  EXPECT_NE(v[c->nets[0]], v[c->nets[1]]);
  return {sum, v[c->nets[0]] != 0};
}

TEST(Rca, ThirtyTwoBitRandomVectorsMatchArithmetic) {
  std::mt19937_64 rng(99);
  for (const auto& variant : kAllVariants) {
    for (bool conv : {false, true}) {
      if (conv && variant.encoding == Encoding::Homogeneous) continue;
      const Netlist n = gen_rca({32, variant, conv});
      for (int i = 0; i < 300; ++i) {
        const std::uint64_t a = rng() & 0xFFFFFFFFULL, b = rng() & 0xFFFFFFFFULL;
        const bool cin = rng() & 1U;
        const std::uint64_t total = a + b + cin;
        const auto [sum, cout] = settle_add(n, 32, a, b, cin);
        EXPECT_EQ(sum, total & 0xFFFFFFFFULL) << variant.name();
        EXPECT_EQ(cout, (total >> 32) != 0) << variant.name();
      }
    }
  }
}

TEST(WorstCase, Vectors) {
  EXPECT_EQ(worst_case_vector(4), (AdderVector{15, 0, true}));
  EXPECT_EQ(worst_case_vector(32), (AdderVector{0xFFFFFFFFULL, 0, true}));
  EXPECT_EQ(worst_case_vector(64).a, ~std::uint64_t{0});
  EXPECT_THROW(worst_case_vector(5), Error);

  const auto v = worst_case_vector(2);
  EXPECT_EQ(v, (AdderVector{3, 0, true}));
  // A propagate product of the carry equation is the one that fires.
  for (Encoding e : {Encoding::Homogeneous, Encoding::Heterogeneous}) {
    const auto in = dbfa_input_vector(e, 3, 0, true);
    const auto& cout1 = dbfa_equations(e)[4];
    int fired = 0;
    for (const auto& p : cout1.products) {
      if (p.eval(in)) {
        ++fired;
        EXPECT_EQ(p.cin_literal(), kCin1Index) << p.text;
      }
    }
    EXPECT_EQ(fired, 1);
  }
}

}  // namespace
}  // namespace asyncadd
