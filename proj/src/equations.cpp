#include "asyncadd/equations.hpp"

#include <algorithm>

#include "asyncadd/encoding.hpp"
#include "asyncadd/error.hpp"

namespace asyncadd {

std::string DbfaVariant::name() const {
  std::string s = encoding == Encoding::Homogeneous ? "homo" : "hetero";
  s += redundancy == Redundancy::Redundant ? "-redundant" : "-nonredundant";
  return s;
}

std::optional<DbfaVariant> DbfaVariant::parse(std::string_view name) {
  for (const auto& v : kAllVariants) {
    if (v.name() == name) return v;
  }
  return std::nullopt;
}

namespace {

constexpr std::array<std::string_view, 10> kHomoInputs = {"A11", "A10", "A01", "A00", "B11",
                                                          "B10", "B01", "B00", "CIN1", "CIN0"};
constexpr std::array<std::string_view, 10> kHeteroInputs = {"A0", "A1", "A2", "A3", "B0",
                                                            "B1", "B2", "B3", "CIN1", "CIN0"};
constexpr std::array<std::string_view, 6> kHomoOutputs = {"SUM11", "SUM10", "SUM01",
                                                          "SUM00", "COUT1", "COUT0"};
constexpr std::array<std::string_view, 6> kHeteroOutputs = {"SUM0", "SUM1",  "SUM2",
                                                            "SUM3", "COUT1", "COUT0"};

struct RawEquation {
  std::string_view output;
  std::vector<std::string_view> products;
};

// Equations (1)-(6), homogeneous dual-rail encoding.
const std::vector<RawEquation> kHomoRaw = {
    {"SUM11",
     {"A11A01B10B00CIN0", "A10A01B11B00CIN0", "A11A00B10B01CIN0", "A10A00B11B01CIN0",
      "A11A00B11B01CIN1", "A11A01B11B00CIN1", "A10A00B10B01CIN1", "A10A01B10B00CIN1",
      "A10A01B10B01", "A11A00B10B00", "A10A00B11B00", "A11A01B11B01"}},
    {"SUM10",
     {"A11A01B10B00CIN1", "A10A01B11B00CIN1", "A11A00B10B01CIN1", "A10A00B11B01CIN1",
      "A10A01B10B00CIN0", "A10A00B10B01CIN0", "A11A01B11B00CIN0", "A11A00B11B01CIN0",
      "A11A00B11B00", "A11A01B10B01", "A10A01B11B01", "A10A00B10B00"}},
    {"SUM01", {"A01B00CIN0", "A00B01CIN0", "A00B00CIN1", "A01B01CIN1"}},
    {"SUM00", {"A01B01CIN0", "A01B00CIN1", "A00B01CIN1", "A00B00CIN0"}},
    {"COUT1",
     {"A10A00B11B01CIN1", "A11A00B10B01CIN1", "A10A01B11B00CIN1", "A11A01B10B00CIN1",
      "A10A01B11B01", "A11A01B10B01", "A11B11"}},
    {"COUT0",
     {"A11A01B10B00CIN0", "A10A01B11B00CIN0", "A11A00B10B01CIN0", "A10A00B11B01CIN0",
      "A11A00B10B00", "A10A00B11B00", "A10B10"}},
};

// Equations (7)-(12), heterogeneous 1-of-4 / dual-rail encoding.
const std::vector<RawEquation> kHeteroRaw = {
    {"SUM0",
     {"A0B0CIN0", "A1B3CIN0", "A2B2CIN0", "A3B1CIN0", "A0B3CIN1", "A1B2CIN1", "A2B1CIN1",
      "A3B0CIN1"}},
    {"SUM1",
     {"A0B1CIN0", "A1B0CIN0", "A2B3CIN0", "A3B2CIN0", "A0B0CIN1", "A1B3CIN1", "A2B2CIN1",
      "A3B1CIN1"}},
    {"SUM2",
     {"A0B2CIN0", "A1B1CIN0", "A2B0CIN0", "A3B3CIN0", "A0B1CIN1", "A1B0CIN1", "A2B3CIN1",
      "A3B2CIN1"}},
    {"SUM3",
     {"A0B3CIN0", "A1B2CIN0", "A2B1CIN0", "A3B0CIN0", "A0B2CIN1", "A1B1CIN1", "A2B0CIN1",
      "A3B3CIN1"}},
    {"COUT1",
     {"A0B3CIN1", "A1B2CIN1", "A2B1CIN1", "A3B0CIN1", "A1B3", "A2B2", "A3B1", "A2B3", "A3B2",
      "A3B3"}},
    {"COUT0",
     {"A0B3CIN0", "A1B2CIN0", "A2B1CIN0", "A3B0CIN0", "A0B0", "A0B1", "A0B2", "A1B0", "A1B1",
      "A2B0"}},
};

Product parse_product(std::string_view text, std::span<const std::string_view> rails) {
  Product p{std::string(text), {}};
  std::string_view rest = text;
  while (!rest.empty()) {
    std::size_t best = rails.size();
    for (std::size_t i = 0; i < rails.size(); ++i) {
      if (rest.starts_with(rails[i]) &&
          (best == rails.size() || rails[i].size() > rails[best].size())) {
        best = i;
      }
    }
    if (best == rails.size()) {
      throw Error(ErrorCode::SchemaViolation, "bad literal in product '" + std::string(text) + "'");
    }
    p.literals.push_back(static_cast<std::uint8_t>(best));
    rest.remove_prefix(rails[best].size());
  }
  return p;
}

std::vector<Equation> build_equations(const std::vector<RawEquation>& raw,
                                      std::span<const std::string_view> rails) {
  std::vector<Equation> eqs;
  for (const auto& r : raw) {
    Equation e{r.output, {}};
    for (auto text : r.products) e.products.push_back(parse_product(text, rails));
    eqs.push_back(std::move(e));
  }
  return eqs;
}

}  // namespace

std::span<const std::string_view> dbfa_input_rails(Encoding encoding) {
  return encoding == Encoding::Homogeneous ? std::span<const std::string_view>(kHomoInputs)
                                           : std::span<const std::string_view>(kHeteroInputs);
}

std::span<const std::string_view> dbfa_output_rails(Encoding encoding) {
  return encoding == Encoding::Homogeneous ? std::span<const std::string_view>(kHomoOutputs)
                                           : std::span<const std::string_view>(kHeteroOutputs);
}

std::optional<std::uint8_t> Product::cin_literal() const {
  for (auto l : literals) {
    if (l == kCin1Index || l == kCin0Index) return l;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> Product::operand_literals() const {
  std::vector<std::uint8_t> out;
  for (auto l : literals) {
    if (l != kCin1Index && l != kCin0Index) out.push_back(l);
  }
  return out;
}

bool Product::eval(std::span<const Level> inputs) const {
  return std::all_of(literals.begin(), literals.end(), [&](auto l) { return inputs[l] != 0; });
}

bool Equation::eval(std::span<const Level> inputs) const {
  return std::any_of(products.begin(), products.end(),
                     [&](const Product& p) { return p.eval(inputs); });
}

const std::vector<Equation>& dbfa_equations(Encoding encoding) {
  static const auto homo = build_equations(kHomoRaw, kHomoInputs);
  static const auto hetero = build_equations(kHeteroRaw, kHeteroInputs);
  return encoding == Encoding::Homogeneous ? homo : hetero;
}

std::vector<Level> eval_dbfa(Encoding encoding, std::span<const Level> inputs) {
  if (inputs.size() != dbfa_input_rails(encoding).size()) {
    throw Error(ErrorCode::ArityMismatch, "dual-bit adder expects 10 input rails, got " +
                                              std::to_string(inputs.size()));
  }
  std::vector<Level> out;
  for (const auto& eq : dbfa_equations(encoding)) out.push_back(eq.eval(inputs) ? 1 : 0);
  return out;
}

std::vector<Level> dbfa_input_vector(Encoding encoding, unsigned a, unsigned b, bool cin) {
  if (a > 3 || b > 3) throw Error(ErrorCode::ValueOutOfRange, "operands must be 2-bit");
  std::vector<Level> v(10, 0);
  if (encoding == Encoding::Homogeneous) {
    const auto put = [&](std::size_t rail1, unsigned bit) {
      v[rail1] = bit;
      v[rail1 + 1] = bit ^ 1U;
    };
    put(0, (a >> 1) & 1U);
    put(2, a & 1U);
    put(4, (b >> 1) & 1U);
    put(6, b & 1U);
  } else {
    v[a] = 1;
    v[4 + b] = 1;
  }
  v[kCin1Index] = cin ? 1 : 0;
  v[kCin0Index] = cin ? 0 : 1;
  return v;
}

std::optional<DbfaResult> decode_dbfa_outputs(Encoding encoding, std::span<const Level> outputs) {
  if (outputs.size() != 6) return std::nullopt;
  const DualRailPair carry{outputs[4] != 0, outputs[5] != 0};
  if (carry.classify() != CodeClass::Valid) return std::nullopt;
  unsigned sum = 0;
  if (encoding == Encoding::Homogeneous) {
    const DualRailPair hi{outputs[0] != 0, outputs[1] != 0};
    const DualRailPair lo{outputs[2] != 0, outputs[3] != 0};
    if (hi.classify() != CodeClass::Valid || lo.classify() != CodeClass::Valid) return std::nullopt;
    sum = (*hi.value() ? 2U : 0U) | (*lo.value() ? 1U : 0U);
  } else {
    const auto digit =
        OneOfFourDigit::from_rails(outputs[0] != 0, outputs[1] != 0, outputs[2] != 0, outputs[3] != 0);
    if (!digit.value()) return std::nullopt;
    sum = *digit.value();
  }
  return DbfaResult{sum, *carry.value()};
}

}  // namespace asyncadd
