#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asyncadd {

using Level = std::uint8_t;

enum class Encoding : std::uint8_t { Homogeneous, Heterogeneous };
enum class Redundancy : std::uint8_t { NonRedundant, Redundant };

struct DbfaVariant {
  Encoding encoding = Encoding::Homogeneous;
  Redundancy redundancy = Redundancy::NonRedundant;

  /// "homo-nonredundant", "homo-redundant", "hetero-nonredundant", "hetero-redundant".
  std::string name() const;
  static std::optional<DbfaVariant> parse(std::string_view name);

  bool operator==(const DbfaVariant&) const = default;
};

inline constexpr std::array<DbfaVariant, 4> kAllVariants = {{
    {Encoding::Homogeneous, Redundancy::NonRedundant},
    {Encoding::Homogeneous, Redundancy::Redundant},
    {Encoding::Heterogeneous, Redundancy::NonRedundant},
    {Encoding::Heterogeneous, Redundancy::Redundant},
}};

/// Input rails in evaluation order.
///   homogeneous:   A11 A10 A01 A00 B11 B10 B01 B00 CIN1 CIN0
///   heterogeneous: A0 A1 A2 A3 B0 B1 B2 B3 CIN1 CIN0
std::span<const std::string_view> dbfa_input_rails(Encoding encoding);

/// Output rails in evaluation order.
///   homogeneous:   SUM11 SUM10 SUM01 SUM00 COUT1 COUT0
///   heterogeneous: SUM0 SUM1 SUM2 SUM3 COUT1 COUT0
std::span<const std::string_view> dbfa_output_rails(Encoding encoding);

/// Index of CIN1 / CIN0 in the input rail vector (same for both encodings).
inline constexpr std::uint8_t kCin1Index = 8;
inline constexpr std::uint8_t kCin0Index = 9;

/// One product term: literals are input-rail indices in the order written.
struct Product {
  std::string text;
  std::vector<std::uint8_t> literals;

  /// kCin1Index / kCin0Index if the product contains a carry-in literal.
  std::optional<std::uint8_t> cin_literal() const;
  /// Literals other than the carry-in, in written order.
  std::vector<std::uint8_t> operand_literals() const;
  bool eval(std::span<const Level> inputs) const;
};

struct Equation {
  std::string_view output;
  std::vector<Product> products;

  bool eval(std::span<const Level> inputs) const;
};

/// The disjoint sum-of-products equations of the dual-bit full adder, one per
/// output rail in dbfa_output_rails order, transcribed term for term.
const std::vector<Equation>& dbfa_equations(Encoding encoding);

/// Evaluates every equation literally. Any rail pattern is accepted.
/// Throws ArityMismatch unless inputs.size() == 10.
std::vector<Level> eval_dbfa(Encoding encoding, std::span<const Level> inputs);

/// Rails for operands a, b in [0,4) and cin in {0,1} under the given encoding.
std::vector<Level> dbfa_input_vector(Encoding encoding, unsigned a, unsigned b, bool cin);

/// Decoded (sum, cout) from an output rail vector, if both codewords are valid.
struct DbfaResult {
  unsigned sum = 0;
  bool cout = false;
};
std::optional<DbfaResult> decode_dbfa_outputs(Encoding encoding, std::span<const Level> outputs);

}  // namespace asyncadd
