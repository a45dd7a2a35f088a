#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asyncadd {

/// Classification of a single codeword.
enum class CodeClass : std::uint8_t { Spacer, Valid, Illegal };

/// Classification of a word of codewords. `Partial` means some digits are
/// valid and the rest spacer, with nothing illegal (a mid-phase snapshot).
enum class WordClass : std::uint8_t { Valid, Spacer, Partial, Illegal };

const char* to_string(CodeClass c);
const char* to_string(WordClass c);

/// One bit on two wires: (1,0) = 1, (0,1) = 0, (0,0) = spacer, (1,1) = illegal.
struct DualRailPair {
  bool d1 = false;
  bool d0 = false;

  static DualRailPair encode(bool bit) { return {bit, !bit}; }
  static DualRailPair spacer() { return {}; }

  CodeClass classify() const;
  /// The bit, when valid.
  std::optional<bool> value() const;
  /// "d1d0", e.g. "10".
  std::string text() const;

  bool operator==(const DualRailPair&) const = default;
};

/// Two bits on four wires, one-hot. Rails are stored as a bit mask whose bit
/// v is rail E_v, so the mask reads (e3,e2,e1,e0) most significant first.
/// For binary pair (X, Y) the high rail is E_{2X+Y}.
struct OneOfFourDigit {
  std::uint8_t rails = 0;

  static OneOfFourDigit encode(unsigned value);
  static OneOfFourDigit spacer() { return {}; }
  static OneOfFourDigit from_rails(bool e0, bool e1, bool e2, bool e3);

  bool e(unsigned v) const { return ((rails >> v) & 1U) != 0; }

  CodeClass classify() const;
  std::optional<unsigned> value() const;
  /// "e3e2e1e0", e.g. "0010" for value 1.
  std::string text() const;

  bool operator==(const OneOfFourDigit&) const = default;
};

/// Least-significant bit first.
struct DualRailWord {
  std::vector<DualRailPair> bits;

  bool operator==(const DualRailWord&) const = default;
};

/// Least-significant digit first; digit k carries bits (2k+1, 2k).
struct OneOfFourWord {
  std::vector<OneOfFourDigit> digits;

  bool operator==(const OneOfFourWord&) const = default;
};

struct Decoded {
  WordClass status = WordClass::Spacer;
  std::optional<std::uint64_t> value;  // present iff status == Valid
};

/// Throws ValueOutOfRange when value >= 2^width or width > 64.
DualRailWord encode_dual_rail(std::uint64_t value, unsigned width);
/// Throws ValueOutOfRange, or OddWidth when width is odd.
OneOfFourWord encode_1of4(std::uint64_t value, unsigned width);

Decoded decode(const DualRailWord& word);
Decoded decode(const OneOfFourWord& word);

/// Word class from per-digit classes. An empty word is Valid and decodes
/// to 0, so decode(encode(0, 0)) == 0.
WordClass classify_word(const std::vector<CodeClass>& digits);

/// Most significant codeword first, separated by '|', e.g. "10|01".
std::string render(const DualRailWord& word);
std::string render(const OneOfFourWord& word);

}  // namespace asyncadd
