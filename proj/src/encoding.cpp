#include "asyncadd/encoding.hpp"

#include <bit>

#include "asyncadd/error.hpp"

namespace asyncadd {

const char* to_string(CodeClass c) {
  switch (c) {
    case CodeClass::Spacer: return "spacer";
    case CodeClass::Valid: return "valid";
    case CodeClass::Illegal: return "illegal";
  }
  return "?";
}

const char* to_string(WordClass c) {
  switch (c) {
    case WordClass::Valid: return "valid";
    case WordClass::Spacer: return "spacer";
    case WordClass::Partial: return "partial";
    case WordClass::Illegal: return "illegal";
  }
  return "?";
}

CodeClass DualRailPair::classify() const {
  if (d1 && d0) return CodeClass::Illegal;
  if (d1 || d0) return CodeClass::Valid;
  return CodeClass::Spacer;
}

std::optional<bool> DualRailPair::value() const {
  if (classify() != CodeClass::Valid) return std::nullopt;
  return d1;
}

std::string DualRailPair::text() const { return {d1 ? '1' : '0', d0 ? '1' : '0'}; }

OneOfFourDigit OneOfFourDigit::encode(unsigned value) {
  if (value > 3) throw Error(ErrorCode::ValueOutOfRange, "1-of-4 digit value " + std::to_string(value));
  return {static_cast<std::uint8_t>(1U << value)};
}

OneOfFourDigit OneOfFourDigit::from_rails(bool e0, bool e1, bool e2, bool e3) {
  return {static_cast<std::uint8_t>((e0 ? 1U : 0U) | (e1 ? 2U : 0U) | (e2 ? 4U : 0U) |
                                    (e3 ? 8U : 0U))};
}

CodeClass OneOfFourDigit::classify() const {
  switch (std::popcount(static_cast<unsigned>(rails & 0xFU))) {
    case 0: return CodeClass::Spacer;
    case 1: return CodeClass::Valid;
    default: return CodeClass::Illegal;
  }
}

std::optional<unsigned> OneOfFourDigit::value() const {
  if (classify() != CodeClass::Valid) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(static_cast<unsigned>(rails)));
}

std::string OneOfFourDigit::text() const {
  std::string s;
  for (int v = 3; v >= 0; --v) s.push_back(e(static_cast<unsigned>(v)) ? '1' : '0');
  return s;
}

namespace {

void check_range(std::uint64_t value, unsigned width) {
  if (width > 64 || (width < 64 && (value >> width) != 0)) {
    throw Error(ErrorCode::ValueOutOfRange,
                std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
  }
}

}  // namespace

DualRailWord encode_dual_rail(std::uint64_t value, unsigned width) {
  check_range(value, width);
  DualRailWord word;
  word.bits.reserve(width);
  for (unsigned i = 0; i < width; ++i) word.bits.push_back(DualRailPair::encode(((value >> i) & 1U) != 0));
  return word;
}

OneOfFourWord encode_1of4(std::uint64_t value, unsigned width) {
  if (width % 2 != 0) throw Error(ErrorCode::OddWidth, "1-of-4 word width " + std::to_string(width));
  check_range(value, width);
  OneOfFourWord word;
  word.digits.reserve(width / 2);
  for (unsigned k = 0; k < width / 2; ++k) {
    word.digits.push_back(OneOfFourDigit::encode(static_cast<unsigned>((value >> (2 * k)) & 3U)));
  }
  return word;
}

WordClass classify_word(const std::vector<CodeClass>& digits) {
  bool any_valid = false;
  bool any_spacer = false;
  for (CodeClass c : digits) {
    if (c == CodeClass::Illegal) return WordClass::Illegal;
    any_valid |= c == CodeClass::Valid;
    any_spacer |= c == CodeClass::Spacer;
  }
  if (any_valid && any_spacer) return WordClass::Partial;
  if (any_spacer) return WordClass::Spacer;
  return WordClass::Valid;
}

Decoded decode(const DualRailWord& word) {
  std::vector<CodeClass> classes;
  classes.reserve(word.bits.size());
  for (const auto& p : word.bits) classes.push_back(p.classify());
  Decoded out{classify_word(classes), std::nullopt};
  if (out.status == WordClass::Valid) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < word.bits.size(); ++i) {
      if (word.bits[i].d1) v |= std::uint64_t{1} << i;
    }
    out.value = v;
  }
  return out;
}

Decoded decode(const OneOfFourWord& word) {
  std::vector<CodeClass> classes;
  classes.reserve(word.digits.size());
  for (const auto& d : word.digits) classes.push_back(d.classify());
  Decoded out{classify_word(classes), std::nullopt};
  if (out.status == WordClass::Valid) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < word.digits.size(); ++k) {
      v |= std::uint64_t{*word.digits[k].value()} << (2 * k);
    }
    out.value = v;
  }
  return out;
}

std::string render(const DualRailWord& word) {
  std::string s;
  for (auto it = word.bits.rbegin(); it != word.bits.rend(); ++it) {
    if (!s.empty()) s.push_back('|');
    s += it->text();
  }
  return s;
}

std::string render(const OneOfFourWord& word) {
  std::string s;
  for (auto it = word.digits.rbegin(); it != word.digits.rend(); ++it) {
    if (!s.empty()) s.push_back('|');
    s += it->text();
  }
  return s;
}

}  // namespace asyncadd
