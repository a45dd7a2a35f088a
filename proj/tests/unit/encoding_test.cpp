#include "asyncadd/encoding.hpp"

#include <gtest/gtest.h>

#include <random>

#include "asyncadd/error.hpp"

namespace asyncadd {
namespace {

TEST(DualRail, BitEncoding) {
  EXPECT_EQ(DualRailPair::encode(true), (DualRailPair{true, false}));
  EXPECT_EQ(DualRailPair::encode(false), (DualRailPair{false, true}));
  EXPECT_EQ(DualRailPair::encode(true).text(), "10");
}

TEST(DualRail, PairClassification) {
  EXPECT_EQ((DualRailPair{false, false}).classify(), CodeClass::Spacer);
  EXPECT_EQ((DualRailPair{true, false}).classify(), CodeClass::Valid);
  EXPECT_EQ((DualRailPair{false, true}).classify(), CodeClass::Valid);
  EXPECT_EQ((DualRailPair{true, true}).classify(), CodeClass::Illegal);
  EXPECT_FALSE((DualRailPair{true, true}).value());
}

TEST(DualRail, WordLayoutIsLsbFirst) {
  const auto w = encode_dual_rail(0b10, 2);
  ASSERT_EQ(w.bits.size(), 2u);
  EXPECT_EQ(w.bits[0], DualRailPair::encode(false));
  EXPECT_EQ(w.bits[1], DualRailPair::encode(true));
  EXPECT_EQ(render(w), "10|01");
}

TEST(DualRail, EmptyWord) {
  const auto w = encode_dual_rail(0, 0);
  EXPECT_TRUE(w.bits.empty());
  const auto d = decode(w);
  EXPECT_EQ(d.status, WordClass::Valid);
  EXPECT_EQ(d.value, 0u);
}

TEST(DualRail, OutOfRange) {
  EXPECT_THROW(encode_dual_rail(4, 2), Error);
  EXPECT_THROW(encode_dual_rail(0, 65), Error);
  try {
    encode_dual_rail(4, 2);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValueOutOfRange);
  }
  EXPECT_NO_THROW(encode_dual_rail(~std::uint64_t{0}, 64));
}

TEST(OneOfFour, TableRows) {
  // (X, Y) -> (E0, E1, E2, E3)
  const bool rows[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (unsigned x = 0; x < 2; ++x) {
    for (unsigned y = 0; y < 2; ++y) {
      const auto d = OneOfFourDigit::encode(2 * x + y);
      for (unsigned v = 0; v < 4; ++v) EXPECT_EQ(d.e(v), rows[2 * x + y][v]) << x << y << v;
    }
  }
  EXPECT_EQ(OneOfFourDigit::encode(1).text(), "0010");
  EXPECT_EQ(OneOfFourDigit::encode(3).text(), "1000");
}

TEST(OneOfFour, ZeroHasE0HighInEveryDigit) {
  for (unsigned n : {2u, 4u, 8u, 16u}) {
    const auto w = encode_1of4(0, n);
    ASSERT_EQ(w.digits.size(), n / 2);
    for (const auto& d : w.digits) EXPECT_EQ(d, OneOfFourDigit::from_rails(true, false, false, false));
  }
}

TEST(OneOfFour, Errors) {
  try {
    encode_1of4(1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddWidth);
  }
  try {
    encode_1of4(16, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValueOutOfRange);
  }
  EXPECT_THROW(OneOfFourDigit::encode(4), Error);
}

TEST(OneOfFour, RoundTripNine) {
  const auto d = decode(encode_1of4(9, 4));
  EXPECT_EQ(d.status, WordClass::Valid);
  EXPECT_EQ(d.value, 9u);
}

TEST(Classification, ExhaustiveOverRailPatterns) {
  int spacer = 0, valid = 0, illegal = 0;
  for (unsigned r = 0; r < 4; ++r) {
    switch ((DualRailPair{(r & 2U) != 0, (r & 1U) != 0}).classify()) {
      case CodeClass::Spacer: ++spacer; break;
      case CodeClass::Valid: ++valid; break;
      case CodeClass::Illegal: ++illegal; break;
    }
  }
  EXPECT_EQ(spacer, 1);
  EXPECT_EQ(valid, 2);
  EXPECT_EQ(illegal, 1);

  spacer = valid = illegal = 0;
  for (unsigned r = 0; r < 16; ++r) {
    const OneOfFourDigit d{static_cast<std::uint8_t>(r)};
    const int ones = __builtin_popcount(r);
    switch (d.classify()) {
      case CodeClass::Spacer: EXPECT_EQ(ones, 0); ++spacer; break;
      case CodeClass::Valid:
        EXPECT_EQ(ones, 1);
        ASSERT_TRUE(d.value());
        EXPECT_EQ(1U << *d.value(), r);
        ++valid;
        break;
      case CodeClass::Illegal: EXPECT_GE(ones, 2); ++illegal; break;
    }
  }
  EXPECT_EQ(spacer, 1);
  EXPECT_EQ(valid, 4);
  EXPECT_EQ(illegal, 11);
}

TEST(Classification, WordClasses) {
  EXPECT_EQ(decode(DualRailWord{{DualRailPair::spacer(), DualRailPair::spacer()}}).status, WordClass::Spacer);
  EXPECT_EQ(decode(DualRailWord{{DualRailPair::encode(true), DualRailPair::spacer()}}).status, WordClass::Partial);
  EXPECT_EQ(decode(DualRailWord{{DualRailPair::encode(true), DualRailPair{true, true}}}).status,
            WordClass::Illegal);
  EXPECT_EQ(decode(DualRailWord{{DualRailPair::spacer(), DualRailPair{true, true}}}).status, WordClass::Illegal);
  const auto partial = decode(OneOfFourWord{{OneOfFourDigit::encode(2), OneOfFourDigit::spacer()}});
  EXPECT_EQ(partial.status, WordClass::Partial);
  EXPECT_FALSE(partial.value);
}

TEST(RoundTrip, AllSmallWidthsExhaustive) {
  for (unsigned n = 0; n <= 10; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      EXPECT_EQ(decode(encode_dual_rail(v, n)).value, v);
      if (n % 2 == 0) EXPECT_EQ(decode(encode_1of4(v, n)).value, v);
    }
  }
}

TEST(RoundTrip, RandomUpToSixteenBitsAndCrossCode) {
  std::mt19937_64 rng(7);
  for (unsigned n = 2; n <= 16; n += 2) {
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << n) - 1);
    for (int i = 0; i < 500; ++i) {
      const auto v = dist(rng);
      const auto dr = decode(encode_dual_rail(v, n));
      const auto oh = decode(encode_1of4(v, n));
      EXPECT_EQ(dr.value, v);
      EXPECT_EQ(oh.value, dr.value);
    }
  }
}

}  // namespace
}  // namespace asyncadd
