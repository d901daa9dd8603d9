#include <gtest/gtest.h>

#include "loopforge/gf.hpp"

namespace loopforge {
namespace {

class PrimeFieldAxioms : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(PrimeFieldAxioms, ExhaustiveAgainstIntegerArithmetic) {
  const std::uint32_t p = GetParam();
  PrimeField f(p);
  for (std::uint32_t a = 0; a < p; ++a) {
    EXPECT_EQ(f.neg(a), (p - a) % p);
    for (std::uint32_t b = 0; b < p; ++b) {
      EXPECT_EQ(f.add(a, b), (a + b) % p);
      EXPECT_EQ(f.sub(a, b), (a + p - b) % p);
      EXPECT_EQ(f.mul(a, b), (a * b) % p);
      for (std::uint32_t c = 0; c < p; ++c) {
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      }
    }
    if (a != 0) {
      std::uint32_t i = f.inv(a);
      EXPECT_EQ((a * i) % p, 1u);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, PrimeFieldAxioms, ::testing::Values(2u, 3u, 5u, 7u, 11u, 13u));

TEST(PrimeField, InverseOfZeroThrows) {
  PrimeField f(7);
  try {
    f.inv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivisionByZero);
  }
}

TEST(PrimeField, RejectsComposite) { EXPECT_THROW(PrimeField(9), Error); }

TEST(PrimeField, FromIntReducesNegatives) {
  PrimeField f(5);
  EXPECT_EQ(f.from_int(-1), 4u);
  EXPECT_EQ(f.from_int(-10), 0u);
  EXPECT_EQ(f.from_int(17), 2u);
}

TEST(PrimeField, LargePrimeMultiplicationDoesNotOverflow) {
  const std::uint32_t p = 2147483647u;
  PrimeField f(p);
  std::uint32_t a = p - 1;
  EXPECT_EQ(f.mul(a, a), 1u);
  EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
}

TEST(PrimeField, EnumerateIsCanonical) {
  PrimeField f(7);
  auto e = f.enumerate();
  ASSERT_EQ(e.size(), 7u);
  for (std::uint32_t i = 0; i < 7; ++i) {
    EXPECT_EQ(e[i], i);
    EXPECT_EQ(f.index_of(e[i]), i);
  }
}

TEST(RationalField, ExactArithmetic) {
  RationalField q;
  auto a = q.from_int(2), b = q.from_int(3);
  auto third = q.inv(b);
  EXPECT_EQ(q.mul(b, third), q.one());
  EXPECT_EQ(q.to_string(q.mul(a, third)), "2/3");
  EXPECT_THROW(q.inv(q.zero()), Error);
}

TEST(RationalField, EnumerationUnsupported) {
  RationalField q;
  try {
    q.enumerate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEnumerationUnsupported);
  }
}

TEST(RationalField, RandomStaysSmall) {
  RationalField q;
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 1000; ++i) {
    auto x = q.random(rng);
    EXPECT_LE(abs(numerator(x)), 6);
    EXPECT_LE(denominator(x), 4);
  }
}

TEST(FieldSpec, ParseAndPrint) {
  EXPECT_EQ(FieldSpec::Parse("gf:11"), FieldSpec::Prime(11));
  EXPECT_EQ(FieldSpec::Parse("q"), FieldSpec::Rationals());
  EXPECT_EQ(FieldSpec::Prime(3).ToString(), "gf:3");
  EXPECT_EQ(FieldSpec::Rationals().characteristic(), 0u);
  for (const char* bad : {"gf:4", "gf:", "gf:x", "r", "gf:1"}) EXPECT_THROW(FieldSpec::Parse(bad), Error) << bad;
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 500; ++n) {
    bool expect = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) expect = false;
    EXPECT_EQ(IsPrime(n), expect) << n;
  }
}

}  // namespace
}  // namespace loopforge
