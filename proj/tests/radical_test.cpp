#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "loopforge/constructions.hpp"
#include "loopforge/radical.hpp"

namespace loopforge {
namespace {

using PF = PrimeField;

struct BatteryCase {
  const char* loop;
  std::uint32_t p;
  bool in_class;
};

class EquivalenceBattery : public ::testing::TestWithParam<BatteryCase> {};

TEST_P(EquivalenceBattery, LoopAndAlgebraSidesAgree) {
  const auto& c = GetParam();
  const auto& l = testing::Fixture(c.loop);
  auto r = InClassS(l, PF(c.p));
  EXPECT_EQ(r.value, c.in_class);
  EXPECT_EQ(r.checks.r1, r.checks.r2);
  EXPECT_EQ(r.checks.r1, r.checks.r3);
  EXPECT_TRUE(r.e_notin_omega);
  EXPECT_EQ(r.omega_dim + 1, r.algebra_dim);
  // A loop outside the class cannot embed, so its canonical map must collapse.
  if (!c.in_class) EXPECT_FALSE(r.canonical_map_injective);
}

std::vector<BatteryCase> BatteryCases() {
  std::vector<BatteryCase> out;
  for (std::uint32_t p : {3u, 7u, 11u}) {
    for (const char* name : {"c2", "c3", "s3", "c6", "chein12", "cml81"}) out.push_back({name, p, true});
    out.push_back({"paige:2", p, false});
  }
  return out;
}

INSTANTIATE_TEST_SUITE_P(Fixtures, EquivalenceBattery, ::testing::ValuesIn(BatteryCases()),
                         [](const auto& info) {
                           std::string n = info.param.loop;
                           for (auto& ch : n)
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           return n + "_gf" + std::to_string(info.param.p);
                         });

TEST(LoopSideClassS, RejectsNonMoufang) {
  std::vector<std::vector<Elt>> t{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  auto l = FiniteLoop::FromTable({"e", "a", "b", "c", "d"}, t);
  try {
    LoopSideClassS(l);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
}

TEST(LoopSideClassS, M2SimpleSubloopIsWholeLoop) {
  auto c = LoopSideClassS(testing::M2());
  EXPECT_FALSE(c.r1);
  ASSERT_TRUE(c.simple_subloop);
  EXPECT_TRUE(c.simple_subloop->is_whole());
  EXPECT_TRUE(c.group_type_radical.is_trivial());
  EXPECT_TRUE(c.r3_exhaustive == false);
}

void CheckRadicalAxioms(const FiniteLoop& l) {
  auto s = LoopRadicalS(l);
  EXPECT_FALSE(CheckNormal(l, s));
  auto q = QuotientLoop(l, s);
  EXPECT_TRUE(LoopRadicalS(q.loop).is_trivial());
  for (const auto& n : NormalSubloopLattice(l)) {
    auto sn = LoopRadicalS(Restrict(l, n));
    EXPECT_EQ(Lift(n, sn), n.Intersect(s));
  }
}

TEST(RadicalAxioms, S3) { CheckRadicalAxioms(testing::S3()); }
TEST(RadicalAxioms, Chein12) { CheckRadicalAxioms(testing::Chein12()); }
TEST(RadicalAxioms, Cml81) { CheckRadicalAxioms(testing::Cml81()); }

TEST(LoopRadicalS, FixtureValues) {
  EXPECT_TRUE(LoopRadicalS(testing::S3()).is_whole());
  EXPECT_TRUE(LoopRadicalS(testing::Cml81()).is_whole());
  EXPECT_TRUE(LoopRadicalS(testing::M2()).is_trivial());
}

TEST(LoopRadicalS, M2TimesC2) {
  const auto& l = testing::Fixture("product:paige:2,c2");
  ASSERT_EQ(l.order(), 240u);
  auto s = LoopRadicalS(l);
  ASSERT_EQ(s.size(), 2u);
  // second factor generator sits at index 1 of the product
  EXPECT_EQ(s.members, (std::vector<Elt>{0, 1}));
  EXPECT_TRUE(LoopRadicalS(QuotientLoop(l, s).loop).is_trivial());
}

// Verification of an embedding written directly against the algebra.
void ExpectSoundEmbedding(const FiniteLoop& l, const EmbeddabilityVerdict<PF>& v, const AlternativeLoopAlgebra<PF>& fqb) {
  const auto& a = *fqb.algebra;
  ASSERT_EQ(v.embedding.size(), l.order());
  for (Elt x = 0; x < l.order(); ++x) {
    EXPECT_TRUE(Invert(a, v.embedding[x]));
    for (Elt y = 0; y < l.order(); ++y) {
      if (x < y) EXPECT_NE(v.embedding[x], v.embedding[y]);
      ASSERT_EQ(a.Mul(v.embedding[x], v.embedding[y]), v.embedding[l.mul(x, y)]);
    }
  }
}

TEST(Embeddability, Cml81OverGF3Embeds) {
  PF f(3);
  const auto& l = testing::Cml81();
  auto v = Embeddability(l, f, "cml81");
  EXPECT_EQ(v.outcome, EmbeddabilityVerdict<PF>::Outcome::kEmbeds);
  ExpectSoundEmbedding(l, v, BuildAlternativeLoopAlgebra(f, l));
  auto ce = CircleEmbedding(l, f);
  EXPECT_TRUE(ce.ok);
  EXPECT_EQ(ce.pairs, 81u * 81u);
}

TEST(Embeddability, Chein12OverGF2Embeds) {
  PF f(2);
  const auto& l = testing::Chein12();
  auto v = Embeddability(l, f, "chein12");
  EXPECT_EQ(v.outcome, EmbeddabilityVerdict<PF>::Outcome::kEmbeds);
  ExpectSoundEmbedding(l, v, BuildAlternativeLoopAlgebra(f, l));
}

TEST(Embeddability, Chein12OverGF7Collides) {
  PF f(7);
  auto v = Embeddability(testing::Chein12(), f, "chein12");
  EXPECT_TRUE(v.checks.r1);
  EXPECT_EQ(v.outcome, EmbeddabilityVerdict<PF>::Outcome::kCollision);
  ASSERT_TRUE(v.collision);
  auto fqb = BuildAlternativeLoopAlgebra(f, testing::Chein12());
  EXPECT_EQ(fqb.Image(v.collision->first), fqb.Image(v.collision->second));
  try {
    CircleEmbedding(testing::Chein12(), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotEmbeddable);
  }
}

TEST(Embeddability, GroupsAlwaysEmbed) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PF f(p);
    auto v = Embeddability(testing::S3(), f, "s3");
    EXPECT_EQ(v.outcome, EmbeddabilityVerdict<PF>::Outcome::kEmbeds);
    ExpectSoundEmbedding(testing::S3(), v, BuildAlternativeLoopAlgebra(f, testing::S3()));
  }
}

TEST(Embeddability, OrderBound) {
  try {
    Embeddability(testing::Fixture("product:paige:2,c3"), PF(3), "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOrderBoundExceeded);
  }
}

TEST(Wedderburn, GroupCaseQuotientIsField) {
  auto r = MakeWedderburnReport(testing::S3(), PF(7));
  EXPECT_TRUE(r.radical_subloop.is_whole());
  EXPECT_EQ(r.radical_dim, 5u);
  EXPECT_EQ(r.quotient_dim, 1u);
  EXPECT_TRUE(r.dims_consistent);
  EXPECT_TRUE(r.no_nilpotent_principal_ideals);
  EXPECT_TRUE(r.decomposition_ok);
  EXPECT_EQ(r.simple_summand_dims, (std::vector<std::size_t>{1}));
}

TEST(Wedderburn, Cml81OverGF3) {
  auto r = MakeWedderburnReport(testing::Cml81(), PF(3));
  EXPECT_TRUE(r.radical_subloop.is_whole());
  EXPECT_EQ(r.quotient_dim, 1u);
  EXPECT_TRUE(r.dims_consistent);
}

TEST(Wedderburn, DimensionLawForNormalSubloops) {
  // dim F[Q]/ω[H] = dim F[Q/H] for every normal H of chein12 over GF(2).
  PF f(2);
  const auto& l = testing::Chein12();
  auto fqb = BuildAlternativeLoopAlgebra(f, l);
  for (const auto& h : NormalSubloopLattice(l)) {
    auto omega = AugmentationIdeal(fqb, h);
    auto quotient = BuildAlternativeLoopAlgebra(f, QuotientLoop(l, h).loop);
    EXPECT_EQ(fqb.algebra->dim() - omega.dim(), quotient.algebra->dim());
  }
}

}  // namespace
}  // namespace loopforge
