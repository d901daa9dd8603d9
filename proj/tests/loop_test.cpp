#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "loopforge/constructions.hpp"
#include "loopforge/loop.hpp"

namespace loopforge {
namespace {

using testing::Chein12;
using testing::Cml81;
using testing::CmlElt;
using testing::S3;

// Independent normality test straight from the definition: closed under
// multiplication and both divisions, and xN = Nx, x(yN) = (xy)N, (Nx)y = N(xy)
// as sets.
bool NormalByDefinition(const FiniteLoop& l, const std::vector<bool>& in) {
  const Elt n = static_cast<Elt>(l.order());
  if (!in[0]) return false;
  for (Elt a = 0; a < n; ++a) {
    if (!in[a]) continue;
    for (Elt b = 0; b < n; ++b) {
      if (!in[b]) continue;
      if (!in[l.mul(a, b)] || !in[l.ldiv(a, b)] || !in[l.rdiv(a, b)]) return false;
    }
  }
  auto image = [&](auto fn) {
    std::set<Elt> s;
    for (Elt m = 0; m < n; ++m)
      if (in[m]) s.insert(fn(m));
    return s;
  };
  for (Elt x = 0; x < n; ++x) {
    if (image([&](Elt m) { return l.mul(x, m); }) != image([&](Elt m) { return l.mul(m, x); })) return false;
    for (Elt y = 0; y < n; ++y) {
      Elt xy = l.mul(x, y);
      if (image([&](Elt m) { return l.mul(x, l.mul(y, m)); }) != image([&](Elt m) { return l.mul(xy, m); }))
        return false;
      if (image([&](Elt m) { return l.mul(l.mul(m, x), y); }) != image([&](Elt m) { return l.mul(m, xy); }))
        return false;
    }
  }
  return true;
}

std::vector<std::vector<bool>> AllNormalSubsets(const FiniteLoop& l) {
  const std::size_t n = l.order();
  std::vector<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
    std::vector<bool> in(n, false);
    in[0] = true;
    for (std::size_t i = 1; i < n; ++i) in[i] = (mask >> (i - 1)) & 1;
    if (NormalByDefinition(l, in)) out.push_back(in);
  }
  return out;
}

void CheckClosuresAgainstBruteForce(const FiniteLoop& l) {
  auto normals = AllNormalSubsets(l);
  auto lattice = NormalSubloopLattice(l);
  EXPECT_EQ(lattice.size(), normals.size());
  for (const auto& s : lattice) EXPECT_TRUE(NormalByDefinition(l, s.mask()));
  const Elt n = static_cast<Elt>(l.order());
  for (Elt a = 0; a < n; ++a) {
    for (Elt b = a; b < n; ++b) {
      // smallest brute-force normal subloop containing a and b
      const std::vector<bool>* best = nullptr;
      std::size_t best_size = n + 1;
      for (const auto& s : normals) {
        if (!s[a] || !s[b]) continue;
        auto sz = static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
        if (sz < best_size) best = &s, best_size = sz;
      }
      ASSERT_NE(best, nullptr);
      EXPECT_EQ(NormalClosure(l, {a, b}).mask(), *best);
      EXPECT_EQ(NormalClosureByEquations(l, {a, b}).mask(), *best);
    }
  }
}

TEST(NormalClosure, S3AgainstSubsetEnumeration) { CheckClosuresAgainstBruteForce(S3()); }
TEST(NormalClosure, Chein12AgainstSubsetEnumeration) { CheckClosuresAgainstBruteForce(Chein12()); }
TEST(NormalClosure, CyclicSixAgainstSubsetEnumeration) { CheckClosuresAgainstBruteForce(CyclicGroup(6)); }

TEST(FiniteLoop, RejectsNonLatinTable) {
  try {
    FiniteLoop::FromTable({"e", "a"}, {{0, 1}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLatinSquareViolation);
  }
}

TEST(FiniteLoop, RejectsMisplacedIdentity) {
  try {
    FiniteLoop::FromTable({"a", "e"}, {{1, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoIdentityAtZero);
  }
}

TEST(FiniteLoop, DivisionsInvertMultiplication) {
  const auto& l = Chein12();
  for (Elt x = 0; x < 12; ++x)
    for (Elt y = 0; y < 12; ++y) {
      EXPECT_EQ(l.mul(x, l.ldiv(x, y)), y);
      EXPECT_EQ(l.mul(l.rdiv(y, x), x), y);
    }
}

TEST(LoopAssociator, DefiningEquation) {
  const auto& l = Cml81();
  for (Elt x = 0; x < 81; x += 7)
    for (Elt y = 0; y < 81; y += 5)
      for (Elt z = 0; z < 81; z += 11)
        EXPECT_EQ(l.mul(l.mul(x, y), z), l.mul(l.mul(x, l.mul(y, z)), Associator(l, x, y, z)));
}

TEST(LoopCommutator, DefiningEquation) {
  const auto& l = S3();
  for (Elt x = 0; x < 6; ++x)
    for (Elt y = 0; y < 6; ++y) EXPECT_EQ(l.mul(x, y), l.mul(l.mul(y, x), Commutator(l, x, y)));
}

// Moufang fixtures: IP, diassociative, Lagrange for element orders,
// quotients stay Moufang.
class MoufangFixture : public ::testing::TestWithParam<const char*> {};

TEST_P(MoufangFixture, InverseProperty) {
  const auto& l = testing::Fixture(GetParam());
  EXPECT_TRUE(CheckIP(l).ok);
  for (Elt x = 0; x < l.order(); ++x) EXPECT_EQ(l.ldiv(x, 0), l.rdiv(0, x));
}

TEST_P(MoufangFixture, Diassociative) {
  const auto& l = testing::Fixture(GetParam());
  Rng rng(kDefaultSeed);
  for (int s = 0; s < 40; ++s) {
    Elt x = static_cast<Elt>(rng() % l.order()), y = static_cast<Elt>(rng() % l.order());
    auto sub = SubloopGenerated(l, {x, y});
    for (Elt a : sub.members)
      for (Elt b : sub.members)
        for (Elt c : sub.members) ASSERT_EQ(l.mul(l.mul(a, b), c), l.mul(a, l.mul(b, c)));
  }
}

TEST_P(MoufangFixture, ElementOrderDividesLoopOrder) {
  const auto& l = testing::Fixture(GetParam());
  for (Elt x = 0; x < l.order(); ++x) EXPECT_EQ(l.order() % l.ElementOrder(x), 0u);
}

TEST_P(MoufangFixture, QuotientsAreMoufang) {
  const auto& l = testing::Fixture(GetParam());
  for (const auto& n : NormalSubloopLattice(l)) {
    auto q = QuotientLoop(l, n);
    EXPECT_EQ(q.loop.order() * n.size(), l.order());
    EXPECT_TRUE(CheckMoufangExhaustive(q.loop).ok);
    for (Elt x = 0; x < l.order(); ++x)
      for (Elt y = 0; y < l.order(); ++y)
        ASSERT_EQ(q.coset_of[l.mul(x, y)], q.loop.mul(q.coset_of[x], q.coset_of[y]));
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, MoufangFixture, ::testing::Values("s3", "c6", "chein12", "cml81"));

TEST(Properties, FixtureFlags) {
  auto rs = CheckProperties(S3());
  EXPECT_TRUE(rs.associative.ok);
  EXPECT_FALSE(rs.commutative.ok);
  auto rc = CheckProperties(Chein12());
  EXPECT_TRUE(rc.moufang.ok);
  EXPECT_FALSE(rc.associative.ok);
  ASSERT_TRUE(rc.associative.witness);
  auto w = *rc.associative.witness;
  const auto& l = Chein12();
  EXPECT_NE(l.mul(l.mul(w.x, w.y), w.z), l.mul(w.x, l.mul(w.y, w.z)));
  auto rm = CheckProperties(Cml81());
  EXPECT_TRUE(rm.commutative.ok);
  EXPECT_EQ(rm.exponent, 3u);
  EXPECT_TRUE(rm.is_p_loop(3));
}

TEST(Properties, NonMoufangLoopDetected) {
  // Smallest nonassociative loop (order 5), not Moufang.
  std::vector<std::vector<Elt>> t{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  auto l = FiniteLoop::FromTable({"e", "a", "b", "c", "d"}, t);
  auto m = CheckMoufangExhaustive(l);
  EXPECT_FALSE(m.ok);
  ASSERT_TRUE(m.witness);
  auto [x, y, z] = *m.witness;
  EXPECT_NE(l.mul(l.mul(x, l.mul(y, x)), z), l.mul(x, l.mul(y, l.mul(x, z))));
}

TEST(Center, Cml81AgainstDefinition) {
  const auto& l = Cml81();
  std::vector<Elt> expect;
  for (Elt z = 0; z < 81; ++z) {
    bool central = true;
    for (Elt x = 0; x < 81 && central; ++x)
      for (Elt y = 0; y < 81 && central; ++y)
        central = l.mul(l.mul(z, x), y) == l.mul(z, l.mul(x, y)) && l.mul(l.mul(x, z), y) == l.mul(x, l.mul(z, y)) &&
                  l.mul(l.mul(x, y), z) == l.mul(x, l.mul(y, z));
    if (central) expect.push_back(z);
  }
  EXPECT_EQ(Center(l).members, expect);
  EXPECT_EQ(expect.size(), 3u);
  // x4 is the central coordinate
  EXPECT_EQ(expect, (std::vector<Elt>{0, CmlElt(0, 0, 0, 1), CmlElt(0, 0, 0, 2)}));
}

TEST(Center, S3IsTrivial) { EXPECT_TRUE(Center(S3()).is_trivial()); }

TEST(CentralSeries, Cml81HasClassTwo) {
  auto up = CentralSeries(Cml81(), SeriesReport::Kind::kUpperCentral);
  ASSERT_TRUE(up.nilpotency_class);
  EXPECT_EQ(*up.nilpotency_class, 2u);
  ASSERT_EQ(up.terms.size(), 3u);
  EXPECT_EQ(up.terms[1].size(), 3u);
  auto low = CentralSeries(Cml81(), SeriesReport::Kind::kLowerCentral);
  ASSERT_TRUE(low.nilpotency_class);
  EXPECT_EQ(*low.nilpotency_class, 2u);
  EXPECT_EQ(low.terms[1], up.terms[1]);
}

TEST(CentralSeries, S3IsNotNilpotent) {
  auto up = CentralSeries(S3(), SeriesReport::Kind::kUpperCentral);
  EXPECT_FALSE(up.nilpotency_class);
  auto low = CentralSeries(S3(), SeriesReport::Kind::kLowerCentral);
  EXPECT_FALSE(low.nilpotency_class);
  EXPECT_EQ(low.terms.back().size(), 3u);
}

TEST(Simplicity, SmallGroups) {
  EXPECT_TRUE(IsSimple(CyclicGroup(5)).simple);
  auto s3 = IsSimple(S3());
  EXPECT_FALSE(s3.simple);
  ASSERT_TRUE(s3.witness);
  EXPECT_EQ(s3.witness->size(), 3u);
  EXPECT_FALSE(IsSimple(Chein12()).simple);
}

TEST(CompositionSeries, S3Factors) {
  auto cs = CompositionSeries(S3());
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].upper.size() / cs[0].lower.size(), 2u);
  EXPECT_EQ(cs[1].upper.size() / cs[1].lower.size(), 3u);
  EXPECT_TRUE(IsGroupType(S3()));
  EXPECT_TRUE(IsGroupType(Chein12()));
  EXPECT_TRUE(IsGroupType(Cml81()));
}

TEST(CompositionSeries, EveryStepIsMaximalNormal) {
  const auto& l = Chein12();
  for (const auto& f : CompositionSeries(l)) {
    auto upper = Restrict(l, f.upper);
    auto maximal = MaximalNormalSubloops(upper);
    std::vector<Elt> pos;
    for (Elt m : f.lower.members)
      pos.push_back(static_cast<Elt>(std::lower_bound(f.upper.members.begin(), f.upper.members.end(), m) -
                                     f.upper.members.begin()));
    bool found = false;
    for (const auto& k : maximal) found |= k.members == pos;
    EXPECT_TRUE(found);
  }
}

TEST(DirectProduct, OrderAndComponents) {
  auto p = DirectProduct(S3(), CyclicGroup(2));
  EXPECT_EQ(p.order(), 12u);
  EXPECT_TRUE(IsAssociative(p));
  EXPECT_FALSE(CheckCommutative(p).ok);
  auto big = DirectProduct(Cml81(), Cml81());
  EXPECT_EQ(big.order(), 6561u);
  EXPECT_FALSE(big.has_table());
  EXPECT_EQ(big.mul(big.ldiv(5, 77), 0), big.ldiv(5, 77));
}

TEST(AssociatorIdentity, HoldsOnCml81) {
  auto r = CheckAssociatorIdentity(Cml81(), 200, kDefaultSeed);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.samples, 200u);
}

TEST(AssociatorIdentity, TrivialOnAbelianGroups) { EXPECT_TRUE(CheckAssociatorIdentity(CyclicGroup(6), 200, 1).holds); }

TEST(AssociatorIdentity, RejectsNoncommutativeLoop) {
  try {
    CheckAssociatorIdentity(S3(), 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCommutativeMoufang);
  }
}

TEST(Quotient, RestrictLiftPreimageRoundTrip) {
  const auto& l = S3();
  auto a3 = NormalClosure(l, {4});
  ASSERT_EQ(a3.size(), 3u);
  auto q = QuotientLoop(l, a3);
  EXPECT_EQ(q.loop.order(), 2u);
  EXPECT_EQ(Preimage(q, SubloopSet::Trivial(2), l.order()), a3);
  auto r = Restrict(l, a3);
  EXPECT_TRUE(IsAssociative(r));
  EXPECT_EQ(Lift(a3, SubloopSet::Whole(3)), a3);
}

}  // namespace
}  // namespace loopforge
