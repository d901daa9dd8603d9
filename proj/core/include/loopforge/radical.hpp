#pragma once

// Loop-side and algebra-side radicals glued together: class-S membership
// with cross-checks, the embeddability verdict for Q -> U(F[Q]), the circle
// embedding and the Wedderburn-style report.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopforge/algebra.hpp"
#include "loopforge/radical_loop.hpp"

namespace loopforge {

/// Largest loop order for which F[Q] is built (the alternator closure runs
/// over |Q|^3 generators).
inline constexpr std::size_t kAlgebraOrderBound = 256;

inline void CheckAlgebraBound(const FiniteLoop& loop, std::size_t bound) {
  if (loop.order() > bound)
    throw Error(ErrorCode::kOrderBoundExceeded,
                "order " + std::to_string(loop.order()) + " exceeds the loop-algebra bound " + std::to_string(bound));
}

/// First pair (q, q') with q < q' and equal images in F[Q].
template <Field F>
std::optional<std::pair<Elt, Elt>> FindCollision(const AlternativeLoopAlgebra<F>& fqb) {
  const Elt n = static_cast<Elt>(fqb.loop().order());
  std::vector<Vec<F>> images(n);
  for (Elt g = 0; g < n; ++g) images[g] = fqb.Image(g);
  for (Elt a = 0; a < n; ++a)
    for (Elt b = a + 1; b < n; ++b)
      if (images[a] == images[b]) return std::make_pair(a, b);
  return std::nullopt;
}

// ---------------------------------------------------------------------------

template <Field F>
struct ClassSResult {
  bool value = true;
  ClassSChecks checks;
  /// Algebra side, informational: e is never in ω[Q] since ω[Q] lies in the
  /// kernel of the augmentation F[Q] -> F.
  bool e_notin_omega = true;
  std::size_t algebra_dim = 0;
  std::size_t omega_dim = 0;
  bool canonical_map_injective = true;
};

template <Field F>
ClassSResult<F> InClassS(const FiniteLoop& loop, const F& f, const ClassSOptions& opts = {},
                         std::size_t algebra_bound = kAlgebraOrderBound) {
  ClassSResult<F> r;
  r.checks = LoopSideClassS(loop, opts);
  r.value = r.checks.r1;
  if (loop.order() <= algebra_bound) {
    auto fqb = BuildAlternativeLoopAlgebra(f, loop);
    Subspace<F> omega = AugmentationIdeal(fqb, SubloopSet::Whole(loop.order()));
    r.algebra_dim = fqb.algebra->dim();
    r.omega_dim = omega.dim();
    r.e_notin_omega = !omega.Contains(fqb.algebra->RequireUnit());
    r.canonical_map_injective = !FindCollision(fqb).has_value();
  }
  return r;
}

// ---------------------------------------------------------------------------

template <Field F>
struct EmbeddabilityVerdict {
  enum class Outcome {
    kEmbeds,
    /// A nonassociative simple subloop exists.
    kObstructed,
    /// No simple obstruction, yet the canonical map Q -> F[Q] is not injective.
    kCollision,
  };

  std::string loop_id;
  FieldSpec field;
  Outcome outcome = Outcome::kEmbeds;
  ClassSChecks checks;
  std::size_t algebra_dim = 0;
  std::size_t alternator_ideal_dim = 0;

  /// Images of the loop elements in F[Q] coordinates (Embeds only).
  std::vector<Vec<F>> embedding;
  bool injective = false;
  bool invertible = false;
  bool multiplicative = false;
  std::optional<std::pair<Elt, Elt>> collision;

  std::optional<SubloopSet> witness;
  std::optional<Triple> witness_generators;
  bool witness_verified = false;  // simple, nonassociative, Moufang
  std::uint64_t seed = kDefaultSeed;
};

template <Field F>
std::string OutcomeName(typename EmbeddabilityVerdict<F>::Outcome o) {
  using O = typename EmbeddabilityVerdict<F>::Outcome;
  switch (o) {
    case O::kEmbeds:
      return "embeds";
    case O::kObstructed:
      return "obstructed";
    case O::kCollision:
      return "collision";
  }
  return "unknown";
}

template <Field F>
EmbeddabilityVerdict<F> Embeddability(const FiniteLoop& loop, const F& f, const std::string& loop_id,
                                      const ClassSOptions& opts = {},
                                      std::size_t algebra_bound = kAlgebraOrderBound) {
  CheckAlgebraBound(loop, algebra_bound);
  EmbeddabilityVerdict<F> v;
  v.loop_id = loop_id;
  v.field = f.spec();
  v.seed = opts.seed;
  v.checks = LoopSideClassS(loop, opts);

  auto fqb = BuildAlternativeLoopAlgebra(f, loop);
  const Algebra<F>& a = *fqb.algebra;
  v.algebra_dim = a.dim();
  v.alternator_ideal_dim = fqb.alternator_ideal.dim();
  v.collision = FindCollision(fqb);
  v.injective = !v.collision.has_value();

  const Elt n = static_cast<Elt>(loop.order());
  std::vector<Vec<F>> images(n);
  for (Elt g = 0; g < n; ++g) images[g] = fqb.Image(g);
  v.invertible = true;
  for (Elt g = 0; g < n && v.invertible; ++g) {
    auto inv = Invert(a, std::span<const typename F::Elem>(images[g]));
    v.invertible = inv && *inv == images[loop.inv(g)];
  }
  v.multiplicative = true;
  for (Elt g = 0; g < n && v.multiplicative; ++g)
    for (Elt h = 0; h < n; ++h)
      if (a.Mul(images[g], images[h]) != images[loop.mul(g, h)]) {
        v.multiplicative = false;
        break;
      }

  using O = typename EmbeddabilityVerdict<F>::Outcome;
  if (!v.checks.r1) {
    v.outcome = O::kObstructed;
    v.witness = v.checks.simple_subloop;
    v.witness_generators = v.checks.simple_generators;
    if (v.witness) {
      FiniteLoop w = Restrict(loop, *v.witness);
      v.witness_verified = IsSimple(w).simple && !IsAssociative(w) && IsMoufang(w);
    }
  } else if (v.injective && v.invertible && v.multiplicative) {
    v.outcome = O::kEmbeds;
    v.embedding = std::move(images);
  } else {
    v.outcome = O::kCollision;
  }
  return v;
}

// ---------------------------------------------------------------------------

struct CircleEmbeddingReport {
  bool ok = true;
  std::uint64_t pairs = 0;
  std::optional<std::pair<Elt, Elt>> witness;
};

/// q ↦ e − π(q); checks (e−π(q))∘(e−π(q')) = e − π(qq') on all pairs.
template <Field F>
CircleEmbeddingReport CircleEmbedding(const FiniteLoop& loop, const F& f,
                                      std::size_t algebra_bound = kAlgebraOrderBound) {
  CheckAlgebraBound(loop, algebra_bound);
  auto fqb = BuildAlternativeLoopAlgebra(f, loop);
  if (FindCollision(fqb)) throw Error(ErrorCode::kNotEmbeddable, "canonical map Q -> F[Q] is not injective");
  const Algebra<F>& a = *fqb.algebra;
  const Vec<F> e = a.RequireUnit();
  const Elt n = static_cast<Elt>(loop.order());
  std::vector<Vec<F>> eta(n);
  for (Elt g = 0; g < n; ++g) eta[g] = a.Sub(e, fqb.Image(g));
  CircleEmbeddingReport rep;
  for (Elt g = 0; g < n; ++g)
    for (Elt h = 0; h < n; ++h) {
      ++rep.pairs;
      if (Circle(a, std::span<const typename F::Elem>(eta[g]), std::span<const typename F::Elem>(eta[h])) !=
          eta[loop.mul(g, h)]) {
        rep.ok = false;
        rep.witness = std::make_pair(g, h);
        return rep;
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------

template <Field F>
struct WedderburnReport {
  SubloopSet radical_subloop;
  std::size_t algebra_dim = 0;
  std::size_t radical_dim = 0;   // dim ω[S(Q)] in F[Q]
  std::size_t quotient_dim = 0;  // dim F[Q]/ω[S(Q)]
  std::size_t quotient_loop_algebra_dim = 0;  // dim F[Q/S(Q)], built independently
  bool dims_consistent = false;
  /// ω of the quotient algebra equals the whole quotient.
  bool quotient_omega_is_whole = false;
  std::size_t quotient_omega_dim = 0;
  /// No sampled element of the quotient generates a nonzero nilpotent ideal.
  bool no_nilpotent_principal_ideals = true;
  std::uint64_t principal_samples = 0;
  /// Dimensions of the simple ideals found by principal-ideal splitting
  /// (quotient dim <= 64), and whether they sum directly to the quotient.
  std::vector<std::size_t> simple_summand_dims;
  bool decomposition_ok = false;
  bool decomposition_attempted = false;
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

/// Minimal ideals among principal closures of the basis and of `extra`
/// random elements; returns them if their sum is direct and fills the
/// algebra.
template <Field F>
std::optional<std::vector<Subspace<F>>> SplitIntoSimpleIdeals(const Algebra<F>& a, std::uint64_t extra, Rng& rng) {
  const auto acts = a.Actions();
  std::vector<Subspace<F>> principals;
  auto add = [&](const Vec<F>& v) {
    if (a.IsZero(v)) return;
    std::vector<Vec<F>> seed{v};
    Subspace<F> s = IdealClosure<F>(a.field(), a.dim(), seed, acts);
    if (std::find(principals.begin(), principals.end(), s) == principals.end()) principals.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < a.dim(); ++i) add(a.Basis(i));
  for (std::uint64_t s = 0; s < extra; ++s) add(a.Random(rng));
  // Refine: intersections of pairs are ideals too.
  for (std::size_t i = 0; i < principals.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Subspace<F> x = principals[i].Intersect(principals[j]);
      if (x.dim() > 0 && std::find(principals.begin(), principals.end(), x) == principals.end())
        principals.push_back(std::move(x));
    }
  std::vector<Subspace<F>> minimal;
  for (const auto& p : principals) {
    bool is_min = std::none_of(principals.begin(), principals.end(),
                               [&](const Subspace<F>& q) { return q.dim() < p.dim() && q.IsSubsetOf(p); });
    if (is_min && std::find(minimal.begin(), minimal.end(), p) == minimal.end()) minimal.push_back(p);
  }
  Subspace<F> sum(a.field(), a.dim());
  std::size_t total = 0;
  for (const auto& m : minimal) {
    sum = sum.Sum(m);
    total += m.dim();
  }
  if (total != a.dim() || !sum.is_full()) return std::nullopt;
  return minimal;
}

}  // namespace detail

template <Field F>
WedderburnReport<F> MakeWedderburnReport(const FiniteLoop& loop, const F& f, const ClassSOptions& opts = {},
                                         std::size_t algebra_bound = kAlgebraOrderBound) {
  CheckAlgebraBound(loop, algebra_bound);
  WedderburnReport<F> rep;
  rep.seed = opts.seed;
  rep.radical_subloop = LoopRadicalS(loop, opts);

  auto fqb = BuildAlternativeLoopAlgebra(f, loop);
  const Algebra<F>& a = *fqb.algebra;
  rep.algebra_dim = a.dim();
  Subspace<F> radical = AugmentationIdeal(fqb, rep.radical_subloop);
  rep.radical_dim = radical.dim();
  rep.quotient_dim = a.dim() - radical.dim();

  Quotient q = QuotientLoop(loop, rep.radical_subloop);
  rep.quotient_loop_algebra_dim = BuildAlternativeLoopAlgebra(f, q.loop).algebra->dim();
  rep.dims_consistent = rep.quotient_loop_algebra_dim == rep.quotient_dim;

  auto quot = std::make_shared<const QuotientAlgebra<F>>(fqb.algebra, radical);
  auto image = [&](Elt g) { return quot->Project(fqb.Image(g)); };
  Subspace<F> qomega = AugmentationIdeal<F>(*quot, image, SubloopSet::Whole(loop.order()));
  rep.quotient_omega_dim = qomega.dim();
  rep.quotient_omega_is_whole = qomega.is_full();

  Rng rng(opts.seed);
  const auto acts = quot->Actions();
  const std::uint64_t samples = 32;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Vec<F> x = quot->Random(rng);
    if (quot->IsZero(x)) continue;
    ++rep.principal_samples;
    std::vector<Vec<F>> seed{x};
    Subspace<F> ideal = IdealClosure<F>(f, quot->dim(), seed, acts);
    if (NilpotencyIndex(ideal, quot->AsBilinear())) {
      rep.no_nilpotent_principal_ideals = false;
      break;
    }
  }
  if (quot->dim() <= 64) {
    rep.decomposition_attempted = true;
    if (auto parts = detail::SplitIntoSimpleIdeals(*quot, 16, rng)) {
      rep.decomposition_ok = true;
      for (const auto& p : *parts) rep.simple_summand_dims.push_back(p.dim());
      std::sort(rep.simple_summand_dims.begin(), rep.simple_summand_dims.end());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json SubloopJson(const FiniteLoop& loop, const SubloopSet& s) {
  nlohmann::ordered_json j;
  j["order"] = s.size();
  std::vector<std::string> names;
  for (Elt m : s.members) names.push_back(loop.name(m));
  j["members"] = names;
  return j;
}

inline nlohmann::ordered_json ClassSChecksJson(const ClassSChecks& c) {
  nlohmann::ordered_json j;
  j["r1"] = c.r1;
  j["r2"] = c.r2;
  j["r3"] = c.r3;
  j["r3_mode"] = c.r3_exhaustive ? "exhaustive" : "sampled";
  j["r3_triples"] = c.r3_triples;
  return j;
}

template <Field F>
nlohmann::ordered_json VerdictJson(const FiniteLoop& loop, const EmbeddabilityVerdict<F>& v) {
  using O = typename EmbeddabilityVerdict<F>::Outcome;
  nlohmann::ordered_json j;
  j["loop"] = v.loop_id;
  j["field"] = v.field.ToString();
  j["outcome"] = OutcomeName<F>(v.outcome);
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  if (v.outcome == O::kObstructed && v.witness) {
    w["subloop"] = SubloopJson(loop, *v.witness);
    if (v.witness_generators) {
      const Triple& t = *v.witness_generators;
      w["generators"] = {loop.name(t.x), loop.name(t.y), loop.name(t.z)};
    }
    w["verified_simple_nonassociative_moufang"] = v.witness_verified;
  }
  if (v.outcome == O::kEmbeds) {
    w["images"] = v.embedding.size();
    w["injective"] = v.injective;
    w["invertible"] = v.invertible;
    w["multiplicative"] = v.multiplicative;
  }
  if (v.collision) w["collision"] = {loop.name(v.collision->first), loop.name(v.collision->second)};
  w["algebra_dim"] = v.algebra_dim;
  w["alternator_ideal_dim"] = v.alternator_ideal_dim;
  j["witness"] = w;
  j["checks"] = ClassSChecksJson(v.checks);
  j["seed"] = v.seed;
  return j;
}

template <Field F>
nlohmann::ordered_json WedderburnJson(const FiniteLoop& loop, const WedderburnReport<F>& r) {
  nlohmann::ordered_json j;
  j["radical_subloop"] = SubloopJson(loop, r.radical_subloop);
  j["algebra_dim"] = r.algebra_dim;
  j["radical_dim"] = r.radical_dim;
  j["quotient_dim"] = r.quotient_dim;
  j["quotient_loop_algebra_dim"] = r.quotient_loop_algebra_dim;
  j["dims_consistent"] = r.dims_consistent;
  nlohmann::ordered_json q;
  q["omega_dim"] = r.quotient_omega_dim;
  q["omega_is_whole"] = r.quotient_omega_is_whole;
  q["no_nilpotent_principal_ideals"] = r.no_nilpotent_principal_ideals;
  q["principal_samples"] = r.principal_samples;
  if (r.decomposition_attempted) {
    q["decomposition_ok"] = r.decomposition_ok;
    q["simple_summand_dims"] = r.simple_summand_dims;
  }
  j["quotient_checks"] = q;
  j["seed"] = r.seed;
  return j;
}

}  // namespace loopforge
