#pragma once

// Finite-dimensional algebras over a Field: loop algebras FQ, structure-
// constant algebras, quotients by ideals, the alternator ideal I(Q) and the
// alternative loop algebra F[Q] = FQ/I(Q), augmentation ideals, unitization,
// inverses, quasiinverses, circle loops, nilpotency and the Zhevlakov
// radical at desk scale.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loopforge/error.hpp"
#include "loopforge/gf.hpp"
#include "loopforge/linalg.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/zorn.hpp"

namespace loopforge {

template <Field F>
class Algebra {
 public:
  using Elem = typename F::Elem;
  using V = Vec<F>;
  using CSpan = std::span<const Elem>;

  Algebra(F field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}
  virtual ~Algebra() = default;

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }

  virtual V Mul(CSpan a, CSpan b) const = 0;
  virtual std::optional<V> Unit() const { return std::nullopt; }
  virtual std::string BasisName(std::size_t i) const { return "b" + std::to_string(i); }

  /// Left and right multiplications by a spanning set of the algebra. Ideal
  /// closure under these maps is closure under the whole algebra.
  virtual std::vector<LinearMap<F>> Actions() const {
    std::vector<LinearMap<F>> acts;
    for (std::size_t i = 0; i < dim_; ++i) {
      V b = Basis(i);
      acts.push_back([this, b](CSpan v) { return Mul(b, v); });
      acts.push_back([this, b](CSpan v) { return Mul(v, b); });
    }
    return acts;
  }

  V Zero() const { return ZeroVec(field_, dim_); }
  V Basis(std::size_t i) const { return BasisVec(field_, dim_, i); }
  V Add(CSpan a, CSpan b) const { return AddVec(field_, a, b); }
  V Sub(CSpan a, CSpan b) const { return SubVec(field_, a, b); }
  V Scale(const Elem& s, CSpan a) const { return ScaleVec(field_, s, a); }
  V Random(Rng& rng) const { return RandomVec(field_, dim_, rng); }
  bool IsZero(CSpan a) const { return IsZeroVec(field_, a); }

  V RequireUnit() const {
    auto u = Unit();
    if (!u) throw Error(ErrorCode::kUnsupported, "operation needs a unital algebra");
    return *u;
  }

  /// ab·c − a·bc.
  V Associator(CSpan a, CSpan b, CSpan c) const {
    return Sub(Mul(Mul(a, b), c), Mul(a, Mul(b, c)));
  }
  /// ab − ba.
  V Commutator(CSpan a, CSpan b) const { return Sub(Mul(a, b), Mul(b, a)); }

  /// x^k, left-nested.
  V Pow(CSpan x, std::size_t k) const {
    if (k == 0) return RequireUnit();
    V r(x.begin(), x.end());
    for (std::size_t i = 1; i < k; ++i) r = Mul(r, x);
    return r;
  }

  Bilinear<F> AsBilinear() const {
    return [this](CSpan a, CSpan b) { return Mul(a, b); };
  }

  std::string Format(CSpan v) const {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (field_.is_zero(v[i])) continue;
      if (!s.empty()) s += " + ";
      s += (field_.is_one(v[i]) ? std::string() : field_.to_string(v[i]) + "*") + BasisName(i);
    }
    return s.empty() ? "0" : s;
  }

 protected:
  F field_;
  std::size_t dim_;
};

// ---------------------------------------------------------------------------

/// FQ: basis indexed by loop elements, g_i g_j = g_{ij}, unit = basis 0.
template <Field F>
class LoopAlgebra : public Algebra<F> {
 public:
  using typename Algebra<F>::V;
  using typename Algebra<F>::CSpan;
  using Elem = typename F::Elem;

  static constexpr std::size_t kMaxDim = 4096;

  LoopAlgebra(F field, FiniteLoop loop) : Algebra<F>(std::move(field), loop.order()), loop_(std::move(loop)) {
    if (loop_.order() > kMaxDim)
      throw Error(ErrorCode::kDimensionBoundExceeded,
                  "loop algebra of dimension " + std::to_string(loop_.order()) + " exceeds " + std::to_string(kMaxDim));
  }

  const FiniteLoop& loop() const { return loop_; }

  V Mul(CSpan a, CSpan b) const override {
    const auto& f = this->field_;
    V c = this->Zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (f.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (f.is_zero(b[j])) continue;
        Elt k = loop_.mul(static_cast<Elt>(i), static_cast<Elt>(j));
        c[k] = f.add(c[k], f.mul(a[i], b[j]));
      }
    }
    return c;
  }
  std::optional<V> Unit() const override { return this->Basis(0); }
  std::string BasisName(std::size_t i) const override { return loop_.name(static_cast<Elt>(i)); }

  /// g·v and v·g are coordinate permutations.
  V LeftBy(Elt g, CSpan v) const {
    V c = this->Zero();
    for (std::size_t j = 0; j < v.size(); ++j) c[loop_.mul(g, static_cast<Elt>(j))] = v[j];
    return c;
  }
  V RightBy(Elt g, CSpan v) const {
    V c = this->Zero();
    for (std::size_t j = 0; j < v.size(); ++j) c[loop_.mul(static_cast<Elt>(j), g)] = v[j];
    return c;
  }

  std::vector<LinearMap<F>> Actions() const override {
    std::vector<LinearMap<F>> acts;
    for (Elt g = 0; g < loop_.order(); ++g) {
      acts.push_back([this, g](CSpan v) { return LeftBy(g, v); });
      acts.push_back([this, g](CSpan v) { return RightBy(g, v); });
    }
    return acts;
  }

  V Image(Elt g) const { return this->Basis(g); }

 private:
  FiniteLoop loop_;
};

/// Algebra given by structure constants c[i][j] = b_i b_j.
template <Field F>
class StructureAlgebra : public Algebra<F> {
 public:
  using typename Algebra<F>::V;
  using typename Algebra<F>::CSpan;

  StructureAlgebra(F field, std::vector<std::string> names, std::vector<std::vector<V>> constants,
                   std::optional<V> unit = std::nullopt)
      : Algebra<F>(std::move(field), names.size()),
        names_(std::move(names)),
        c_(std::move(constants)),
        unit_(std::move(unit)) {
    if (c_.size() != this->dim_) throw Error(ErrorCode::kDimensionMismatch, "structure constants");
    for (const auto& row : c_) {
      if (row.size() != this->dim_) throw Error(ErrorCode::kDimensionMismatch, "structure constants");
      for (const auto& v : row)
        if (v.size() != this->dim_) throw Error(ErrorCode::kDimensionMismatch, "structure constants");
    }
  }

  V Mul(CSpan a, CSpan b) const override {
    const auto& f = this->field_;
    if (a.size() != this->dim_ || b.size() != this->dim_) throw Error(ErrorCode::kDimensionMismatch, "product");
    V c = this->Zero();
    for (std::size_t i = 0; i < this->dim_; ++i) {
      if (f.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < this->dim_; ++j) {
        if (f.is_zero(b[j])) continue;
        auto s = f.mul(a[i], b[j]);
        const V& cij = c_[i][j];
        for (std::size_t k = 0; k < this->dim_; ++k)
          if (!f.is_zero(cij[k])) c[k] = f.add(c[k], f.mul(s, cij[k]));
      }
    }
    return c;
  }
  std::optional<V> Unit() const override { return unit_; }
  std::string BasisName(std::size_t i) const override { return names_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<V>> c_;
  std::optional<V> unit_;
};

/// Zorn vector-matrix algebra, basis (e11, e22, e12^1..3, e21^1..3), unit
/// e11 + e22.
template <Field F>
StructureAlgebra<F> ZornAlgebra(const F& f) {
  using Z = ZornMatrix<F>;
  using V = Vec<F>;
  auto to_matrix = [&](std::span<const typename F::Elem> v) {
    std::array<typename F::Elem, 8> c;
    for (int i = 0; i < 8; ++i) c[i] = v[i];
    return Z::FromCoords(c);
  };
  auto to_vec = [](const Z& m) {
    auto c = m.Coords();
    return V(c.begin(), c.end());
  };
  std::vector<std::vector<V>> consts(8, std::vector<V>(8));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      consts[i][j] = to_vec(ZornMul(f, to_matrix(BasisVec(f, 8, i)), to_matrix(BasisVec(f, 8, j))));
  V unit = ZeroVec(f, 8);
  unit[0] = f.one();
  unit[1] = f.one();
  std::vector<std::string> names = {"e11", "e22", "e12_1", "e12_2", "e12_3", "e21_1", "e21_2", "e21_3"};
  return StructureAlgebra<F>(f, std::move(names), std::move(consts), unit);
}

/// Parent algebra modulo an ideal. Quotient coordinates are the values on the
/// ideal's free (non-pivot) columns after reduction.
template <Field F>
class QuotientAlgebra : public Algebra<F> {
 public:
  using typename Algebra<F>::V;
  using typename Algebra<F>::CSpan;
  using Elem = typename F::Elem;

  /// Verifies that the ideal is proper (unit outside) and stable under the
  /// parent's actions.
  QuotientAlgebra(std::shared_ptr<const Algebra<F>> parent, Subspace<F> ideal)
      : Algebra<F>(parent->field(), parent->dim() - ideal.dim()), parent_(std::move(parent)), ideal_(std::move(ideal)) {
    if (ideal_.ambient_dim() != parent_->dim()) throw Error(ErrorCode::kDimensionMismatch, "ideal ambient dimension");
    if (auto u = parent_->Unit(); u && ideal_.Contains(*u))
      throw Error(ErrorCode::kIdealNotProper, "the unit lies in the ideal");
    auto acts = parent_->Actions();
    for (const auto& row : ideal_.rows())
      for (const auto& act : acts)
        if (!ideal_.Contains(act(row)))
          throw Error(ErrorCode::kIdealNotStable, "ideal not closed under multiplication");
  }

  const Algebra<F>& parent() const { return *parent_; }
  const Subspace<F>& ideal() const { return ideal_; }

  V Project(CSpan v) const {
    V r = ideal_.Reduce(v);
    const auto& fc = ideal_.free_cols();
    V out(fc.size());
    for (std::size_t k = 0; k < fc.size(); ++k) out[k] = r[fc[k]];
    return out;
  }
  V Lift(CSpan a) const {
    V v = parent_->Zero();
    const auto& fc = ideal_.free_cols();
    for (std::size_t k = 0; k < fc.size(); ++k) v[fc[k]] = a[k];
    return v;
  }

  V Mul(CSpan a, CSpan b) const override {
    if (a.size() != this->dim_ || b.size() != this->dim_) throw Error(ErrorCode::kDimensionMismatch, "product");
    return Project(parent_->Mul(Lift(a), Lift(b)));
  }
  std::optional<V> Unit() const override {
    auto u = parent_->Unit();
    if (!u) return std::nullopt;
    return Project(*u);
  }
  std::string BasisName(std::size_t i) const override {
    return "[" + parent_->BasisName(ideal_.free_cols()[i]) + "]";
  }
  std::vector<LinearMap<F>> Actions() const override {
    std::vector<LinearMap<F>> acts;
    for (auto& act : parent_->Actions())
      acts.push_back([this, act](CSpan v) { return Project(act(Lift(v))); });
    return acts;
  }

 private:
  std::shared_ptr<const Algebra<F>> parent_;
  Subspace<F> ideal_;
};

// ---------------------------------------------------------------------------
// Alternator ideal and F[Q]

/// I(Q): ideal of FQ generated by (a,b,c)+(b,a,c), (a,b,c)+(a,c,b), (a,a,c)
/// and (c,a,a) over loop-basis a,b,c, generators in lexicographic order.
/// Throws AlternatorIdealFull when the unit falls inside.
template <Field F>
Subspace<F> AlternatorIdeal(const LoopAlgebra<F>& fq) {
  const auto& f = fq.field();
  const FiniteLoop& q = fq.loop();
  const auto n = static_cast<Elt>(q.order());
  ClosureBuilder<F> builder(f, n);
  SparseVec<F> gen;
  const auto one = f.one();
  const auto minus = f.neg(f.one());
  // (x,y,z) = (xy)z − x(yz) as sparse terms
  auto assoc = [&](Elt x, Elt y, Elt z, SparseVec<F>& out) {
    out.emplace_back(q.mul(q.mul(x, y), z), one);
    out.emplace_back(q.mul(x, q.mul(y, z)), minus);
  };
  for (Elt a = 0; a < n; ++a) {
    for (Elt b = 0; b < n; ++b) {
      for (Elt c = 0; c < n; ++c) {
        gen.clear();
        assoc(a, b, c, gen);
        assoc(b, a, c, gen);
        builder.AddSparse(gen);
        gen.clear();
        assoc(a, b, c, gen);
        assoc(a, c, b, gen);
        builder.AddSparse(gen);
      }
      gen.clear();
      assoc(a, a, b, gen);
      builder.AddSparse(gen);
      gen.clear();
      assoc(b, a, a, gen);
      builder.AddSparse(gen);
    }
  }
  auto acts = fq.Actions();
  Subspace<F> ideal = builder.Close(acts);
  if (ideal.Contains(fq.Basis(0)))
    throw Error(ErrorCode::kAlternatorIdealFull, "e lies in I(Q); FQ/I(Q) would be zero");
  return ideal;
}

/// FQ together with I(Q) and F[Q] = FQ/I(Q).
template <Field F>
struct AlternativeLoopAlgebra {
  std::shared_ptr<const LoopAlgebra<F>> fq;
  Subspace<F> alternator_ideal;
  std::shared_ptr<const QuotientAlgebra<F>> algebra;

  const FiniteLoop& loop() const { return fq->loop(); }
  /// Canonical image of a loop element in F[Q].
  Vec<F> Image(Elt g) const { return algebra->Project(fq->Basis(g)); }
};

template <Field F>
AlternativeLoopAlgebra<F> BuildAlternativeLoopAlgebra(const F& f, const FiniteLoop& loop) {
  auto fq = std::make_shared<const LoopAlgebra<F>>(f, loop);
  Subspace<F> ideal = AlternatorIdeal(*fq);
  auto quot = std::make_shared<const QuotientAlgebra<F>>(fq, ideal);
  return AlternativeLoopAlgebra<F>{fq, std::move(ideal), std::move(quot)};
}

// ---------------------------------------------------------------------------
// Alternativity

template <Field F>
struct AlternativeReport {
  bool ok = true;
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string witness;
};

/// (x,x,y) = (y,x,x) = 0. Exhaustive over basis pairs and linearized basis
/// triples when dim^3 <= exhaustive_limit (and samples == 0 is not forced),
/// otherwise on `samples` random triples.
template <Field F>
AlternativeReport<F> AlternativeCheck(const Algebra<F>& a, bool exhaustive, std::uint64_t samples = 10'000,
                                      std::uint64_t seed = kDefaultSeed) {
  AlternativeReport<F> rep;
  rep.seed = seed;
  const std::size_t n = a.dim();
  auto check = [&](const Vec<F>& x, const Vec<F>& y, const Vec<F>& z, const std::string& label) {
    if (!a.IsZero(a.Associator(x, x, y))) {
      rep.ok = false;
      rep.witness = "(x,x,y) != 0 for x=" + a.Format(x) + ", y=" + a.Format(y) + label;
    } else if (!a.IsZero(a.Associator(y, x, x))) {
      rep.ok = false;
      rep.witness = "(y,x,x) != 0 for x=" + a.Format(x) + ", y=" + a.Format(y) + label;
    } else if (!a.IsZero(a.Add(a.Associator(x, y, z), a.Associator(y, x, z)))) {
      rep.ok = false;
      rep.witness = "(x,y,z)+(y,x,z) != 0 for x=" + a.Format(x) + ", y=" + a.Format(y) + ", z=" + a.Format(z) + label;
    } else if (!a.IsZero(a.Add(a.Associator(x, y, z), a.Associator(x, z, y)))) {
      rep.ok = false;
      rep.witness = "(x,y,z)+(x,z,y) != 0 for x=" + a.Format(x) + ", y=" + a.Format(y) + ", z=" + a.Format(z) + label;
    }
    return rep.ok;
  };
  if (exhaustive) {
    rep.exhaustive = true;
    std::vector<Vec<F>> basis(n);
    for (std::size_t i = 0; i < n; ++i) basis[i] = a.Basis(i);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!check(basis[i], basis[j], basis[k], "")) return rep;
    return rep;
  }
  rep.exhaustive = false;
  rep.samples = samples;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    Vec<F> x = a.Random(rng), y = a.Random(rng), z = a.Random(rng);
    if (!check(x, y, z, " (sample " + std::to_string(s) + ")")) return rep;
  }
  return rep;
}

template <Field F>
bool DefaultExhaustive(const Algebra<F>& a) {
  const std::uint64_t n = a.dim();
  return n * n * n <= 10'000'000;
}

/// Sampled associativity of an algebra; returns a witness description.
template <Field F>
std::optional<std::string> FindNonassociativeTriple(const Algebra<F>& a, std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    Vec<F> x = a.Random(rng), y = a.Random(rng), z = a.Random(rng);
    if (!a.IsZero(a.Associator(x, y, z)))
      return "(x,y,z) != 0 for x=" + a.Format(x) + ", y=" + a.Format(y) + ", z=" + a.Format(z);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Augmentation ideals

/// Ideal generated by {e - image(h) : h in H}.
template <Field F>
Subspace<F> AugmentationIdeal(const Algebra<F>& a, const std::function<Vec<F>(Elt)>& image, const SubloopSet& h) {
  const Vec<F> e = image(0);
  ClosureBuilder<F> builder(a.field(), a.dim());
  for (Elt x : h.members) {
    if (x == 0) continue;
    builder.Add(a.Sub(e, image(x)));
  }
  auto acts = a.Actions();
  return builder.Close(acts);
}

template <Field F>
Subspace<F> AugmentationIdeal(const LoopAlgebra<F>& fq, const SubloopSet& h) {
  return AugmentationIdeal<F>(fq, [&](Elt g) { return fq.Image(g); }, h);
}

template <Field F>
Subspace<F> AugmentationIdeal(const AlternativeLoopAlgebra<F>& fqb, const SubloopSet& h) {
  return AugmentationIdeal<F>(*fqb.algebra, [&](Elt g) { return fqb.Image(g); }, h);
}

/// Zero-coefficient-sum hyperplane of FQ.
template <Field F>
Subspace<F> ZeroSumHyperplane(const F& f, std::size_t n) {
  Subspace<F> s(f, n);
  for (std::size_t i = 1; i < n; ++i) {
    Vec<F> v = ZeroVec(f, n);
    v[0] = f.one();
    v[i] = f.neg(f.one());
    s.Insert(v);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Subalgebras as algebras, unitization

/// The multiplication of `a` restricted to a subspace closed under it,
/// expressed in the subspace's row basis.
template <Field F>
StructureAlgebra<F> InducedAlgebra(const Algebra<F>& a, const Subspace<F>& s) {
  const std::size_t k = s.dim();
  std::vector<std::vector<Vec<F>>> consts(k, std::vector<Vec<F>>(k));
  std::vector<std::string> names(k);
  for (std::size_t i = 0; i < k; ++i) {
    names[i] = "r" + std::to_string(i);
    for (std::size_t j = 0; j < k; ++j) {
      auto c = s.Coordinates(a.Mul(s.rows()[i], s.rows()[j]));
      if (!c) throw Error(ErrorCode::kIdealNotStable, "subspace not closed under multiplication");
      consts[i][j] = std::move(*c);
    }
  }
  return StructureAlgebra<F>(a.field(), std::move(names), std::move(consts));
}

/// A# = Fe ⊕ A with the unit e at index 0 and A at indices 1..dim.
/// (a + αe)(b + βe) = ab + βa + αb + αβe.
template <Field F>
StructureAlgebra<F> Unitize(const Algebra<F>& a) {
  const auto& f = a.field();
  const std::size_t n = a.dim() + 1;
  std::vector<std::vector<Vec<F>>> consts(n, std::vector<Vec<F>>(n, ZeroVec(f, n)));
  std::vector<std::string> names(n);
  names[0] = "e#";
  for (std::size_t i = 0; i < n; ++i) {
    consts[0][i][i] = f.one();
    consts[i][0][i] = f.one();
  }
  for (std::size_t i = 1; i < n; ++i) {
    names[i] = a.BasisName(i - 1);
    for (std::size_t j = 1; j < n; ++j) {
      Vec<F> p = a.Mul(a.Basis(i - 1), a.Basis(j - 1));
      for (std::size_t k = 0; k < p.size(); ++k) consts[i][j][k + 1] = p[k];
    }
  }
  return StructureAlgebra<F>(f, std::move(names), std::move(consts), BasisVec(f, n, 0));
}

/// Coordinate of the adjoined unit; π: A# → F.
template <Field F>
typename F::Elem UnitizationProjection(std::span<const typename F::Elem> v) {
  return v[0];
}

// ---------------------------------------------------------------------------
// Inverses, quasiinverses, circle operation

/// Two-sided inverse by solving u·x = e and y·u = e. Throws
/// SidedInverseMismatch when both sides are solvable with x != y.
template <Field F>
std::optional<Vec<F>> Invert(const Algebra<F>& a, std::span<const typename F::Elem> u) {
  const Vec<F> e = a.RequireUnit();
  const std::size_t n = a.dim();
  std::vector<Vec<F>> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec<F> b = a.Basis(i);
    left[i] = a.Mul(u, b);
    right[i] = a.Mul(b, u);
  }
  auto x = Solve<F>(a.field(), left, e);
  auto y = Solve<F>(a.field(), right, e);
  if (!x || !y) return std::nullopt;
  if (*x != *y) throw Error(ErrorCode::kSidedInverseMismatch, "right inverse differs from left inverse");
  return x;
}

/// a* = e − (e − a)^{-1}; defined iff e − a is invertible.
template <Field F>
std::optional<Vec<F>> Quasiinverse(const Algebra<F>& a, std::span<const typename F::Elem> x) {
  const Vec<F> e = a.RequireUnit();
  auto inv = Invert(a, std::span<const typename F::Elem>(a.Sub(e, x)));
  if (!inv) return std::nullopt;
  return a.Sub(e, *inv);
}

/// a∘b = a + b − ab.
template <Field F>
Vec<F> Circle(const Algebra<F>& a, std::span<const typename F::Elem> x, std::span<const typename F::Elem> y) {
  return a.Sub(a.Add(x, y), a.Mul(x, y));
}

/// a + a* = a·a* = a*·a.
template <Field F>
bool QuasiinverseIdentity(const Algebra<F>& a, std::span<const typename F::Elem> x,
                          std::span<const typename F::Elem> xs) {
  Vec<F> s = a.Add(x, xs);
  return s == a.Mul(x, xs) && s == a.Mul(xs, x);
}

// ---------------------------------------------------------------------------
// Circle loops

/// (carrier, ∘) inside a unital algebra. Elements are vectors of the
/// ambient algebra; enumeration order is the coefficient tuple over the
/// carrier's rows read as a base-|F| number, so 0 has index 0.
template <Field F>
class CircleStructure {
 public:
  using Elem = typename F::Elem;

  CircleStructure(const Algebra<F>& a, Subspace<F> carrier) : a_(&a), carrier_(std::move(carrier)) {
    a.RequireUnit();
  }

  const Algebra<F>& algebra() const { return *a_; }
  const Subspace<F>& carrier() const { return carrier_; }

  Vec<F> Op(std::span<const Elem> x, std::span<const Elem> y) const { return Circle(*a_, x, y); }
  std::optional<Vec<F>> Inverse(std::span<const Elem> x) const { return Quasiinverse(*a_, x); }

  /// |F|^dim, or nullopt when infinite or beyond 2^63.
  std::optional<std::uint64_t> Size() const {
    const std::uint64_t q = a_->field().size();
    if (q == 0) return std::nullopt;
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < carrier_.dim(); ++i) {
      if (n > (std::uint64_t(1) << 62) / q) return std::nullopt;
      n *= q;
    }
    return n;
  }

  Vec<F> Element(std::uint64_t index) const {
    const auto& f = a_->field();
    const auto elems = f.enumerate();
    Vec<F> coords(carrier_.dim());
    for (std::size_t i = carrier_.dim(); i-- > 0;) {
      coords[i] = elems[index % elems.size()];
      index /= elems.size();
    }
    return carrier_.Combine(coords);
  }
  std::uint64_t IndexOf(std::span<const Elem> v) const {
    auto c = carrier_.Coordinates(v);
    if (!c) throw Error(ErrorCode::kDimensionMismatch, "vector outside the circle-loop carrier");
    const auto& f = a_->field();
    std::uint64_t idx = 0;
    for (const auto& x : *c) idx = idx * f.size() + f.index_of(x);
    return idx;
  }
  Vec<F> RandomElement(Rng& rng) const {
    const auto& f = a_->field();
    Vec<F> coords(carrier_.dim());
    for (auto& c : coords) c = f.random(rng);
    return carrier_.Combine(coords);
  }

 private:
  const Algebra<F>* a_;
  Subspace<F> carrier_;
};

template <Field F>
struct CircleLoopResult {
  CircleStructure<F> structure;
  /// Present when the carrier has at most `kMaterializeLimit` elements.
  std::optional<FiniteLoop> loop;
};

inline constexpr std::uint64_t kCircleMaterializeLimit = 4096;

/// Tabulates (carrier, ∘) when it is small enough, after checking that every
/// element is quasiregular and the carrier is closed under ∘. Larger
/// carriers come back as the vector-level structure only.
template <Field F>
CircleLoopResult<F> CircleLoop(const Algebra<F>& a, const Subspace<F>& carrier) {
  CircleStructure<F> cs(a, carrier);
  auto size = cs.Size();
  if (!size || *size > kCircleMaterializeLimit) return {std::move(cs), std::nullopt};
  const std::size_t n = *size;
  std::vector<Vec<F>> elems(n);
  for (std::size_t i = 0; i < n; ++i) {
    elems[i] = cs.Element(i);
    if (!cs.Inverse(elems[i]))
      throw Error(ErrorCode::kNotQuasiregular, "no quasiinverse for " + a.Format(elems[i]));
  }
  std::vector<Elt> flat(n * n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = a.Format(elems[i]);
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = static_cast<Elt>(cs.IndexOf(cs.Op(elems[i], elems[j])));
  }
  return {std::move(cs), FiniteLoop::FromFlatTable(std::move(names), std::move(flat))};
}

struct CircleIsoReport {
  bool eta_ok = true;  // (e−a)(e−b) = e − a∘b
  bool phi_ok = true;  // −(a∘b) = (−a)⊗(−b), u⊗v = uv + u + v
  bool quasiinverse_ok = true;
  bool exhaustive = true;
  std::uint64_t pairs = 0;
  std::uint64_t seed = kDefaultSeed;
  bool ok() const { return eta_ok && phi_ok && quasiinverse_ok; }
};

/// Checks both isomorphism equations on all pairs when the carrier has at
/// most `exhaustive_limit` elements, else on `samples` seeded pairs. The
/// quasiinverse identity is checked on every first argument.
template <Field F>
CircleIsoReport CircleIsoCheck(const CircleStructure<F>& cs, std::uint64_t samples = 100'000,
                               std::uint64_t seed = kDefaultSeed, std::uint64_t exhaustive_limit = 1024) {
  const Algebra<F>& a = cs.algebra();
  const Vec<F> e = a.RequireUnit();
  CircleIsoReport rep;
  rep.seed = seed;
  auto pair = [&](const Vec<F>& x, const Vec<F>& y) {
    Vec<F> c = cs.Op(x, y);
    if (a.Mul(a.Sub(e, x), a.Sub(e, y)) != a.Sub(e, c)) rep.eta_ok = false;
    Vec<F> px = a.Scale(a.field().neg(a.field().one()), x);
    Vec<F> py = a.Scale(a.field().neg(a.field().one()), y);
    Vec<F> otimes = a.Add(a.Add(a.Mul(px, py), px), py);
    if (a.Scale(a.field().neg(a.field().one()), c) != otimes) rep.phi_ok = false;
    ++rep.pairs;
  };
  auto quasi = [&](const Vec<F>& x) {
    auto xs = cs.Inverse(x);
    if (!xs || !QuasiinverseIdentity(a, std::span<const typename F::Elem>(x), std::span<const typename F::Elem>(*xs)))
      rep.quasiinverse_ok = false;
  };
  auto size = cs.Size();
  if (size && *size <= exhaustive_limit) {
    rep.exhaustive = true;
    std::vector<Vec<F>> elems(*size);
    for (std::uint64_t i = 0; i < *size; ++i) elems[i] = cs.Element(i);
    for (const auto& x : elems) {
      quasi(x);
      for (const auto& y : elems) pair(x, y);
    }
    return rep;
  }
  rep.exhaustive = false;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    Vec<F> x = cs.RandomElement(rng), y = cs.RandomElement(rng);
    if (s < 1000) quasi(x);
    pair(x, y);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Nilpotency, Zhevlakov radical

template <Field F>
std::optional<std::size_t> AlgebraNilpotencyIndex(const Algebra<F>& a, const Subspace<F>& s) {
  return NilpotencyIndex(s, a.AsBilinear());
}

template <Field F>
struct ZhevlakovResult {
  Subspace<F> radical;
  enum class Route { kAugmentation, kBruteForce } route = Route::kAugmentation;
  std::optional<std::size_t> nilpotency_index;
};

/// Brute force for |F|^dim <= 2^20: the sum of every nilpotent principal
/// ideal (one generator per projective point). In a finite-dimensional
/// alternative algebra this is the largest nilpotent, equivalently
/// quasiregular, ideal.
template <Field F>
ZhevlakovResult<F> RadicalZhevlakovBruteForce(const Algebra<F>& a) {
  const auto& f = a.field();
  const std::uint64_t q = f.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (q == 0 || total > (std::uint64_t(1) << 20) / q)
      throw Error(ErrorCode::kUnsupported, "Zhevlakov radical: |F|^dim exceeds 2^20");
    total *= q;
  }
  const auto elems = f.enumerate();
  const auto acts = a.Actions();
  Subspace<F> acc(f, a.dim());
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec<F> v(a.dim());
    std::uint64_t r = idx;
    for (std::size_t i = a.dim(); i-- > 0;) {
      v[i] = elems[r % q];
      r /= q;
    }
    auto lead = std::find_if(v.begin(), v.end(), [&](const auto& x) { return !f.is_zero(x); });
    if (!f.is_one(*lead) || acc.Contains(v)) continue;
    std::vector<Vec<F>> seed{v};
    Subspace<F> ideal = IdealClosure<F>(f, a.dim(), seed, acts);
    if (NilpotencyIndex(ideal, a.AsBilinear())) acc = acc.Sum(ideal);
  }
  auto idx = NilpotencyIndex(acc, a.AsBilinear());
  if (!idx) throw Error(ErrorCode::kCrossCheckMismatch, "sum of nilpotent ideals is not nilpotent");
  return {acc, ZhevlakovResult<F>::Route::kBruteForce, idx};
}

/// Case (i): F[Q] with e outside ω[Q] and ω[Q] nilpotent gives J = ω[Q].
/// Otherwise the brute-force route for small algebras; Unsupported beyond.
template <Field F>
ZhevlakovResult<F> RadicalZhevlakov(const AlternativeLoopAlgebra<F>& fqb) {
  const Algebra<F>& a = *fqb.algebra;
  Subspace<F> omega = AugmentationIdeal(fqb, SubloopSet::Whole(fqb.loop().order()));
  auto e = a.RequireUnit();
  if (!omega.Contains(e)) {
    auto idx = NilpotencyIndex(omega, a.AsBilinear());
    if (idx) {
      for (Elt g = 1; g < fqb.loop().order(); ++g)
        if (!Quasiinverse(a, std::span<const typename F::Elem>(a.Sub(e, fqb.Image(g)))))
          throw Error(ErrorCode::kNotQuasiregular, "e - " + fqb.loop().name(g) + " is not quasiregular");
      return {omega, ZhevlakovResult<F>::Route::kAugmentation, idx};
    }
  }
  return RadicalZhevlakovBruteForce(a);
}

// ---------------------------------------------------------------------------
// Loop associator/commutator of e − B

template <Field F>
struct UnitFormulaResult {
  bool associator_ok = true;
  bool commutator_ok = true;
  bool ok() const { return associator_ok && commutator_ok; }
};

/// e + x + ... + x^{m-1}.
template <Field F>
Vec<F> GeometricSum(const Algebra<F>& a, std::span<const typename F::Elem> x, std::size_t m) {
  Vec<F> acc = a.RequireUnit();
  Vec<F> p = acc;
  for (std::size_t i = 1; i < m; ++i) {
    p = a.Mul(p, x);
    acc = a.Add(acc, p);
  }
  return acc;
}

/// With a = e−u, b = e−v, c = e−w and x^m = 0 on B:
///   [a,b,c] = (a·bc)^{-1}(ab·c) = e − ((W V)·U)(u,v,w)
///   [a,b]   = a^{-1}b^{-1}·ab   = e + (U V)(u,v)
/// where X = e + x + ... + x^{m-1}. Both sides are evaluated exactly.
template <Field F>
UnitFormulaResult<F> CheckUnitFormulas(const Algebra<F>& a, std::span<const typename F::Elem> u,
                              std::span<const typename F::Elem> v, std::span<const typename F::Elem> w,
                              std::size_t m) {
  using CS = std::span<const typename F::Elem>;
  for (CS x : {u, v, w})
    if (!a.IsZero(a.Pow(x, m))) throw Error(ErrorCode::kNotNil, "x^m != 0 for x = " + a.Format(x));
  const Vec<F> e = a.RequireUnit();
  Vec<F> ea = a.Sub(e, u), eb = a.Sub(e, v), ec = a.Sub(e, w);
  Vec<F> U = GeometricSum(a, u, m), V = GeometricSum(a, v, m), W = GeometricSum(a, w, m);
  UnitFormulaResult<F> res;

  Vec<F> a_bc = a.Mul(ea, a.Mul(eb, ec));
  Vec<F> ab_c = a.Mul(a.Mul(ea, eb), ec);
  auto inv = Invert(a, CS(a_bc));
  if (!inv) throw Error(ErrorCode::kNotQuasiregular, "a*bc is not invertible");
  Vec<F> lhs = a.Mul(*inv, ab_c);
  Vec<F> rhs = a.Sub(e, a.Mul(a.Mul(a.Mul(W, V), U), a.Associator(u, v, w)));
  res.associator_ok = lhs == rhs;

  auto ia = Invert(a, CS(ea));
  auto ib = Invert(a, CS(eb));
  if (!ia || !ib) throw Error(ErrorCode::kNotQuasiregular, "e - u or e - v is not invertible");
  Vec<F> clhs = a.Mul(a.Mul(*ia, *ib), a.Mul(ea, eb));
  Vec<F> crhs = a.Add(e, a.Mul(a.Mul(U, V), a.Commutator(u, v)));
  res.commutator_ok = clhs == crhs;
  return res;
}

}  // namespace loopforge
