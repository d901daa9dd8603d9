#pragma once

// Exact linear algebra over a Field: echelon subspaces, linear solving,
// ideal-closure fixpoints and nonassociative subspace powers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/error.hpp"
#include "loopforge/gf.hpp"

namespace loopforge {

template <Field F>
using Vec = std::vector<typename F::Elem>;

template <Field F>
using SparseVec = std::vector<std::pair<std::uint32_t, typename F::Elem>>;

template <Field F>
Vec<F> ZeroVec(const F& f, std::size_t n) {
  return Vec<F>(n, f.zero());
}

template <Field F>
Vec<F> BasisVec(const F& f, std::size_t n, std::size_t i) {
  Vec<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <Field F>
bool IsZeroVec(const F& f, std::span<const typename F::Elem> v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); });
}

template <Field F>
Vec<F> AddVec(const F& f, std::span<const typename F::Elem> a, std::span<const typename F::Elem> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "vector sum");
  Vec<F> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

template <Field F>
Vec<F> SubVec(const F& f, std::span<const typename F::Elem> a, std::span<const typename F::Elem> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "vector difference");
  Vec<F> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

template <Field F>
Vec<F> ScaleVec(const F& f, const typename F::Elem& s, std::span<const typename F::Elem> a) {
  Vec<F> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(s, a[i]);
  return out;
}

template <Field F>
Vec<F> NegVec(const F& f, std::span<const typename F::Elem> a) {
  Vec<F> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.neg(a[i]);
  return out;
}

template <Field F>
Vec<F> RandomVec(const F& f, std::size_t n, Rng& rng) {
  Vec<F> v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

template <Field F>
std::string VecToString(const F& f, std::span<const typename F::Elem> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += f.to_string(v[i]);
  }
  return s + ")";
}

/// Row-reduced echelon basis of a subspace of F^n. Rows are kept fully
/// reduced: each pivot entry is 1 and every other row is zero in that column,
/// so a row only has support on its pivot and on the free columns.
template <Field F>
class Subspace {
 public:
  using Elem = typename F::Elem;

  Subspace(F field, std::size_t ambient_dim)
      : field_(std::move(field)), ambient_(ambient_dim), pivot_row_(ambient_dim, -1) {
    free_cols_.resize(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) free_cols_[i] = static_cast<std::uint32_t>(i);
  }

  static Subspace Full(F field, std::size_t n) {
    Subspace s(field, n);
    for (std::size_t i = 0; i < n; ++i) s.Insert(BasisVec(s.field_, n, i));
    return s;
  }

  static Subspace Span(F field, std::size_t n, std::span<const Vec<F>> vectors) {
    Subspace s(std::move(field), n);
    for (const auto& v : vectors) s.Insert(v);
    return s;
  }

  const F& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_full() const { return rows_.size() == ambient_; }
  const std::vector<Vec<F>>& rows() const { return rows_; }
  const std::vector<std::uint32_t>& pivot_cols() const { return pivots_; }
  const std::vector<std::uint32_t>& free_cols() const { return free_cols_; }

  /// v minus its projection onto the span along the free columns. The
  /// result is zero on every pivot column; it is zero iff v is a member.
  Vec<F> Reduce(std::span<const Elem> v) const {
    CheckDim(v.size());
    Vec<F> w(v.begin(), v.end());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint32_t c = pivots_[r];
      if (field_.is_zero(w[c])) continue;
      Elem coef = w[c];
      w[c] = field_.zero();
      const auto& row = rows_[r];
      for (std::uint32_t fc : free_cols_) {
        if (!field_.is_zero(row[fc])) w[fc] = field_.sub(w[fc], field_.mul(coef, row[fc]));
      }
    }
    return w;
  }

  bool Contains(std::span<const Elem> v) const { return IsZeroVec(field_, std::span<const Elem>(Reduce(v))); }

  /// Inserts v. Returns true iff v was outside the span (the space grew).
  bool Insert(std::span<const Elem> v) { return InsertReduced(Reduce(v)); }

  /// Sparse path for generators with few nonzeros; avoids densifying until
  /// the residue is known to be nonzero.
  bool InsertSparse(std::span<const std::pair<std::uint32_t, Elem>> v) {
    scratch_.assign(ambient_, field_.zero());
    for (const auto& [i, x] : v) {
      CheckIndex(i);
      scratch_[i] = field_.add(scratch_[i], x);
    }
    for (const auto& [i, x] : v) {
      int r = pivot_row_[i];
      if (r < 0 || field_.is_zero(scratch_[i])) continue;
      Elem coef = scratch_[i];
      scratch_[i] = field_.zero();
      const auto& row = rows_[r];
      for (std::uint32_t fc : free_cols_) {
        if (!field_.is_zero(row[fc])) scratch_[fc] = field_.sub(scratch_[fc], field_.mul(coef, row[fc]));
      }
    }
    return InsertReduced(std::move(scratch_));
  }

  /// Coordinates of a member with respect to rows(); nullopt if not a member.
  std::optional<Vec<F>> Coordinates(std::span<const Elem> v) const {
    if (!Contains(v)) return std::nullopt;
    Vec<F> c(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) c[r] = v[pivots_[r]];
    return c;
  }

  Vec<F> Combine(std::span<const Elem> coords) const {
    if (coords.size() != rows_.size()) throw Error(ErrorCode::kDimensionMismatch, "subspace coordinates");
    Vec<F> v = ZeroVec(field_, ambient_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (field_.is_zero(coords[r])) continue;
      for (std::size_t i = 0; i < ambient_; ++i) {
        if (!field_.is_zero(rows_[r][i])) v[i] = field_.add(v[i], field_.mul(coords[r], rows_[r][i]));
      }
    }
    return v;
  }

  bool IsSubsetOf(const Subspace& other) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const Vec<F>& r) { return other.Contains(r); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

  Subspace Sum(const Subspace& other) const {
    Subspace s = *this;
    for (const auto& r : other.rows_) s.Insert(r);
    return s;
  }

  Subspace Intersect(const Subspace& other) const {
    // Solve a·A = b·B via the kernel of [A; -B].
    CheckDim(other.ambient_);
    const std::size_t k = rows_.size() + other.rows_.size();
    std::vector<Vec<F>> stacked;
    stacked.reserve(k);
    for (const auto& r : rows_) {
      Vec<F> w(r);
      Vec<F> tag = ZeroVec(field_, k);
      tag[stacked.size()] = field_.one();
      w.insert(w.end(), tag.begin(), tag.end());
      stacked.push_back(std::move(w));
    }
    for (const auto& r : other.rows_) {
      Vec<F> w(r);
      Vec<F> tag = ZeroVec(field_, k);
      tag[stacked.size()] = field_.one();
      w.insert(w.end(), tag.begin(), tag.end());
      stacked.push_back(std::move(w));
    }
    // Row reduce on the first ambient_ columns; rows that vanish there give
    // combinations of A-rows that lie in B.
    Subspace combined(field_, ambient_ + k);
    for (const auto& w : stacked) combined.Insert(w);
    Subspace out(field_, ambient_);
    for (const auto& row : combined.rows()) {
      bool head_zero = true;
      for (std::size_t i = 0; i < ambient_; ++i) {
        if (!field_.is_zero(row[i])) {
          head_zero = false;
          break;
        }
      }
      if (!head_zero) continue;
      Vec<F> v = ZeroVec(field_, ambient_);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Elem& c = row[ambient_ + r];
        if (field_.is_zero(c)) continue;
        for (std::size_t i = 0; i < ambient_; ++i) v[i] = field_.add(v[i], field_.mul(c, rows_[r][i]));
      }
      out.Insert(v);
    }
    return out;
  }

 private:
  void CheckDim(std::size_t n) const {
    if (n != ambient_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vector of length " + std::to_string(n) + " in ambient dimension " + std::to_string(ambient_));
    }
  }
  void CheckIndex(std::size_t i) const {
    if (i >= ambient_) throw Error(ErrorCode::kDimensionMismatch, "sparse index out of range");
  }

  bool InsertReduced(Vec<F> w) {
    std::uint32_t c = 0;
    bool found = false;
    for (std::uint32_t fc : free_cols_) {
      if (!field_.is_zero(w[fc])) {
        c = fc;
        found = true;
        break;
      }
    }
    if (!found) return false;
    Elem s = field_.inv(w[c]);
    for (std::uint32_t fc : free_cols_) {
      if (!field_.is_zero(w[fc])) w[fc] = field_.mul(s, w[fc]);
    }
    auto free_it = std::lower_bound(free_cols_.begin(), free_cols_.end(), c);
    free_cols_.erase(free_it);
    for (auto& row : rows_) {
      if (field_.is_zero(row[c])) continue;
      Elem coef = row[c];
      row[c] = field_.zero();
      for (std::uint32_t fc : free_cols_) {
        if (!field_.is_zero(w[fc])) row[fc] = field_.sub(row[fc], field_.mul(coef, w[fc]));
      }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, c);
    rows_.insert(rows_.begin() + pos, std::move(w));
    for (std::size_t r = 0; r < pivots_.size(); ++r) pivot_row_[pivots_[r]] = static_cast<int>(r);
    return true;
  }

  F field_;
  std::size_t ambient_;
  std::vector<Vec<F>> rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<int> pivot_row_;
  std::vector<std::uint32_t> free_cols_;
  Vec<F> scratch_;
};

/// Finds x with sum_i x_i * columns[i] = rhs. Free variables are set to
/// zero, so the answer is deterministic. nullopt when inconsistent.
template <Field F>
std::optional<Vec<F>> Solve(const F& f, std::span<const Vec<F>> columns, std::span<const typename F::Elem> rhs) {
  const std::size_t m = rhs.size();
  const std::size_t k = columns.size();
  for (const auto& c : columns) {
    if (c.size() != m) throw Error(ErrorCode::kDimensionMismatch, "solve: column length");
  }
  // Augmented matrix, m rows by k+1 columns.
  std::vector<Vec<F>> a(m, Vec<F>(k + 1, f.zero()));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[i][j] = columns[j][i];
  }
  for (std::size_t i = 0; i < m; ++i) a[i][k] = rhs[i];
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < m; ++col) {
    std::size_t sel = row;
    while (sel < m && f.is_zero(a[sel][col])) ++sel;
    if (sel == m) continue;
    std::swap(a[row], a[sel]);
    auto s = f.inv(a[row][col]);
    for (std::size_t j = col; j <= k; ++j) a[row][j] = f.mul(s, a[row][j]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || f.is_zero(a[i][col])) continue;
      auto coef = a[i][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] = f.sub(a[i][j], f.mul(coef, a[row][j]));
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i) {
    if (!f.is_zero(a[i][k])) return std::nullopt;
  }
  Vec<F> x(k, f.zero());
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = a[r][k];
  return x;
}

template <Field F>
using LinearMap = std::function<Vec<F>(std::span<const typename F::Elem>)>;

/// Incremental ideal closure. Generators are inserted (sparse or dense),
/// then Close() saturates the span under every action.
template <Field F>
class ClosureBuilder {
 public:
  using Elem = typename F::Elem;

  ClosureBuilder(F field, std::size_t ambient) : space_(std::move(field), ambient) {}
  explicit ClosureBuilder(Subspace<F> start) : space_(std::move(start)) {
    for (const auto& r : space_.rows()) pending_.push_back(r);
  }

  void Add(std::span<const Elem> v) {
    if (space_.is_full()) return;
    if (space_.Insert(v)) pending_.emplace_back(v.begin(), v.end());
  }

  void AddSparse(std::span<const std::pair<std::uint32_t, Elem>> v) {
    if (space_.is_full()) return;
    if (space_.InsertSparse(v)) {
      Vec<F> dense = ZeroVec(space_.field(), space_.ambient_dim());
      for (const auto& [i, x] : v) dense[i] = space_.field().add(dense[i], x);
      pending_.push_back(std::move(dense));
    }
  }

  const Subspace<F>& space() const { return space_; }

  /// Saturates under the actions, then re-verifies every basis row.
  Subspace<F> Close(std::span<const LinearMap<F>> actions) {
    const auto& f = space_.field();
    for (;;) {
      while (!pending_.empty() && !space_.is_full()) {
        Vec<F> v = std::move(pending_.front());
        pending_.pop_front();
        for (const auto& act : actions) {
          Vec<F> img = act(v);
          if (img.size() != space_.ambient_dim()) throw Error(ErrorCode::kDimensionMismatch, "action image");
          if (IsZeroVec(f, std::span<const Elem>(img))) continue;
          if (space_.Insert(img)) pending_.push_back(std::move(img));
          if (space_.is_full()) break;
        }
      }
      pending_.clear();
      if (space_.is_full()) return space_;
      // Final verification pass over the echelon rows.
      std::vector<Vec<F>> rows = space_.rows();
      for (const auto& r : rows) {
        for (const auto& act : actions) {
          Vec<F> img = act(r);
          if (space_.Insert(img)) pending_.push_back(std::move(img));
        }
      }
      if (pending_.empty()) return space_;
    }
  }

 private:
  Subspace<F> space_;
  std::deque<Vec<F>> pending_;
};

/// Smallest subspace containing the seed and stable under every action.
template <Field F>
Subspace<F> IdealClosure(const F& f, std::size_t ambient, std::span<const Vec<F>> seed,
                         std::span<const LinearMap<F>> actions) {
  ClosureBuilder<F> builder(f, ambient);
  for (const auto& v : seed) builder.Add(v);
  return builder.Close(actions);
}

template <Field F>
using Bilinear = std::function<Vec<F>(std::span<const typename F::Elem>, std::span<const typename F::Elem>)>;

/// span{ x*y : x in a, y in b } for basis rows. When `cap` is given the
/// result is known to lie inside it and the loop stops once it is reached.
template <Field F>
Subspace<F> ProductSpace(const Subspace<F>& a, const Subspace<F>& b, const Bilinear<F>& mul,
                         const Subspace<F>* cap = nullptr) {
  Subspace<F> out(a.field(), a.ambient_dim());
  for (const auto& x : a.rows()) {
    for (const auto& y : b.rows()) {
      if (cap && out.dim() == cap->dim()) return out;
      out.Insert(mul(x, y));
    }
  }
  return out;
}

/// Powers S^1..S^k under every bracketing: S^n = sum_{i+j=n} S^i S^j.
template <Field F>
class PowerTower {
 public:
  PowerTower(Subspace<F> s, Bilinear<F> mul) : mul_(std::move(mul)) { powers_.push_back(std::move(s)); }

  /// S^n, computing lower powers on demand.
  const Subspace<F>& Power(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::kDimensionMismatch, "subspace power needs n >= 1");
    while (powers_.size() < n) Extend();
    return powers_[n - 1];
  }

  /// True once S^2 ⊆ S has been checked, which makes the tower descending.
  bool descending() {
    Power(2);
    return descending_;
  }

 private:
  void Extend() {
    const std::size_t n = powers_.size() + 1;
    const Subspace<F>* cap = (n >= 3 && descending_) ? &powers_[n - 2] : nullptr;
    Subspace<F> acc(powers_[0].field(), powers_[0].ambient_dim());
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t j = n - i;
      const auto& pi = powers_[i - 1];
      const auto& pj = powers_[j - 1];
      if (pi.dim() == 0 || pj.dim() == 0) continue;
      Subspace<F> part = ProductSpace(pi, pj, mul_, cap);
      for (const auto& r : part.rows()) acc.Insert(r);
      if (cap && acc.dim() == cap->dim()) break;
    }
    if (n == 2) descending_ = acc.IsSubsetOf(powers_[0]);
    powers_.push_back(std::move(acc));
  }

  Bilinear<F> mul_;
  std::vector<Subspace<F>> powers_;
  bool descending_ = false;
};

template <Field F>
Subspace<F> SubspacePower(const Subspace<F>& s, const Bilinear<F>& mul, std::size_t n) {
  PowerTower<F> tower(s, mul);
  return tower.Power(n);
}

/// Least n with S^n = 0, searched up to ambient_dim + 1. nullopt when the
/// tower stabilizes at a nonzero subspace (S^2 = S) or the bound is hit.
template <Field F>
std::optional<std::size_t> NilpotencyIndex(const Subspace<F>& s, const Bilinear<F>& mul) {
  if (s.dim() == 0) return 1;
  PowerTower<F> tower(s, mul);
  const std::size_t bound = s.ambient_dim() + 1;
  for (std::size_t n = 2; n <= bound; ++n) {
    const auto& p = tower.Power(n);
    if (p.dim() == 0) return n;
    // S^2 = S forces S^n = S for every n since S^n contains S*S^(n-1).
    if (n == 2 && p == tower.Power(1)) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace loopforge
