#include "loopforge/loop.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <utility>

namespace loopforge {

namespace {

Error LatinError(const std::string& what) { return Error(ErrorCode::kLatinSquareViolation, what); }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Elt{0}); }
  Elt Find(Elt x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// Returns the surviving root, or nullopt if already joined.
  std::optional<std::pair<Elt, Elt>> Union(Elt a, Elt b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return std::nullopt;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return std::make_pair(a, b);
  }

 private:
  std::vector<Elt> parent_;
};

std::uint64_t Gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

// ---------------------------------------------------------------------------
// FiniteLoop

FiniteLoop FiniteLoop::FromTable(std::vector<std::string> names, std::vector<std::vector<Elt>> table) {
  const std::size_t n = table.size();
  std::vector<Elt> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw LatinError("row " + std::to_string(i) + " has " + std::to_string(table[i].size()) +
                       " entries, expected " + std::to_string(n));
    }
    flat.insert(flat.end(), table[i].begin(), table[i].end());
  }
  return FromFlatTable(std::move(names), std::move(flat));
}

FiniteLoop FiniteLoop::FromFlatTable(std::vector<std::string> names, std::vector<Elt> flat) {
  const std::size_t n = names.size();
  if (n == 0) throw LatinError("empty loop");
  if (flat.size() != n * n) throw LatinError("table is not " + std::to_string(n) + "x" + std::to_string(n));
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++stamp;
    for (std::size_t j = 0; j < n; ++j) {
      Elt v = flat[i * n + j];
      if (v >= n) throw LatinError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
      if (seen[v] == stamp) {
        throw LatinError("row " + std::to_string(i) + " repeats " + std::to_string(v) + " at column " +
                         std::to_string(j));
      }
      seen[v] = stamp;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    ++stamp;
    for (std::size_t i = 0; i < n; ++i) {
      Elt v = flat[i * n + j];
      if (seen[v] == stamp) {
        throw LatinError("column " + std::to_string(j) + " repeats " + std::to_string(v) + " at row " +
                         std::to_string(i));
      }
      seen[v] = stamp;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (flat[x] != x || flat[x * n] != x) {
      throw Error(ErrorCode::kNoIdentityAtZero, "element 0 is not a two-sided identity (fails at " +
                                                    std::to_string(x) + ")");
    }
  }
  FiniteLoop loop;
  loop.n_ = n;
  loop.table_ = std::make_shared<const std::vector<Elt>>(std::move(flat));
  loop.names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  loop.BuildDivisionTables();
  return loop;
}

FiniteLoop FiniteLoop::FromOracle(std::shared_ptr<const LoopOracle> oracle) {
  FiniteLoop loop;
  loop.n_ = oracle->order();
  loop.oracle_ = std::move(oracle);
  const std::size_t n = loop.n_;
  for (Elt x = 0; x < n; ++x) {
    if (loop.oracle_->mul(0, x) != x || loop.oracle_->mul(x, 0) != x) {
      throw Error(ErrorCode::kNoIdentityAtZero, "oracle identity fails at " + std::to_string(x));
    }
  }
  if (n <= 4096) {
    for (Elt x = 0; x < n; ++x) {
      for (Elt y = 0; y < n; ++y) {
        Elt z = loop.oracle_->mul(x, y);
        if (z >= n || loop.oracle_->ldiv(x, z) != y || loop.oracle_->rdiv(z, y) != x) {
          throw LatinError("oracle division inconsistent at (" + std::to_string(x) + "," + std::to_string(y) + ")");
        }
      }
    }
  }
  return loop;
}

void FiniteLoop::BuildDivisionTables() {
  const std::size_t n = n_;
  std::vector<Elt> l(n * n), r(n * n);
  for (Elt x = 0; x < n; ++x) {
    for (Elt y = 0; y < n; ++y) {
      l[std::size_t(x) * n + mul(x, y)] = y;
      r[std::size_t(x) * n + mul(y, x)] = y;
    }
  }
  ldiv_ = std::make_shared<const std::vector<Elt>>(std::move(l));
  rdiv_ = std::make_shared<const std::vector<Elt>>(std::move(r));
}

std::string FiniteLoop::name(Elt x) const {
  if (names_) return (*names_)[x];
  return oracle_->name(x);
}

std::vector<std::string> FiniteLoop::names() const {
  if (names_) return *names_;
  std::vector<std::string> v(n_);
  for (Elt x = 0; x < n_; ++x) v[x] = oracle_->name(x);
  return v;
}

std::vector<std::vector<Elt>> FiniteLoop::Table() const {
  std::vector<std::vector<Elt>> t(n_, std::vector<Elt>(n_));
  for (Elt x = 0; x < n_; ++x) {
    for (Elt y = 0; y < n_; ++y) t[x][y] = mul(x, y);
  }
  return t;
}

Elt FiniteLoop::Pow(Elt x, std::uint64_t k) const {
  Elt acc = 0;
  for (std::uint64_t i = 0; i < k; ++i) acc = mul(acc, x);
  return acc;
}

std::uint64_t FiniteLoop::ElementOrder(Elt x) const {
  Elt acc = x;
  for (std::uint64_t k = 1; k <= n_; ++k) {
    if (acc == 0) return k;
    acc = mul(acc, x);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// SubloopSet

bool SubloopSet::contains(Elt x) const { return std::binary_search(members.begin(), members.end(), x); }

std::vector<bool> SubloopSet::mask() const {
  std::vector<bool> m(parent_order, false);
  for (Elt x : members) m[x] = true;
  return m;
}

SubloopSet SubloopSet::FromMask(const std::vector<bool>& mask) {
  SubloopSet s;
  s.parent_order = mask.size();
  for (Elt x = 0; x < mask.size(); ++x) {
    if (mask[x]) s.members.push_back(x);
  }
  return s;
}

SubloopSet SubloopSet::Whole(std::size_t n) {
  SubloopSet s;
  s.parent_order = n;
  s.members.resize(n);
  std::iota(s.members.begin(), s.members.end(), Elt{0});
  return s;
}

SubloopSet SubloopSet::Intersect(const SubloopSet& other) const {
  SubloopSet s;
  s.parent_order = parent_order;
  std::set_intersection(members.begin(), members.end(), other.members.begin(), other.members.end(),
                        std::back_inserter(s.members));
  return s;
}

// ---------------------------------------------------------------------------
// Properties

Elt Associator(const FiniteLoop& loop, Elt x, Elt y, Elt z) {
  return loop.ldiv(loop.mul(x, loop.mul(y, z)), loop.mul(loop.mul(x, y), z));
}

Elt Commutator(const FiniteLoop& loop, Elt x, Elt y) { return loop.ldiv(loop.mul(y, x), loop.mul(x, y)); }

namespace {

bool MoufangTriple(const FiniteLoop& l, Elt x, Elt y, Elt z) {
  return l.mul(l.mul(x, l.mul(y, x)), z) == l.mul(x, l.mul(y, l.mul(x, z)));
}

bool AssociativeTriple(const FiniteLoop& l, Elt x, Elt y, Elt z) {
  return l.mul(l.mul(x, y), z) == l.mul(x, l.mul(y, z));
}

template <class Pred>
PropertyCheck Exhaustive3(const FiniteLoop& l, Pred pred) {
  const Elt n = static_cast<Elt>(l.order());
  for (Elt x = 0; x < n; ++x) {
    for (Elt y = 0; y < n; ++y) {
      for (Elt z = 0; z < n; ++z) {
        if (!pred(l, x, y, z)) return {false, Triple{x, y, z}};
      }
    }
  }
  return {};
}

// Random triples plus every triple inside the subloops generated by a
// few random pairs. The witness reported is the smallest one found.
template <class Pred>
PropertyCheck Sampled3(const FiniteLoop& l, Pred pred, std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  const std::uint64_t n = l.order();
  std::optional<Triple> best;
  auto consider = [&](Elt x, Elt y, Elt z) {
    if (pred(l, x, y, z)) return;
    Triple t{x, y, z};
    auto key = [](const Triple& a) { return std::make_tuple(a.x, a.y, a.z); };
    if (!best || key(t) < key(*best)) best = t;
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    consider(static_cast<Elt>(rng() % n), static_cast<Elt>(rng() % n), static_cast<Elt>(rng() % n));
  }
  for (int k = 0; k < 16; ++k) {
    Elt a = static_cast<Elt>(rng() % n), b = static_cast<Elt>(rng() % n);
    SubloopSet h = SubloopGenerated(l, {a, b});
    if (h.size() > 256) continue;
    for (Elt x : h.members)
      for (Elt y : h.members)
        for (Elt z : h.members) consider(x, y, z);
  }
  if (best) return {false, best};
  return {};
}

}  // namespace

PropertyCheck CheckMoufangExhaustive(const FiniteLoop& loop) {
  const Elt n = static_cast<Elt>(loop.order());
  for (Elt x = 0; x < n; ++x) {
    for (Elt y = 0; y < n; ++y) {
      const Elt xyx = loop.mul(x, loop.mul(y, x));
      for (Elt z = 0; z < n; ++z) {
        if (loop.mul(xyx, z) != loop.mul(x, loop.mul(y, loop.mul(x, z)))) return {false, Triple{x, y, z}};
      }
    }
  }
  return {};
}

PropertyCheck CheckAssociative(const FiniteLoop& loop) { return Exhaustive3(loop, AssociativeTriple); }

PropertyCheck CheckCommutative(const FiniteLoop& loop) {
  const Elt n = static_cast<Elt>(loop.order());
  for (Elt x = 0; x < n; ++x) {
    for (Elt y = x + 1; y < n; ++y) {
      if (loop.mul(x, y) != loop.mul(y, x)) return {false, Triple{x, y, 0}};
    }
  }
  return {};
}

PropertyCheck CheckIP(const FiniteLoop& loop) {
  const Elt n = static_cast<Elt>(loop.order());
  for (Elt x = 0; x < n; ++x) {
    const Elt xi = loop.ldiv(x, 0);
    if (loop.rdiv(0, x) != xi) return {false, Triple{x, 0, 0}};
    for (Elt y = 0; y < n; ++y) {
      if (loop.mul(xi, loop.mul(x, y)) != y || loop.mul(loop.mul(y, x), xi) != y) return {false, Triple{x, y, 0}};
    }
  }
  return {};
}

bool IsAssociative(const FiniteLoop& loop) { return CheckAssociative(loop).ok; }
bool IsMoufang(const FiniteLoop& loop) { return CheckMoufangExhaustive(loop).ok; }

std::uint64_t Exponent(const FiniteLoop& loop) {
  std::uint64_t e = 1;
  for (Elt x = 0; x < loop.order(); ++x) {
    std::uint64_t k = loop.ElementOrder(x);
    if (k == 0) continue;
    e = e / Gcd(e, k) * k;
  }
  return e;
}

PropertyReport CheckProperties(const FiniteLoop& loop, const PropertyOptions& opts) {
  PropertyReport r;
  r.order = loop.order();
  r.seed = opts.seed;
  const std::uint64_t n = loop.order();
  const bool exhaustive = n <= opts.exhaustive_order || n * n * n <= opts.exhaustive_triples;
  if (exhaustive) {
    r.moufang = CheckMoufangExhaustive(loop);
    r.associative = CheckAssociative(loop);
  } else {
    r.moufang = Sampled3(loop, MoufangTriple, opts.samples, opts.seed);
    r.associative = Sampled3(loop, AssociativeTriple, opts.samples, opts.seed);
    r.moufang_exhaustive = false;
    r.moufang_samples = opts.samples;
  }
  r.commutative = CheckCommutative(loop);
  r.ip = CheckIP(loop);
  r.exponent = Exponent(loop);
  if (n > 1 && r.exponent > 1) {
    std::uint64_t e = r.exponent;
    std::uint64_t p = 2;
    while (e % p != 0) ++p;
    while (e % p == 0) e /= p;
    if (e == 1) r.p_loop = static_cast<std::uint32_t>(p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subloops and normality

SubloopSet SubloopGenerated(const FiniteLoop& loop, const std::vector<Elt>& gens) {
  const std::size_t n = loop.order();
  std::vector<bool> in(n, false);
  std::vector<Elt> members;
  std::deque<Elt> queue;
  auto add = [&](Elt x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
      queue.push_back(x);
    }
  };
  add(0);
  for (Elt g : gens) {
    if (g >= n) throw Error(ErrorCode::kDimensionMismatch, "generator out of range");
    add(g);
  }
  std::size_t processed = 0;
  while (processed < members.size()) {
    Elt a = members[processed++];
    for (std::size_t k = 0; k < processed; ++k) {
      Elt b = members[k];
      add(loop.mul(a, b));
      add(loop.mul(b, a));
      add(loop.ldiv(a, b));
      add(loop.ldiv(b, a));
      add(loop.rdiv(a, b));
      add(loop.rdiv(b, a));
    }
  }
  return SubloopSet::FromMask(in);
}

SubloopSet NormalClosure(const FiniteLoop& loop, const std::vector<Elt>& gens) {
  const Elt n = static_cast<Elt>(loop.order());
  UnionFind uf(n);
  std::deque<std::pair<Elt, Elt>> queue;
  for (Elt g : gens) {
    if (g >= n) throw Error(ErrorCode::kDimensionMismatch, "generator out of range");
    if (auto u = uf.Union(0, g)) queue.push_back(*u);
  }
  // Generators of the multiplication group: left and right translations.
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (Elt x = 0; x < n; ++x) {
      if (auto u = uf.Union(loop.mul(x, a), loop.mul(x, b))) queue.push_back(*u);
      if (auto u = uf.Union(loop.mul(a, x), loop.mul(b, x))) queue.push_back(*u);
    }
  }
  std::vector<bool> mask(n, false);
  const Elt root = uf.Find(0);
  for (Elt x = 0; x < n; ++x) mask[x] = uf.Find(x) == root;
  return SubloopSet::FromMask(mask);
}

SubloopSet NormalClosureByEquations(const FiniteLoop& loop, const std::vector<Elt>& gens) {
  const Elt n = static_cast<Elt>(loop.order());
  SubloopSet cur = SubloopGenerated(loop, gens);
  for (;;) {
    std::vector<bool> mask = cur.mask();
    bool grew = false;
    for (Elt m : cur.members) {
      for (Elt x = 0; x < n; ++x) {
        Elt t = loop.rdiv(loop.mul(x, m), x);
        if (!mask[t]) mask[t] = grew = true;
        for (Elt y = 0; y < n; ++y) {
          const Elt xy = loop.mul(x, y);
          Elt a = loop.ldiv(xy, loop.mul(x, loop.mul(y, m)));
          Elt b = loop.rdiv(loop.mul(loop.mul(m, x), y), xy);
          if (!mask[a]) mask[a] = grew = true;
          if (!mask[b]) mask[b] = grew = true;
        }
      }
    }
    if (!grew) return cur;
    cur = SubloopGenerated(loop, SubloopSet::FromMask(mask).members);
  }
}

bool IsSubloop(const FiniteLoop& loop, const SubloopSet& set) {
  if (set.members.empty() || set.members.front() != 0) return false;
  std::vector<bool> mask = set.mask();
  for (Elt a : set.members) {
    for (Elt b : set.members) {
      if (!mask[loop.mul(a, b)] || !mask[loop.ldiv(a, b)] || !mask[loop.rdiv(a, b)]) return false;
    }
  }
  return true;
}

std::optional<NormalityWitness> CheckNormal(const FiniteLoop& loop, const SubloopSet& set) {
  if (!IsSubloop(loop, set)) {
    return NormalityWitness{0, 0, 0, set.members.empty() ? 0 : set.members.back()};
  }
  const Elt n = static_cast<Elt>(loop.order());
  std::vector<bool> mask = set.mask();
  for (Elt x = 0; x < n; ++x) {
    for (Elt m : set.members) {
      if (!mask[loop.rdiv(loop.mul(x, m), x)]) return NormalityWitness{1, x, 0, m};
    }
  }
  for (Elt x = 0; x < n; ++x) {
    for (Elt y = 0; y < n; ++y) {
      const Elt xy = loop.mul(x, y);
      for (Elt m : set.members) {
        if (!mask[loop.ldiv(xy, loop.mul(x, loop.mul(y, m)))]) return NormalityWitness{2, x, y, m};
        if (!mask[loop.rdiv(loop.mul(loop.mul(m, x), y), xy)]) return NormalityWitness{3, x, y, m};
      }
    }
  }
  return std::nullopt;
}

Quotient QuotientLoop(const FiniteLoop& loop, const SubloopSet& normal) {
  if (auto w = CheckNormal(loop, normal)) {
    throw Error(ErrorCode::kNotNormal, "normality equation " + std::to_string(w->equation) + " fails at x=" +
                                           std::to_string(w->x) + " y=" + std::to_string(w->y) +
                                           " n=" + std::to_string(w->n));
  }
  const std::size_t n = loop.order();
  constexpr Elt kUnset = ~Elt{0};
  std::vector<Elt> coset_of(n, kUnset);
  std::vector<Elt> reps;
  for (Elt x = 0; x < n; ++x) {
    if (coset_of[x] != kUnset) continue;
    const Elt k = static_cast<Elt>(reps.size());
    reps.push_back(x);
    for (Elt m : normal.members) coset_of[loop.mul(x, m)] = k;
  }
  const std::size_t q = reps.size();
  std::vector<Elt> flat(q * q);
  for (Elt i = 0; i < q; ++i) {
    for (Elt j = 0; j < q; ++j) flat[i * q + j] = coset_of[loop.mul(reps[i], reps[j])];
  }
  std::vector<std::string> names(q);
  for (Elt i = 0; i < q; ++i) names[i] = i == 0 ? loop.name(0) : "[" + loop.name(reps[i]) + "]";
  return Quotient{FiniteLoop::FromFlatTable(std::move(names), std::move(flat)), std::move(coset_of),
                  std::move(reps)};
}

FiniteLoop Restrict(const FiniteLoop& loop, const SubloopSet& sub) {
  const std::size_t m = sub.size();
  std::vector<Elt> index(loop.order(), ~Elt{0});
  for (Elt i = 0; i < m; ++i) index[sub.members[i]] = i;
  std::vector<Elt> flat(m * m);
  for (Elt i = 0; i < m; ++i) {
    for (Elt j = 0; j < m; ++j) {
      Elt v = index[loop.mul(sub.members[i], sub.members[j])];
      if (v == ~Elt{0}) throw Error(ErrorCode::kNotNormal, "set is not closed under multiplication");
      flat[i * m + j] = v;
    }
  }
  std::vector<std::string> names(m);
  for (Elt i = 0; i < m; ++i) names[i] = loop.name(sub.members[i]);
  return FiniteLoop::FromFlatTable(std::move(names), std::move(flat));
}

SubloopSet Lift(const SubloopSet& parent_sub, const SubloopSet& inner) {
  SubloopSet s;
  s.parent_order = parent_sub.parent_order;
  for (Elt i : inner.members) s.members.push_back(parent_sub.members[i]);
  std::sort(s.members.begin(), s.members.end());
  return s;
}

SubloopSet Preimage(const Quotient& q, const SubloopSet& inner, std::size_t parent_order) {
  std::vector<bool> in = inner.mask();
  std::vector<bool> mask(parent_order, false);
  for (Elt x = 0; x < parent_order; ++x) mask[x] = in[q.coset_of[x]];
  return SubloopSet::FromMask(mask);
}

SubloopSet Center(const FiniteLoop& loop) {
  const Elt n = static_cast<Elt>(loop.order());
  std::vector<bool> mask(n, false);
  for (Elt z = 0; z < n; ++z) {
    bool central = true;
    for (Elt x = 0; x < n && central; ++x) {
      const Elt zx = loop.mul(z, x);
      const Elt xz = loop.mul(x, z);
      if (zx != xz) {
        central = false;
        break;
      }
      for (Elt y = 0; y < n; ++y) {
        const Elt xy = loop.mul(x, y);
        if (loop.mul(zx, y) != loop.mul(z, xy) || loop.mul(xz, y) != loop.mul(x, loop.mul(z, y)) ||
            loop.mul(xy, z) != loop.mul(x, loop.mul(y, z))) {
          central = false;
          break;
        }
      }
    }
    mask[z] = central;
  }
  return SubloopSet::FromMask(mask);
}

SubloopSet NormalJoin(const FiniteLoop& loop, const SubloopSet& a, const SubloopSet& b) {
  std::vector<Elt> gens;
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(), std::back_inserter(gens));
  return NormalClosure(loop, gens);
}

namespace {

bool LatticeLess(const SubloopSet& a, const SubloopSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members < b.members;
}

}  // namespace

std::vector<SubloopSet> NormalSubloopLattice(const FiniteLoop& loop, std::size_t max_count) {
  const Elt n = static_cast<Elt>(loop.order());
  std::vector<SubloopSet> lattice{SubloopSet::Trivial(n)};
  auto known = [&](const SubloopSet& s) { return std::find(lattice.begin(), lattice.end(), s) != lattice.end(); };
  for (Elt x = 1; x < n; ++x) {
    SubloopSet c = NormalClosure(loop, {x});
    if (!known(c)) lattice.push_back(std::move(c));
  }
  for (std::size_t i = 1; i < lattice.size(); ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      SubloopSet joined = NormalJoin(loop, lattice[i], lattice[j]);
      if (!known(joined)) {
        lattice.push_back(std::move(joined));
        if (lattice.size() > max_count) {
          throw Error(ErrorCode::kOrderBoundExceeded, "normal subloop lattice exceeds " + std::to_string(max_count));
        }
      }
    }
  }
  std::sort(lattice.begin(), lattice.end(), LatticeLess);
  return lattice;
}

std::vector<SubloopSet> MaximalNormalSubloops(const FiniteLoop& loop) {
  std::vector<SubloopSet> lattice = NormalSubloopLattice(loop);
  std::vector<SubloopSet> out;
  for (const auto& s : lattice) {
    if (s.is_whole()) continue;
    bool maximal = std::none_of(lattice.begin(), lattice.end(), [&](const SubloopSet& t) {
      return !t.is_whole() && t.size() > s.size() &&
             std::includes(t.members.begin(), t.members.end(), s.members.begin(), s.members.end());
    });
    if (maximal) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Central series

namespace {

std::vector<SubloopSet> UpperCentralTerms(const FiniteLoop& loop, bool& reached) {
  const std::size_t n = loop.order();
  std::vector<SubloopSet> terms{SubloopSet::Trivial(n)};
  for (;;) {
    const SubloopSet& z = terms.back();
    if (z.is_whole()) {
      reached = true;
      return terms;
    }
    Quotient q = QuotientLoop(loop, z);
    SubloopSet next = Preimage(q, Center(q.loop), n);
    if (next == z) {
      reached = false;
      return terms;
    }
    terms.push_back(std::move(next));
  }
}

SubloopSet CommutatorWith(const FiniteLoop& loop, const SubloopSet& normal) {
  const Elt n = static_cast<Elt>(loop.order());
  std::vector<bool> gens(n, false);
  for (Elt m : normal.members) {
    for (Elt x = 0; x < n; ++x) {
      gens[Commutator(loop, m, x)] = true;
      for (Elt y = 0; y < n; ++y) {
        gens[Associator(loop, m, x, y)] = true;
        gens[Associator(loop, x, m, y)] = true;
        gens[Associator(loop, x, y, m)] = true;
      }
    }
  }
  return NormalClosure(loop, SubloopSet::FromMask(gens).members);
}

}  // namespace

SeriesReport CentralSeries(const FiniteLoop& loop, SeriesReport::Kind kind) {
  SeriesReport r;
  r.kind = kind;
  const std::size_t n = loop.order();
  if (kind == SeriesReport::Kind::kUpperCentral) {
    bool reached = false;
    r.terms = UpperCentralTerms(loop, reached);
    r.stabilized = true;
    if (reached) r.nilpotency_class = r.terms.size() - 1;
    return r;
  }
  r.terms.push_back(SubloopSet::Whole(n));
  for (;;) {
    const SubloopSet& cur = r.terms.back();
    if (cur.is_trivial()) {
      r.nilpotency_class = r.terms.size() - 1;
      break;
    }
    SubloopSet next = CommutatorWith(loop, cur);
    if (next == cur) break;
    r.terms.push_back(std::move(next));
  }
  r.stabilized = true;

  // Weight generation: weight-1 are all commutators and associators; weight
  // w+1 are (a,x,y) and (a,x) for a of weight w.
  const Elt m = static_cast<Elt>(n);
  std::vector<bool> weight(m, false);
  for (Elt x = 0; x < m; ++x) {
    for (Elt y = 0; y < m; ++y) {
      weight[Commutator(loop, x, y)] = true;
      for (Elt z = 0; z < m; ++z) weight[Associator(loop, x, y, z)] = true;
    }
  }
  const std::size_t len = r.terms.size();
  for (std::size_t w = 1; w <= len + 1; ++w) {
    r.weight_terms.push_back(SubloopGenerated(loop, SubloopSet::FromMask(weight).members));
    std::vector<bool> next(m, false);
    for (Elt a = 0; a < m; ++a) {
      if (!weight[a]) continue;
      for (Elt x = 0; x < m; ++x) {
        next[Commutator(loop, a, x)] = true;
        for (Elt y = 0; y < m; ++y) next[Associator(loop, a, x, y)] = true;
      }
    }
    weight = std::move(next);
  }
  auto term = [&](std::size_t i) -> const SubloopSet& { return r.terms[std::min(i, len) - 1]; };
  for (int shift : {1, 0}) {
    bool ok = true;
    for (std::size_t w = 1; w <= r.weight_terms.size() && ok; ++w) ok = r.weight_terms[w - 1] == term(w + shift);
    if (ok) {
      r.weight_alignment = shift;
      break;
    }
  }
  return r;
}

SimplicityResult IsSimple(const FiniteLoop& loop) {
  const Elt n = static_cast<Elt>(loop.order());
  if (n == 1) return {false, std::nullopt};
  for (Elt x = 1; x < n; ++x) {
    SubloopSet c = NormalClosure(loop, {x});
    if (!c.is_whole()) return {false, std::move(c)};
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Direct products

namespace {

class ProductOracle final : public LoopOracle {
 public:
  ProductOracle(FiniteLoop a, FiniteLoop b) : a_(std::move(a)), b_(std::move(b)), m_(b_.order()) {}
  std::size_t order() const override { return a_.order() * m_; }
  Elt mul(Elt x, Elt y) const override { return Pack(a_.mul(x / m_, y / m_), b_.mul(x % m_, y % m_)); }
  Elt ldiv(Elt x, Elt z) const override { return Pack(a_.ldiv(x / m_, z / m_), b_.ldiv(x % m_, z % m_)); }
  Elt rdiv(Elt z, Elt x) const override { return Pack(a_.rdiv(z / m_, x / m_), b_.rdiv(z % m_, x % m_)); }
  std::string name(Elt x) const override { return "(" + a_.name(x / m_) + "," + b_.name(x % m_) + ")"; }

 private:
  Elt Pack(Elt i, Elt j) const { return static_cast<Elt>(i * m_ + j); }
  FiniteLoop a_, b_;
  std::size_t m_;
};

}  // namespace

FiniteLoop DirectProduct(const FiniteLoop& a, const FiniteLoop& b, std::size_t table_threshold) {
  auto oracle = std::make_shared<const ProductOracle>(a, b);
  const std::size_t n = oracle->order();
  if (n > table_threshold) return FiniteLoop::FromOracle(oracle);
  std::vector<Elt> flat(n * n);
  std::vector<std::string> names(n);
  for (Elt x = 0; x < n; ++x) {
    names[x] = oracle->name(x);
    for (Elt y = 0; y < n; ++y) flat[std::size_t(x) * n + y] = oracle->mul(x, y);
  }
  return FiniteLoop::FromFlatTable(std::move(names), std::move(flat));
}

// ---------------------------------------------------------------------------
// Composition series and the group-type radical

namespace {

// Largest proper normal subloop; ties broken by member order.
SubloopSet MaximalNormal(const FiniteLoop& loop) {
  std::vector<SubloopSet> lattice = NormalSubloopLattice(loop);
  const SubloopSet* best = nullptr;
  for (const auto& s : lattice) {
    if (s.is_whole()) continue;
    if (!best || s.size() > best->size() || (s.size() == best->size() && s.members < best->members)) best = &s;
  }
  return *best;
}

}  // namespace

std::vector<CompositionFactor> CompositionSeries(const FiniteLoop& loop) {
  std::vector<CompositionFactor> out;
  SubloopSet current = SubloopSet::Whole(loop.order());
  while (!current.is_trivial()) {
    FiniteLoop sub = Restrict(loop, current);
    SubloopSet inner = MaximalNormal(sub);
    Quotient q = QuotientLoop(sub, inner);
    SubloopSet lower = Lift(current, inner);
    out.push_back(CompositionFactor{current, lower, IsAssociative(q.loop)});
    current = std::move(lower);
  }
  return out;
}

bool IsGroupType(const FiniteLoop& loop) {
  FiniteLoop current = loop;
  for (;;) {
    if (IsAssociative(current)) return true;
    SubloopSet inner = MaximalNormal(current);
    if (!IsAssociative(QuotientLoop(current, inner).loop)) return false;
    current = Restrict(current, inner);
  }
}

SubloopSet GroupTypeRadical(const FiniteLoop& loop, const GroupTypeOptions& opts) {
  const Elt n = static_cast<Elt>(loop.order());
  if (n > opts.order_bound) {
    throw Error(ErrorCode::kOrderBoundExceeded,
                "order " + std::to_string(n) + " exceeds bound " + std::to_string(opts.order_bound));
  }
  if (IsAssociative(loop)) return SubloopSet::Whole(n);
  std::vector<bool> mask(n, false);
  mask[0] = true;
  std::vector<SubloopSet> seen;
  for (Elt x = 1; x < n; ++x) {
    if (mask[x]) continue;
    SubloopSet c = NormalClosure(loop, {x});
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    if (!IsGroupType(Restrict(loop, c))) continue;
    for (Elt m : c.members) mask[m] = true;
  }
  // The union of normal closures is normal once closed.
  return NormalClosure(loop, SubloopSet::FromMask(mask).members);
}

// ---------------------------------------------------------------------------
// Seven-variable associator identity of commutative Moufang loops

Elt InverseAssociator(const FiniteLoop& loop, Elt x, Elt y, Elt z) {
  return loop.rdiv(loop.mul(loop.mul(x, y), z), loop.mul(x, loop.mul(y, z)));
}

Elt AssociatorIdentityValue(const FiniteLoop& loop, const std::vector<Elt>& t) {
  if (t.size() != 7) throw Error(ErrorCode::kDimensionMismatch, "the associator identity takes a 7-tuple");
  const Elt a = t[0], x = t[1], y = t[2], z = t[3], b = t[4], tt = t[5], c = t[6];
  auto as = [&](Elt p, Elt q, Elt r) { return InverseAssociator(loop, p, q, r); };
  auto nest = [&](Elt p1, Elt p2, Elt p3, Elt p4, Elt p5, Elt p6, Elt p7) {
    // ((((a,p1,p2),p3,p4),p5,p6),b,c) with the leading a fixed.
    return as(as(as(as(p1, p2, p3), p4, p5), p6, p7), b, c);
  };
  const Elt f1 = nest(a, x, y, z, b, tt, c);
  const Elt f2 = nest(a, x, z, y, b, tt, c);
  const Elt f3 = nest(a, x, tt, y, b, z, c);
  const Elt f4 = nest(a, x, b, y, z, tt, c);
  const Elt f5 = nest(a, x, c, y, z, tt, b);
  const Elt f6 = nest(a, x, b, y, c, z, tt);
  Elt acc = loop.mul(f1, f2);
  acc = loop.mul(acc, loop.inv(f3));
  acc = loop.mul(acc, f4);
  acc = loop.mul(acc, f5);
  return loop.mul(acc, f6);
}

AssociatorIdentityResult CheckAssociatorIdentity(const FiniteLoop& loop, std::uint64_t samples, std::uint64_t seed) {
  if (!CheckCommutative(loop).ok || !IsMoufang(loop)) {
    throw Error(ErrorCode::kNotCommutativeMoufang, "the associator identity is stated for commutative Moufang loops");
  }
  AssociatorIdentityResult r;
  r.samples = samples;
  r.seed = seed;
  Rng rng(seed);
  const std::uint64_t n = loop.order();
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::vector<Elt> t(7);
    for (auto& v : t) v = static_cast<Elt>(rng() % n);
    if (AssociatorIdentityValue(loop, t) != 0) {
      r.holds = false;
      r.witness = t;
      return r;
    }
  }
  return r;
}

}  // namespace loopforge
