#pragma once

// Finite loops: validated multiplication (dense table or structural oracle),
// identity at index 0, and the loop-side algorithms built on top.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopforge/error.hpp"
#include "loopforge/gf.hpp"

namespace loopforge {

using Elt = std::uint32_t;

/// Structural multiplication for loops that are never tabulated.
class LoopOracle {
 public:
  virtual ~LoopOracle() = default;
  virtual std::size_t order() const = 0;
  virtual Elt mul(Elt x, Elt y) const = 0;
  /// The y with x*y = z.
  virtual Elt ldiv(Elt x, Elt z) const = 0;
  /// The y with y*x = z.
  virtual Elt rdiv(Elt z, Elt x) const = 0;
  virtual std::string name(Elt x) const = 0;
};

class FiniteLoop {
 public:
  /// Validates a dense Cayley table (row i, column j = x_i * x_j).
  static FiniteLoop FromTable(std::vector<std::string> names, std::vector<std::vector<Elt>> table);
  static FiniteLoop FromFlatTable(std::vector<std::string> names, std::vector<Elt> flat);
  /// Wraps an oracle. Validation is exhaustive for orders up to 4096 and
  /// otherwise limited to the identity row/column.
  static FiniteLoop FromOracle(std::shared_ptr<const LoopOracle> oracle);

  std::size_t order() const { return n_; }
  bool has_table() const { return table_ != nullptr; }

  Elt mul(Elt x, Elt y) const { return table_ ? (*table_)[std::size_t(x) * n_ + y] : oracle_->mul(x, y); }
  Elt ldiv(Elt x, Elt z) const { return ldiv_ ? (*ldiv_)[std::size_t(x) * n_ + z] : oracle_->ldiv(x, z); }
  Elt rdiv(Elt z, Elt x) const { return rdiv_ ? (*rdiv_)[std::size_t(x) * n_ + z] : oracle_->rdiv(z, x); }
  /// Two-sided inverse when it exists (x \ e == e / x), else the right inverse.
  Elt inv(Elt x) const { return ldiv(x, 0); }

  std::string name(Elt x) const;
  std::vector<std::string> names() const;

  /// Dense table, materialized on demand.
  std::vector<std::vector<Elt>> Table() const;

  /// Element power x^k computed as left-nested products.
  Elt Pow(Elt x, std::uint64_t k) const;
  /// Least k >= 1 with x^k = e, following left-nested powers.
  std::uint64_t ElementOrder(Elt x) const;

 private:
  FiniteLoop() = default;
  void BuildDivisionTables();

  std::size_t n_ = 0;
  std::shared_ptr<const std::vector<Elt>> table_;
  std::shared_ptr<const std::vector<Elt>> ldiv_;
  std::shared_ptr<const std::vector<Elt>> rdiv_;
  std::shared_ptr<const LoopOracle> oracle_;
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Sorted member set of a subloop (always contains 0).
struct SubloopSet {
  std::size_t parent_order = 0;
  std::vector<Elt> members;

  std::size_t size() const { return members.size(); }
  bool contains(Elt x) const;
  std::vector<bool> mask() const;
  static SubloopSet FromMask(const std::vector<bool>& mask);
  static SubloopSet Trivial(std::size_t n) { return SubloopSet{n, {0}}; }
  static SubloopSet Whole(std::size_t n);
  bool is_trivial() const { return members.size() == 1; }
  bool is_whole() const { return members.size() == parent_order; }
  SubloopSet Intersect(const SubloopSet& other) const;

  friend bool operator==(const SubloopSet&, const SubloopSet&) = default;
};

// ---------------------------------------------------------------------------
// Properties

struct Triple {
  Elt x = 0, y = 0, z = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct PropertyCheck {
  bool ok = true;
  std::optional<Triple> witness;  // pairs use z = 0
};

struct PropertyOptions {
  std::size_t exhaustive_order = 300;
  std::uint64_t exhaustive_triples = 10'000'000;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
};

struct PropertyReport {
  std::size_t order = 0;
  PropertyCheck moufang;
  PropertyCheck associative;
  PropertyCheck commutative;
  PropertyCheck ip;
  std::uint64_t exponent = 1;
  /// The prime p when every element order is a power of p (order > 1).
  std::optional<std::uint32_t> p_loop;
  bool moufang_exhaustive = true;
  std::uint64_t moufang_samples = 0;
  std::uint64_t seed = kDefaultSeed;

  bool is_p_loop(std::uint32_t p) const { return order == 1 || (p_loop && *p_loop == p); }
};

PropertyReport CheckProperties(const FiniteLoop& loop, const PropertyOptions& opts = {});
PropertyCheck CheckMoufangExhaustive(const FiniteLoop& loop);
PropertyCheck CheckAssociative(const FiniteLoop& loop);
PropertyCheck CheckCommutative(const FiniteLoop& loop);
PropertyCheck CheckIP(const FiniteLoop& loop);
bool IsAssociative(const FiniteLoop& loop);
bool IsMoufang(const FiniteLoop& loop);
std::uint64_t Exponent(const FiniteLoop& loop);

/// t with xy*z = (x*yz)*t.
Elt Associator(const FiniteLoop& loop, Elt x, Elt y, Elt z);
/// t with xy = (yx)*t.
Elt Commutator(const FiniteLoop& loop, Elt x, Elt y);

// ---------------------------------------------------------------------------
// Subloops, normality, quotients

SubloopSet SubloopGenerated(const FiniteLoop& loop, const std::vector<Elt>& gens);
/// Smallest normal subloop containing gens: the block of e in the finest
/// block system of the multiplication group that joins e with every generator.
SubloopSet NormalClosure(const FiniteLoop& loop, const std::vector<Elt>& gens);
/// Reference route: fixpoint of the three normality equations (cubic per
/// member, test-scale only).
SubloopSet NormalClosureByEquations(const FiniteLoop& loop, const std::vector<Elt>& gens);

struct NormalityWitness {
  int equation = 0;  // 1: xN = Nx, 2: x(yN) = (xy)N, 3: (Nx)y = N(xy)
  Elt x = 0, y = 0, n = 0;
};
/// nullopt iff `set` is a normal subloop.
std::optional<NormalityWitness> CheckNormal(const FiniteLoop& loop, const SubloopSet& set);
bool IsSubloop(const FiniteLoop& loop, const SubloopSet& set);

struct Quotient {
  FiniteLoop loop;
  /// coset index of every parent element; identity coset is 0.
  std::vector<Elt> coset_of;
  /// smallest parent element of each coset.
  std::vector<Elt> representative;
};
Quotient QuotientLoop(const FiniteLoop& loop, const SubloopSet& normal);

/// The subloop as a loop in its own right; index i is members[i].
FiniteLoop Restrict(const FiniteLoop& loop, const SubloopSet& sub);
/// Image of a subloop of the restricted loop back in the parent.
SubloopSet Lift(const SubloopSet& parent_sub, const SubloopSet& inner);
/// Preimage of a quotient subloop.
SubloopSet Preimage(const Quotient& q, const SubloopSet& inner, std::size_t parent_order);

SubloopSet Center(const FiniteLoop& loop);

/// Join of two normal subloops.
SubloopSet NormalJoin(const FiniteLoop& loop, const SubloopSet& a, const SubloopSet& b);
/// All normal subloops, closing normal closures of single elements under
/// joins. Sorted by size then members.
std::vector<SubloopSet> NormalSubloopLattice(const FiniteLoop& loop, std::size_t max_count = 4096);
/// Proper normal subloops not contained in any other proper normal subloop.
std::vector<SubloopSet> MaximalNormalSubloops(const FiniteLoop& loop);

// ---------------------------------------------------------------------------
// Central series

struct SeriesReport {
  enum class Kind { kUpperCentral, kLowerCentral };
  Kind kind = Kind::kUpperCentral;
  std::vector<SubloopSet> terms;
  bool stabilized = true;
  std::optional<std::size_t> nilpotency_class;
  /// Lower series only: subloops generated by commutator-associators of
  /// weight w, w = 1, 2, ..., and the index shift s for which
  /// weight-w generation equals Q_{w+s} on every computed term (0 or 1).
  std::vector<SubloopSet> weight_terms;
  std::optional<int> weight_alignment;
};

SeriesReport CentralSeries(const FiniteLoop& loop, SeriesReport::Kind kind);

struct SimplicityResult {
  bool simple = false;
  std::optional<SubloopSet> witness;  // proper nontrivial normal subloop
};
SimplicityResult IsSimple(const FiniteLoop& loop);

FiniteLoop DirectProduct(const FiniteLoop& a, const FiniteLoop& b, std::size_t table_threshold = 4096);

// ---------------------------------------------------------------------------
// Group-type radical

struct CompositionFactor {
  SubloopSet upper;  // N_i (in the loop the series was computed for)
  SubloopSet lower;  // N_{i+1}, maximal normal in N_i
  bool associative = true;
};

/// Composition series N_0 = L > N_1 > ... > {e}; each N_{i+1} is the largest
/// proper normal subloop of N_i (ties broken by member order).
std::vector<CompositionFactor> CompositionSeries(const FiniteLoop& loop);
bool IsGroupType(const FiniteLoop& loop);

struct GroupTypeOptions {
  std::size_t order_bound = 2000;
};
SubloopSet GroupTypeRadical(const FiniteLoop& loop, const GroupTypeOptions& opts = {});

// ---------------------------------------------------------------------------
// Seven-variable associator identity of commutative Moufang loops

struct AssociatorIdentityResult {
  bool holds = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::vector<Elt>> witness;  // (a,x,y,z,b,t,c)
};

/// (x,y,z) = (xy)z * (x(yz))^{-1} as used in the identity.
Elt InverseAssociator(const FiniteLoop& loop, Elt x, Elt y, Elt z);
Elt AssociatorIdentityValue(const FiniteLoop& loop, const std::vector<Elt>& tuple);
AssociatorIdentityResult CheckAssociatorIdentity(const FiniteLoop& loop, std::uint64_t samples, std::uint64_t seed = kDefaultSeed);

}  // namespace loopforge
