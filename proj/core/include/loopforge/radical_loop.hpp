#pragma once

// Loop-side routes to membership in the radical class: group-type radical,
// composition factors of every normal subloop, and a search for
// nonassociative simple subloops.

#include <cstdint>
#include <optional>
#include <vector>

#include "loopforge/loop.hpp"

namespace loopforge {

struct ClassSOptions {
  /// Triples are enumerated exhaustively when |L|^3 is at most this,
  /// otherwise `triple_samples` seeded triples are drawn.
  std::uint64_t exhaustive_triples = 4096;
  std::uint64_t triple_samples = 2000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t order_bound = 2000;
};

struct ClassSChecks {
  /// Gr(L) = L.
  bool r1 = true;
  /// N/K is associative for every normal N of L and every maximal normal K of N.
  bool r2 = true;
  /// No subloop generated by a nonassociative triple is a simple loop.
  bool r3 = true;

  SubloopSet group_type_radical;
  std::optional<std::pair<SubloopSet, SubloopSet>> r2_witness;  // (N, K)
  std::optional<SubloopSet> simple_subloop;
  std::optional<Triple> simple_generators;
  bool r3_exhaustive = true;
  std::uint64_t r3_triples = 0;
  std::uint64_t seed = kDefaultSeed;
};

/// Computes r1-r3 and throws CrossCheckMismatch if they disagree.
ClassSChecks LoopSideClassS(const FiniteLoop& loop, const ClassSOptions& opts = {});

/// S(L) = Gr(L), verified to satisfy Gr(L/Gr(L)) = {e}.
SubloopSet LoopRadicalS(const FiniteLoop& loop, const ClassSOptions& opts = {});

}  // namespace loopforge
