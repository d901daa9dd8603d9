#include "loopforge/radical_loop.hpp"

#include <algorithm>

namespace loopforge {

ClassSChecks LoopSideClassS(const FiniteLoop& loop, const ClassSOptions& opts) {
  const Elt n = static_cast<Elt>(loop.order());
  if (n > opts.order_bound)
    throw Error(ErrorCode::kOrderBoundExceeded,
                "order " + std::to_string(n) + " exceeds bound " + std::to_string(opts.order_bound));
  if (!CheckProperties(loop).moufang.ok) throw Error(ErrorCode::kUnsupported, "loop is not Moufang");

  ClassSChecks c;
  c.seed = opts.seed;
  c.group_type_radical = GroupTypeRadical(loop, GroupTypeOptions{opts.order_bound});
  c.r1 = c.group_type_radical.is_whole();

  for (const SubloopSet& normal : NormalSubloopLattice(loop)) {
    if (normal.is_trivial() || !c.r2) continue;
    FiniteLoop sub = Restrict(loop, normal);
    if (IsAssociative(sub)) continue;
    for (const SubloopSet& k : MaximalNormalSubloops(sub)) {
      if (!IsAssociative(QuotientLoop(sub, k).loop)) {
        c.r2 = false;
        c.r2_witness = std::make_pair(normal, Lift(normal, k));
        break;
      }
    }
  }

  // Nonassociative triples generate the candidate subloops; 2-generated
  // subloops of a Moufang loop are groups.
  std::vector<SubloopSet> seen;
  auto visit = [&](Elt x, Elt y, Elt z) {
    ++c.r3_triples;
    if (Associator(loop, x, y, z) == 0) return false;
    SubloopSet s = SubloopGenerated(loop, {x, y, z});
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) return false;
    seen.push_back(s);
    if (IsSimple(Restrict(loop, s)).simple) {
      c.r3 = false;
      c.simple_subloop = s;
      c.simple_generators = Triple{x, y, z};
      return true;
    }
    return false;
  };
  const std::uint64_t n3 = std::uint64_t(n) * n * n;
  if (n3 <= opts.exhaustive_triples) {
    c.r3_exhaustive = true;
    for (Elt x = 1; x < n && c.r3; ++x)
      for (Elt y = 1; y < n && c.r3; ++y)
        for (Elt z = 1; z < n; ++z)
          if (visit(x, y, z)) break;
  } else {
    c.r3_exhaustive = false;
    Rng rng(opts.seed);
    for (std::uint64_t s = 0; s < opts.triple_samples; ++s) {
      Elt x = static_cast<Elt>(rng() % n), y = static_cast<Elt>(rng() % n), z = static_cast<Elt>(rng() % n);
      if (visit(x, y, z)) break;
    }
  }

  if (c.r1 != c.r2 || c.r1 != c.r3)
    throw Error(ErrorCode::kCrossCheckMismatch, "r1=" + std::to_string(c.r1) + " r2=" + std::to_string(c.r2) +
                                                    " r3=" + std::to_string(c.r3));
  return c;
}

SubloopSet LoopRadicalS(const FiniteLoop& loop, const ClassSOptions& opts) {
  SubloopSet gr = GroupTypeRadical(loop, GroupTypeOptions{opts.order_bound});
  if (!gr.is_trivial() && !gr.is_whole()) {
    Quotient q = QuotientLoop(loop, gr);
    if (!GroupTypeRadical(q.loop, GroupTypeOptions{opts.order_bound}).is_trivial())
      throw Error(ErrorCode::kCrossCheckMismatch, "Gr(L/Gr(L)) is not trivial");
  }
  return gr;
}

}  // namespace loopforge
