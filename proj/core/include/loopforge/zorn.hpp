#pragma once

#include <array>
#include <string>

#include "loopforge/gf.hpp"

namespace loopforge {

/// Zorn vector matrix [[a1, v12], [v21, a2]] with scalar diagonal and
/// 3-vector off-diagonal entries.
template <Field F>
struct ZornMatrix {
  using Elem = typename F::Elem;
  using Vec3 = std::array<Elem, 3>;

  Elem a1, a2;
  Vec3 v12, v21;

  static ZornMatrix Identity(const F& f) {
    return {f.one(), f.one(), {f.zero(), f.zero(), f.zero()}, {f.zero(), f.zero(), f.zero()}};
  }

  /// Coordinates in the order (a1, a2, v12, v21).
  std::array<Elem, 8> Coords() const {
    return {a1, a2, v12[0], v12[1], v12[2], v21[0], v21[1], v21[2]};
  }
  static ZornMatrix FromCoords(const std::array<Elem, 8>& c) {
    return {c[0], c[1], {c[2], c[3], c[4]}, {c[5], c[6], c[7]}};
  }

  friend bool operator==(const ZornMatrix&, const ZornMatrix&) = default;
};

template <Field F>
typename F::Elem Dot3(const F& f, const typename ZornMatrix<F>::Vec3& g, const typename ZornMatrix<F>::Vec3& d) {
  return f.add(f.add(f.mul(g[0], d[0]), f.mul(g[1], d[1])), f.mul(g[2], d[2]));
}

/// γ×δ = (γ2δ3 − γ3δ2, γ3δ1 − γ1δ3, γ1δ2 − γ2δ1).
template <Field F>
typename ZornMatrix<F>::Vec3 Cross3(const F& f, const typename ZornMatrix<F>::Vec3& g,
                                    const typename ZornMatrix<F>::Vec3& d) {
  return {f.sub(f.mul(g[1], d[2]), f.mul(g[2], d[1])), f.sub(f.mul(g[2], d[0]), f.mul(g[0], d[2])),
          f.sub(f.mul(g[0], d[1]), f.mul(g[1], d[0]))};
}

/// [[a1 b1 + (a12,b21),         a1 b12 + b2 a12 − a21×b21],
///  [b1 a21 + a2 b21 + a12×b12,  a2 b2 + (a21,b12)]]
template <Field F>
ZornMatrix<F> ZornMul(const F& f, const ZornMatrix<F>& a, const ZornMatrix<F>& b) {
  using V3 = typename ZornMatrix<F>::Vec3;
  ZornMatrix<F> c;
  c.a1 = f.add(f.mul(a.a1, b.a1), Dot3(f, a.v12, b.v21));
  c.a2 = f.add(f.mul(a.a2, b.a2), Dot3(f, a.v21, b.v12));
  V3 x21 = Cross3(f, a.v21, b.v21);
  V3 x12 = Cross3(f, a.v12, b.v12);
  for (int i = 0; i < 3; ++i) {
    c.v12[i] = f.sub(f.add(f.mul(a.a1, b.v12[i]), f.mul(b.a2, a.v12[i])), x21[i]);
    c.v21[i] = f.add(f.add(f.mul(b.a1, a.v21[i]), f.mul(a.a2, b.v21[i])), x12[i]);
  }
  return c;
}

/// a1 a2 − (v12, v21).
template <Field F>
typename F::Elem ZornDet(const F& f, const ZornMatrix<F>& m) {
  return f.sub(f.mul(m.a1, m.a2), Dot3(f, m.v12, m.v21));
}

template <Field F>
ZornMatrix<F> ZornNeg(const F& f, const ZornMatrix<F>& m) {
  ZornMatrix<F> r;
  r.a1 = f.neg(m.a1);
  r.a2 = f.neg(m.a2);
  for (int i = 0; i < 3; ++i) {
    r.v12[i] = f.neg(m.v12[i]);
    r.v21[i] = f.neg(m.v21[i]);
  }
  return r;
}

}  // namespace loopforge
