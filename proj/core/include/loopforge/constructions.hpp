#pragma once

// Fixture loops: cyclic groups, S3, Chein doubles, the order-81 commutative
// Moufang loop and the Paige loops M(q).

#include <cstddef>
#include <cstdint>
#include <string>

#include "loopforge/loop.hpp"

namespace loopforge {

FiniteLoop CyclicGroup(std::size_t n);
FiniteLoop SymmetricGroup3();

/// c<n> (n <= 64), s3.
FiniteLoop BuiltinGroup(const std::string& name);

/// M(G,2) on G ∪ Gu:  g·h = gh, g·(hu) = (hg)u, (gu)·h = (gh⁻¹)u, (gu)·(hu) = h⁻¹g.
/// The result is gate-checked: Moufang, and nonassociative iff G is nonabelian.
FiniteLoop CheinDouble(const FiniteLoop& group);

/// (Z_3)^4 with x·y = (x+y) + (0,0,0,(x1-y1)(x2y3-x3y2)); element index
/// x1 + 3x2 + 9x3 + 27x4. Gate-checked commutative, Moufang, nonassociative,
/// exponent 3.
FiniteLoop Cml81();

/// Order (1/d) q^3 (q^4 - 1) with d = gcd(2, q - 1).
std::uint64_t PaigeOrder(std::uint32_t q);

/// Unit-determinant Zorn vector matrices over GF(q) modulo ±1. Identity at
/// index 0, the remaining classes in lexicographic order of their canonical
/// coordinates (a1, a2, v12, v21).
FiniteLoop PaigeLoop(std::uint32_t q, std::uint64_t max_order = 1080);

/// Resolves `cyclic:n | c<n> | s3 | chein:<group> | chein12 | cml81 |
/// paige:q | paige<q> | product:<a>,<b>`.
FiniteLoop BuiltinLoop(const std::string& kind);

}  // namespace loopforge
