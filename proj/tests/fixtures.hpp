#pragma once

// Shared fixture loops, built once per test binary.

#include <map>
#include <string>

#include "loopforge/constructions.hpp"
#include "loopforge/loop.hpp"

namespace loopforge::testing {

inline const FiniteLoop& Fixture(const std::string& name) {
  static std::map<std::string, FiniteLoop> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, BuiltinLoop(name)).first;
  return it->second;
}

inline const FiniteLoop& S3() { return Fixture("s3"); }
inline const FiniteLoop& Chein12() { return Fixture("chein12"); }
inline const FiniteLoop& Cml81() { return Fixture("cml81"); }
inline const FiniteLoop& M2() { return Fixture("paige:2"); }

/// Element of cml81 from coordinates (x1, x2, x3, x4).
inline Elt CmlElt(int x1, int x2, int x3, int x4) { return static_cast<Elt>(x1 + 3 * x2 + 9 * x3 + 27 * x4); }

}  // namespace loopforge::testing
