#include "loopforge/constructions.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

#include "loopforge/zorn.hpp"

namespace loopforge {
namespace {

std::string WitnessText(const FiniteLoop& l, const Triple& t) {
  return "(" + l.name(t.x) + ", " + l.name(t.y) + ", " + l.name(t.z) + ")";
}

std::uint64_t ParseCount(const std::string& text, const std::string& whole) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      text.size() > 9)
    throw Error(ErrorCode::kUnknownName, "bad number in '" + whole + "'");
  return std::stoull(text);
}

}  // namespace

FiniteLoop CyclicGroup(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kUnknownName, "cyclic group of order 0");
  std::vector<std::string> names(n);
  names[0] = "e";
  for (std::size_t i = 1; i < n; ++i) names[i] = i == 1 ? "g" : "g^" + std::to_string(i);
  std::vector<Elt> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = static_cast<Elt>((i + j) % n);
  return FiniteLoop::FromFlatTable(std::move(names), std::move(flat));
}

FiniteLoop SymmetricGroup3() {
  // Permutations of {0,1,2} as image tuples in lexicographic order;
  // (s*t)(i) = s(t(i)).
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names = {"e", "(23)", "(12)", "(123)", "(132)", "(13)"};
  std::vector<Elt> flat(36);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      flat[i * 6 + j] = static_cast<Elt>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteLoop::FromFlatTable(std::move(names), std::move(flat));
}

FiniteLoop BuiltinGroup(const std::string& name) {
  if (name == "s3") return SymmetricGroup3();
  std::string digits;
  if (name.rfind("cyclic:", 0) == 0)
    digits = name.substr(7);
  else if (name.size() > 1 && name[0] == 'c' && std::isdigit(static_cast<unsigned char>(name[1])))
    digits = name.substr(1);
  else
    throw Error(ErrorCode::kUnknownName, "unknown group '" + name + "'");
  std::uint64_t n = ParseCount(digits, name);
  if (n < 1 || n > 64) throw Error(ErrorCode::kUnknownName, "cyclic order must be in 1..64: '" + name + "'");
  return CyclicGroup(n);
}

FiniteLoop CheinDouble(const FiniteLoop& g) {
  if (auto a = CheckAssociative(g); !a.ok)
    throw Error(ErrorCode::kInputNotGroup, "associator nontrivial at " + WitnessText(g, *a.witness));
  const std::size_t n = g.order();
  const std::size_t m = 2 * n;
  std::vector<std::string> names(m);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = g.name(i);
    names[n + i] = (i == 0 ? std::string() : g.name(i)) + "u";
  }
  std::vector<Elt> flat(m * m);
  for (Elt x = 0; x < n; ++x)
    for (Elt y = 0; y < n; ++y) {
      flat[x * m + y] = g.mul(x, y);                                        // g·h = gh
      flat[x * m + n + y] = static_cast<Elt>(n + g.mul(y, x));              // g·(hu) = (hg)u
      flat[(n + x) * m + y] = static_cast<Elt>(n + g.mul(x, g.inv(y)));     // (gu)·h = (gh⁻¹)u
      flat[(n + x) * m + n + y] = g.mul(g.inv(y), x);                       // (gu)·(hu) = h⁻¹g
    }
  FiniteLoop d = FiniteLoop::FromFlatTable(std::move(names), std::move(flat));

  if (auto mo = CheckMoufangExhaustive(d); !mo.ok)
    throw Error(ErrorCode::kGateFailed, "Chein double not Moufang at " + WitnessText(d, *mo.witness));
  bool abelian = CheckCommutative(g).ok;
  if (IsAssociative(d) != abelian)
    throw Error(ErrorCode::kGateFailed, "Chein double associativity does not match commutativity of the input");
  return d;
}

FiniteLoop Cml81() {
  auto digit = [](Elt x, int k) {
    for (int i = 0; i < k; ++i) x /= 3;
    return static_cast<int>(x % 3);
  };
  std::vector<std::string> names(81);
  for (Elt x = 0; x < 81; ++x)
    names[x] = "(" + std::to_string(digit(x, 0)) + "," + std::to_string(digit(x, 1)) + "," +
               std::to_string(digit(x, 2)) + "," + std::to_string(digit(x, 3)) + ")";
  std::vector<Elt> flat(81 * 81);
  for (Elt x = 0; x < 81; ++x)
    for (Elt y = 0; y < 81; ++y) {
      int c[4];
      for (int k = 0; k < 4; ++k) c[k] = digit(x, k) + digit(y, k);
      int twist = (digit(x, 0) - digit(y, 0)) * (digit(x, 1) * digit(y, 2) - digit(x, 2) * digit(y, 1));
      c[3] += twist;
      Elt r = 0;
      for (int k = 3; k >= 0; --k) r = r * 3 + static_cast<Elt>(((c[k] % 3) + 3) % 3);
      flat[x * 81 + y] = r;
    }
  FiniteLoop l = FiniteLoop::FromFlatTable(std::move(names), std::move(flat));

  if (auto c = CheckCommutative(l); !c.ok)
    throw Error(ErrorCode::kGateFailed, "cml81 not commutative at " + WitnessText(l, *c.witness));
  if (auto mo = CheckMoufangExhaustive(l); !mo.ok)
    throw Error(ErrorCode::kGateFailed, "cml81 not Moufang at " + WitnessText(l, *mo.witness));
  if (IsAssociative(l)) throw Error(ErrorCode::kGateFailed, "cml81 is associative");
  if (Exponent(l) != 3) throw Error(ErrorCode::kGateFailed, "cml81 exponent is not 3");
  return l;
}

std::uint64_t PaigeOrder(std::uint32_t q) {
  std::uint64_t q3 = std::uint64_t(q) * q * q;
  std::uint64_t d = std::gcd<std::uint64_t>(2, q - 1);
  return q3 * (q3 * q - 1) / d;
}

FiniteLoop PaigeLoop(std::uint32_t q, std::uint64_t max_order) {
  if (!IsPrime(q)) throw Error(ErrorCode::kInvalidField, "Paige loops are built for prime q only, got " + std::to_string(q));
  const std::uint64_t expected = PaigeOrder(q);
  if (expected > max_order)
    throw Error(ErrorCode::kOrderBoundExceeded,
                "M(" + std::to_string(q) + ") has order " + std::to_string(expected) + " > bound " +
                    std::to_string(max_order));
  PrimeField f(q);
  using Z = ZornMatrix<PrimeField>;
  using Coords = std::array<PrimeField::Elem, 8>;

  auto pack = [q](const Coords& c) {
    std::uint64_t k = 0;
    for (auto v : c) k = k * q + v;
    return k;
  };
  auto canonical = [&](const Z& m) {
    Coords a = m.Coords(), b = ZornNeg(f, m).Coords();
    return std::min(a, b);
  };

  // Enumerate coordinate tuples in lexicographic order; keep det-1 canonical
  // representatives.
  std::vector<Coords> reps;
  std::uint64_t total = 1;
  for (int i = 0; i < 8; ++i) total *= q;
  Coords c{};
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    for (int i = 7; i >= 0; --i) {
      c[i] = static_cast<PrimeField::Elem>(r % q);
      r /= q;
    }
    Z m = Z::FromCoords(c);
    if (!f.is_one(ZornDet(f, m))) continue;
    if (canonical(m) == c) reps.push_back(c);
  }
  if (reps.size() != expected)
    throw Error(ErrorCode::kGateFailed, "M(" + std::to_string(q) + ") enumerated " + std::to_string(reps.size()) +
                                            " classes, formula gives " + std::to_string(expected));
  const Coords id = canonical(Z::Identity(f));
  auto it = std::find(reps.begin(), reps.end(), id);
  std::rotate(reps.begin(), it, it + 1);

  const std::size_t n = reps.size();
  std::unordered_map<std::uint64_t, Elt> index;
  index.reserve(n * 2);
  std::vector<Z> mats(n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    index.emplace(pack(reps[i]), static_cast<Elt>(i));
    mats[i] = Z::FromCoords(reps[i]);
    const Coords& r = reps[i];
    names[i] = "[" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "|" + std::to_string(r[2]) + "," +
               std::to_string(r[3]) + "," + std::to_string(r[4]) + "|" + std::to_string(r[5]) + "," +
               std::to_string(r[6]) + "," + std::to_string(r[7]) + "]";
  }
  names[0] = "e";
  std::vector<Elt> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = index.at(pack(canonical(ZornMul(f, mats[i], mats[j]))));
  return FiniteLoop::FromFlatTable(std::move(names), std::move(flat));
}

FiniteLoop BuiltinLoop(const std::string& kind) {
  if (kind == "cml81") return Cml81();
  if (kind == "chein12") return CheinDouble(SymmetricGroup3());
  if (kind == "m2") return PaigeLoop(2);
  if (kind.rfind("chein:", 0) == 0) return CheinDouble(BuiltinGroup(kind.substr(6)));
  if (kind.rfind("paige:", 0) == 0) return PaigeLoop(static_cast<std::uint32_t>(ParseCount(kind.substr(6), kind)));
  if (kind.rfind("paige", 0) == 0 && kind.size() > 5)
    return PaigeLoop(static_cast<std::uint32_t>(ParseCount(kind.substr(5), kind)));
  if (kind.rfind("product:", 0) == 0) {
    std::string rest = kind.substr(8);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::kUnknownName, "product needs two factors: '" + kind + "'");
    return DirectProduct(BuiltinLoop(rest.substr(0, comma)), BuiltinLoop(rest.substr(comma + 1)));
  }
  return BuiltinGroup(kind);
}

}  // namespace loopforge
