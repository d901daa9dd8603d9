#include "loopforge/gf.hpp"

#include <charconv>

namespace loopforge {

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::Prime(std::uint32_t p) {
  if (p >= (1u << 31) || !IsPrime(p)) {
    throw Error(ErrorCode::kInvalidField, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  return FieldSpec{Kind::kPrime, p};
}

FieldSpec FieldSpec::Parse(const std::string& text) {
  if (text == "q" || text == "Q") return Rationals();
  if (text.rfind("gf:", 0) == 0) {
    std::uint64_t p = 0;
    const char* first = text.data() + 3;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec != std::errc() || ptr != last || first == last || p >= (1ull << 31)) {
      throw Error(ErrorCode::kInvalidField, "bad field spec '" + text + "'");
    }
    return Prime(static_cast<std::uint32_t>(p));
  }
  throw Error(ErrorCode::kInvalidField, "bad field spec '" + text + "' (expected gf:p or q)");
}

std::string FieldSpec::ToString() const {
  return kind == Kind::kRationals ? "q" : "gf:" + std::to_string(p);
}

PrimeField::PrimeField(std::uint32_t p) : p_(FieldSpec::Prime(p).p) {}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of 0 in GF(" + std::to_string(p_) + ")");
  // Extended Euclid on (a, p).
  std::int64_t old_r = a, r = p_;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return from_int(old_s);
}

std::vector<PrimeField::Elem> PrimeField::enumerate() const {
  std::vector<Elem> out(p_);
  for (std::uint32_t i = 0; i < p_; ++i) out[i] = i;
  return out;
}

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (a == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of 0 in Q");
  return Elem(1) / a;
}

std::vector<RationalField::Elem> RationalField::enumerate() const {
  throw Error(ErrorCode::kEnumerationUnsupported, "the rationals cannot be enumerated");
}

std::uint64_t RationalField::index_of(const Elem&) const {
  throw Error(ErrorCode::kEnumerationUnsupported, "the rationals cannot be enumerated");
}

RationalField::Elem RationalField::random(Rng& rng) const {
  std::int64_t num = static_cast<std::int64_t>(rng() % 13) - 6;
  std::int64_t den = static_cast<std::int64_t>(rng() % 4) + 1;
  return Elem(num, den);
}

std::string RationalField::to_string(const Elem& a) const {
  return boost::multiprecision::numerator(a).str() +
         (boost::multiprecision::denominator(a) == 1 ? "" : "/" + boost::multiprecision::denominator(a).str());
}

}  // namespace loopforge
