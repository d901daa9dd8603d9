#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loopforge/error.hpp"

namespace loopforge {

using Rng = std::mt19937_64;

/// Default seed for every sampled check.
inline constexpr std::uint64_t kDefaultSeed = 0xA17E41;

/// Which field an algebra lives over. Parsed from `gf:p` or `q`.
struct FieldSpec {
  enum class Kind { kPrime, kRationals };

  Kind kind = Kind::kPrime;
  std::uint32_t p = 2;

  static FieldSpec Prime(std::uint32_t p);
  static FieldSpec Rationals() { return FieldSpec{Kind::kRationals, 0}; }
  static FieldSpec Parse(const std::string& text);

  std::string ToString() const;
  std::uint32_t characteristic() const { return kind == Kind::kPrime ? p : 0; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool IsPrime(std::uint64_t n);

/// GF(p) with canonical residues 0..p-1, p < 2^31.
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec::Prime(p_); }
  std::uint32_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Elem inv(Elem a) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }

  std::vector<Elem> enumerate() const;
  Elem random(Rng& rng) const { return static_cast<Elem>(rng() % p_); }
  /// Number of elements; 0 means infinite.
  std::uint64_t size() const { return p_; }
  std::string to_string(Elem a) const { return std::to_string(a); }
  /// Position of an element in `enumerate()` order.
  std::uint64_t index_of(Elem a) const { return a; }

 private:
  std::uint32_t p_;
};

/// The rationals with arbitrary-precision reduced fractions.
class RationalField {
 public:
  using Elem = boost::multiprecision::cpp_rational;

  FieldSpec spec() const { return FieldSpec::Rationals(); }
  std::uint32_t characteristic() const { return 0; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(v); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1; }

  std::vector<Elem> enumerate() const;
  /// Small fractions n/d with |n| <= 6, 1 <= d <= 4.
  Elem random(Rng& rng) const;
  std::uint64_t size() const { return 0; }
  std::string to_string(const Elem& a) const;
  std::uint64_t index_of(const Elem&) const;
};

template <class F>
concept Field = requires(const F& f, const typename F::Elem& a, Rng& rng) {
  { f.zero() } -> std::convertible_to<typename F::Elem>;
  { f.one() } -> std::convertible_to<typename F::Elem>;
  { f.add(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.neg(a) } -> std::convertible_to<typename F::Elem>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.inv(a) } -> std::convertible_to<typename F::Elem>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.random(rng) } -> std::convertible_to<typename F::Elem>;
  { f.size() } -> std::convertible_to<std::uint64_t>;
  { f.spec() } -> std::convertible_to<FieldSpec>;
};

}  // namespace loopforge
