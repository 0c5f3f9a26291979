// Exact integer and rational arithmetic used throughout the library.
//
// Lattice entries are 64-bit; intermediate products are carried in 128 bits
// and every narrowing or accumulation is overflow-checked. A computation that
// would leave the representable range throws OverflowError instead of
// producing a wrong answer.

#ifndef ESCALATOR_ARITH_HPP
#define ESCALATOR_ARITH_HPP

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace escalator {

using Int = std::int64_t;
using Wide = __int128;

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
 public:
  OverflowError() : Error("integer overflow in exact arithmetic") {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what = "form is not positive definite")
      : Error(what) {}
};

namespace detail {

inline Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline Wide checked_sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline Int narrow(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw OverflowError();
  return static_cast<Int>(v);
}

inline Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

inline Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// floor(a / b) for b > 0.
inline Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

inline std::string wide_to_string(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

}  // namespace detail

/// Largest m >= 0 with m*m <= n. Requires n >= 0.
inline Int isqrt(Int n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  Int r = static_cast<Int>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<Wide>(r) * r > n) --r;
  while (static_cast<Wide>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Exact rational number with a positive denominator, always in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(Int n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
  Rational(Wide n, Wide d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("zero denominator");
    normalize();
  }

  [[nodiscard]] Wide num() const { return num_; }
  [[nodiscard]] Wide den() const { return den_; }
  [[nodiscard]] int sign() const { return (num_ > 0) - (num_ < 0); }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }

  /// Largest integer <= *this.
  [[nodiscard]] Wide floor() const { return detail::floor_div(num_, den_); }
  /// Smallest integer >= *this.
  [[nodiscard]] Wide ceil() const { return -detail::floor_div(-num_, den_); }

  [[nodiscard]] long double approx() const {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }

  [[nodiscard]] std::string str() const {
    if (den_ == 1) return detail::wide_to_string(num_);
    return detail::wide_to_string(num_) + "/" + detail::wide_to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return {detail::checked_add(a.num_, b.num_), a.den_};
    Wide g = detail::wide_gcd(a.den_, b.den_);
    Wide da = a.den_ / g;
    Wide db = b.den_ / g;
    return {detail::checked_add(detail::checked_mul(a.num_, db), detail::checked_mul(b.num_, da)),
            detail::checked_mul(a.den_, db)};
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = detail::checked_sub(0, a.num_);
    r.den_ = a.den_;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Wide g1 = detail::wide_gcd(a.num_, b.den_);
    Wide g2 = detail::wide_gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return {detail::checked_mul(a.num_ / g1, b.num_ / g2),
            detail::checked_mul(a.den_ / g2, b.den_ / g1)};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    Rational inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    if (inv.den_ < 0) {
      inv.den_ = -inv.den_;
      inv.num_ = -inv.num_;
    }
    return a * inv;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = detail::checked_mul(a.num_, b.den_);
    Wide rhs = detail::checked_mul(b.num_, a.den_);
    return lhs <=> rhs;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = detail::checked_sub(0, num_);
      den_ = detail::checked_sub(0, den_);
    }
    Wide g = detail::wide_gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Wide num_ = 0;
  Wide den_ = 1;
};

}  // namespace escalator

#endif  // ESCALATOR_ARITH_HPP
