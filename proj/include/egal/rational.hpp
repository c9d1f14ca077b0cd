#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "egal/errors.hpp"

namespace egal {

// Exact rational number over checked 64-bit integers.
//
// Always stored in lowest terms with a positive denominator. Arithmetic is
// exact; any intermediate that would leave the 64-bit range throws
// OverflowError instead of rounding or wrapping. The quantities handled by
// this library (peaks, bounds, water levels, flows) stay tiny, so the checks
// are cheap insurance rather than a practical limit.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  // Parses "p", "-p" or "p/q" with q > 0. No floating point accepted.
  static Rational parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_int_sum(a.num_, b.num_);
    Wide num = Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_;
    Wide den = Wide(a.den_) * b.den_;
    return make(num, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_int_sum(a.num_, -b.num_);
    Wide num = Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_;
    Wide den = Wide(a.den_) * b.den_;
    return make(num, den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ContractViolation("rational division by zero");
    return make(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = Wide(a.num_) * b.den_;
    Wide rhs = Wide(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  using Wide = __int128;

  static Rational from_int_sum(std::int64_t a, std::int64_t b) {
    Wide s = Wide(a) + Wide(b);
    Rational r;
    r.num_ = narrow(s);
    r.den_ = 1;
    return r;
  }

  static unsigned __int128 gcd_wide(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static std::int64_t narrow(Wide v) {
    if (v > Wide(INT64_MAX) || v < -Wide(INT64_MAX)) {
      throw OverflowError("rational value exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
  }

  static Rational make(Wide num, Wide den) {
    if (den == 0) throw ContractViolation("rational with zero denominator");
    if (den < 0) {
      den = -den;
      num = -num;
    }
    if (num == 0) return Rational();
    unsigned __int128 a = num < 0 ? static_cast<unsigned __int128>(-num)
                                  : static_cast<unsigned __int128>(num);
    unsigned __int128 g = gcd_wide(a, static_cast<unsigned __int128>(den));
    Rational r;
    r.num_ = narrow(num / Wide(g));
    r.den_ = narrow(den / Wide(g));
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) {
    *this = make(Wide(num), Wide(den));
  }

  std::int64_t num_;
  std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// median(a, m, b) for a <= b: the capacity schedules m_i of the water-filling
// algorithm are all of this shape.
inline Rational median(const Rational& lo, const Rational& mid, const Rational& hi) {
  return max(lo, min(mid, hi));
}

// A non-negative arc capacity that may be structurally unbounded. Unbounded
// is a distinct kind, never a sentinel value, so cut capacities cannot be
// corrupted by fake large numbers.
class Capacity {
 public:
  Capacity() : finite_(true), value_() {}
  Capacity(Rational value) : finite_(true), value_(value) {}  // NOLINT: implicit by design
  static Capacity unbounded() {
    Capacity c;
    c.finite_ = false;
    return c;
  }

  bool is_unbounded() const { return !finite_; }
  bool is_finite() const { return finite_; }
  const Rational& value() const {
    if (!finite_) throw ContractViolation("unbounded capacity has no finite value");
    return value_;
  }

  friend bool operator==(const Capacity& a, const Capacity& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

 private:
  bool finite_;
  Rational value_;
};

}  // namespace egal
