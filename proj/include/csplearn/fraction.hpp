#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "csplearn/error.hpp"

namespace csplearn {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational. Always normalized: den > 0, gcd(|num|, den) == 1.
// Arbitrary-precision on purpose: satisfying fractions like (1-2^-K)^M are
// compared exactly at M in the hundreds.
class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}
  Fraction(long long value) : num_(value), den_(1) {}  // NOLINT(runtime/explicit)
  Fraction(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static Fraction ratio(long long num, long long den) {
    return Fraction(BigInt(num), BigInt(den));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  Fraction operator+(const Fraction& o) const {
    return Fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Fraction operator-(const Fraction& o) const {
    return Fraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Fraction operator*(const Fraction& o) const {
    return Fraction(num_ * o.num_, den_ * o.den_);
  }
  Fraction operator/(const Fraction& o) const {
    if (o.num_ == 0) throw DomainError("division by zero fraction");
    return Fraction(num_ * o.den_, den_ * o.num_);
  }

  Fraction pow(unsigned e) const {
    Fraction r(1);
    Fraction b = *this;
    while (e != 0) {
      if (e & 1u) r = r * b;
      b = b * b;
      e >>= 1u;
    }
    return r;
  }

  bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }
  bool operator<(const Fraction& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const Fraction& o) const { return num_ * o.den_ <= o.num_ * den_; }
  bool operator>(const Fraction& o) const { return o < *this; }
  bool operator>=(const Fraction& o) const { return o <= *this; }

  double to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
  }

  std::string str() const { return num_.str() + "/" + den_.str(); }

 private:
  void normalize() {
    if (den_ == 0) throw DomainError("fraction with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_;
  BigInt den_;
};

inline BigInt bigint_pow(BigInt base, unsigned e) {
  BigInt r(1);
  while (e != 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

}  // namespace csplearn
