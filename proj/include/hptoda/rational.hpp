#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hptoda {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts an optional sign, decimal digits, and an optional "/digits"
  /// part. Also accepts "<int>e<exp>" with a non-negative exponent.
  static Rat parse(std::string_view text);

  /// Canonical text form: "p" for integers, "p/q" otherwise.
  std::string str() const;
  double to_double() const { return v_.get_d(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  /// Throws std::domain_error on division by zero.
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat pow(unsigned e) const;

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace hptoda
