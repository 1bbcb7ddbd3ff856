#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hptoda/rational.hpp"

namespace hptoda {

/// Laurent polynomial in y with exact rational coefficients. Zero
/// coefficients are never stored, so structural equality is ring equality.
class LaurentPoly {
 public:
  using Terms = std::map<int, Rat>;

  LaurentPoly() = default;
  LaurentPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(long c) : LaurentPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const Rat& coeff, int degree);
  static LaurentPoly y() { return monomial(Rat(1), 1); }
  static LaurentPoly y_inv() { return monomial(Rat(1), -1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Lowest / highest stored degree. Undefined for the zero polynomial.
  int min_degree() const { return terms_.begin()->first; }
  int max_degree() const { return terms_.rbegin()->first; }
  Rat coeff(int degree) const;

  std::complex<double> eval(std::complex<double> y) const;
  Rat eval(const Rat& y) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

  /// Multiply by y^k.
  LaurentPoly shifted(int k) const;

  std::string str() const;

 private:
  void add_term(int degree, const Rat& c);
  Terms terms_;
};

/// Exact quotient a / b in the Laurent ring, or nullopt if b does not divide a.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

/// Polynomial in x (non-negative degrees) whose coefficients are Laurent in y.
class BivarLaurent {
 public:
  using Key = std::pair<int, int>;  // (x degree, y degree)
  using Terms = std::map<Key, Rat>;

  BivarLaurent() = default;
  BivarLaurent(const LaurentPoly& p);  // NOLINT(google-explicit-constructor)
  BivarLaurent(long c) : BivarLaurent(LaurentPoly(c)) {}  // NOLINT(google-explicit-constructor)

  static BivarLaurent x() { return monomial(Rat(1), 1, 0); }
  static BivarLaurent monomial(const Rat& coeff, int x_degree, int y_degree);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat coeff(int x_degree, int y_degree) const;
  /// Highest power of x present; -1 for the zero polynomial.
  int x_degree() const;
  /// Coefficient of x^k as a Laurent polynomial in y.
  LaurentPoly x_coefficient(int k) const;

  std::complex<double> eval(std::complex<double> x, std::complex<double> y) const;

  BivarLaurent operator-() const;
  BivarLaurent& operator+=(const BivarLaurent& o);
  BivarLaurent& operator-=(const BivarLaurent& o);
  BivarLaurent& operator*=(const BivarLaurent& o);
  friend BivarLaurent operator+(BivarLaurent a, const BivarLaurent& b) { return a += b; }
  friend BivarLaurent operator-(BivarLaurent a, const BivarLaurent& b) { return a -= b; }
  friend BivarLaurent operator*(const BivarLaurent& a, const BivarLaurent& b);
  friend bool operator==(const BivarLaurent& a, const BivarLaurent& b) = default;

  std::string str() const;

 private:
  void add_term(Key k, const Rat& c);
  Terms terms_;
};

/// Determinant of a dense n x n matrix (row-major) over a commutative ring by
/// Laplace expansion along rows, memoising each minor by its column set.
/// Costs O(2^n n) ring multiplications; used for n <= 8.
template <class Ring>
Ring cofactor_det(const std::vector<Ring>& entries, std::size_t n) {
  if (n == 0) return Ring(1);
  // minors[mask]: det of rows [n - popcount(mask), n) restricted to columns in mask.
  std::vector<Ring> minors(std::size_t{1} << n);
  minors[0] = Ring(1);
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const std::size_t k = static_cast<std::size_t>(__builtin_popcountll(mask));
    const std::size_t row = n - k;
    Ring acc;
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      const Ring& a = entries[row * n + col];
      if (!a.is_zero()) {
        const Ring& sub = minors[mask & ~(std::size_t{1} << col)];
        if (!sub.is_zero()) {
          if (sign > 0) acc += a * sub;
          else acc -= a * sub;
        }
      }
      sign = -sign;
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

}  // namespace hptoda
