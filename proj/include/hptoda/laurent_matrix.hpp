#pragma once

#include <cstddef>
#include <vector>

#include "hptoda/laurent.hpp"

namespace hptoda {

/// Largest dimension accepted by the cofactor-based determinant routines.
inline constexpr std::size_t kMaxCofactorDim = 8;

/// Square matrix with LaurentPoly entries, stored row-major.
class LaurentMatrix {
 public:
  explicit LaurentMatrix(std::size_t n = 0) : n_(n), entries_(n * n) {}

  static LaurentMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  LaurentPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<LaurentPoly>& entries() const { return entries_; }

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) = default;

  /// Entrywise scalar multiple.
  LaurentMatrix scaled(const LaurentPoly& s) const;

 private:
  std::size_t n_;
  std::vector<LaurentPoly> entries_;
};

/// Exact determinant. Throws DimensionTooLarge for n > 8.
LaurentPoly laurent_det(const LaurentMatrix& m);

/// Classical adjugate: adj(m) * m = det(m) * E.
LaurentMatrix adjugate(const LaurentMatrix& m);

/// det(X - xE) as a polynomial in x with Laurent coefficients in y.
BivarLaurent charpoly(const LaurentMatrix& x_matrix);

/// m^{-1} a m, computed as adj(m) a m / det(m). Throws NonInvertibleFactor if
/// det(m) is zero or does not divide every entry of the product.
LaurentMatrix conjugate_by_inverse(const LaurentMatrix& m, const LaurentMatrix& a);

}  // namespace hptoda
