#include "hptoda/laurent_matrix.hpp"

#include "hptoda/error.hpp"

namespace hptoda {

namespace {

void check_dim(std::size_t n) {
  if (n > kMaxCofactorDim)
    throw Error(ErrorKind::DimensionTooLarge,
                "cofactor determinant limited to n <= 8, got n = " + std::to_string(n));
}

LaurentMatrix minor_without(const LaurentMatrix& m, std::size_t row, std::size_t col) {
  const std::size_t n = m.size();
  LaurentMatrix r(n - 1);
  for (std::size_t i = 0, ri = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, rj = 0; j < n; ++j) {
      if (j == col) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

}  // namespace

LaurentMatrix LaurentMatrix::identity(std::size_t n) {
  LaurentMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly(1);
  return m;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  const std::size_t n = a.size();
  LaurentMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const LaurentPoly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
    }
  return r;
}

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  LaurentMatrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r(i, j) += b(i, j);
  return r;
}

LaurentMatrix LaurentMatrix::scaled(const LaurentPoly& s) const {
  LaurentMatrix r = *this;
  for (auto& e : r.entries_) e = e * s;
  return r;
}

LaurentPoly laurent_det(const LaurentMatrix& m) {
  check_dim(m.size());
  return cofactor_det(m.entries(), m.size());
}

LaurentMatrix adjugate(const LaurentMatrix& m) {
  const std::size_t n = m.size();
  check_dim(n);
  LaurentMatrix adj(n);
  if (n == 1) {
    adj(0, 0) = LaurentPoly(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentPoly c = laurent_det(minor_without(m, i, j));
      adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

BivarLaurent charpoly(const LaurentMatrix& x_matrix) {
  const std::size_t n = x_matrix.size();
  check_dim(n);
  std::vector<BivarLaurent> entries(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      entries[i * n + j] = BivarLaurent(x_matrix(i, j));
      if (i == j) entries[i * n + j] -= BivarLaurent::x();
    }
  return cofactor_det(entries, n);
}

LaurentMatrix conjugate_by_inverse(const LaurentMatrix& m, const LaurentMatrix& a) {
  const LaurentPoly det = laurent_det(m);
  if (det.is_zero())
    throw Error(ErrorKind::NonInvertibleFactor, "conjugating factor has zero determinant");
  LaurentMatrix num = adjugate(m) * a * m;
  LaurentMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      auto q = divide_exact(num(i, j), det);
      if (!q)
        throw Error(ErrorKind::NonInvertibleFactor,
                    "conjugate is not a Laurent matrix (det = " + det.str() + ")");
      r(i, j) = std::move(*q);
    }
  return r;
}

}  // namespace hptoda
