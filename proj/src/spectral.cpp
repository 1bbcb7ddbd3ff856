#include "hptoda/spectral.hpp"

#include <numeric>

#include "hptoda/error.hpp"

namespace hptoda {

LaurentMatrix lax_L(const TodaState& s) {
  const auto n = static_cast<std::size_t>(s.sites);
  LaurentMatrix L = LaurentMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) L(i + 1, i) = LaurentPoly(s.v[i]);
  L(0, n - 1) += LaurentPoly::monomial(s.v[n - 1], -1);
  return L;
}

LaurentMatrix lax_R(const TodaState& s, int layer) {
  const auto n = static_cast<std::size_t>(s.sites);
  LaurentMatrix R(n);
  for (std::size_t i = 0; i < n; ++i) R(i, i) = LaurentPoly(s.i_layers[layer][i]);
  for (std::size_t i = 0; i + 1 < n; ++i) R(i, i + 1) += LaurentPoly(1);
  R(n - 1, 0) += LaurentPoly::y();
  return R;
}

LaxMatrices lax_matrices(const TodaState& s) {
  LaxMatrices out;
  out.L = lax_L(s);
  out.X = out.L;
  out.R.reserve(s.depth);
  for (int j = 0; j < s.depth; ++j) out.R.push_back(lax_R(s, j));
  for (int j = s.depth - 1; j >= 0; --j) out.X = out.X * out.R[j];
  return out;
}

LaurentMatrix shift_matrix(std::size_t n) {
  LaurentMatrix S(n);
  for (std::size_t i = 0; i + 1 < n; ++i) S(i, i + 1) = LaurentPoly(1);
  S(n - 1, 0) += LaurentPoly::y();
  return S;
}

LaurentMatrix shift_matrix_inverse(std::size_t n) {
  LaurentMatrix S(n);
  for (std::size_t i = 0; i + 1 < n; ++i) S(i + 1, i) = LaurentPoly(1);
  S(0, n - 1) += LaurentPoly::y_inv();
  return S;
}

LaurentMatrix conjugate(const LaurentMatrix& x, Conjugation kind, const TodaState& s) {
  switch (kind) {
    case Conjugation::Sigma:
      return shift_matrix(x.size()) * x * shift_matrix_inverse(x.size());
    case Conjugation::Mu: {
      // R X R^{-1} = (R^{-1})^{-1} X R^{-1}; use adj(R) as the right factor.
      const LaurentMatrix R = lax_R(s, 0);
      const LaurentPoly det = laurent_det(R);
      if (det.is_zero()) throw Error(ErrorKind::NonInvertibleFactor, "det R_t is zero");
      const LaurentMatrix num = R * x * adjugate(R);
      LaurentMatrix out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
          auto q = divide_exact(num(i, j), det);
          if (!q)
            throw Error(ErrorKind::NonInvertibleFactor, "R_t X R_t^{-1} is not a Laurent matrix");
          out(i, j) = std::move(*q);
        }
      return out;
    }
    case Conjugation::Nu:
      return conjugate_by_inverse(lax_L(s), x);
  }
  return x;
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

int spectral_genus(int sites, int depth) {
  const int m = gcd_int(sites, depth);
  return ((sites - 1) * (depth + 1) - m + 1) / 2;
}

SpectralData spectral_data(const TodaState& s) {
  if (auto bad = validate(s)) throw Error(ErrorKind::ValidationError, bad->reason);
  SpectralData d;
  d.F = charpoly(lax_matrices(s).X);
  d.gcd_m = gcd_int(s.sites, s.depth);
  d.genus = spectral_genus(s.sites, s.depth);
  const Rat sign = (s.sites % 2 == 0) ? Rat(1) : Rat(-1);
  Rat all_i(1);
  for (int j = 0; j < s.depth; ++j) {
    const Rat p = s.layer_product(j);
    all_i *= p;
    d.a_points_y.push_back(sign * p);
  }
  d.b_point_y = sign * s.v_product();
  d.q_constant = all_i * s.v_product();

  // y F(0, y) must equal lead * prod (y - y_k) over the special points.
  const LaurentPoly poly = d.F.x_coefficient(0).shifted(1);
  if (poly.is_zero() || poly.min_degree() < 0)
    throw Error(ErrorKind::SpecialPointMismatch, "y F(0, y) is not a polynomial");
  LaurentPoly expected = LaurentPoly(poly.terms().rbegin()->second);
  for (const Rat& r : d.a_points_y) expected *= LaurentPoly::y() - LaurentPoly(r);
  expected *= LaurentPoly::y() - LaurentPoly(d.b_point_y);
  if (!(expected == poly))
    throw Error(ErrorKind::SpecialPointMismatch,
                "y F(0,y) = " + poly.str() + " but special points give " + expected.str());
  return d;
}

InvariantReport invariant_report(const std::vector<TodaState>& trajectory) {
  InvariantReport rep;
  rep.per_step.reserve(trajectory.size());
  for (const auto& s : trajectory) {
    rep.per_step.push_back(charpoly(lax_matrices(s).X));
    if (!(rep.per_step.back() == rep.per_step.front())) rep.exact = false;
  }
  return rep;
}

std::array<Rat, 5> gcd2_quantities(const TodaState& s) {
  if (s.sites != 2 || s.depth != 2)
    throw Error(ErrorKind::PreconditionFailed, "gcd2 diagnostics need N = M = 2");
  const Rat &a1 = s.I(0, 0), &a2 = s.I(0, 1), &b1 = s.I(1, 0), &b2 = s.I(1, 1);
  const Rat &v1 = s.V(0), &v2 = s.V(1);
  return {
      a1 * a2 + b1 * b2 + v1 * v2,
      a1 * b1 + a2 * b2 + a1 * v2 + b1 * v1 + a2 * v1 + b2 * v2,
      a1 * a2 * b1 * b2 + b1 * b2 * v1 * v2 + v1 * v2 * a1 * a2,
      a1 * a2 * b1 * b2 * v1 * v2,
      a1 + a2 + b1 + b2 + v1 + v2,
  };
}

Gcd2Diagnostics gcd2_diagnostics(const TodaState& state, int steps) {
  Gcd2Diagnostics out;
  out.U = gcd2_quantities(state);
  const auto& U = out.U;

  // y^2 - y(2x + U1) + x^2 - U2 x + U3 - U4 / y
  BivarLaurent shape = BivarLaurent::monomial(1, 0, 2) - BivarLaurent::monomial(2, 1, 1) -
                       BivarLaurent::monomial(U[0], 0, 1) + BivarLaurent::monomial(1, 2, 0) -
                       BivarLaurent::monomial(U[1], 1, 0) + BivarLaurent::monomial(U[2], 0, 0) -
                       BivarLaurent::monomial(U[3], 0, -1);
  out.matches_charpoly = charpoly(lax_matrices(state).X) == shape;

  out.conserved.fill(true);
  for (const auto& s : evolve(state, steps)) {
    const auto u = gcd2_quantities(s);
    for (std::size_t i = 0; i < 5; ++i)
      if (u[i] != U[i]) out.conserved[i] = false;
  }
  return out;
}

}  // namespace hptoda
