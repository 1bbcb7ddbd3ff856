#include "hptoda/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hptoda/error.hpp"
#include "hptoda/laurent_matrix.hpp"
#include "hptoda/spectral.hpp"

namespace hptoda {

TodaState lift_with_zeta(const TodaState& base, const Rat& zeta) {
  if (auto v = validate(base)) throw Error(ErrorKind::ValidationError, "base state: " + v->reason);
  if (zeta.is_zero()) throw Error(ErrorKind::ConstraintViolated, "zeta must be nonzero");
  std::vector<std::vector<Rat>> layers;
  layers.emplace_back(base.sites, zeta);
  for (const auto& l : base.i_layers) layers.push_back(l);
  TodaState lifted = make_state(std::move(layers), base.v, base.time);
  if (auto v = validate(lifted))
    throw Error(ErrorKind::ConstraintViolated, "zeta = " + zeta.str() + ": " + v->reason);
  return lifted;
}

ResidualTable lift_residuals(const std::vector<TodaState>& traj, int blocks, const Rat& zeta) {
  if (traj.empty()) throw Error(ErrorKind::PreconditionFailed, "empty trajectory");
  const int N = traj[0].sites, M = traj[0].depth;
  if (static_cast<int>(traj.size()) <= blocks * M + M)
    throw Error(ErrorKind::PreconditionFailed, "trajectory too short for the requested blocks");
  auto I = [&](int t, int n) -> const Rat& { return traj[t].I(0, traj[t].wrap(n - 1)); };
  auto V = [&](int t, int n) -> const Rat& { return traj[t].V(traj[t].wrap(n - 1)); };
  ResidualTable out;
  for (int k = 1; k <= blocks; ++k)
    for (int n = 1; n <= N; ++n) {
      const int a = k * M - 1, b = k * M + 1, c = k * M + M - 1;
      ResidualRow row{k, n, {}};
      row.r[0] = I(c, n) - I(a, n) - V(a, n) + V(b, n - 1);
      row.r[1] = V(b, n) * I(c, n) - I(a, n + 1) * V(a, n);
      row.r[2] = V(b, n) - V(k * M, n);
      row.r[3] = I(k * M + M, n) / zeta - Rat(1);
      for (int i = 0; i < 4; ++i)
        out.max_abs[i] = std::max(out.max_abs[i], std::abs(row.r[i].to_double()));
      out.rows.push_back(std::move(row));
    }
  return out;
}

namespace {

// Direct Toda(N, M - 1) run started from I^1 .. I^{M-1} and V^1 of the lifted
// trajectory; its time s corresponds to kM + j with k = s / (M - 1),
// j = s % (M - 1) + 1.
double subsequence_deviation(const std::vector<TodaState>& traj, int blocks) {
  const int N = traj[0].sites, M = traj[0].depth;
  const TodaState& one = traj[1];
  std::vector<std::vector<Rat>> layers(one.i_layers.begin(), one.i_layers.end() - 1);
  const TodaState start = make_state(std::move(layers), one.v);
  const int span = blocks * (M - 1);
  const auto reduced = evolve(start, span);
  double dev = 0;
  for (int s = 0; s <= span; ++s) {
    const int t = (s / (M - 1)) * M + s % (M - 1) + 1;
    if (t >= static_cast<int>(traj.size())) break;
    for (int n = 0; n < N; ++n) {
      dev = std::max(dev, std::abs((reduced[s].I(0, n) - traj[t].I(0, n)).to_double()));
      dev = std::max(dev, std::abs((reduced[s].V(n) - traj[t].V(n)).to_double()));
    }
  }
  return dev;
}

}  // namespace

ZetaReport zeta_sweep(const TodaState& base, const std::vector<Rat>& zetas, int blocks) {
  if (zetas.size() < 3) throw Error(ErrorKind::PreconditionFailed, "need at least three zeta values");
  if (blocks < 1) throw Error(ErrorKind::PreconditionFailed, "need at least one block");
  ZetaReport rep;
  for (const Rat& zeta : zetas) {
    ZetaRow row{zeta, {}, 0, false};
    try {
      const TodaState lifted = lift_with_zeta(base, zeta);
      const int M = lifted.depth;
      const auto traj = evolve(lifted, blocks * M + M);
      const auto table = lift_residuals(traj, blocks, zeta);
      row.max_abs = table.max_abs;
      row.subsequence_deviation = subsequence_deviation(traj, blocks);
      row.spectrum_conserved = invariant_report(traj).exact;
    } catch (const Error& e) {
      throw Error(e.kind(), "zeta = " + zeta.str() + ": " + e.detail());
    }
    rep.rows.push_back(std::move(row));
  }
  auto headline = [](const ZetaRow& r) { return std::max(r.max_abs[0], r.max_abs[1]); };
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(headline(rep.rows[i]) < headline(rep.rows[i - 1]))) rep.monotone = false;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& r : rep.rows) {
    const double h = headline(r);
    if (!(h > 0)) continue;
    const double lx = std::log(std::abs(r.zeta.to_double())), ly = std::log(h);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  const double den = count * sxx - sx * sx;
  rep.slope = (count >= 2 && den != 0) ? (count * sxy - sx * sy) / den : 0.0;
  return rep;
}

std::array<Rat, 6> lifted_u_quantities(const TodaState& s) {
  if (s.sites != 2 || s.depth != 2)
    throw Error(ErrorKind::PreconditionFailed, "U quantities are defined for N = M = 2");
  const Rat &a1 = s.I(0, 0), &a2 = s.I(0, 1), &b1 = s.I(1, 0), &b2 = s.I(1, 1);
  const Rat &v1 = s.V(0), &v2 = s.V(1);
  return {a1 * a2 + b1 * b2 + v1 * v2,
          a1 * b1 + a2 * b2 + a1 * v2 + b1 * v1 + a2 * v1 + b2 * v2,
          a1 * a2 * b1 * b2 + b1 * b2 * v1 * v2 + v1 * v2 * a1 * a2,
          a1 * a2 * b1 * b2 * v1 * v2,
          a1 + a2 + b1 + b2 + v1 + v2,
          a1 * b1 * v1 + a2 * b2 * v2};
}

BivarLaurent lifted_charpoly_display(const TodaState& base, const Rat& zeta) {
  const auto U = lifted_u_quantities(base);
  const Rat z2 = zeta * zeta;
  auto m = [](const Rat& c, int i, int j) { return BivarLaurent::monomial(c, i, j); };
  return m(Rat(-1), 0, 3) + m(z2 + U[0], 0, 2) - m(Rat(2) * zeta + U[4], 1, 1) -
         m(U[0] * z2 + U[2], 0, 1) + m(Rat(1), 2, 0) - m(U[1] * zeta + U[5], 1, 0) +
         m(U[2] * z2 + U[3], 0, 0) - m(U[3] * z2, 0, -1);
}

LiftedCharpolyVerdict lifted_charpoly_identity(const TodaState& base, const std::vector<Rat>& zetas) {
  std::set<Rat> distinct(zetas.begin(), zetas.end());
  if (zetas.size() != 5 || distinct.size() != 5)
    throw Error(ErrorKind::PreconditionFailed, "need five distinct zeta samples");
  LiftedCharpolyVerdict out{zetas, lifted_u_quantities(base), false};
  for (const Rat& zeta : zetas) {
    const BivarLaurent exact = charpoly(lax_matrices(lift_with_zeta(base, zeta)).X);
    const BivarLaurent shown = lifted_charpoly_display(base, zeta);
    if (exact == shown) continue;
    // Report the first coefficient that differs.
    std::set<BivarLaurent::Key> keys;
    for (const auto& [k, c] : exact.terms()) keys.insert(k);
    for (const auto& [k, c] : shown.terms()) keys.insert(k);
    for (const auto& k : keys)
      if (exact.coeff(k.first, k.second) != shown.coeff(k.first, k.second)) {
        std::ostringstream os;
        os << "coefficient of x^" << k.first << " y^" << k.second << " at zeta = " << zeta
           << ": charpoly " << exact.coeff(k.first, k.second) << ", display "
           << shown.coeff(k.first, k.second);
        throw Error(ErrorKind::IdentityMismatch, os.str());
      }
  }
  out.identity = true;
  return out;
}

}  // namespace hptoda
