#include "hptoda/genus1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "hptoda/error.hpp"
#include "hptoda/quadrature.hpp"
#include "hptoda/spectral.hpp"

namespace hptoda {

using std::numbers::pi;

namespace {

const cd kI(0.0, 1.0);

void require_genus_one(const TodaState& s, const char* what) {
  if (s.sites != 2 || s.depth != 1) {
    std::ostringstream os;
    os << what << " needs N = 2, M = 1 (genus one, gcd(N, M) = 1); state has N = " << s.sites
       << ", M = " << s.depth;
    throw Error(ErrorKind::PreconditionFailed, os.str());
  }
}

double segment_distance(cd p, cd a, cd b) {
  const cd d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

std::string fmt(cd z) {
  std::ostringstream os;
  os.precision(17);
  os << z;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Model

cd HyperellipticModel::p(cd x) const {
  return (x + p_coeffs[1].to_double()) * x + p_coeffs[0].to_double();
}

cd HyperellipticModel::q(cd x) const {
  cd r = 1;
  for (cd e : branch_points) r *= x - e;
  return r;
}

double HyperellipticModel::scale() const {
  double s = 0;
  for (cd e : branch_points) s = std::max(s, std::abs(e));
  return 1 + s;
}

HyperellipticModel hyperelliptic_model(const BivarLaurent& F) {
  for (const auto& [key, c] : F.terms()) {
    const auto [i, j] = key;
    const bool allowed = (j == 0 && i >= 0 && i <= 2) || (i == 0 && (j == 1 || j == -1));
    if (!allowed)
      throw Error(ErrorKind::PreconditionFailed,
                  "curve is not of the form p(x) - y - c/y: " + F.str());
  }
  if (F.coeff(2, 0) != Rat(1) || F.coeff(0, 1) != Rat(-1))
    throw Error(ErrorKind::PreconditionFailed, "curve is not of the form p(x) - y - c/y: " + F.str());
  HyperellipticModel m;
  m.p_coeffs = {F.coeff(0, 0), F.coeff(1, 0), Rat(1)};
  m.c = -F.coeff(0, -1);
  const Rat& p0 = m.p_coeffs[0];
  const Rat& p1 = m.p_coeffs[1];
  const Rat q[5] = {p0 * p0 - Rat(4) * m.c, Rat(2) * p1 * p0, p1 * p1 + Rat(2) * p0,
                    Rat(2) * p1, Rat(1)};
  for (int k = 0; k < 5; ++k) m.q_coeffs[k] = q[k].to_double();
  // q = (p - 2 sqrt c)(p + 2 sqrt c); solve both quadratics directly.
  const cd sc = std::sqrt(cd(m.c.to_double()));
  const double b = p1.to_double();
  int k = 0;
  for (double sign : {-1.0, 1.0}) {
    const cd c0 = p0.to_double() + sign * 2.0 * sc;
    const cd disc = std::sqrt(b * b - 4.0 * c0);
    // Stable pair of roots.
    const cd t = -0.5 * (b + (std::real(std::conj(cd(b)) * disc) >= 0 ? disc : -disc));
    const cd r1 = t;
    const cd r2 = std::abs(t) > 0 ? c0 / t : cd(0);
    m.branch_points[k++] = r1;
    m.branch_points[k++] = r2;
  }
  std::sort(m.branch_points.begin(), m.branch_points.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const double s = m.scale();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(m.branch_points[i] - m.branch_points[j]) <= 1e-8 * s)
        throw Error(ErrorKind::CurveSingular, "branch points " + fmt(m.branch_points[i]) + " and " +
                                                  fmt(m.branch_points[j]) + " collide");
  return m;
}

HyperellipticModel hyperelliptic_model(const TodaState& state) {
  require_genus_one(state, "hyperelliptic model");
  return hyperelliptic_model(spectral_data(state).F);
}

// ---------------------------------------------------------------------------
// Periods

namespace {

// Integral of dx/w from ea to eb on one sheet, with x = m - h cos(theta).
cd half_cycle(const std::array<cd, 4>& e, int a, int b, int panels) {
  const cd mid = 0.5 * (e[a] + e[b]);
  const cd h = 0.5 * (e[b] - e[a]);
  std::array<cd, 2> others;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != a && i != b) others[k++] = e[i];
  auto radicand = [&](double s) {
    const cd x = mid - h * std::cos(pi * s);
    return (x - others[0]) * (x - others[1]);
  };
  auto numer = [](double) { return cd(0.0, -pi); };
  const cd r0 = std::sqrt(radicand(0.0));
  return integrate_tracked_composite(radicand, numer, r0, panels).value;
}

std::array<int, 3> choose_cycles(const std::array<cd, 4>& e) {
  std::array<int, 3> best{0, 1, 2};
  double best_clear = -1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        if (i == j || j == k || i == k) continue;
        const int l = 6 - i - j - k;
        const double clear = std::min({segment_distance(e[k], e[i], e[j]),
                                       segment_distance(e[l], e[i], e[j]),
                                       segment_distance(e[i], e[j], e[k]),
                                       segment_distance(e[l], e[j], e[k])});
        if (clear > best_clear * (1 + 1e-12)) {
          best_clear = clear;
          best = {i, j, k};
        }
      }
  return best;
}

}  // namespace

PeriodData periods(const std::array<cd, 4>& e) {
  PeriodData out;
  out.cycle = choose_cycles(e);
  const auto [e0, e1, e2] = out.cycle;
  cd prev_omega = 0;
  double delta = std::numeric_limits<double>::infinity();
  for (int panels = 1; panels <= 2048; panels *= 2) {
    const cd a = 2.0 * half_cycle(e, e0, e1, panels);
    const cd b = 2.0 * half_cycle(e, e1, e2, panels);
    const cd omega = b / a;
    if (panels > 1) delta = std::abs(omega - prev_omega);
    out.a_period = a;
    out.b_period = b;
    out.omega = omega;
    out.panels = panels;
    out.doubling_delta = delta;
    prev_omega = omega;
    if (delta < 1e-12) break;
  }
  if (!(out.doubling_delta <= 1e-9)) {
    std::ostringstream os;
    os << "period ratio still moves by " << out.doubling_delta << " at " << out.panels << " panels";
    throw Error(ErrorKind::QuadratureNoConverge, os.str());
  }
  if (std::abs(out.omega.imag()) <= 1e-12 * std::abs(out.omega))
    throw Error(ErrorKind::CurveSingular, "period ratio is real");
  if (out.omega.imag() < 0) {
    out.b_period = -out.b_period;
    out.omega = -out.omega;
  }
  return out;
}

PeriodData periods(const HyperellipticModel& model) { return periods(model.branch_points); }

// ---------------------------------------------------------------------------
// Abel map

AbelMap::AbelMap(const HyperellipticModel& model, const PeriodData& periods)
    : model_(model), periods_(periods), base_(periods.cycle[0]) {}

cd AbelMap::segment(cd from, cd to, cd& w) const {
  const cd d = to - from;
  const auto res = integrate_tracked([&](double s) { return model_.q(from + s * d); },
                                     [&](double) { return d; }, w);
  w = res.root_end;
  return res.value;
}

cd AbelMap::leave_base(cd to, cd& w) const {
  // x = e + d s^2 removes the square-root singularity at the base point:
  // dx / w = 2 sqrt(d) ds / sqrt(r(x)) with r = q / (x - e).
  const auto& e = model_.branch_points;
  const cd e0 = e[base_];
  const cd d = to - e0;
  auto radicand = [&](double s) {
    const cd x = e0 + d * (s * s);
    cd r = 1;
    for (int k = 0; k < 4; ++k)
      if (k != base_) r *= x - e[k];
    return r;
  };
  const cd sd = std::sqrt(d);
  const auto res = integrate_tracked(radicand, [&](double) { return 2.0 * sd; },
                                     std::sqrt(radicand(0.0)));
  w = sd * res.root_end;
  return res.value;
}

double AbelMap::clearance(cd a, cd b, bool skip_base) const {
  double c = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k)
    if (!(skip_base && k == base_))
      c = std::min(c, segment_distance(model_.branch_points[k], a, b));
  return c;
}

std::pair<cd, cd> AbelMap::from_base(cd x) const {
  const cd e0 = base_point();
  const cd d = x - e0;
  if (std::abs(d) <= 1e-14 * model_.scale()) return {0.0, 0.0};
  // Bend through the vertex that keeps farthest from the other branch points.
  static constexpr double kBends[] = {0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0};
  cd vertex = e0 + 0.5 * d;
  double best = -1;
  for (double h : kBends) {
    const cd v = e0 + d * cd(0.5, h);
    const double clear = std::min(clearance(e0, v, true), clearance(v, x, false));
    if (clear > best * (1 + 1e-12)) {
      best = clear;
      vertex = v;
    }
  }
  cd w = 0;
  cd value = leave_base(vertex, w);
  value += segment(vertex, x, w);
  return {value, w};
}

cd AbelMap::operator()(cd x, cd w) const {
  const auto [value, tracked] = from_base(x);
  const double tol = 1e-6 * (1 + std::abs(w));
  if (std::abs(tracked - w) <= tol) return value / periods_.a_period;
  if (std::abs(tracked + w) <= tol) return -value / periods_.a_period;
  if (std::abs(tracked) == 0 && std::abs(w) <= tol) return 0.0;
  throw Error(ErrorKind::SheetTrackingLost,
              "path to x = " + fmt(x) + " ends at w = " + fmt(tracked) + ", expected +-" + fmt(w));
}

cd AbelMap::to_infinity(InfinitePoint pt) const {
  const auto& e = model_.branch_points;
  const cd e0 = base_point();
  double emax = 0, spread = 0;
  for (cd ek : e) {
    emax = std::max(emax, std::abs(ek));
    spread = std::max(spread, std::abs(ek - e0));
  }
  const double radius = 3 * emax + spread + 1;
  cd far = e0 + radius;
  double best = -1;
  for (int k = 0; k < 8; ++k) {
    const cd cand = e0 + std::polar(radius, 0.1 + k * pi / 4);
    const double clear = clearance(e0, cand, true);
    if (clear > best * (1 + 1e-12)) {
      best = clear;
      far = cand;
    }
  }
  cd w = 0;
  cd value = leave_base(far, w);
  // u = 1/x: dx / w = -du / sqrt(qt(u)) with qt(u) = u^4 q(1/u), regular at 0.
  const cd um = 1.0 / far;
  const auto res = integrate_tracked(
      [&](double s) {
        const cd u = um * (1 - s);
        cd r = 1;
        for (cd ek : e) r *= 1.0 - ek * u;
        return r;
      },
      [&](double) { return um; }, um * um * w);
  value += res.value;
  // sqrt(qt(0)) = lim w / x^2: +1 at P, -1 at Q.
  const double end = res.root_end.real();
  if (std::abs(std::abs(end) - 1) > 1e-6 || std::abs(res.root_end.imag()) > 1e-6)
    throw Error(ErrorKind::SheetTrackingLost, "path to infinity ends at w/x^2 = " + fmt(res.root_end));
  const bool at_p = end > 0;
  return (at_p == (pt == InfinitePoint::P)) ? value : -value;
}

cd AbelMap::operator()(InfinitePoint pt) const { return to_infinity(pt) / periods_.a_period; }

cd AbelMap::path_integral(const std::vector<cd>& vertices, cd w_start) const {
  if (vertices.size() < 2) return 0.0;
  cd w = w_start;
  cd value = 0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) value += segment(vertices[i], vertices[i + 1], w);
  return value / periods_.a_period;
}

// ---------------------------------------------------------------------------
// Special points, principality, tau grid

AbelImages abel_images(const TodaState& state, const AbelMap& abel) {
  require_genus_one(state, "Abel images");
  const SpectralData sd = spectral_data(state);
  const auto& model = abel.model();
  AbelImages im;
  im.base_x = abel.base_point();
  im.u_P = abel(InfinitePoint::P);
  im.u_Q = abel(InfinitePoint::Q);
  const cd ya = sd.a_points_y[0].to_double();
  const cd yb = sd.b_point_y.to_double();
  im.u_A0 = abel(0.0, 2.0 * ya - model.p(0.0));
  im.u_B = abel(0.0, 2.0 * yb - model.p(0.0));
  im.divisor = divisor_points(state).at(0);
  im.u_D0 = abel(im.divisor);
  im.u_delta = 0.5 * (1.0 + abel.period_data().omega);
  return im;
}

Principality principality(const AbelImages& im, cd omega, int sites) {
  return {lattice_decompose(static_cast<double>(sites) * (im.u_P - im.u_Q), omega),
          lattice_decompose(im.u_A0 + im.u_B - im.u_P - im.u_Q, omega)};
}

TauGrid::TauGrid(const AbelImages& images, cd omega, int sites)
    : images_(images),
      omega_(omega),
      sites_(sites),
      shift_(lattice_decompose(static_cast<double>(sites) * (images.u_P - images.u_Q), omega)) {}

cd TauGrid::z(long n, long t) const {
  const auto& im = images_;
  return im.u_D0 + static_cast<double>(n + 1) * (im.u_P - im.u_Q) +
         static_cast<double>(t) * (im.u_P - im.u_A0) - im.u_P - im.u_delta;
}

cd TauGrid::quasi_period_factor(long n, long t) const {
  // z(n + N) = z(n) + a + omega b exactly as representatives up to rounding,
  // so theta picks up exp(-2 pi i b z - pi i b^2 omega).
  const double m = static_cast<double>(shift_.m);
  return std::exp(-2.0 * kI * pi * m * z(n, t) - kI * pi * m * m * omega_);
}

// ---------------------------------------------------------------------------
// Linearization and reconstruction

LinearizationReport linearization_check(const TodaState& state) {
  require_genus_one(state, "linearization check");
  const auto model = hyperelliptic_model(state);
  const auto per = periods(model);
  const AbelMap abel(model, per);
  const AbelImages im = abel_images(state, abel);
  const BivarLaurent F = spectral_data(state).F;
  const LaurentMatrix X = lax_matrices(state).X;

  LinearizationReport r;
  r.d_x0 = im.divisor;
  r.d_sigma = divisor_points(conjugate(X, Conjugation::Sigma, state), F, 1).at(0);
  r.d_x1 = divisor_points(step(state)).at(0);
  r.space_shift = abel(r.d_sigma) - im.u_D0;
  r.time_shift = abel(r.d_x1) - im.u_D0;
  r.space_residual = lattice_distance(r.space_shift - (im.u_P - im.u_Q), per.omega);
  r.time_residual = lattice_distance(r.time_shift - (im.u_P - im.u_A0), per.omega);
  r.time_residual_b = lattice_distance(r.time_shift - (im.u_B - im.u_Q), per.omega);
  return r;
}

ReconstructionReport reconstruct_and_verify(const TodaState& state, int steps) {
  require_genus_one(state, "theta reconstruction");
  if (steps < 0) throw Error(ErrorKind::PreconditionFailed, "steps must be non-negative");
  const auto traj = evolve(state, steps);

  ReconstructionReport rep;
  rep.model = hyperelliptic_model(state);
  rep.periods = periods(rep.model);
  const AbelMap abel(rep.model, rep.periods);
  rep.images = abel_images(state, abel);
  const TauGrid grid(rep.images, rep.periods.omega);
  rep.shift = grid.period_shift();
  const cd omega = rep.periods.omega;
  constexpr int N = 2;

  // tau_n^t for n = -1 .. N + 1, t = 0 .. steps + 1.
  const int nt = steps + 2;
  std::vector<cd> tau_tab(static_cast<std::size_t>((N + 3) * nt));
  auto tau = [&](long n, long t) -> cd& { return tau_tab[(n + 1) * nt + t]; };
  for (long n = -1; n <= N + 1; ++n)
    for (long t = 0; t < nt; ++t) {
      const cd z = grid.z(n, t);
      if (theta_modulus(z, omega) < 1e-12) {
        std::ostringstream os;
        os << "tau vanishes at (n, t) = (" << n << ", " << t << ")";
        throw Error(ErrorKind::ThetaZeroHit, os.str());
      }
      tau(n, t) = riemann_theta(z, omega);
    }
  for (long n = -1; n <= 1; ++n)
    for (long t = 0; t < nt; ++t) {
      const cd predicted = grid.quasi_period_factor(n, t) * tau(n, t);
      rep.max_quasi_period_err = std::max(
          rep.max_quasi_period_err, std::abs(tau(n + N, t) - predicted) / std::abs(tau(n + N, t)));
    }

  auto i_ratio = [&](long n, long t) { return tau(n - 1, t) * tau(n, t + 1) / (tau(n, t) * tau(n - 1, t + 1)); };
  auto v_ratio = [&](long n, long t) { return tau(n + 1, t) * tau(n - 1, t + 1) / (tau(n, t) * tau(n, t + 1)); };
  rep.d = traj[0].I(0, 0).to_double() / i_ratio(1, 0);
  rep.d_prime = traj[0].V(0).to_double() / v_ratio(1, 0);

  for (int t = 0; t <= steps; ++t) {
    const TodaState& s = traj[t];
    cd prod_i = 1, prod_v = 1;
    for (int n = 1; n <= N; ++n) {
      const Rat& ie = s.I(0, n - 1);
      const Rat& ve = s.V(n - 1);
      rep.d_spread = std::max(rep.d_spread, std::abs(ie.to_double() / i_ratio(n, t) - rep.d) / std::abs(rep.d));
      rep.d_prime_spread = std::max(
          rep.d_prime_spread, std::abs(ve.to_double() / v_ratio(n, t) - rep.d_prime) / std::abs(rep.d_prime));
      const cd ir = rep.d * i_ratio(n, t);
      const cd vr = rep.d_prime * v_ratio(n, t);
      prod_i *= ir;
      prod_v *= vr;
      for (auto [var, exact, rec] : {std::tuple{'I', ie, ir}, std::tuple{'V', ve, vr}}) {
        const double err = std::abs(rec - exact.to_double()) / std::abs(exact.to_double());
        rep.max_rel_err = std::max(rep.max_rel_err, err);
        rep.rows.push_back({n, t, var, exact, rec, err});
      }
    }
    // Product identities: prod I = d^N exp(-2 pi i m (u_P - u_A0)) and
    // prod V = d'^N exp(-2 pi i m (u_A0 - u_Q)).
    const double m = static_cast<double>(rep.shift.m);
    const auto& im = rep.images;
    const cd rhs_i = std::pow(rep.d, N) * std::exp(-2.0 * kI * pi * m * (im.u_P - im.u_A0));
    const cd rhs_v = std::pow(rep.d_prime, N) * std::exp(-2.0 * kI * pi * m * (im.u_A0 - im.u_Q));
    const double lhs_i = s.layer_product(0).to_double();
    const double lhs_v = s.v_product().to_double();
    rep.max_prod_i_err = std::max(rep.max_prod_i_err, std::abs(rhs_i - lhs_i) / std::abs(lhs_i));
    rep.max_prod_v_err = std::max(rep.max_prod_v_err, std::abs(rhs_v - lhs_v) / std::abs(lhs_v));
    (void)prod_i;
    (void)prod_v;
  }
  if (rep.d_spread > 1e-8 || rep.d_prime_spread > 1e-8) {
    std::ostringstream os;
    os << "d varies by " << rep.d_spread << ", d' by " << rep.d_prime_spread << " (relative)";
    throw Error(ErrorKind::CalibrationDrift, os.str());
  }
  return rep;
}

std::string periods_json(const HyperellipticModel& model, const PeriodData& per, const AbelImages& im) {
  using nlohmann::json;
  auto c = [](cd z) { return json::array({z.real(), z.imag()}); };
  json j;
  j["p"] = {model.p_coeffs[0].str(), model.p_coeffs[1].str(), model.p_coeffs[2].str()};
  j["c"] = model.c.str();
  json bp = json::array();
  for (cd e : model.branch_points) bp.push_back(c(e));
  j["branch_points"] = bp;
  j["periods"] = {{"A", c(per.a_period)},
                  {"B", c(per.b_period)},
                  {"omega", c(per.omega)},
                  {"cycle", per.cycle},
                  {"panels", per.panels},
                  {"doubling_delta", per.doubling_delta}};
  j["abel"] = {{"base_x", c(im.base_x)}, {"P", c(im.u_P)},    {"Q", c(im.u_Q)},
               {"A0", c(im.u_A0)},       {"B", c(im.u_B)},    {"D0", c(im.u_D0)},
               {"delta", c(im.u_delta)}, {"divisor_x", c(im.divisor.x)},
               {"divisor_y", c(im.divisor.y)}};
  return j.dump(2);
}

}  // namespace hptoda
