#include "hptoda/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hptoda/error.hpp"
#include "hptoda/polyroots.hpp"
#include "hptoda/spectral.hpp"

namespace hptoda {

namespace {

constexpr double kResidualTol = 1e-8;

int max_abs_y_degree(const BivarLaurent& F) {
  int d = 0;
  for (const auto& [k, c] : F.terms()) d = std::max(d, std::abs(k.second));
  return d;
}

}  // namespace

Eigen::MatrixXcd evaluate(const LaurentMatrix& m, cd y) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(i, j).eval(y);
  return out;
}

double residual_scale(const BivarLaurent& F, cd x, cd y) {
  return 1.0 + std::pow(std::abs(x), F.x_degree()) + std::pow(std::abs(y), max_abs_y_degree(F));
}

CurvePoint make_curve_point(const BivarLaurent& F, cd x, cd y) {
  return {x, y, std::abs(F.eval(x, y))};
}

std::vector<CurvePoint> x_fiber(const BivarLaurent& F, cd y) {
  if (y == cd(0)) throw Error(ErrorKind::PreconditionFailed, "x_fiber needs y != 0");
  const int N = F.x_degree();
  std::vector<cd> coeffs(N + 1);
  for (int k = 0; k <= N; ++k) coeffs[k] = F.x_coefficient(k).eval(y);
  std::vector<CurvePoint> out;
  for (cd x : polynomial_roots(coeffs)) {
    CurvePoint p = make_curve_point(F, x, y);
    if (!(p.residual <= kResidualTol * residual_scale(F, x, y))) {
      std::ostringstream os;
      os << "root x = " << x << " over y = " << y << " has residual " << p.residual;
      throw Error(ErrorKind::IllConditionedFiber, os.str());
    }
    out.push_back(p);
  }
  return out;
}

EigenChain eigen_chain(const TodaState& s, const CurvePoint& p) {
  const LaxMatrices lax = lax_matrices(s);
  const Eigen::MatrixXcd X = evaluate(lax.X, p.y);
  const auto n = X.rows();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(X, false);
  const auto& ev = eig.eigenvalues();
  double scale = 0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(ev(i)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(ev(i) - ev(j)) < 1e-10 * scale)
        throw Error(ErrorKind::RepeatedEigenvalue, "X_t(y) has a repeated eigenvalue");

  const Eigen::MatrixXcd shifted = X - p.x * Eigen::MatrixXcd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
  EigenChain chain;
  chain.g_t = svd.matrixV().col(n - 1);
  if ((shifted * chain.g_t).norm() > 1e-8 * X.norm() * chain.g_t.norm())
    throw Error(ErrorKind::IllConditionedFiber, "x is not an eigenvalue of X_t(y)");
  chain.g_t1 = evaluate(lax.R[0], p.y) * chain.g_t;
  chain.g_tM = evaluate(lax.L, p.y).partialPivLu().solve(chain.g_t);
  return chain;
}

cd psi_ratio_function(const EigenChain& c) {
  const auto N = c.g_t.size();
  return c.g_t(0) * c.g_t1(N - 1) / (c.g_t(N - 1) * c.g_t1(0));
}

cd phi_ratio_function(const EigenChain& c, cd y) {
  const auto N = c.g_t.size();
  return c.g_t(N - 1) * c.g_tM(N - 1) / (c.g_t(0) * c.g_tM(N - 2) * y);
}

std::vector<double> RadiusSchedule::radii() const {
  if (count < 2 || !(start > 0) || !(stop > start))
    throw Error(ErrorKind::PreconditionFailed, "radius schedule needs 0 < start < stop, count >= 2");
  std::vector<double> r(count);
  const double ls = std::log(start), le = std::log(stop);
  for (int i = 0; i < count; ++i) r[i] = std::exp(ls + (le - ls) * i / (count - 1));
  r.back() = stop;
  return r;
}

RadiusSchedule RadiusSchedule::parse(const std::string& text) {
  RadiusSchedule s;
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos)
    throw Error(ErrorKind::ParseError, "radius schedule must be start:stop:count, got " + text);
  try {
    s.start = std::stod(text.substr(0, a));
    s.stop = std::stod(text.substr(a + 1, b - a - 1));
    s.count = std::stoi(text.substr(b + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad radius schedule " + text);
  }
  (void)s.radii();
  return s;
}

cd extrapolate_to_zero(const std::vector<double>& h, const std::vector<cd>& f) {
  std::vector<cd> p = f;
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
  return p[0];
}

namespace {

// Neville order 5 over the last six samples; fewer when the schedule is short.
constexpr std::size_t kMaxWindow = 6;

BoundarySide approach(const TodaState& s, const BivarLaurent& F, const std::vector<double>& radii,
                      bool toward_P, double direction, double tol) {
  const int N = s.sites;
  BoundarySide side;
  cd previous_x;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    const cd y = std::polar(toward_P ? r : 1.0 / r, direction);
    auto fiber = x_fiber(F, y);
    // Every branch over y -> 0 or infinity tends to Q or P; follow one of
    // them continuously (largest |x| first, then nearest in phase).
    auto pick = fiber.begin();
    if (k == 0) {
      pick = std::max_element(fiber.begin(), fiber.end(),
                              [](const auto& a, const auto& b) { return std::abs(a.x) < std::abs(b.x); });
    } else {
      pick = std::min_element(fiber.begin(), fiber.end(), [&](const auto& a, const auto& b) {
        return std::abs(std::arg(a.x / previous_x)) < std::abs(std::arg(b.x / previous_x));
      });
    }
    previous_x = pick->x;
    const EigenChain chain = eigen_chain(s, *pick);
    BoundarySample sample{r, y, pick->x, psi_ratio_function(chain), phi_ratio_function(chain, y), {}};
    for (int i = 0; i + 1 < N; ++i)
      sample.abs_ratio.push_back(std::abs(chain.g_t(i) / chain.g_t(N - 1)));
    side.samples.push_back(std::move(sample));
  }

  const std::size_t n = side.samples.size();
  if (n < 5) throw Error(ErrorKind::PreconditionFailed, "boundary limits need at least 5 radii");
  const std::size_t width = std::min(kMaxWindow, n - 1);

  auto window = [&](std::size_t end, auto member) {
    std::vector<double> h;
    std::vector<cd> f;
    for (std::size_t i = end - width; i < end; ++i) {
      h.push_back(std::pow(side.samples[i].radius, -1.0 / N));
      f.push_back(side.samples[i].*member);
    }
    return extrapolate_to_zero(h, f);
  };
  side.psi_limit = window(n, &BoundarySample::psi);
  side.phi_limit = window(n, &BoundarySample::phi);
  const cd psi_prev = window(n - 1, &BoundarySample::psi);
  const cd phi_prev = window(n - 1, &BoundarySample::phi);
  auto check = [&](cd now, cd before, const char* what) {
    if (std::abs(now - before) > tol * (1.0 + std::abs(now))) {
      std::ostringstream os;
      os << what << " limit at " << (toward_P ? "P" : "Q") << " not converged: " << before << " vs "
         << now;
      throw Error(ErrorKind::NoConvergence, os.str());
    }
  };
  check(side.psi_limit, psi_prev, "psi");
  check(side.phi_limit, phi_prev, "phi");

  const auto& a = side.samples[n - 2];
  const auto& b = side.samples[n - 1];
  const double dlogk = (-1.0 / N) * (std::log(b.radius) - std::log(a.radius));
  for (int i = 0; i + 1 < N; ++i)
    side.slopes.push_back((std::log(b.abs_ratio[i]) - std::log(a.abs_ratio[i])) / dlogk);
  return side;
}

}  // namespace

BoundaryLimits boundary_limits(const TodaState& s, const RadiusSchedule& schedule,
                               double direction, double tol) {
  if (auto bad = validate(s)) throw Error(ErrorKind::ValidationError, bad->reason);
  if (gcd_int(s.sites, s.depth) != 1)
    throw Error(ErrorKind::PreconditionFailed,
                "boundary limits need gcd(N, M) = 1; P and Q are not single points otherwise");
  const BivarLaurent F = charpoly(lax_matrices(s).X);
  const auto radii = schedule.radii();
  BoundaryLimits out;
  out.at_P = approach(s, F, radii, true, direction, tol);
  out.at_Q = approach(s, F, radii, false, direction, tol);
  out.psi_ratio = out.at_Q.psi_limit / out.at_P.psi_limit;
  out.phi_ratio = out.at_Q.phi_limit / out.at_P.phi_limit;
  return out;
}

std::vector<CurvePoint> divisor_points(const LaurentMatrix& X, const BivarLaurent& F, int genus) {
  if (X.size() != 2) throw Error(ErrorKind::PreconditionFailed, "divisor extraction needs N = 2");
  const LaurentPoly& x21 = X(1, 0);
  if (x21.is_zero()) throw Error(ErrorKind::DegenerateDivisor, "X_21 vanishes identically");
  const LaurentPoly num = x21.shifted(-x21.min_degree());
  std::vector<cd> coeffs(num.max_degree() + 1);
  for (const auto& [d, c] : num.terms()) coeffs[d] = c.to_double();
  const auto roots = polynomial_roots(coeffs);
  if (static_cast<int>(roots.size()) != genus)
    throw Error(ErrorKind::DegenerateDivisor, "found " + std::to_string(roots.size()) +
                                                  " divisor points, genus is " + std::to_string(genus));
  double scale = 1;
  for (cd r : roots) scale = std::max(scale, std::abs(r));
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-8 * scale)
        throw Error(ErrorKind::DegenerateDivisor, "X_21 has a multiple root");
  std::vector<CurvePoint> out;
  for (cd y0 : roots) {
    CurvePoint p = make_curve_point(F, X(0, 0).eval(y0), y0);
    if (!(p.residual <= kResidualTol * residual_scale(F, p.x, p.y)))
      throw Error(ErrorKind::DegenerateDivisor, "divisor point is off the curve");
    out.push_back(p);
  }
  return out;
}

std::vector<CurvePoint> divisor_points(const TodaState& s) {
  if (s.sites != 2) throw Error(ErrorKind::PreconditionFailed, "divisor extraction needs N = 2");
  if (gcd_int(2, s.depth) != 1)
    throw Error(ErrorKind::PreconditionFailed, "divisor extraction needs gcd(2, M) = 1");
  const LaurentMatrix X = lax_matrices(s).X;
  return divisor_points(X, charpoly(X), spectral_genus(s.sites, s.depth));
}

}  // namespace hptoda
