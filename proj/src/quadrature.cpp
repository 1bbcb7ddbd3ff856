#include "hptoda/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "hptoda/error.hpp"

namespace hptoda {

using cd = std::complex<double>;

GaussLegendre::GaussLegendre(int order) : nodes(order), weights(order) {
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[order - 1 - i] = x;
    weights[order - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
}

cd continue_sqrt(cd z, cd previous) {
  const cd r = std::sqrt(z);
  return std::abs(r - previous) <= std::abs(r + previous) ? r : -r;
}

namespace {

constexpr double kMaxTurn = std::numbers::pi / 4;
constexpr int kMaxDepth = 48;

struct Panel {
  cd value;
  cd root_end;
  bool tracked;
};

const GaussLegendre& rule(int order) {
  static const GaussLegendre g16(16);
  static const GaussLegendre g20(20);
  if (order == 16) return g16;
  if (order == 20) return g20;
  static thread_local GaussLegendre other(order);
  if (static_cast<int>(other.nodes.size()) != order) other = GaussLegendre(order);
  return other;
}

Panel eval_panel(const ComplexFn& radicand, const ComplexFn& numer, double a, double b, cd root_a,
                 int order) {
  const GaussLegendre& g = rule(order);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  Panel p{0.0, root_a, true};
  cd prev = root_a;
  auto advance = [&](double s) {
    const cd r = continue_sqrt(radicand(s), prev);
    if (std::abs(prev) > 0 && std::abs(std::arg(r / prev)) >= kMaxTurn) p.tracked = false;
    prev = r;
    return r;
  };
  for (int i = 0; i < order; ++i) {
    const double s = mid + half * g.nodes[i];
    const cd r = advance(s);
    p.value += g.weights[i] * numer(s) / r;
  }
  p.value *= half;
  p.root_end = advance(b);
  if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) p.tracked = false;
  return p;
}

struct Adaptive {
  const ComplexFn& radicand;
  const ComplexFn& numer;
  double tol;

  // Returns the integral over [a, b] given the root at a and the one-panel estimate.
  Panel run(double a, double b, cd root_a, const Panel& whole, int depth) const {
    if (depth > kMaxDepth) throw Error(ErrorKind::SheetTrackingLost, "adaptive quadrature too deep");
    const double m = 0.5 * (a + b);
    const Panel left = eval_panel(radicand, numer, a, m, root_a, 20);
    const Panel right = eval_panel(radicand, numer, m, b, left.root_end, 20);
    const cd fine = left.value + right.value;
    const bool ok = whole.tracked && left.tracked && right.tracked &&
                    std::abs(fine - whole.value) <= tol * std::max(1.0, std::abs(fine)) &&
                    std::abs(whole.root_end - right.root_end) <= 1e-8 * std::abs(right.root_end);
    if (ok) return {fine, right.root_end, true};
    const Panel l = run(a, m, root_a, left, depth + 1);
    const Panel r = run(m, b, l.root_end,
                        eval_panel(radicand, numer, m, b, l.root_end, 20), depth + 1);
    return {l.value + r.value, r.root_end, true};
  }
};

}  // namespace

TrackedIntegral integrate_tracked(const ComplexFn& radicand, const ComplexFn& numer, cd root_start,
                                  double tol) {
  const Adaptive ad{radicand, numer, tol};
  const Panel whole = eval_panel(radicand, numer, 0.0, 1.0, root_start, 20);
  const Panel p = ad.run(0.0, 1.0, root_start, whole, 0);
  return {p.value, p.root_end};
}

TrackedIntegral integrate_tracked_composite(const ComplexFn& radicand, const ComplexFn& numer,
                                            cd root_start, int panels, int order) {
  TrackedIntegral out{0.0, root_start};
  for (int k = 0; k < panels; ++k) {
    const Panel p = eval_panel(radicand, numer, double(k) / panels, double(k + 1) / panels,
                               out.root_end, order);
    if (!p.tracked)
      throw Error(ErrorKind::SheetTrackingLost, "composite rule lost the square-root branch");
    out.value += p.value;
    out.root_end = p.root_end;
  }
  return out;
}

}  // namespace hptoda
