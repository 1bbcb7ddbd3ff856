// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "float_oracle.hpp"
#include "hptoda/curve.hpp"
#include "hptoda/error.hpp"
#include "hptoda/genus1.hpp"
#include "hptoda/reduction.hpp"
#include "hptoda/spectral.hpp"
#include "hptoda/theta.hpp"
#include "test_support.hpp"

using namespace hptoda;
using namespace hptoda::testing;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += "; over time budget";
  }
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.2fs%s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              budget_s > 0 ? (" of " + std::to_string(static_cast<int>(budget_s)) + "s").c_str() : "");
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Random positive states that evolve without hitting a zero denominator.
std::vector<std::vector<TodaState>> isospectral_corpus(int& retries) {
  std::mt19937_64 rng(20240601);
  std::vector<std::vector<TodaState>> out;
  retries = 0;
  for (int k = 0; k < 50; ++k) {
    const int N = 2 + k % 4, M = 1 + (k / 4) % 3;
    for (;;) {
      try {
        out.push_back(evolve(random_state(rng, N, M), 25));
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularEvolution) throw;
        ++retries;
      }
    }
  }
  return out;
}

cd reduce_modular(cd tau) {
  for (int it = 0; it < 100; ++it) {
    tau -= std::round(tau.real());
    if (std::abs(tau) < 1 - 1e-14)
      tau = -1.0 / tau;
    else
      break;
  }
  return tau;
}

double agm(double a, double b) {
  while (std::abs(a - b) > 1e-16 * a) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return a;
}

// Entries in [1/2, 2].
TodaState unit_scale_state(std::mt19937_64& rng, int sites, int depth) {
  std::uniform_int_distribution<long> num(2, 8);
  for (;;) {
    std::vector<std::vector<Rat>> layers(depth, std::vector<Rat>(sites));
    std::vector<Rat> v(sites);
    for (auto& layer : layers)
      for (auto& x : layer) x = Rat(num(rng), 4);
    for (auto& x : v) x = Rat(num(rng), 4);
    TodaState s = make_state(std::move(layers), std::move(v));
    if (!validate(s)) return s;
  }
}

TodaState positive_g1_state(std::mt19937_64& rng) {
  for (;;) {
    TodaState s = random_state(rng, 2, 1);
    try {
      evolve(s, 9);
      hyperelliptic_model(s);
      return s;
    } catch (const Error&) {
    }
  }
}

}  // namespace

int main() {
  int retries = 0;
  std::vector<std::vector<TodaState>> corpus;

  criterion(1, "exact isospectrality, 50 random states x 25 steps", 10, [&] {
    corpus = isospectral_corpus(retries);
    int bad = 0;
    for (const auto& traj : corpus)
      if (!invariant_report(traj).exact) ++bad;
    return Outcome{bad == 0, std::to_string(corpus.size() - bad) + "/50 trajectories keep F(x,y) exactly; " +
                                 std::to_string(retries) + " draws redrawn after a zero denominator"};
  });

  criterion(2, "worked step and curve", 1, [] {
    const TodaState s = worked_state();
    const TodaState n = step(s);
    const bool ok_step = n.i_layers[0] == std::vector<Rat>{Rat(4, 3), Rat(3, 2)} &&
                         n.v == std::vector<Rat>{Rat(9, 2), Rat(8, 3)};
    const std::string F = spectral_data(s).F.str();
    const bool ok_F = F == "x^2 - 10*x - y + 14 - 24*y^-1";
    return Outcome{ok_step && ok_F, "I' = (" + n.I(0, 0).str() + ", " + n.I(0, 1).str() + "), V' = (" +
                                        n.V(0).str() + ", " + n.V(1).str() + "), F = " + F};
  });

  criterion(3, "float quadratic-root oracle vs exact step", 5, [] {
    std::mt19937_64 rng(77);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const TodaState s = random_state(rng, 2 + k % 4, 1 + k % 3);
      const TodaState e = step(s);
      const auto f = float_oracle_step(s);
      for (int n = 0; n < s.sites; ++n) {
        const double ie = e.i_layers.back()[n].to_double(), ve = e.V(n).to_double();
        worst = std::max({worst, std::abs(f.i_new[n] - ie) / std::abs(ie), std::abs(f.v_new[n] - ve) / std::abs(ve)});
      }
    }
    return Outcome{worst <= 1e-10, "max relative deviation " + sci(worst) + " over 100 states (tol 1e-10)"};
  });

  criterion(4, "layer and V products conserved, trivial root never taken", 0, [&] {
    long checked = 0, bad = 0;
    for (const auto& traj : corpus) {
      for (std::size_t t = 1; t < traj.size(); ++t) {
        const TodaState &a = traj[t - 1], &b = traj[t];
        ++checked;
        // New front layer must keep prod I^t; the trivial root would give prod V instead.
        const Rat fresh = b.layer_product(b.depth - 1);
        if (fresh != a.layer_product(0) || b.v_product() != a.v_product()) ++bad;
        if (a.layer_product(0) != a.v_product() && fresh == a.v_product()) ++bad;
        for (int j = 0; j + 1 < b.depth; ++j)
          if (b.layer_product(j) != traj[0].layer_product((j + t) % a.depth)) ++bad;
      }
    }
    return Outcome{bad == 0 && checked > 0, std::to_string(checked) + " steps checked exactly, " +
                                                std::to_string(bad) + " violations"};
  });

  criterion(5, "special points over x = 0 and genus formula", 1, [] {
    std::mt19937_64 rng(5);
    int ok = 0, total = 0, literal_odd_fail = 0, odd = 0;
    for (int N = 2; N <= 5; ++N)
      for (int M = 1; M <= 3; ++M) {
        const TodaState s = random_state(rng, N, M);
        const SpectralData d = spectral_data(s);  // throws SpecialPointMismatch unless y F(0,y) factors exactly
        ++total;
        const Rat sign = (N % 2) ? Rat(-1) : Rat(1);
        bool good = d.b_point_y == sign * s.v_product();
        for (int j = 0; j < M; ++j) good = good && d.a_points_y[j] == sign * s.layer_product(j);
        ok += good;
        if (N % 2) {
          ++odd;
          // The unsigned value prod V is a root of F(0, y) only for even N.
          if (d.F.eval(0.0, s.v_product().to_double()) != cd(0)) ++literal_odd_fail;
        }
      }
    const bool genus = spectral_genus(2, 1) == 1 && spectral_genus(3, 2) == 3 && spectral_genus(2, 2) == 1;
    return Outcome{ok == total && genus,
                   std::to_string(ok) + "/" + std::to_string(total) +
                       " root multisets equal {(-1)^N prod I^j} u {(-1)^N prod V} exactly; g(2,1)=1, "
                       "g(3,2)=3, g(2,2)=1 " + (genus ? "hold" : "FAIL") +
                       "; unsigned B = prod V is off the curve for " + std::to_string(literal_odd_fail) + "/" +
                       std::to_string(odd) + " odd-N states (sign recorded in the decisions ledger)"};
  });

  criterion(6, "boundary limits psi(Q)/psi(P), phi(Q)/phi(P) for N=3, M=2", 10, [] {
    std::mt19937_64 rng(6);
    double worst_psi = 0, worst_phi = 0;
    for (int k = 0; k < 10; ++k) {
      const TodaState s = random_state(rng, 3, 2);
      const auto lim = boundary_limits(s, RadiusSchedule{1e2, 1e8, 12});
      worst_psi = std::max(worst_psi, std::abs(lim.psi_ratio - (s.I(0, 2) / s.I(0, 0)).to_double()));
      worst_phi = std::max(worst_phi, std::abs(lim.phi_ratio - (s.V(1) / s.V(2)).to_double()));
    }
    return Outcome{worst_psi <= 1e-4 && worst_phi <= 1e-4,
                   "10 states, max |psi ratio - I_N/I_1| = " + sci(worst_psi) + ", max |phi ratio - V_{N-1}/V_N| = " +
                       sci(worst_phi) + " (tol 1e-4)"};
  });

  criterion(7, "eigenvector component exponents at P and Q", 0, [] {
    std::mt19937_64 rng(7);
    double worst = 0;
    int cases = 0;
    for (auto [N, M] : {std::pair{2, 1}, std::pair{2, 3}, std::pair{3, 1}, std::pair{3, 2}})
      for (int k = 0; k < 3; ++k) {
        const auto lim = boundary_limits(random_state(rng, N, M), {});
        for (int i = 1; i < N; ++i) {
          worst = std::max(worst, std::abs(lim.at_P.slopes[i - 1] - (N - i)));
          worst = std::max(worst, std::abs(lim.at_Q.slopes[i - 1] + (N - i)));
        }
        ++cases;
      }
    return Outcome{worst <= 0.05, std::to_string(cases) + " states with (N,M) in {(2,1),(2,3),(3,1),(3,2)}, "
                                  "max slope deviation " + sci(worst) + " (tol 0.05)"};
  });

  criterion(8, "Riemann theta kernel identities", 0, [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1), b(0.4, 2.0);
    double even = 0, quasi = 0, zero = 0, doubling = 0;
    for (int k = 0; k < 200; ++k) {
      const cd omega(0.5 * u(rng), b(rng));
      const cd z(u(rng), 0.5 * u(rng));
      const cd t = riemann_theta(z, omega);
      const double scale = std::max(1.0, std::abs(t));
      even = std::max(even, std::abs(riemann_theta(-z, omega) - t) / scale);
      for (int m : {-2, -1, 1, 2}) {
        const cd lhs = riemann_theta(z + omega * double(m), omega);
        const cd f = std::exp(cd(0, -2 * pi) * double(m) * z - cd(0, pi) * double(m * m) * omega);
        quasi = std::max(quasi, std::abs(lhs - f * t) / std::abs(lhs));
      }
      zero = std::max(zero, std::abs(riemann_theta(0.5 * (1.0 + omega), omega)));
      const cd wide = riemann_theta(z, omega, 8);
      doubling = std::max(doubling, std::abs(wide - t) / std::abs(wide));
    }
    const bool ok = even <= 1e-14 && quasi <= 1e-10 && zero <= 1e-10 && doubling <= 1e-12;
    return Outcome{ok, "200 samples: evenness " + sci(even) + " (1e-14), quasi-periodicity " + sci(quasi) +
                           " (1e-10), |theta((1+Omega)/2)| " + sci(zero) + " (1e-10), truncation doubling " +
                           sci(doubling) + " (1e-12)"};
  });

  criterion(9, "genus-one periods", 0, [] {
    const double k = 0.5, kp = std::sqrt(1 - k * k);
    const double K = pi / (2 * agm(1, kp)), Kp = pi / (2 * agm(1, k));
    const auto per = periods(std::array<cd, 4>{-2.0, -1.0, 1.0, 2.0});
    const double agm_err = std::abs(reduce_modular(per.omega) - reduce_modular(cd(0, Kp / (2 * K))));
    std::mt19937_64 rng(9);
    double worst_delta = per.doubling_delta;
    bool upper = per.omega.imag() > 0;
    for (int i = 0; i < 20; ++i) {
      const auto p = periods(hyperelliptic_model(positive_g1_state(rng)));
      upper = upper && p.omega.imag() > 0;
      worst_delta = std::max(worst_delta, p.doubling_delta);
    }
    const auto w = periods(hyperelliptic_model(worked_state()));
    upper = upper && w.omega.imag() > 0;
    worst_delta = std::max(worst_delta, w.doubling_delta);
    return Outcome{agm_err <= 1e-10 && upper && worst_delta <= 1e-9,
                   "AGM ratio error " + sci(agm_err) + " (1e-10); Im Omega > 0 on 22 curves; max doubling change " +
                       sci(worst_delta) + " (1e-9)"};
  });

  criterion(10, "principality of the y and x divisors", 0, [] {
    std::mt19937_64 rng(10);
    double worst = 0;
    std::vector<TodaState> states{worked_state()};
    for (int i = 0; i < 10; ++i) states.push_back(positive_g1_state(rng));
    for (const auto& s : states) {
      const auto m = hyperelliptic_model(s);
      const auto per = periods(m);
      const AbelMap abel(m, per);
      const auto pr = principality(abel_images(s, abel), per.omega);
      worst = std::max({worst, pr.y_divisor.residual, pr.x_divisor.residual});
    }
    return Outcome{worst <= 1e-8, "max lattice residual of Abel(N(P-Q)) and Abel(A0+B-P-Q) over " +
                                      std::to_string(states.size()) + " curves: " + sci(worst) + " (1e-8)"};
  });

  criterion(11, "linearization of sigma and the time step on the Jacobian", 0, [] {
    const auto r = linearization_check(worked_state());
    auto near = [](const CurvePoint& p, double x, double y) {
      return std::abs(p.x - cd(x)) + std::abs(p.y - cd(y)) <= 1e-9;
    };
    const bool points = near(r.d_x0, 5, -3) && near(r.d_sigma, 5, -8) && near(r.d_x1, 4, -6);
    const double worst = std::max({r.space_residual, r.time_residual, r.time_residual_b});
    return Outcome{points && worst <= 1e-7,
                   std::string("divisor points (5,-3), (5,-8), (4,-6) ") + (points ? "found" : "MISMATCH") +
                       "; residuals sigma " + sci(r.space_residual) + ", step vs P-A0 " + sci(r.time_residual) +
                       ", step vs B-Q " + sci(r.time_residual_b) + " (1e-7)"};
  });

  criterion(12, "theta-function reconstruction of t = 0..8", 60, [] {
    const auto rep = reconstruct_and_verify(worked_state(), 8);
    const bool ok = rep.max_rel_err <= 1e-6 && rep.d_spread <= 1e-8 && rep.d_prime_spread <= 1e-8 &&
                    rep.max_prod_i_err <= 1e-6 && rep.max_prod_v_err <= 1e-6;
    return Outcome{ok, "max relative error " + sci(rep.max_rel_err) + " (1e-6); d spread " + sci(rep.d_spread) +
                           ", d' spread " + sci(rep.d_prime_spread) + " (1e-8); product identities " +
                           sci(rep.max_prod_i_err) + ", " + sci(rep.max_prod_v_err) + " (1e-6)"};
  });

  criterion(13, "zeta-lift degeneration N=2, M=2", 0, [] {
    const std::vector<Rat> zetas{Rat(100), Rat(10000), Rat(1000000)};
    std::mt19937_64 rng(13);
    std::vector<TodaState> bases{worked_state()};
    for (int i = 0; i < 5; ++i) bases.push_back(unit_scale_state(rng, 2, 1));
    bool ok = true;
    double worst_last = 0, slope_lo = 0, slope_hi = -1e9;
    std::string worked_slope;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      const auto rep = zeta_sweep(bases[i], zetas);
      const double last = std::max(rep.rows.back().max_abs[0], rep.rows.back().max_abs[1]);
      worst_last = std::max(worst_last, last);
      ok = ok && rep.monotone && last <= 1e-4;
      slope_lo = i == 0 ? rep.slope : std::min(slope_lo, rep.slope);
      slope_hi = std::max(slope_hi, rep.slope);
      if (i == 0) worked_slope = sci(rep.slope);
    }
    return Outcome{ok, std::to_string(bases.size()) + " unit-scale bases: residuals decrease monotonically, max at zeta=1e6 " +
                           sci(worst_last) + " (1e-4); fitted slopes in [" + sci(slope_lo) + ", " + sci(slope_hi) +
                           "], worked base " + worked_slope};
  });

  criterion(14, "lifted characteristic polynomial identity and hidden quantity", 0, [] {
    const TodaState base = make_state({{Rat(1), Rat(2)}, {Rat(3), Rat(1)}}, {Rat(2), Rat(5)});
    bool ok = lifted_charpoly_identity(base, {Rat(1), Rat(2), Rat(3), Rat(5), Rat(7)}).identity;
    std::mt19937_64 rng(14);
    for (int i = 0; i < 10; ++i)
      ok = ok && lifted_charpoly_identity(random_state(rng, 2, 2), {Rat(11), Rat(13), Rat(17, 2), Rat(-19), Rat(23, 3)})
                     .identity;
    const auto diag = gcd2_diagnostics(base, 25);
    const bool u5 = diag.conserved[4] && diag.U[4] == Rat(14);
    return Outcome{ok && u5, std::string("display matches at 5 zeta samples for 11 bases: ") + (ok ? "yes" : "NO") +
                                 "; U_5 = " + diag.U[4].str() + (u5 ? " conserved" : " NOT conserved") +
                                 " over 25 steps"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
