#include "hptoda/lattice.hpp"

#include "hptoda/error.hpp"

namespace hptoda {

Rat TodaState::layer_product(int layer) const {
  Rat p(1);
  for (const Rat& x : i_layers[layer]) p *= x;
  return p;
}

Rat TodaState::v_product() const {
  Rat p(1);
  for (const Rat& x : v) p *= x;
  return p;
}

TodaState make_state(std::vector<std::vector<Rat>> i_layers, std::vector<Rat> v, long time) {
  TodaState s;
  s.sites = static_cast<int>(v.size());
  s.depth = static_cast<int>(i_layers.size());
  s.time = time;
  s.i_layers = std::move(i_layers);
  s.v = std::move(v);
  return s;
}

std::optional<Violation> validate(const TodaState& s) {
  if (s.sites < 2) return Violation{"N must be at least 2"};
  if (s.depth < 1) return Violation{"M must be at least 1"};
  if (static_cast<int>(s.v.size()) != s.sites)
    return Violation{"V has " + std::to_string(s.v.size()) + " entries, expected N = " +
                     std::to_string(s.sites)};
  if (static_cast<int>(s.i_layers.size()) != s.depth)
    return Violation{"I has " + std::to_string(s.i_layers.size()) + " layers, expected M = " +
                     std::to_string(s.depth)};
  for (int j = 0; j < s.depth; ++j) {
    if (static_cast<int>(s.i_layers[j].size()) != s.sites)
      return Violation{"I layer " + std::to_string(j) + " has wrong length"};
    for (int n = 0; n < s.sites; ++n)
      if (s.i_layers[j][n].is_zero())
        return Violation{"I_" + std::to_string(n + 1) + "^{t+" + std::to_string(j) + "} is zero"};
  }
  for (int n = 0; n < s.sites; ++n)
    if (s.v[n].is_zero()) return Violation{"V_" + std::to_string(n + 1) + "^t is zero"};
  const Rat w = s.v_product();
  for (int j = 0; j < s.depth; ++j)
    if (s.layer_product(j) == w)
      return Violation{"product of I layer " + std::to_string(j) + " equals product of V (" +
                       w.str() + ")"};
  return std::nullopt;
}

Rat Mobius::apply(const Rat& x) const { return (a * x + b) / (c * x + d); }

Mobius operator*(const Mobius& l, const Mobius& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
          l.c * r.b + l.d * r.d};
}

Mobius ring_transfer(const TodaState& s) {
  Mobius g{1, 0, 0, 1};
  for (int n = 0; n < s.sites; ++n) {
    const Mobius site{0, s.I(0, n + 1) * s.V(n), -1, s.I(0, n) + s.V(n)};
    g = site * g;
  }
  return g;
}

namespace {

[[noreturn]] void singular(const std::string& why) {
  throw Error(ErrorKind::SingularEvolution, why);
}

}  // namespace

TodaState step(const TodaState& s, StepTrace* trace) {
  if (auto bad = validate(s)) throw Error(ErrorKind::ValidationError, bad->reason);
  const int N = s.sites;
  const Mobius g = ring_transfer(s);
  if (g.c.is_zero()) singular("nontrivial fixed point of the ring transfer is at infinity");

  // c x^2 + (d - a) x - b = 0 has the trivial root I_1^t; Vieta gives the other.
  const Rat r0 = s.I(0, 0);
  const Rat r1 = -g.b / (g.c * r0);
  if (r1 == r0) throw Error(ErrorKind::DegenerateRoot, "fixed-point quadratic has a double root");

  TodaState next;
  next.sites = N;
  next.depth = s.depth;
  next.time = s.time + 1;
  next.v.resize(N);
  std::vector<Rat> fresh(N);

  Rat x = r1;  // V_0^{t+1} = V_N^{t+1}
  for (int n = 0; n < N; ++n) {
    const Rat denom = s.I(0, n) + s.V(n) - x;
    if (denom.is_zero())
      singular("propagation denominator vanishes at site " + std::to_string(n + 1));
    fresh[n] = denom;
    x = s.I(0, n + 1) * s.V(n) / denom;
    if (x.is_zero()) singular("V_" + std::to_string(n + 1) + "^{t+1} is zero");
    next.v[n] = x;
  }
  if (x != r1) singular("ring propagation did not close");

  next.i_layers.assign(s.i_layers.begin() + 1, s.i_layers.end());
  next.i_layers.push_back(std::move(fresh));

  if (next.layer_product(s.depth - 1) != s.layer_product(0) || next.v_product() != s.v_product())
    throw Error(ErrorKind::RootSelectionFailure, "products of I and V not conserved");

  if (trace) *trace = StepTrace{g, r0, r1};
  return next;
}

bool satisfies_evolution(const TodaState& prev, const TodaState& next) {
  const int N = prev.sites;
  const int M = prev.depth;
  if (next.sites != N || next.depth != M || next.time != prev.time + 1) return false;
  for (int j = 1; j < M; ++j)
    if (next.i_layers[j - 1] != prev.i_layers[j]) return false;
  for (int n = 0; n < N; ++n) {
    const Rat& produced = next.I(M - 1, n);  // I_n^{t+M}
    if (produced != prev.I(0, n) + prev.V(n) - next.V(n - 1)) return false;
    if (next.V(n) * produced != prev.I(0, n + 1) * prev.V(n)) return false;
  }
  return true;
}

std::vector<TodaState> evolve(const TodaState& state, int steps) {
  if (auto bad = validate(state)) throw Error(ErrorKind::ValidationError, bad->reason);
  std::vector<TodaState> traj;
  traj.reserve(static_cast<std::size_t>(steps) + 1);
  traj.push_back(state);
  for (int k = 0; k < steps; ++k) {
    try {
      traj.push_back(step(traj.back()));
    } catch (const Error& e) {
      throw Error(e.kind(), "at step " + std::to_string(k) + ": " + e.detail());
    }
    if (!satisfies_evolution(traj[traj.size() - 2], traj.back()))
      throw Error(ErrorKind::RootSelectionFailure,
                  "step " + std::to_string(k) + " output fails the evolution equations");
  }
  return traj;
}

}  // namespace hptoda
