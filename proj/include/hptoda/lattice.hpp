#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hptoda/rational.hpp"

namespace hptoda {

/// Exact state of the hungry periodic discrete Toda lattice at base time t.
/// Row j of i_layers holds I_n^{t+j} (n = 1..N, zero-based here); v holds V_n^t.
struct TodaState {
  int sites = 0;   // N
  int depth = 0;   // M
  long time = 0;   // t
  std::vector<std::vector<Rat>> i_layers;
  std::vector<Rat> v;

  const Rat& I(int layer, int n) const { return i_layers[layer][wrap(n)]; }
  const Rat& V(int n) const { return v[wrap(n)]; }
  /// Periodic index reduction.
  int wrap(int n) const { return ((n % sites) + sites) % sites; }

  Rat layer_product(int layer) const;
  Rat v_product() const;

  friend bool operator==(const TodaState&, const TodaState&) = default;
};

struct Violation {
  std::string reason;
};

/// Checks shape, nonzero entries, and that no I-layer product equals the
/// V product (the uniqueness condition for the evolution).
std::optional<Violation> validate(const TodaState& state);

/// 2x2 exact matrix [[a, b], [c, d]] acting as a Moebius map.
struct Mobius {
  Rat a, b, c, d;
  Rat apply(const Rat& x) const;
  friend Mobius operator*(const Mobius& l, const Mobius& r);
};

/// Composition around the ring of the per-site maps
/// x_{n+1} = I_{n+1} V_n / (I_n + V_n - x_n), x_n standing for V_{n-1}^{t+1}.
Mobius ring_transfer(const TodaState& state);

struct StepTrace {
  Mobius transfer;
  Rat trivial_root;   // I_1^t
  Rat selected_root;  // V_N^{t+1}
};

/// One time step t -> t+1. Throws SingularEvolution, DegenerateRoot or
/// RootSelectionFailure.
TodaState step(const TodaState& state, StepTrace* trace = nullptr);

/// True when (prev, next) satisfy both evolution equations exactly.
bool satisfies_evolution(const TodaState& prev, const TodaState& next);

/// [state, step(state), ...] with steps + 1 entries.
std::vector<TodaState> evolve(const TodaState& state, int steps);

/// Convenience constructor; does not validate.
TodaState make_state(std::vector<std::vector<Rat>> i_layers, std::vector<Rat> v, long time = 0);

}  // namespace hptoda
