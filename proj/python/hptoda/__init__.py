"""Hungry periodic discrete Toda lattice: exact evolution, spectral curve, theta reconstruction."""

from ._core import (
    HptodaError,
    State,
    boundary_limits,
    charpoly,
    evolve,
    lifted_charpoly_identity,
    linearization_check,
    parse_state,
    periods,
    reconstruct,
    riemann_theta,
    serialize_state,
    spectral_data,
    step,
    zeta_sweep,
)

__all__ = [
    "HptodaError",
    "State",
    "boundary_limits",
    "charpoly",
    "evolve",
    "lifted_charpoly_identity",
    "linearization_check",
    "parse_state",
    "periods",
    "reconstruct",
    "riemann_theta",
    "serialize_state",
    "spectral_data",
    "step",
    "zeta_sweep",
]
