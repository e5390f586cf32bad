"""Numeric defaults shared across the package.

Every tolerance, cap, and truncation default lives in this one structure so
nothing is tuned ad hoc at call sites.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Defaults:
    # classification of local operators as stochastic / unitary / CA
    classify_tol: float = 1e-9
    # checks that hold exactly by construction (zero patterns, round-trips)
    exact_tol: float = 1e-12
    # largest N materialized densely; 2^12 x 2^12 complex128 is ~268 MB
    dense_cap: int = 12
    # matrix-free trace sweeps cost O(4^N); warn past this size
    matrix_free_warn: int = 14
    # default truncation order R of the log series
    series_order: int = 20
    # Gauss-Hermite node count for Gaussian expectations
    quad_nodes: int = 64
    # state-normalization drift that aborts an evolution
    drift_tol: float = 1e-8
    # |1 - u*lambda| below this counts as a pole
    singular_eps: float = 1e-14
    # discriminant magnitude selecting the double-root branch
    double_root_tol: float = 1e-12
    # discriminant band where the iterated recurrence is authoritative
    near_degenerate_band: float = 1e-6


DEFAULTS = Defaults()
