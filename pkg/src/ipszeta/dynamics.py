"""State evolution under a global operator.

Probabilistic states carry configuration probabilities directly; quantum
states carry amplitudes whose squared moduli are the probabilities.
States are immutable snapshots; evolution returns a new state and
re-checks normalization instead of silently renormalizing.
"""

from __future__ import annotations

import enum
from dataclasses import InitVar, dataclass

import numpy as np

from .config import DEFAULTS
from .errors import DimensionMismatch, DomainError, InvariantDrift, KindMismatch
from .models import classify
from .operators import Configuration, GlobalOperator

_CONSTRUCT_TOL = 1e-10  # normalization tolerance for freshly built states
_REAL_TOL = 1e-12       # allowed imaginary / negative leakage of probabilities


class StateKind(str, enum.Enum):
    PCA_PROBABILITY = "pca_probability"
    QCA_AMPLITUDE = "qca_amplitude"


@dataclass(frozen=True)
class StateVector:
    """Length-2^N configuration vector at a given time step.

    ``norm_tol`` is the accepted normalization error at construction:
    fresh states use the strict default, evolved states the drift
    threshold.
    """

    n_sites: int
    kind: StateKind
    components: np.ndarray
    time_step: int = 0
    norm_tol: InitVar[float] = _CONSTRUCT_TOL

    def __post_init__(self, norm_tol):
        v = np.array(self.components, dtype=np.complex128).reshape(-1)
        if v.shape[0] != (1 << self.n_sites):
            raise DimensionMismatch(
                f"state length {v.shape[0]} does not match 2^{self.n_sites}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "components", v)
        object.__setattr__(self, "kind", StateKind(self.kind))
        self._check(norm_tol)

    def _check(self, norm_tol: float):
        v = self.components
        if self.kind is StateKind.PCA_PROBABILITY:
            if np.max(np.abs(v.imag)) > _REAL_TOL:
                raise DomainError("probabilities must be real")
            if np.min(v.real) < -_REAL_TOL:
                raise DomainError("probabilities must be nonnegative")
            drift = abs(v.real.sum() - 1.0)
        else:
            drift = abs(np.linalg.norm(v) - 1.0)
        if drift > norm_tol:
            raise InvariantDrift(
                f"normalization error {drift:.3e} exceeds {norm_tol:.1e}"
            )

    def probabilities(self) -> np.ndarray:
        """Configuration probabilities as a real vector."""
        if self.kind is StateKind.PCA_PROBABILITY:
            return self.components.real.copy()
        return np.abs(self.components) ** 2


def initial_state(config: Configuration, kind: StateKind) -> StateVector:
    """Point mass on one configuration at time step 0."""
    return StateVector(config.n_sites, StateKind(kind), config.basis_vector(), 0)


def _compatible(kind: StateKind, op: GlobalOperator) -> bool:
    cls = classify(op.local)
    if kind is StateKind.PCA_PROBABILITY:
        return cls.is_pca
    return cls.is_qca


def evolve(state: StateVector, op: GlobalOperator, steps: int) -> StateVector:
    """Apply the global operator ``steps`` times and re-check invariants.

    Probabilistic states need a column-stochastic local operator, quantum
    states a unitary one.  Normalization drift beyond the configured
    threshold raises instead of being absorbed.
    """
    if steps < 0:
        raise DomainError(f"steps must be nonnegative, got {steps}")
    if state.n_sites != op.n_sites:
        raise DimensionMismatch(
            f"state has {state.n_sites} sites, operator has {op.n_sites}"
        )
    if not _compatible(state.kind, op):
        need = "column-stochastic" if state.kind is StateKind.PCA_PROBABILITY else "unitary"
        raise KindMismatch(f"{state.kind.value} evolution needs a {need} local operator")
    v = state.components
    for _ in range(steps):
        v = op.apply(v)
    return StateVector(state.n_sites, state.kind, v, state.time_step + steps,
                       norm_tol=DEFAULTS.drift_tol)


def configuration_probability(state: StateVector, config: Configuration) -> float:
    """Probability of one configuration (component or squared modulus)."""
    if config.n_sites != state.n_sites:
        raise DimensionMismatch(
            f"configuration has {config.n_sites} sites, state has {state.n_sites}"
        )
    z = state.components[config.index]
    if state.kind is StateKind.PCA_PROBABILITY:
        return float(z.real)
    return float(abs(z) ** 2)


def site_marginals(state: StateVector) -> np.ndarray:
    """P(site x occupied) for each x, summed over configurations."""
    probs = state.probabilities().reshape([2] * state.n_sites)
    out = np.empty(state.n_sites)
    for x in range(state.n_sites):
        axes = tuple(a for a in range(state.n_sites) if a != x)
        out[x] = probs.sum(axis=axes)[1] if axes else probs[1]
    return out


def evolve_trajectory(state: StateVector, op: GlobalOperator, steps: int):
    """Yield (time_step, site_marginals) from the start state onward."""
    yield state.time_step, site_marginals(state)
    current = state
    for _ in range(steps):
        current = evolve(current, op, 1)
        yield current.time_step, site_marginals(current)
