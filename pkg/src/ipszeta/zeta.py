"""Zeta-type log series of global operators and their closed forms.

The log of the inverse zeta-type function of an operator Q on N sites
expands as sum_r (-C_r / r) u^r with C_r = tr(Q^r) / 2^N.  This module
computes that series from brute traces and evaluates every closed form the
library verifies: the tensor-factor eigenvalue product, the binomial log
sum and its Gaussian limit for the uniform-rotation family, and the
recurrences, trace rules and arctanh forms for the reflection family
(including Rule 90 and the quarter-turn angle).

Branch convention: every closed form is a sum of principal logs of linear
factors; arctanh(u) is (Log(1+u) - Log(1-u)) / 2.  Nothing takes a 2^N-th
root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULTS
from .errors import DomainError, SingularAtU
from .models import ModelSpec, TensorFactors, build_local
from .operators import GlobalOperator

SQRT2 = math.sqrt(2.0)


def chebyshev_t(n: int, x: float) -> float:
    """First-kind value T_n(x) by the three-term recurrence (any real x)."""
    if n < 0:
        raise DomainError(f"first-kind order must be >= 0, got {n}")
    prev, cur = 1.0, float(x)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def chebyshev_u(n: int, x: float) -> float:
    """Second-kind value U_n(x) by the three-term recurrence; U_{-1} = 0."""
    if n < -1:
        raise DomainError(f"second-kind order must be >= -1, got {n}")
    if n == -1:
        return 0.0
    prev, cur = 1.0, 2.0 * float(x)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def arctanh(u) -> complex:
    """Principal arctanh from its two linear log factors."""
    u = complex(u)
    return 0.5 * (np.log(1.0 + u) - np.log(1.0 - u))


@dataclass(frozen=True)
class ZetaLogSeries:
    """Truncated power series of the log of the inverse zeta-type function.

    The coefficient of u^r sits at index r-1 and equals -C_r / r.
    """

    n_sites: int
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.complex128).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients)

    def evaluate(self, u) -> complex:
        """Sum of coefficient_r * u^r in ascending order of r."""
        u = complex(u)
        total = 0.0 + 0.0j
        power = 1.0 + 0.0j
        for c in self.coefficients:
            power *= u
            total += c * power
        return total


def zeta_log_series(op: GlobalOperator, r_max: int = DEFAULTS.series_order) -> ZetaLogSeries:
    """Series coefficients -C_r / r from brute trace powers."""
    traces = op.trace_powers(r_max)
    r = np.arange(1, r_max + 1, dtype=np.float64)
    return ZetaLogSeries(op.n_sites, -traces.c_values / r)


def _eig2(m: np.ndarray) -> tuple:
    """Eigenvalue pair of a 2x2 matrix from its characteristic roots."""
    t = complex(m[0, 0] + m[1, 1])
    d = complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    s = np.sqrt(complex(t * t - 4.0 * d))
    return (t + s) / 2.0, (t - s) / 2.0


def tensor_model_cr(factors: TensorFactors, n_sites: int, r: int) -> complex:
    """C_r of a tensor-factorizable operator from three eigenvalue pairs.

    Requires N >= 2 and a diagonal right factor; the value is
    (l+^r + l-^r) (m+^r + m-^r)^(N-2) (e^r + h^r) / 2^N with l the left
    factor's eigenvalues and m those of left @ right.
    """
    if n_sites < 2:
        raise DomainError(f"tensor C_r needs N >= 2, got {n_sites}")
    if r < 1:
        raise DomainError(f"power must be positive, got {r}")
    right = factors.right
    if right[0, 1] != 0 or right[1, 0] != 0:
        raise DomainError("right factor must be diagonal")
    lp, lm = _eig2(factors.left)
    mp, mm = _eig2(factors.left @ right)
    e = complex(right[0, 0])
    h = complex(right[1, 1])
    return ((lp ** r + lm ** r) * (mp ** r + mm ** r) ** (n_sites - 2)
            * (e ** r + h ** r)) / 2 ** n_sites


def binomial_zeta_qca1(n_sites: int, xi: float, u) -> complex:
    """Log of the inverse zeta value for the uniform-rotation model.

    Weighted sum of principal logs of the factors
    1 - exp(i (2k - (N-1)) xi) u with normalized binomial weights.  The
    weights come from log-gamma differences, so the sum stays stable for
    N in the thousands.
    """
    if n_sites < 1:
        raise DomainError(f"n_sites must be positive, got {n_sites}")
    u = complex(u)
    n = n_sites
    k = np.arange(n)
    log_w = np.array(
        [math.lgamma(n) - math.lgamma(kk + 1) - math.lgamma(n - kk) for kk in k]
    ) - (n - 1) * math.log(2.0)
    weights = np.exp(log_w)
    phases = np.exp(1j * (2 * k - (n - 1)) * float(xi))
    factors = 1.0 - phases * u
    if np.min(np.abs(factors)) < DEFAULTS.singular_eps:
        raise SingularAtU(f"a log factor vanishes at u={u}")
    return complex(np.sum(weights * np.log(factors)))


def clt_limit_zeta(xi: float, u, quad_nodes: int = DEFAULTS.quad_nodes) -> complex:
    """Gaussian expectation of Log(1 - exp(i xi Z) u), Z standard normal.

    Gauss-Hermite quadrature with the sqrt(2) change of variables;
    deterministic for a fixed node count.
    """
    u = complex(u)
    if abs(u) >= 1.0:
        raise DomainError(f"requires |u| < 1, got |u|={abs(u)}")
    if quad_nodes < 8:
        raise DomainError(f"need at least 8 quadrature nodes, got {quad_nodes}")
    nodes, weights = np.polynomial.hermite.hermgauss(quad_nodes)
    values = np.log(1.0 - np.exp(1j * float(xi) * SQRT2 * nodes) * u)
    return complex((weights @ values) / math.sqrt(math.pi))


class TraceR1(NamedTuple):
    """First-power trace of the reflection-family operator and its C_1."""

    trace: complex
    c1: complex


def qca2_x1_recurrence(n_sites: int, xi: float) -> float:
    """First-power trace by iterating the order-2 recurrence (stable path).

    x_{N+2} = (1 + sin xi) x_{N+1} - 2 sin(xi) x_N with x_1 = x_2 = 2.
    """
    if n_sites < 1:
        raise DomainError(f"n_sites must be positive, got {n_sites}")
    if n_sites <= 2:
        return 2.0
    s = math.sin(xi)
    prev, cur = 2.0, 2.0
    for _ in range(n_sites - 2):
        prev, cur = cur, (1.0 + s) * cur - 2.0 * s * prev
    return cur


def qca2_c1_closed_form(n_sites: int, xi: float) -> TraceR1:
    """Root-formula value of the first-power trace (verification path).

    Uses the distinct-root expression away from root coalescence and the
    double-root expression when the discriminant of
    l^2 - (1 + sin xi) l + 2 sin xi vanishes numerically; inside the
    near-degenerate band the iterated recurrence is authoritative because
    the distinct-root form divides by l2 - l1.
    """
    if n_sites < 1:
        raise DomainError(f"n_sites must be positive, got {n_sites}")
    s = math.sin(xi)
    disc = (1.0 + s) ** 2 - 8.0 * s
    if abs(disc) < DEFAULTS.double_root_tol:
        trace = complex((SQRT2 * (n_sites - 1) + 2.0) * (2.0 - SQRT2) ** (n_sites - 1))
    elif abs(disc) < DEFAULTS.near_degenerate_band:
        trace = complex(qca2_x1_recurrence(n_sites, xi))
    else:
        root = np.sqrt(complex(disc))
        l1 = (1.0 + s - root) / 2.0
        l2 = (1.0 + s + root) / 2.0
        trace = 2.0 * ((l2 - 1.0) * l1 ** (n_sites - 1)
                       - (l1 - 1.0) * l2 ** (n_sites - 1)) / (l2 - l1)
        trace = complex(trace)
    return TraceR1(trace, trace / 2 ** n_sites)


def qca2_x2_recurrence(n_sites: int, xi: float) -> float:
    """Second-power trace by iterating the order-3 recurrence.

    x_{N+3} = (1 + sin^2 xi) x_{N+2} + 2 sin(xi) cos^2(xi) x_{N+1}
              - 4 sin(xi) cos^2(xi) x_N
    with x_1 = 2, x_2 = 4, x_3 = 4 (1 + sin^2 xi).
    """
    if n_sites < 1:
        raise DomainError(f"n_sites must be positive, got {n_sites}")
    s = math.sin(xi)
    sc = 2.0 * s * math.cos(xi) ** 2
    seeds = [2.0, 4.0, 4.0 * (1.0 + s * s)]
    if n_sites <= 3:
        return seeds[n_sites - 1]
    x1, x2, x3 = seeds
    for _ in range(n_sites - 3):
        x1, x2, x3 = x2, x3, (1.0 + s * s) * x3 + sc * x2 - 2.0 * sc * x1
    return x3


def rule90_trace_general_r(n_sites: int, k: int, s: int) -> float:
    """Trace of the 2^k (2s-1) power of the Rule 90 operator, N in {2,3,4}.

    Evaluates to 2^(2^k) while 2^k < N and saturates at 2^N once
    2^k >= N; the regime beyond N = 4 belongs to the conjecture check.
    """
    if n_sites not in (2, 3, 4):
        raise DomainError(f"proved range is N in {{2, 3, 4}}, got {n_sites}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if s < 1:
        raise DomainError(f"s must be >= 1, got {s}")
    if (1 << k) < n_sites:
        return float(2 ** (1 << k))
    return float(2 ** n_sites)


def _rule90_zeta_formula(n_sites: int, m: int, u: complex) -> complex:
    value = np.log(1.0 - u ** (2 ** m)) / 2 ** m
    for k in range(m):
        value -= 2.0 ** (-(n_sites - (2 ** k - k))) * arctanh(u ** (2 ** k))
    return complex(value)


def zeta_closed_form_qca2(n_sites: int, variant: str, u) -> complex:
    """Closed-form log of the inverse zeta value for the two solved angles.

    ``pi_half`` holds for every N; ``rule90`` is proved for N <= 4 (plus
    the trivial N = 1 value) and rejected elsewhere.
    """
    if n_sites < 1:
        raise DomainError(f"n_sites must be positive, got {n_sites}")
    u = complex(u)
    if abs(u) >= 1.0:
        raise SingularAtU(f"closed forms need |u| < 1, got |u|={abs(u)}")
    if variant == "pi_half":
        amplitude = 2.0 ** (-(n_sites - 1) / 2.0) * chebyshev_t(n_sites - 1, SQRT2 / 2.0)
        return complex(0.5 * (np.log(1.0 - u) + np.log(1.0 + u)) - amplitude * arctanh(u))
    if variant == "rule90":
        if n_sites == 1:
            return complex(np.log(1.0 - u))
        if n_sites == 2:
            return _rule90_zeta_formula(n_sites, 1, u)
        if n_sites in (3, 4):
            return _rule90_zeta_formula(n_sites, 2, u)
        raise DomainError(
            f"rule90 closed form is proved for N in {{1, 2, 3, 4}}, got {n_sites}"
        )
    raise DomainError(f"unknown variant {variant!r}; expected 'pi_half' or 'rule90'")


@dataclass(frozen=True)
class ClosedFormReport:
    """Grid comparison of a closed form against brute linear algebra."""

    formula_id: str
    grid: dict
    max_abs_error: float
    passed: bool
    witness: dict
    tolerance: float

    def to_json(self) -> dict:
        return {
            "formula_id": self.formula_id,
            "grid": self.grid,
            "max_abs_error": self.max_abs_error,
            "passed": self.passed,
            "witness": self.witness,
            "tolerance": self.tolerance,
        }


def conjecture_test_rule90(
    n_sites: int,
    r_max: int = 64,
    u_samples: Sequence[complex] = (0.3, 0.5j),
    tol: float = 1e-8,
) -> ClosedFormReport:
    """Compare the conjectured Rule 90 closed form against the trace series.

    The formula is proved for N <= 4 only; here it runs with
    m = ceil(log2 N) for N >= 5 and the report records the measured gap
    without asserting it.  This is an experiment record, not a verified
    identity.
    """
    if n_sites < 5:
        raise DomainError(
            f"the proved range N <= 4 belongs to zeta_closed_form_qca2, got {n_sites}"
        )
    m = math.ceil(math.log2(n_sites))
    op = GlobalOperator(build_local(ModelSpec.qca2(0.0, 0.0)), n_sites)
    series = zeta_log_series(op, r_max)
    worst = -1.0
    witness: dict = {}
    for u in u_samples:
        u = complex(u)
        if abs(u) >= 1.0:
            raise DomainError(f"u samples must satisfy |u| < 1, got {u}")
        err = abs(_rule90_zeta_formula(n_sites, m, u) - series.evaluate(u))
        if err > worst:
            worst = err
            witness = {"n_sites": n_sites, "u": [u.real, u.imag], "error": err}
    return ClosedFormReport(
        formula_id="conj_rule90",
        grid={
            "n_sites": n_sites,
            "m": m,
            "r_max": r_max,
            "u_samples": [[complex(u).real, complex(u).imag] for u in u_samples],
            "conjecture": True,
        },
        max_abs_error=worst,
        passed=bool(worst <= tol),
        witness=witness,
        tolerance=tol,
    )
