"""Global evolution operators on the N-site path.

The global operator chains the two-site local update across adjacent site
pairs, pair (0, 1) first.  Site 0 is the most significant bit of the
configuration index, so Kronecker products read left to right along the
path.  N = 1 is the 2x2 identity by convention.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .config import DEFAULTS
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    SingularAtU,
    SizeExceeded,
)
from .models import LocalOperator, reflection

__all__ = [
    "E00", "E01", "E10", "E11", "reflection",
    "Configuration", "GlobalOperator", "TraceSequence",
]

E00 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
E01 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
E10 = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=np.complex128)
E11 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=np.complex128)
for _m in (E00, E01, E10, E11):
    _m.setflags(write=False)


@dataclass(frozen=True)
class Configuration:
    """Site occupation pattern and its index (site 0 = most significant bit)."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise DomainError("a configuration needs at least one site")
        if any(b not in (0, 1) for b in bits):
            raise DomainError(f"site states must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def n_sites(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        n = self.n_sites
        return sum(b << (n - 1 - x) for x, b in enumerate(self.bits))

    @classmethod
    def from_index(cls, index: int, n_sites: int) -> "Configuration":
        if not 0 <= index < (1 << n_sites):
            raise DomainError(f"index {index} out of range for {n_sites} sites")
        return cls(tuple((index >> (n_sites - 1 - x)) & 1 for x in range(n_sites)))

    def basis_vector(self) -> np.ndarray:
        v = np.zeros(1 << self.n_sites, dtype=np.complex128)
        v[self.index] = 1.0
        return v


@dataclass(frozen=True)
class TraceSequence:
    """tr(Q^r) for r = 1..R plus the per-configuration averages C_r."""

    n_sites: int
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise DomainError("trace values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def c_values(self) -> np.ndarray:
        return self.values / float(2 ** self.n_sites)


class GlobalOperator:
    """Lazy 2^N x 2^N evolution operator built from one local operator.

    Vectors are applied matrix-free through the sweep kernel in
    O(N 2^N); the dense form is materialized on demand (and cached) up to
    ``dense_cap`` sites.
    """

    def __init__(self, local: LocalOperator, n_sites: int, dense_cap: Optional[int] = None):
        if not isinstance(local, LocalOperator):
            local = LocalOperator(local)
        if n_sites < 1:
            raise DomainError(f"n_sites must be positive, got {n_sites}")
        self.local = local
        self.n_sites = int(n_sites)
        self.dense_cap = DEFAULTS.dense_cap if dense_cap is None else int(dense_cap)
        self._dense: Optional[np.ndarray] = None
        self._eigenvalues: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return 1 << self.n_sites

    def apply(self, vec) -> np.ndarray:
        """Matrix-free product with a length-2^N vector (pair (0,1) first)."""
        v = np.asarray(vec, dtype=np.complex128).reshape(-1)
        if v.shape[0] != self.dim:
            raise DimensionMismatch(
                f"vector length {v.shape[0]} does not match 2^{self.n_sites}"
            )
        return kernels.sweep(v, self.local.entries, self.n_sites)

    def materialize(self) -> np.ndarray:
        """Dense form; column j is the image of basis vector j.  Cached."""
        if self._dense is None:
            if self.n_sites > self.dense_cap:
                raise SizeExceeded(
                    f"N={self.n_sites} exceeds the dense cap {self.dense_cap}"
                )
            eye = np.eye(self.dim, dtype=np.complex128)
            dense = kernels.sweep(
                eye.reshape(-1), self.local.entries, self.n_sites, tail=self.dim
            ).reshape(self.dim, self.dim)
            dense.setflags(write=False)
            self._dense = dense
        return self._dense

    def trace_powers(self, r_max: int) -> TraceSequence:
        """tr(Q^r) for r = 1..r_max, dense below the cap, matrix-free above."""
        if r_max < 1:
            raise DomainError(f"r_max must be positive, got {r_max}")
        if self.n_sites <= self.dense_cap:
            base = self.materialize()
            values = np.empty(r_max, dtype=np.complex128)
            power = base
            values[0] = np.trace(power)
            for r in range(1, r_max):
                power = power @ base
                values[r] = np.trace(power)
        else:
            values = self._trace_powers_matrix_free(r_max)
        return TraceSequence(self.n_sites, values)

    def _trace_powers_matrix_free(self, r_max: int) -> np.ndarray:
        if self.n_sites > DEFAULTS.matrix_free_warn:
            warnings.warn(
                f"matrix-free trace accumulation costs O(r 4^N); N={self.n_sites} "
                "will be slow",
                RuntimeWarning,
                stacklevel=3,
            )
        dim = self.dim
        values = np.zeros(r_max, dtype=np.complex128)
        chunk = min(dim, 256)
        # fixed chunk order keeps the accumulation deterministic
        for start in range(0, dim, chunk):
            width = min(chunk, dim - start)
            block = np.zeros((dim, width), dtype=np.complex128)
            block[start:start + width, :] = np.eye(width)
            flat = block.reshape(-1)
            for r in range(r_max):
                flat = kernels.sweep(flat, self.local.entries, self.n_sites, tail=width)
                values[r] += flat.reshape(dim, width)[start:start + width, :].trace()
        return values

    def eigenvalues(self) -> np.ndarray:
        """All 2^N eigenvalues of the dense form, sorted by (re, im).  Cached."""
        if self._eigenvalues is None:
            dense = self.materialize()
            try:
                eig = np.linalg.eigvals(dense)
            except np.linalg.LinAlgError as exc:
                raise ConvergenceFailure(
                    f"eigensolver exhausted its {30 * self.dim} QR iteration budget: {exc}"
                )
            eig = eig[np.lexsort((eig.imag, eig.real))]
            eig.setflags(write=False)
            self._eigenvalues = eig
        return self._eigenvalues

    def log_det_factor(self, u) -> complex:
        """Mean principal log of the factors 1 - u*lambda over the spectrum.

        Equals the log of the inverse zeta-type function without ever
        taking a 2^N-th root, so the branch is unambiguous.
        """
        lam = self.eigenvalues()
        factors = 1.0 - complex(u) * lam
        if np.min(np.abs(factors)) < DEFAULTS.singular_eps:
            raise SingularAtU(f"1 - u*lambda vanishes at u={u}")
        return complex(np.sum(np.log(factors)) / self.dim)

    def power_equals_identity(self, r: int, tol: float) -> bool:
        """Whether Q^r is the identity to max-abs tolerance ``tol``."""
        if r < 1:
            raise DomainError(f"power must be positive, got {r}")
        if self.n_sites <= self.dense_cap:
            power = np.linalg.matrix_power(self.materialize(), r)
            return bool(np.max(np.abs(power - np.eye(self.dim))) <= tol)
        dim = self.dim
        chunk = min(dim, 256)
        for start in range(0, dim, chunk):
            width = min(chunk, dim - start)
            block = np.zeros((dim, width), dtype=np.complex128)
            block[start:start + width, :] = np.eye(width)
            flat = block.reshape(-1)
            for _ in range(r):
                flat = kernels.sweep(flat, self.local.entries, self.n_sites, tail=width)
            if np.max(np.abs(flat.reshape(dim, width) - block)) > tol:
                return False
        return True
