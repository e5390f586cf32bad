"""JSON and CSV encodings shared by the library and the CLI.

Complex scalars serialize as ``[re, im]`` pairs and matrices as row-major
lists of such pairs.  CSV writers carry fixed headers documented per
function.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch


def complex_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def from_pair(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    if len(pair) != 2:
        raise DimensionMismatch(f"expected [re, im], got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def matrix_pairs(m) -> list:
    """Row-major list of [re, im] pairs for a 2-D complex matrix."""
    m = np.asarray(m)
    return [complex_pair(z) for z in m.reshape(-1)]


def matrix_from_pairs(data, rows: int, cols: int) -> np.ndarray:
    if len(data) != rows * cols:
        raise DimensionMismatch(
            f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(data)}"
        )
    flat = np.array([from_pair(p) for p in data], dtype=np.complex128)
    return flat.reshape(rows, cols)


def trace_csv(trace_seq) -> str:
    """CSV table of trace powers: header r,trace_re,trace_im,c_r_re,c_r_im."""
    lines = ["r,trace_re,trace_im,c_r_re,c_r_im"]
    c = trace_seq.c_values
    for i, t in enumerate(trace_seq.values):
        lines.append(f"{i + 1},{t.real:.17g},{t.imag:.17g},{c[i].real:.17g},{c[i].imag:.17g}")
    return "\n".join(lines) + "\n"


def series_csv(series) -> str:
    """CSV table of log-series coefficients: header r,coeff_re,coeff_im."""
    lines = ["r,coeff_re,coeff_im"]
    for i, z in enumerate(series.coefficients):
        lines.append(f"{i + 1},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"


def spectrum_csv(eigenvalues) -> str:
    """CSV table of eigenvalues: header idx,re,im,abs."""
    lines = ["idx,re,im,abs"]
    for i, z in enumerate(eigenvalues):
        z = complex(z)
        lines.append(f"{i},{z.real:.17g},{z.imag:.17g},{abs(z):.17g}")
    return "\n".join(lines) + "\n"


def trajectory_csv(rows, n_sites: int) -> str:
    """CSV table of site marginals per step: header step,site_0,...,site_{N-1}."""
    header = "step," + ",".join(f"site_{x}" for x in range(n_sites))
    lines = [header]
    for step, marginals in rows:
        lines.append(f"{step}," + ",".join(f"{v:.17g}" for v in marginals))
    return "\n".join(lines) + "\n"
