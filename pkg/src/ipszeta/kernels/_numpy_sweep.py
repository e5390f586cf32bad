"""Pure-numpy fallback for the two-site update sweep."""

import numpy as np


def sweep(vec, local, n_sites, tail=1):
    """Apply the chain of two-site updates to a flat complex array.

    The array holds ``tail`` interleaved vectors of length ``2**n_sites``
    (configuration index major, copy index minor), so a row-major dense
    matrix is swept column-by-column with ``tail`` equal to its column
    count.  Site pairs update left to right: (0, 1) first,
    (n_sites-2, n_sites-1) last.  Entries of ``local`` at positions where
    the right site would change are assumed to be zero.

    Returns a fresh array; the input is never modified.
    """
    out = np.array(vec, dtype=np.complex128, copy=True).reshape(-1)
    q = np.asarray(local, dtype=np.complex128)
    for x in range(n_sites - 1):
        inner = (1 << (n_sites - 2 - x)) * tail
        # middle axis is the packed site pair 2k+l, exactly the row index of q
        out = np.matmul(q, out.reshape(-1, 4, inner)).reshape(-1)
    return out
