"""Brute-force oracles used across the suite.

Both oracles build the global operator without touching the library's
sweep kernel: one from the closed product of transition weights (the
weight of pair x is ``local[2*out_x + in_{x+1}, 2*in_x + in_{x+1}]`` and
the last site never changes), the other by multiplying explicit Kronecker
embeddings of the local operator.
"""

from itertools import product

import numpy as np


def bits_of(index: int, n: int) -> tuple:
    return tuple((index >> (n - 1 - x)) & 1 for x in range(n))


def product_entry(local: np.ndarray, out_bits, in_bits) -> complex:
    if out_bits[-1] != in_bits[-1]:
        return 0.0j
    w = 1.0 + 0.0j
    for x in range(len(in_bits) - 1):
        w *= local[2 * out_bits[x] + in_bits[x + 1], 2 * in_bits[x] + in_bits[x + 1]]
    return w


def product_global(local: np.ndarray, n: int) -> np.ndarray:
    if n == 1:
        return np.eye(2, dtype=complex)
    dim = 2 ** n
    g = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        in_bits = bits_of(col, n)
        for row in range(dim):
            g[row, col] = product_entry(local, bits_of(row, n), in_bits)
    return g


def kron_global(local: np.ndarray, n: int) -> np.ndarray:
    if n == 1:
        return np.eye(2, dtype=complex)
    g = np.eye(2 ** n, dtype=complex)
    for x in range(n - 1):  # pair (0, 1) applies first, so it sits rightmost
        factor = np.kron(np.kron(np.eye(2 ** x), local), np.eye(2 ** (n - 2 - x)))
        g = factor @ g
    return g


def one_step_distribution(local: np.ndarray, start_bits) -> dict:
    """Outcome weights of a single step from a basis configuration."""
    n = len(start_bits)
    dist = {}
    for out_bits in product((0, 1), repeat=n):
        w = product_entry(local, out_bits, tuple(start_bits))
        if w != 0:
            dist[out_bits] = w
    return dist
