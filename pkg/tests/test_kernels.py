"""Backend equivalence and correctness of the two-site sweep kernels."""

import numpy as np
import pytest

from ipszeta import ModelSpec, build_local, kernels

from helpers import product_global

MODELS = (
    ModelSpec.dk(0.3, 0.6),
    ModelSpec.generalized_dk(0.2, 1.1, 2.5, 0.9),
    ModelSpec.qca1(0.4, 1.1),
    ModelSpec.qca2(0.7, 2.2),
)


def random_vec(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n)


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
    assert kernels.sweep is (
        kernels.compiled_sweep if kernels.BACKEND == "compiled" else kernels.numpy_sweep
    )


@pytest.mark.parametrize("spec", MODELS, ids=[m.model for m in MODELS])
@pytest.mark.parametrize("n", range(1, 7))
def test_backends_agree_on_vectors(spec, n):
    if kernels.compiled_sweep is None:
        pytest.skip("compiled kernel not built")
    local = build_local(spec).entries
    v = random_vec(n, seed=100 * n)
    a = kernels.numpy_sweep(v, local, n)
    b = kernels.compiled_sweep(v, local, n)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)


def test_backends_agree_on_matrices():
    if kernels.compiled_sweep is None:
        pytest.skip("compiled kernel not built")
    local = build_local(ModelSpec.qca1(0.9, 0.2)).entries
    n, dim = 4, 16
    eye = np.eye(dim, dtype=complex).reshape(-1)
    a = kernels.numpy_sweep(eye, local, n, tail=dim)
    b = kernels.compiled_sweep(eye, local, n, tail=dim)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)


@pytest.mark.parametrize("spec", MODELS, ids=[m.model for m in MODELS])
@pytest.mark.parametrize("n", range(2, 6))
def test_sweep_matches_product_oracle(spec, n):
    local = build_local(spec).entries
    oracle = product_global(local, n)
    v = random_vec(n, seed=7 * n + 1)
    np.testing.assert_allclose(kernels.sweep(v, local, n), oracle @ v,
                               rtol=0, atol=1e-12)


def test_sweep_leaves_input_untouched():
    local = build_local(ModelSpec.qca2(0.3, 0.8)).entries
    v = random_vec(3, seed=5)
    keep = v.copy()
    kernels.sweep(v, local, 3)
    np.testing.assert_array_equal(v, keep)


def test_single_site_is_identity():
    local = build_local(ModelSpec.dk(0.2, 0.9)).entries
    v = random_vec(1, seed=2)
    np.testing.assert_allclose(kernels.sweep(v, local, 1), v, rtol=0, atol=0)
