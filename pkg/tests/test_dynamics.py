"""State construction, evolution, probabilities and marginals."""

import math

import numpy as np
import pytest

from ipszeta import (
    Configuration,
    DimensionMismatch,
    DomainError,
    GlobalOperator,
    InvariantDrift,
    KindMismatch,
    ModelSpec,
    StateKind,
    StateVector,
    build_local,
    configuration_probability,
    evolve,
    evolve_trajectory,
    initial_state,
    site_marginals,
)

from helpers import one_step_distribution

RULE90 = build_local(ModelSpec.qca2(0, 0))


def _op(spec, n):
    return GlobalOperator(build_local(spec), n)


class TestInitialState:
    def test_three_site_example(self):
        state = initial_state(Configuration((0, 0, 1)), StateKind.PCA_PROBABILITY)
        expected = np.zeros(8)
        expected[1] = 1.0
        np.testing.assert_array_equal(state.components, expected)
        assert state.time_step == 0

    def test_single_site(self):
        state = initial_state(Configuration((0,)), StateKind.QCA_AMPLITUDE)
        np.testing.assert_array_equal(state.components, [1.0, 0.0])

    def test_two_site_index(self):
        state = initial_state(Configuration((1, 1)), StateKind.PCA_PROBABILITY)
        assert state.components[3] == 1.0


class TestStateInvariants:
    def test_pca_rejects_negative(self):
        with pytest.raises(DomainError):
            StateVector(1, StateKind.PCA_PROBABILITY, np.array([1.5, -0.5]))

    def test_pca_rejects_complex(self):
        with pytest.raises(DomainError):
            StateVector(1, StateKind.PCA_PROBABILITY, np.array([0.5, 0.5j]))

    def test_pca_rejects_unnormalized(self):
        with pytest.raises(InvariantDrift):
            StateVector(1, StateKind.PCA_PROBABILITY, np.array([0.7, 0.7]))

    def test_qca_rejects_unnormalized(self):
        with pytest.raises(InvariantDrift):
            StateVector(1, StateKind.QCA_AMPLITUDE, np.array([0.5, 0.5]))

    def test_length_checked(self):
        with pytest.raises(DimensionMismatch):
            StateVector(3, StateKind.QCA_AMPLITUDE, np.ones(4) / 2.0)


class TestEvolve:
    def test_rule90_is_deterministic(self):
        op = GlobalOperator(RULE90, 3)
        state = initial_state(Configuration((0, 0, 1)), StateKind.PCA_PROBABILITY)
        out = evolve(state, op, 1)
        assert configuration_probability(out, Configuration((0, 1, 1))) == 1.0
        assert out.time_step == 1

    def test_pca_branch_probability(self):
        # one step from (0,0,1): the (0,1,1) branch carries weight 1 * p
        p, q = 0.3, 0.6
        out = evolve(initial_state(Configuration((0, 0, 1)), StateKind.PCA_PROBABILITY),
                     _op(ModelSpec.dk(p, q), 3), 1)
        assert configuration_probability(out, Configuration((0, 1, 1))) == pytest.approx(p)

    def test_qca_branch_probability(self):
        x1, x2 = 0.4, 1.1
        out = evolve(initial_state(Configuration((0, 0, 1)), StateKind.QCA_AMPLITUDE),
                     _op(ModelSpec.qca1(x1, x2), 3), 1)
        expected = abs(math.cos(x1) * math.sin(x2)) ** 2
        assert configuration_probability(out, Configuration((0, 1, 1))) == pytest.approx(expected)

    def test_kind_mismatch(self):
        pca_state = initial_state(Configuration((0, 0)), StateKind.PCA_PROBABILITY)
        with pytest.raises(KindMismatch):
            evolve(pca_state, _op(ModelSpec.qca1(0.4, 1.1), 2), 1)
        qca_state = initial_state(Configuration((0, 0)), StateKind.QCA_AMPLITUDE)
        with pytest.raises(KindMismatch):
            evolve(qca_state, _op(ModelSpec.dk(0.3, 0.7), 2), 1)

    def test_site_count_mismatch(self):
        state = initial_state(Configuration((0, 0)), StateKind.PCA_PROBABILITY)
        with pytest.raises(DimensionMismatch):
            evolve(state, _op(ModelSpec.dk(0.3, 0.7), 3), 1)

    @pytest.mark.parametrize("p", (0.0, 0.35, 0.8, 1.0))
    @pytest.mark.parametrize("n", (2, 5, 10))
    def test_probability_conserved_100_steps(self, p, n):
        op = _op(ModelSpec.dk(p, 1 - p / 2), n)
        state = initial_state(Configuration((1,) * n), StateKind.PCA_PROBABILITY)
        out = evolve(state, op, 100)
        assert abs(out.components.real.sum() - 1.0) < 1e-10

    @pytest.mark.parametrize("model", ("qca1", "qca2"))
    @pytest.mark.parametrize("angles", ((0.4, 1.1), (2.0, 5.5), (math.pi / 2, 0.0)))
    def test_norm_conserved_100_steps(self, model, angles):
        op = _op(ModelSpec(model, angles), 6)
        state = initial_state(Configuration((0, 1) * 3), StateKind.QCA_AMPLITUDE)
        out = evolve(state, op, 100)
        assert abs(np.linalg.norm(out.components) - 1.0) < 1e-10

    @pytest.mark.parametrize("n,period", ((2, 2), (3, 4), (4, 4)))
    def test_rule90_returns_after_period(self, n, period):
        op = GlobalOperator(RULE90, n)
        start = initial_state(Configuration.from_index(1, n), StateKind.PCA_PROBABILITY)
        out = evolve(start, op, period)
        np.testing.assert_allclose(out.components, start.components, rtol=0, atol=1e-12)
        half = evolve(start, op, period // 2)
        assert np.max(np.abs(half.components - start.components)) > 0.5

    def test_drift_detected(self):
        # columns summing to 1 + 5e-10 pass classification but drift over
        # 100 steps on 4 sites
        m = build_local(ModelSpec.dk(0.4, 0.7)).entries.copy()
        m += np.eye(4) * 5e-10
        op = GlobalOperator(build_local(ModelSpec.custom(m)), 4)
        state = StateVector(4, StateKind.PCA_PROBABILITY, np.full(16, 1 / 16))
        with pytest.raises(InvariantDrift):
            evolve(state, op, 100)


class TestObservables:
    def test_basis_marginals(self):
        state = initial_state(Configuration((0, 0, 1)), StateKind.PCA_PROBABILITY)
        np.testing.assert_array_equal(site_marginals(state), [0.0, 0.0, 1.0])

    def test_uniform_marginals(self):
        state = StateVector(2, StateKind.PCA_PROBABILITY, np.full(4, 0.25))
        np.testing.assert_allclose(site_marginals(state), [0.5, 0.5], rtol=0, atol=0)

    def test_single_site_marginal(self):
        state = initial_state(Configuration((1,)), StateKind.PCA_PROBABILITY)
        np.testing.assert_array_equal(site_marginals(state), [1.0])

    def test_dk_one_step_marginals_match_enumeration(self):
        # oracle: exhaustive outcome weights of one step from all-ones
        p = 0.3
        local = build_local(ModelSpec.dk(p, p))
        dist = one_step_distribution(local.entries, (1, 1, 1, 1))
        oracle = np.zeros(4)
        for out_bits, w in dist.items():
            for x, b in enumerate(out_bits):
                if b:
                    oracle[x] += w.real
        out = evolve(initial_state(Configuration((1, 1, 1, 1)), StateKind.PCA_PROBABILITY),
                     _op(ModelSpec.dk(p, p), 4), 1)
        got = site_marginals(out)
        np.testing.assert_allclose(got, oracle, rtol=0, atol=1e-14)
        # frozen values computed with the oracle above: only interior sites
        # flip (each independently with weight 1-q) and the last never does
        np.testing.assert_allclose(got, [0.3, 0.3, 0.3, 1.0], rtol=0, atol=1e-14)

    def test_qca_probabilities_sum_to_one(self):
        out = evolve(initial_state(Configuration((0, 1, 0)), StateKind.QCA_AMPLITUDE),
                     _op(ModelSpec.qca2(0.7, 1.9), 3), 3)
        assert out.probabilities().sum() == pytest.approx(1.0, abs=1e-12)

    def test_trajectory_steps(self):
        op = GlobalOperator(RULE90, 3)
        state = initial_state(Configuration((0, 0, 1)), StateKind.PCA_PROBABILITY)
        rows = list(evolve_trajectory(state, op, 2))
        assert [r[0] for r in rows] == [0, 1, 2]
        np.testing.assert_array_equal(rows[0][1], [0, 0, 1])
        np.testing.assert_array_equal(rows[1][1], [0, 1, 1])
