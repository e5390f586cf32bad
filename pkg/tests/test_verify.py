"""The formula registry: every verifier runs, passes, and is deterministic."""

import json

import pytest

from ipszeta import DomainError, FORMULA_IDS, run_formula

# small overrides keep this module fast; full default grids run in the
# acceptance suite
FAST_OVERRIDES = {
    "thm5_3": dict(n_values=(2, 4), r_max=6),
    "cor5_4": dict(n_values=(1, 3, 5), r_max=8),
    "thm5_6": dict(n_values=(1, 3, 5), r_max=8),
    "cor5_7": dict(n_values=(16, 64, 256)),
    "prop6_r1": dict(n_values=(1, 4, 7)),
    "prop6_r2": dict(n_values=(1, 4, 7)),
    "prop6_pi2": dict(n_values=(1, 3, 6), r_max=6),
    "thm6_pi2zeta": dict(n_values=(1, 3, 5)),
    "prop6_rule90_r": dict(),
    "thm6_rule90zeta": dict(),
    "conj_rule90": dict(n_values=(5, 6), r_max=48),
}


def test_registry_is_complete():
    assert set(FORMULA_IDS) == set(FAST_OVERRIDES)


@pytest.mark.parametrize("formula_id", FORMULA_IDS)
def test_formula_passes(formula_id):
    report = run_formula(formula_id, **FAST_OVERRIDES[formula_id])
    assert report.formula_id == formula_id
    assert report.passed, report.witness
    assert report.max_abs_error <= report.tolerance
    assert "error" in report.witness


def test_unknown_formula_id():
    with pytest.raises(DomainError):
        run_formula("thm9_9")


def test_reports_are_deterministic():
    a = run_formula("prop6_rule90_r").to_json()
    b = run_formula("prop6_rule90_r").to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_tolerance_override_can_fail():
    report = run_formula("cor5_4", n_values=(2, 3), r_max=4, tol=1e-30)
    assert not report.passed
    assert report.max_abs_error > 1e-30


def test_conjecture_report_is_labeled():
    report = run_formula("conj_rule90", n_values=(5,), r_max=48)
    assert report.grid["conjecture"] is True
