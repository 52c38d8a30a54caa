"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import pytest

from circlelagrange.acceptance import CRITERIA, run_criterion

BY_NUMBER = {c.number: c for c in CRITERIA}


def _run(number):
    result = run_criterion(BY_NUMBER[number])
    print(result.line())
    assert result.passed, result.detail


def test_criterion_01_top10_spectrum_table():
    _run(1)


def test_criterion_02_fixed_point_coordinates():
    _run(2)


def test_criterion_03_markoff_and_berggren_trees():
    _run(3)


def test_criterion_04_markoff_equation_depth_12():
    _run(4)


def test_criterion_05_cohn_trace_and_fricke_identities():
    _run(5)


def test_criterion_06_christoffel_markoff_correspondence():
    _run(6)


def test_criterion_07_conjugacy_and_orthogonality():
    _run(7)


def test_criterion_08_oracle_agreement():
    _run(8)


def test_criterion_09_perron_residual():
    _run(9)


def test_criterion_10_forbidden_blocks():
    _run(10)


def test_criterion_11_best_approximants():
    _run(11)


def test_every_criterion_has_a_test():
    names = {n for n in globals() if n.startswith("test_criterion_")}
    assert len(names) == len(CRITERIA) == 11
    assert sorted(BY_NUMBER) == list(range(1, 12))


@pytest.mark.parametrize("number", [1, 4, 8])
def test_budgets_declared(number):
    assert BY_NUMBER[number].budget is not None
