"""Acceptance gate: one pass/fail line per criterion, at the stated tolerances."""

import pytest

from equiloc.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = run_criterion(number, seed=0)
    print(result.line())
    assert result.passed, result.line()


def test_selftest_runs_the_suite(capsys):
    from equiloc.cli import run

    code = run(["selftest"])
    out, err = capsys.readouterr()
    print(err)
    assert code == 0
    assert err.count("[PASS]") == len(CRITERIA)
