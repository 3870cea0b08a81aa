"""Acceptance criteria AC1-AC12, one test each, at their stated tolerances and time budgets."""
from __future__ import annotations

import pytest

import conftest
from cubedensity import acceptance


def _run(number: int) -> acceptance.CheckResult:
    result = acceptance.CHECKS[number]()
    line = result.line()
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return result


@pytest.mark.parametrize("number", sorted(acceptance.CHECKS))
def test_acceptance_criterion(number):
    result = _run(number)
    assert result.passed, result.line()


def test_quick_suite_exhaustive_variant():
    r = acceptance.check_exhaustive(quick=True)
    assert r.passed and r.details


def test_reference_bounds_consistent():
    assert acceptance.bounds_consistent()
