"""Acceptance criteria; run with ``pytest tests/test_acceptance.py -s`` to see the report."""

import pytest

from mazur_floer import acceptance


@pytest.mark.parametrize("check", acceptance.CHECKS, ids=lambda c: c.__name__.removeprefix("check_"))
def test_criterion(check):
    result = check()
    print(result.line())
    assert result.ok, result.line()


def test_run_all_reports_every_criterion():
    results = acceptance.run_all()
    assert [r.number for r in results] == list(range(1, len(acceptance.CHECKS) + 1))
    for r in results:
        print(r.line())


def test_crashing_check_is_reported_as_failure(monkeypatch):
    def broken():
        raise RuntimeError("boom")

    monkeypatch.setattr(acceptance, "CHECKS", [broken])
    (r,) = acceptance.run_all()
    assert not r.ok and "boom" in r.line() and r.line().startswith("criterion 1: FAIL")
