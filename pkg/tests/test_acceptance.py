"""Acceptance criteria 1-10, one pass/fail line each.

Scale follows TSCHIRN_SUITE_SCALE (default "full").
"""

import pytest

from tschirn.suite import CRITERIA, SuiteConfig


@pytest.fixture(scope="module")
def cfg():
    return SuiteConfig.from_env()


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(criterion, cfg, capsys):
    result = criterion(cfg)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line() + "\n" + "\n".join(map(str, result.rows[:10]))
