"""The acceptance criteria, one pass/fail line each (run with ``-s`` to see them)."""

import pytest

from gridmagic import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda c: f"criterion{c.number:02d}")
def test_criterion(criterion):
    outcome = acceptance.run(criterion)
    print(outcome.line())
    assert outcome.passed, outcome.line()


def test_criteria_are_numbered_1_to_15():
    assert [c.number for c in acceptance.CRITERIA] == list(range(1, 16))
