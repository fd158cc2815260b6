"""Golden-value table: one printed line per check, at the published tolerances.

Run with ``pytest -s tests/test_acceptance.py`` to see the table.
"""

import pytest

from complexkit.scenarios import ACCEPTANCE, verify_criterion


@pytest.mark.parametrize("number", sorted(ACCEPTANCE), ids=lambda n: f"criterion-{n}-{ACCEPTANCE[n][0]}")
def test_criterion(number):
    rows = verify_criterion(number)
    assert rows
    for row in rows:
        print(row.line())
    failed = [row.line() for row in rows if not row.passed]
    assert not failed, "\n".join(failed)
