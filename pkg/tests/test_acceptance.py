"""One test per acceptance criterion, each at its stated tolerances and time budget.

Every criterion prints one PASS/FAIL/INCONCLUSIVE line (also collected into
the pytest terminal summary).  A red criterion is reported as a failing test.
Run directly with ``python tests/test_acceptance.py`` for the lines alone.
"""

import sys

import pytest

from polyharmonic.suites import _CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(_CRITERIA))
def test_criterion(number, acceptance_lines):
    res = run_criterion(number)
    line = res.line()
    print(line)
    acceptance_lines.append(line)
    for r in res.reports:
        if r.status != "pass":
            print("   ", r.line())
    assert res.status == "pass", line


if __name__ == "__main__":
    codes = []
    for k in sorted(_CRITERIA):
        res = run_criterion(k)
        print(res.line(), flush=True)
        codes.append(res.status)
    sys.exit(0 if all(c == "pass" for c in codes) else 1)
