"""The acceptance gate: one test per criterion, each printing its verdict.

Criterion 7 is expected to fail and is marked as a strict xfail: the
unconditional seconda_tris -> seconda implication it demands is false
whenever -3 is a square in GF(q) (q = 1 mod 3; first counterexamples at
q = 7).  The criterion is still evaluated exactly as stated; the true,
conditional law is covered by tests/test_conds.py.  Everything else must
pass at the stated scopes with no tolerance.
"""

import pytest

from permtri.acceptance import CRITERIA, DEFAULT_MAX_Q

_BY_NUM = {num: (label, fn) for num, label, fn in CRITERIA}


def _run(num):
    label, fn = _BY_NUM[num]
    passed, detail = fn(DEFAULT_MAX_Q)
    print(f"criterion {num}: {'PASS' if passed else 'FAIL'} - {label} [{detail}]")
    return passed


def test_criterion_01_closed_form_core():
    assert _run(1)


def test_criterion_02_closed_form_extended():
    assert _run(2)


def test_criterion_03_char2():
    assert _run(3)


def test_criterion_04_char3():
    assert _run(4)


def test_criterion_05_agw_equivalence():
    assert _run(5)


def test_criterion_06_hasse_weil_threshold():
    assert _run(6)


@pytest.mark.xfail(
    strict=True,
    reason=(
        "known false claim, kept red on purpose: the unconditional "
        "seconda_tris -> seconda implication fails for q = 1 mod 3 "
        "(-3 a square); see README and tests/test_conds.py for the "
        "verified conditional law"
    ),
)
def test_criterion_07_gcd_structure():
    assert _run(7)


def test_criterion_08_curve_identities():
    assert _run(8)


def test_criterion_09_no_rational_points():
    assert _run(9)


def test_criterion_10_resultant_relation():
    assert _run(10)


def test_criterion_11_scan_determinism():
    assert _run(11)
