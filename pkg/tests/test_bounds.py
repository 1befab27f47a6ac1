from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathagg.utils.bounds import (
    ceil_log2,
    exceeds_paper_bound,
    floor_log2_half,
    floor_log43,
    paper_switch_bound,
    safe_iteration_bound,
    safe_switch_bound,
)


@pytest.mark.parametrize("k,expected", [(1, 0), (2, 2), (6, 6), (126, 16), (10000, 32)])
def test_floor_log43(k, expected):
    assert floor_log43(k) == expected


@given(st.integers(1, 10 ** 12))
def test_floor_log43_brackets_k(k):
    t = floor_log43(k)
    assert Fraction(4, 3) ** t <= k < Fraction(4, 3) ** (t + 1)


def test_safe_bounds():
    assert safe_iteration_bound(0) == 0
    assert safe_iteration_bound(1) == 1
    assert safe_switch_bound(6) == 14
    assert safe_switch_bound(126) == 34


def test_paper_bound_comparison_is_exact():
    assert paper_switch_bound(1) == 0.0
    assert paper_switch_bound(2) == pytest.approx(4.818, abs=1e-3)
    assert not exceeds_paper_bound(4, 2)
    assert exceeds_paper_bound(5, 2)
    assert exceeds_paper_bound(1, 0)
    assert not exceeds_paper_bound(0, 1)
    assert exceeds_paper_bound(1, 1)


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10), (1025, 11)])
def test_ceil_log2(n, expected):
    assert ceil_log2(n) == expected


@pytest.mark.parametrize("n,expected", [(2, 0), (3, 0), (7, 1), (8, 2), (15, 2), (31, 3)])
def test_floor_log2_half(n, expected):
    assert floor_log2_half(n) == expected


def test_invalid_arguments():
    with pytest.raises(ValueError):
        floor_log43(0)
    with pytest.raises(ValueError):
        floor_log2_half(1)
