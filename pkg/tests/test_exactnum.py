from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from triad.errors import ExactOverflowError, TriadError
from triad.exactnum import CAPACITY, ExactScalar, affine_third, arith, make, midpoint, to_float


def test_make_normalizes():
    x = make(6, 18)
    assert (x.numerator, x.denominator) == (1, 3)
    y = make(2, -3)
    assert (y.numerator, y.denominator) == (-2, 3)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        make(1, 0)
    with pytest.raises(TriadError):
        make(1, 0)


def test_arith_examples():
    third = make(1, 3)
    assert arith(third, third, "add") == make(2, 3)
    assert arith(make(2, 3), third, "sub") == third
    assert arith(make(5, 9), make(4, 9), "cmp") == "greater"
    assert arith(make(4, 9), make(5, 9), "cmp") == "less"
    assert arith(make(2, 6), third, "cmp") == "equal"
    assert arith(make(2, 3), make(3, 4), "mul") == make(1, 2)
    with pytest.raises(ValueError):
        arith(third, third, "div")


def test_affine_third_examples():
    assert affine_third(make(0), make(1), 2) == make(2, 3)
    assert affine_third(make(2, 3), make(1, 3), 2) == make(4, 9)
    a = make(5, 7)
    assert affine_third(a, a, 1) == a
    assert affine_third(a, a, 2) == a
    with pytest.raises(ValueError):
        affine_third(a, a, 3)


def test_midpoint_examples():
    assert midpoint(make(0), make(1)) == make(1, 2)
    assert midpoint(make(1, 3), make(2, 3)) == make(1, 2)
    assert midpoint(make(1, 3), make(1, 3)) == make(1, 3)


def test_to_float():
    assert to_float(make(1, 3)) == 1 / 3
    assert to_float(make(2, 3)) == 2 / 3
    assert to_float(make(-1, 2)) == -0.5


def test_path_independence():
    a = affine_third(make(0), make(1), 2)
    b = affine_third(make(1), make(0), 1)
    c = midpoint(make(1, 3), make(1))
    assert a == b == c
    assert hash(a) == hash(b) == hash(c)
    assert affine_third(make(1, 3), make(1), 1) == make(5, 9)
    assert (a.numerator, a.denominator) == (c.numerator, c.denominator)


def test_string_round_trip():
    for x in (make(2, 3), make(-7, 9), make(0), make(5)):
        assert ExactScalar.parse(str(x)) == x
    assert str(make(2, 3)) == "2/3"
    assert ExactScalar.parse("4") == make(4)
    with pytest.raises(ValueError):
        ExactScalar.parse("two thirds")


def test_immutable():
    x = make(1, 3)
    with pytest.raises(AttributeError):
        x.numerator = 2


def test_capacity_overflow_is_raised():
    with pytest.raises(ExactOverflowError):
        ExactScalar(CAPACITY + 1)
    with pytest.raises(OverflowError):
        make(1, 2**62) * make(1, 3)
    # normalization happens before the capacity check
    assert ExactScalar(2**70, 2**70) == make(1)


def test_depth_40_trisection_exact_or_overflow():
    lo, hi = make(0), make(1)
    exact_lo, exact_hi = Fraction(0), Fraction(1)
    try:
        for _ in range(40):
            lo, hi = affine_third(lo, hi, 1), affine_third(lo, hi, 2)
            exact_lo, exact_hi = exact_lo + (exact_hi - exact_lo) / 3, exact_lo + 2 * (exact_hi - exact_lo) / 3
    except ExactOverflowError:
        # 3**40 > 2**63: the overflow must surface, never wrap
        assert exact_hi.denominator > CAPACITY or 3 * exact_hi.denominator > CAPACITY
    else:
        pytest.fail("3**40 does not fit in 64 bits; expected an overflow error")
    # everything computed before the error was exact
    assert Fraction(lo.numerator, lo.denominator) == exact_lo
    assert Fraction(hi.numerator, hi.denominator) == exact_hi


def _is_2_3_smooth(n):
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n == 1


ops = hs.sampled_from(["third1", "third2", "mid"])


@settings(max_examples=200, deadline=None)
@given(hs.lists(hs.tuples(ops, hs.booleans()), min_size=1, max_size=25))
def test_closure_under_trisection_and_halving(steps):
    lo, hi = make(0), make(1)
    flo, fhi = Fraction(0), Fraction(1)
    for op, keep_low in steps:
        if op == "mid":
            m, fm = midpoint(lo, hi), (flo + fhi) / 2
        else:
            k = 1 if op == "third1" else 2
            m, fm = affine_third(lo, hi, k), flo + k * (fhi - flo) / 3
        if keep_low:
            hi, fhi = m, fm
        else:
            lo, flo = m, fm
        for x, fx in ((lo, flo), (hi, fhi)):
            assert Fraction(x.numerator, x.denominator) == fx
            assert _is_2_3_smooth(x.denominator)
    for x in (lo + hi, hi - lo, lo * hi):
        assert _is_2_3_smooth(x.denominator)


@given(hs.integers(-10**6, 10**6), hs.integers(1, 10**6),
       hs.integers(-10**6, 10**6), hs.integers(1, 10**6))
def test_order_matches_fractions(a, b, c, d):
    x, y = make(a, b), make(c, d)
    fx, fy = Fraction(a, b), Fraction(c, d)
    assert (x < y) == (fx < fy)
    assert (x == y) == (fx == fy)
    assert Fraction((x + y).numerator, (x + y).denominator) == fx + fy
