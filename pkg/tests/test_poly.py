from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from symrank import poly


def test_gcd_and_division():
    a = poly.mul([-1, 1], [-2, 1])  # (t-1)(t-2)
    b = poly.mul([-1, 1], [3, 1])
    assert poly.gcd_poly(a, b) == [-1, 1]
    q, r = poly.divmod_(a, [-1, 1])
    assert q == [-2, 1] and r == []


def test_squarefree():
    assert poly.is_squarefree([-2, 0, 1])
    assert not poly.is_squarefree(poly.power([-1, 1], 2))
    assert poly.is_squarefree([1, 1])  # linear
    assert not poly.is_squarefree([])


def test_vanishing_order():
    a = poly.mul(poly.power([-2, 1], 3), [1, 1])
    assert poly.vanishing_order(a, 2) == 3
    assert poly.vanishing_order(a, 0) == 0
    assert poly.vanishing_order([], 5) is None


def test_rational_roots():
    a = poly.mul(poly.mul([-1, 2], [3, 1]), [1, 0, 1])  # (2t-1)(t+3)(t^2+1)
    assert poly.rational_roots(a) == [Fraction(-3), Fraction(1, 2)]
    assert poly.rational_roots([0, 0, 1]) == [0]


@settings(max_examples=80, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_squarefree_matches_discriminant_for_cubics(a, b, c):
    # monic cubic with these roots has a repeated root iff two of them coincide
    p = poly.mul(poly.mul([-a, 1], [-b, 1]), [-c, 1])
    assert poly.is_squarefree(p) == (len({a, b, c}) == 3)


@settings(max_examples=80, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 9))
def test_squarefree_matches_discriminant_for_quadratics(b, c, a):
    assert poly.is_squarefree([c, b, a]) == (b * b - 4 * a * c != 0)
