from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrank.exact import rank, rref, span
from symrank.geom import (
    MonomialBasis,
    ParamCurve,
    ProjPoint,
    ReducibleConic,
    ambient_dim,
    compose_curve,
    conic_from_vectors,
    conic_through,
    curve_from_json,
    form_at,
    line_through,
    monomials,
    standard_conic,
    veronese,
    veronese_point_vector,
)


def P(*c):
    return ProjPoint(tuple(c))


def test_ambient_dim():
    assert ambient_dim(2, 4) == 14
    assert ambient_dim(1, 7) == 7
    assert ambient_dim(2, 12) == 90
    assert len(MonomialBasis(3, 12)) == ambient_dim(3, 12) + 1 == comb(15, 3)


def test_monomial_order_is_lex_with_x0_first():
    assert monomials(2, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert MonomialBasis(2, 2).index((0, 1, 1)) == 4


def test_projpoint_normalization():
    assert P(2, 4, 6) == P(1, 2, 3)
    assert P(0, -3, 6).coords == (0, 1, -2)
    assert P(Fraction(1, 2), 1).ints() == [1, 2]
    with pytest.raises(ValueError):
        P(0, 0, 0)
    assert P(1, 2).embed(3) == P(1, 2, 0, 0)


def test_veronese_examples():
    v = veronese(P(1, 0, 0), 3)
    assert v.coords[0] == 1 and not any(v.coords[1:])
    assert veronese(P(1, 1), 2) == P(1, 1, 1)
    assert veronese(P(1, 2), 3) == P(1, 2, 4, 8)


def test_compose_line_in_p1():
    L = line_through(P(1, 0), P(0, 1))
    assert compose_curve(L, 4) == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]


def test_span_dimensions_of_curve_images():
    L = line_through(P(1, 1, 1), P(1, 2, 3))
    C = standard_conic(2)
    assert L.span_dim(2) == 3
    assert C.span_dim(3) == 7
    for d in range(1, 16):
        assert L.span_dim(d) == d + 1
        assert C.span_dim(d) == 2 * d + 1


def test_line_through_contains_points():
    p, q = P(1, 1, 1), P(1, 2, 3)
    L = line_through(p, q)
    assert L.point(0) == p
    S = span(L.coefficient_vectors())
    assert S.contains(list(q.coords))
    assert form_at(L.equation(), q.coords) == 0
    assert line_through(P(1, 0, 0), P(0, 1, 0)).point(5) == P(1, 5, 0)
    with pytest.raises(ValueError):
        line_through(p, p)


def test_conic_equation_vanishes_on_parametrization():
    C = conic_from_vectors((1, 2, 0), (0, 1, 1), (3, 0, 1))
    f = C.equation()
    for t in range(-4, 5):
        assert form_at(f, C.vector(t)) == 0
    assert form_at(f, (1, 0, 0)) != 0


def test_conic_through_examples():
    C = standard_conic(2)
    fit = conic_through([C.point(t) for t in range(5)])
    assert fit.unique and not fit.degenerate
    # x0 x2 - x1^2, up to scale
    ratio = fit.form[(1, 0, 1)] / -fit.form[(0, 2, 0)]
    assert ratio == 1 and len(fit.form) == 2

    four_collinear = [P(1, t, 0) for t in range(4)] + [P(0, 0, 1)]
    fit = conic_through(four_collinear)
    assert fit.degenerate or not fit.unique

    on_a_line = [P(1, t, 0) for t in range(5)]
    assert conic_through(on_a_line).kernel_dim == 3


def test_points_on_rational_normal_curves_are_independent():
    L = line_through(P(1, 0, 2), P(0, 1, 1))
    C = standard_conic(2)
    for d in (3, 6, 9):
        assert rank([veronese_point_vector(L.point(t), d) for t in range(d + 1)]) == d + 1
        assert rank([veronese_point_vector(C.point(t), d) for t in range(2 * d + 1)]) == 2 * d + 1
        # one more point is dependent
        assert rank([veronese_point_vector(L.point(t), d) for t in range(d + 2)]) == d + 1


def test_jet_rows_start_with_the_point():
    C = standard_conic(2)
    rows = C.jet_rows(2, 3, 4)
    assert rows[0] == veronese_point_vector(C.point(2), 4)
    assert rank(rows) == 3


def test_reducible_conic():
    L1 = line_through(P(1, 0, 0), P(0, 1, 0))
    L2 = line_through(P(1, 0, 1), P(0, 0, 1))
    D = ReducibleConic(L1, L2)
    assert D.meeting_point() == P(1, 0, 0)
    assert D.span_dim(5) == 11
    assert curve_from_json(D.to_json()) == D
    with pytest.raises(ValueError):
        ReducibleConic(L1, line_through(P(1, 2, 0), P(1, 3, 0)))


def test_curve_json_round_trip():
    C = conic_from_vectors((1, 2, 0), (0, 1, 1), (3, 0, Fraction(1, 2)))
    assert ParamCurve.from_json(C.to_json()) == C


def test_degenerate_parametrization_rejected():
    with pytest.raises(ValueError):
        conic_from_vectors((1, 0, 0), (2, 0, 0), (0, 1, 0))


def test_curve_in_p3_plane():
    C = standard_conic(3)
    assert C.m == 3 and C.in_coordinate_plane()
    assert C.span_dim(4) == 9


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)).filter(any), min_size=2, max_size=6))
def test_veronese_is_injective(coords):
    pts = {P(*c) for c in coords}
    images = {veronese(p, 3) for p in pts}
    assert len(images) == len(pts)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rref_idempotent(rows):
    R, piv = rref(rows)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
