from __future__ import annotations

import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrank.geom import ProjPoint, ReducibleConic, line_through, standard_conic
from symrank.sampling import random_planar_scheme
from symrank.scheme import (
    CurvComponent,
    Scheme,
    conditions_matrix,
    excess_curve_detect,
    h01,
    intersection,
    intersection_degree,
    residual,
    span_image,
    subschemes,
)


def P(*c):
    return ProjPoint(tuple(c))


L1 = line_through(P(1, 0, 0), P(0, 1, 0))  # x2 = 0, O = [1:0:0] at t = 0
L2 = line_through(P(1, 0, 1), P(0, 0, 1))  # x1 = 0, O at t = -1
P1_LINE = line_through(P(1, 0), P(0, 1))


def jet(curve, t0, k):
    return CurvComponent.jet(curve, t0, k)


def test_degree():
    assert Scheme(2).degree == 0
    assert Scheme(2, (jet(L1, 0, 3),)).degree == 3
    assert Scheme(2, (jet(L1, 0, 3), CurvComponent.reduced(P(0, 0, 1)))).degree == 4


def test_conditions_matrix_rows_are_taylor_coefficients():
    Z = Scheme(1, (jet(P1_LINE, 0, 3),))
    M = conditions_matrix(Z, 4)
    assert M.rows == ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0))
    pt = Scheme.from_points([P(1, 2, 3)])
    assert conditions_matrix(pt, 2).rows == ((1, 2, 3, 4, 6, 9),)


def test_h1_examples():
    assert h01(Scheme.from_points([P(1, t, 0) for t in range(6)]), 4).h1 == 1
    assert h01(Scheme.from_points([P(1, t, 0) for t in range(5)]), 4).h1 == 0
    assert h01(Scheme.from_points([P(3, 1, 4)]), 7).h1 == 0
    C = standard_conic(2)
    assert h01(Scheme.from_points([C.point(t) for t in range(12)]), 5).h1 == 1
    assert h01(Scheme.from_points([C.point(t) for t in range(11)]), 5).h1 == 0
    empty = h01(Scheme(2), 3)
    assert (empty.h0, empty.h1) == (10, 0)


def test_span_image():
    Z = Scheme(1, (jet(P1_LINE, 0, 2),))
    S = span_image(Z, 4)
    assert S.dim == 2 and S.contains([1, 0, 0, 0, 0]) and S.contains([0, 1, 0, 0, 0])
    d = 6
    Z = Scheme(2, (jet(L1, 0, 3), jet(L1, 1, 2), jet(L1, 5, 2)))
    assert span_image(Z, d).dim == 7
    Z = Z.union(Scheme.from_points([L1.point(7)]))
    assert Z.degree == d + 2 and span_image(Z, d).dim == d + 1
    Z = Z.union(Scheme.from_points([L1.point(9)]))
    assert h01(Z, d).h1 == 2


def test_subscheme_counts():
    assert len(list(subschemes(Scheme(2, (jet(L1, 0, 3),))))) == 4
    Z = Scheme(2, (jet(L1, 0, 3), CurvComponent.reduced(P(0, 0, 1)), CurvComponent.reduced(P(1, 1, 1))))
    assert len(list(subschemes(Z))) == 16
    assert [F.degree for F in subschemes(Scheme(2))] == [0]


def test_residual_examples():
    Z = Scheme(2, (jet(L1, 0, 3),))
    transverse = L2  # passes through O, transverse to L1
    R = residual(Z, transverse)
    assert R.degree == 2 and R.components[0].point == P(1, 0, 0)
    assert residual(Z, L1).degree == 0
    off = Scheme.from_points([P(1, 1, 1)])
    assert residual(off, L1) == off


def test_residual_along_tangent_conic():
    C = standard_conic(2)  # x0 x2 = x1^2, tangent to x2 = 0 at [1:0:0]
    Z = Scheme(2, (jet(C, 0, 4),))
    assert residual(Z, L1).degree == 2  # the tangent line meets C doubly
    assert residual(Z, C).degree == 0


def test_reducible_conic_residual():
    D = ReducibleConic(L1, L2)
    Z = Scheme(2, (jet(L1, 0, 3), jet(L2, 0, 2), CurvComponent.reduced(P(1, 1, 1))))
    R = residual(Z, D)
    assert R.degree == 1 and R.support == [P(1, 1, 1)]
    assert intersection(Z, D).degree == 5


def test_union_rules():
    a = Scheme(2, (jet(L1, 0, 3),))
    b = Scheme.from_points([P(1, 0, 0), P(0, 1, 0)])
    u = a.union(b)
    assert u.degree == 4
    assert a.union(Scheme(2, (jet(L1, 0, 5),))).degree == 5
    with pytest.raises(ValueError):
        a.union(Scheme(2, (jet(L2, -1, 2),)))


def test_duplicate_support_rejected():
    with pytest.raises(ValueError):
        Scheme.from_points([P(1, 2, 3), P(2, 4, 6)])


def test_json_round_trip():
    Z = Scheme(2, (jet(L1, Fraction(1, 2), 3), CurvComponent.reduced(P(1, 1, 1))))
    assert Scheme.from_json(Z.to_json()) == Z
    assert Scheme.from_json(Z.to_json()["components"]) == Z


def test_detector_examples():
    d = 6
    hit = excess_curve_detect(Scheme.from_points([L1.point(t) for t in range(d + 2)]), d)
    assert hit is not None and hit.kind == "line" and hit.intersection_degree == d + 2
    assert excess_curve_detect(Scheme.from_points([P(1, 2, 3)]), d) is None


def test_detector_finds_two_lines_configuration():
    # degree-w jets on L1 and L2 away from their meeting point, plus points:
    # 2d+2 on L1 u L2 but only d+1 on each line
    d, w = 8, 3
    A = Scheme(2, (jet(L1, -3, w), jet(L2, 0, w)))
    B = Scheme.from_points([L1.point(t) for t in range(1, d - w + 2)] + [L2.point(t) for t in range(1, d - w + 2)])
    Z = A.union(B)
    assert intersection_degree(Z, ReducibleConic(L1, L2)) == 2 * d + 2
    assert max(intersection_degree(Z, L1), intersection_degree(Z, L2)) < d + 2
    hit = excess_curve_detect(Z, d)
    assert hit is not None and hit.kind == "reducible-conic"
    assert h01(Z, d).h1 > 0


def test_detector_finds_irreducible_conic_through_points():
    d = 5
    C = standard_conic(2)
    Z = Scheme.from_points([C.point(t) for t in range(-6, 6)])
    hit = excess_curve_detect(Z, d)
    assert hit is not None and hit.kind == "conic" and hit.intersection_degree == 12


def test_detector_precondition():
    with pytest.raises(ValueError):
        excess_curve_detect(Scheme.from_points([L1.point(t) for t in range(9)]), 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([5, 6]))
def test_detector_agrees_with_h1(seed, d):
    _, Z = random_planar_scheme(random.Random(seed), d)
    assert (h01(Z, d).h1 > 0) == (excess_curve_detect(Z, d) is not None)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_degree_bookkeeping_and_monotonicity(seed):
    rng = random.Random(seed)
    _, Z = random_planar_scheme(rng, 5)
    D = [L1, L2, standard_conic(2), ReducibleConic(L1, L2)][seed % 4]
    assert residual(Z, D).degree + intersection(Z, D).degree == Z.degree
    comps = list(Z.components)
    W = Scheme(2, tuple(c for c in comps if rng.random() < 0.6))
    assert h01(W, 5).h1 <= h01(Z, 5).h1


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_subscheme_count_is_product(ks):
    Z = Scheme(2, tuple(jet(L1, i, k) for i, k in enumerate(ks)))
    assert len(list(subschemes(Z))) == prod(k + 1 for k in ks)
