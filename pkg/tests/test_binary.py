from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrank.binary import (
    BinForm,
    RankResult,
    border_rank_binary,
    curve_form,
    curve_point_rank,
    hankel,
    homogeneous_squarefree,
    rank_binary,
    waring_decomposition,
)
from symrank.exact import rank
from symrank.geom import ProjPoint, line_through, standard_conic, veronese_point_vector

X3Y = (0, 1, 0, 0, 0)
X4_PLUS_Y4 = (1, 0, 0, 0, 1)


def jet_form(e, coeffs):
    """Combination of the first len(coeffs) derivatives of (x + t y)^e at t = 0."""
    return BinForm(tuple(coeffs) + (0,) * (e + 1 - len(coeffs)))


def test_hankel_shape_and_entries():
    H = hankel(X4_PLUS_Y4, 2)
    assert (H.nrows, H.ncols) == (3, 3)
    assert H.rows == ((1, 0, 0), (0, 0, 0), (0, 0, 1))
    assert rank(H) == 2
    assert rank(hankel((1, 0, 0, 0, 0, 0), 1)) == 1
    H = hankel((1, 2, 3, 4, 5, 6), 2)
    assert (H.nrows, H.ncols) == (4, 3) and H.rows[3] == (4, 5, 6)


def test_hankel_of_middle_monomial():
    # x^2 y^2 has a full-rank 3x3 catalecticant
    assert rank(hankel((0, 0, 1, 0, 0), 2)) == 3


def test_hankel_rejects_bad_k():
    with pytest.raises(ValueError):
        hankel(X3Y, 5)
    with pytest.raises(ValueError):
        hankel(X3Y, -1)


def test_zero_form_refused():
    with pytest.raises(ValueError):
        BinForm((0, 0, 0))
    with pytest.raises(ValueError):
        rank_binary((0, 0))


def test_border_rank_examples():
    assert border_rank_binary((1, 0, 0, 0, 0, 0, 0)) == 1
    assert border_rank_binary(X3Y) == 2
    assert border_rank_binary(X4_PLUS_Y4) == 2


def test_rank_examples():
    res = rank_binary(X3Y)
    assert (res.rank, res.border_rank, res.squarefree) == (4, 2, False)
    assert res.apolar_witness == (0, 0, 1)  # t^2: a double root at the point of x^4
    res = rank_binary(X4_PLUS_Y4)
    assert (res.rank, res.border_rank, res.squarefree) == (2, 2, True)
    assert rank_binary((0, 0, 1, 0, 0)).rank == 3


def test_rank_result_json_round_trip():
    res = rank_binary(X3Y)
    assert RankResult.from_json(res.to_json()) == res


def test_power_sum_convention():
    f = BinForm.power_sum(3, [(2, 1)])
    assert f.coeffs == (1, 2, 4, 8)
    assert BinForm.power_sum(3, [(None, 5)]).coeffs == (0, 0, 0, 5)


def test_waring_decomposition_reconstructs():
    f = BinForm.power_sum(7, [(0, 1), (1, -2), (Fraction(1, 2), 3), (None, 1)])
    dec = waring_decomposition(f)
    assert dec is not None and len(dec) == 4
    assert BinForm.power_sum(7, dec) == f
    assert waring_decomposition(X3Y) is None


def test_pencil_case_even_degree():
    # e = 4 generic forms have border rank 3 with a pencil of apolar cubics
    f = BinForm((1, 2, -1, 3, 5))
    res = rank_binary(f)
    assert res.border_rank == 3 and res.rank == 3 and res.squarefree


def test_squarefree_with_roots_at_infinity():
    assert homogeneous_squarefree([0, 1], 2)  # t * (one root at infinity)
    assert not homogeneous_squarefree([1], 2)  # double root at infinity
    assert not homogeneous_squarefree([1, -2, 1], 2)


def test_curve_point_rank_on_a_line():
    L = line_through(ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)))
    d = 7
    P = veronese_point_vector(L.point(3), d)
    res = curve_point_rank(ProjPoint(tuple(P)), L, d)
    assert (res.rank, res.border_rank) == (1, 1)
    # generic point on the tangent line at O
    rows = L.jet_rows(0, 2, d)
    P = [2 * a + 5 * b for a, b in zip(*rows)]
    res = curve_point_rank(P, L, d)
    assert (res.rank, res.border_rank) == (d, 2)


def test_curve_point_rank_on_a_conic():
    C = standard_conic(2)
    d, b = 6, 5
    rows = C.jet_rows(0, b, d)
    P = [sum((i + 1) * r[j] for i, r in enumerate(rows)) for j in range(len(rows[0]))]
    res = curve_point_rank(P, C, d)
    assert curve_form(P, C, d).e == 2 * d
    assert (res.rank, res.border_rank) == (2 * d + 2 - b, b)


def test_curve_point_rank_refuses_points_off_the_span():
    L = line_through(ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)))
    with pytest.raises(ValueError):
        curve_point_rank(veronese_point_vector(ProjPoint((1, 1, 1)), 3), L, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 10))
def test_sums_of_few_powers_have_rank_r(seed, e):
    rng = random.Random(seed)
    r = rng.randint(1, (e + 1) // 2)
    ts = rng.sample(range(-20, 21), r)
    terms = [(Fraction(t, rng.randint(1, 3)), rng.choice([-3, -2, -1, 1, 2, 3])) for t in ts]
    if len({t for t, _ in terms}) < r:
        return
    res = rank_binary(BinForm.power_sum(e, terms))
    assert res.rank == res.border_rank == r


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 10))
def test_jets_have_sylvester_rank(seed, e):
    rng = random.Random(seed)
    k = rng.randint(2, (e + 1) // 2)
    coeffs = [rng.randint(-5, 5) for _ in range(k - 1)] + [rng.choice([-2, -1, 1, 2])]
    res = rank_binary(jet_form(e, coeffs))
    assert res.border_rank == k
    assert res.rank == e - k + 2 and res.rank + res.border_rank == e + 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=9).filter(any))
def test_rank_result_invariants(coeffs):
    res = rank_binary(coeffs)
    e = len(coeffs) - 1
    assert res.border_rank <= (e + 2) // 2
    if res.squarefree:
        assert res.rank == res.border_rank
    else:
        assert res.rank == e - res.border_rank + 2
