from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrank.exact import member, span
from symrank.geom import ambient_dim
from symrank.scheme import span_image
from symrank.strata import (
    HypothesisError,
    InadmissibleError,
    Witness,
    admissible,
    admissible_ranks,
    construct_middle,
    construct_two_lines,
    is_minimal,
    veronese_vectors,
    witness,
)


def admissible_oracle(s, d):
    """The admissible set written as three set comprehensions."""
    equal = {s}
    middle = {r for r in range(d + 2 - s, d + s - 1) if (r + s - d) % 2 == 0}
    top = set(range(2 * d + 2 - s, 2 * d + s - 6))
    return sorted((equal | middle | top) & set(range(s, 2 * d + s - 6)))


def check_witness(W: Witness):
    P = W.vector
    assert W.A.degree == W.s and len(W.B) == W.r == len(set(W.B))
    assert member(P, span_image(W.A, W.d)) is not None
    assert member(P, span(veronese_vectors(W.B, W.d))) is not None
    assert is_minimal(P, W.A, W.d)
    assert len(P) == ambient_dim(W.m, W.d) + 1


def test_table_example():
    assert admissible_ranks(2, 5, 12) == [5, 9, 11, 13, 15, 21, 22]
    assert admissible_ranks(3, 6, 14) == admissible_ranks(2, 6, 14)


def test_band_examples():
    assert admissible(2, 5, 12, 5).tag == "equal"
    assert admissible(2, 5, 12, 9).params == {"b": 5}
    assert admissible(2, 5, 12, 13).params == {"b": 3}
    assert admissible(2, 5, 12, 15).params == {"b": 2}
    assert admissible(2, 5, 12, 21).tag == "top-even" and admissible(2, 5, 12, 21).params == {"b": 5}
    assert admissible(2, 6, 14, 24).params == {"b": 6}
    assert admissible(2, 5, 12, 10).params == {"reason": "parity"}
    assert admissible(2, 5, 12, 18).params == {"reason": "gap"}


def test_odd_top_band_examples():
    band = admissible(2, 7, 16, 28)
    assert band.tag == "top-odd-o4" and band.params == {"c": 7, "w": 3}
    # 26 + 7 is odd, but 26 lies in the parity gap of the middle range and
    # below the top band 2d + 2 - s = 27, so it is not admissible
    assert not admissible(2, 7, 16, 26).admissible
    assert admissible(2, 7, 16, 30).params == {"c": 6, "w": 3}
    assert admissible(2, 7, 16, 30).tag == "top-odd-o3"


def test_hypothesis_gate():
    with pytest.raises(HypothesisError):
        admissible_ranks(2, 5, 11)
    with pytest.raises(HypothesisError):
        admissible(2, 4, 12, 6)
    with pytest.raises(HypothesisError):
        admissible(1, 5, 12, 5)
    with pytest.raises(HypothesisError):
        admissible(2, 5, 12, 23)


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 9), st.integers(0, 6), st.integers(2, 3))
def test_table_matches_set_oracle(s, extra, m):
    d = 2 * s + 2 + extra
    assert admissible_ranks(m, s, d) == admissible_oracle(s, d)


@settings(max_examples=80, deadline=None)
@given(st.integers(5, 9), st.integers(0, 6), st.data())
def test_band_parameters_reproduce_r(s, extra, data):
    d = 2 * s + 2 + extra
    r = data.draw(st.sampled_from(admissible_ranks(2, s, d)))
    band = admissible(2, s, d, r)
    p = band.params
    if band.tag == "middle":
        assert r == d + 2 + s - 2 * p["b"] and 1 <= p["b"] <= s
    elif band.tag == "top-even":
        assert r == 2 * d + 2 + s - 2 * p["b"] and 5 <= p["b"] <= s
    elif band.tag.startswith("top-odd"):
        assert r == 2 * d + 3 + s - 2 * p["c"] and 5 <= p["c"] <= s
        assert (band.tag == "top-odd-o3") == (p["c"] == 2 * p["w"])
    else:
        assert band.tag == "equal" and r == s


@pytest.mark.parametrize("r", [5, 9, 13, 15, 21, 22])
def test_witnesses_for_s5_d12(r):
    W = witness(2, 5, 12, r, seed=1)
    check_witness(W)
    assert W.band == admissible(2, 5, 12, r).tag


def test_middle_sizes():
    W = construct_middle(2, 5, 12, 9)
    assert len(W.parts["extra_points"]) == 0 and len(W.B) == 9
    W = construct_middle(2, 5, 12, 13)
    assert len(W.parts["extra_points"]) == 2 and len(W.parts["line_points"]) == 11


def test_top_odd_o4_witness():
    W = witness(2, 7, 16, 28)
    check_witness(W)
    assert W.parts["jet1"].degree == 4 and W.parts["jet2"].degree == 3


def test_two_lines_witnesses():
    W = construct_two_lines(3, 12, "o1")
    check_witness(W)
    assert (W.s, W.r) == (6, 21)
    W = construct_two_lines(2, 12, "o2")
    check_witness(W)
    assert (W.s, W.r) == (5, 22)
    with pytest.raises(HypothesisError):
        construct_two_lines(3, 10, "o1")


def test_witness_in_p3():
    W = witness(3, 5, 12, 21)
    check_witness(W)
    assert all(p.coords[3] == 0 for p in W.B)


def test_determinism_and_json_round_trip():
    a = witness(2, 5, 12, 13, seed=4)
    b = witness(2, 5, 12, 13, seed=4)
    assert a.to_json() == b.to_json()
    back = Witness.from_json(a.to_json())
    assert back.to_json() == a.to_json()
    assert back.vector == a.vector and back.A == a.A


def test_refusals():
    with pytest.raises(InadmissibleError):
        witness(2, 5, 12, 10)
    with pytest.raises(InadmissibleError):
        witness(2, 5, 12, 18)
    with pytest.raises(InadmissibleError):
        construct_middle(2, 5, 12, 21)
