"""Ranks and border ranks of binary forms (Sylvester's algorithm).

Coefficient convention
----------------------
A binary form of degree e is stored as ``a = (a_0, ..., a_e)`` meaning

    f = sum_i C(e, i) * a_i * x**(e-i) * y**i.

With this weighting ``(x + t*y)**e`` has coefficients ``a_i = t**i`` (the
Veronese vector of [1 : t]), ``y**e`` is ``(0, ..., 0, 1)``, and the
catalecticant of f is the plain Hankel matrix ``H[i][j] = a_{i+j}``. For
example ``x**3 * y`` is ``(0, 1/4, 0, 0, 0)``, or ``(0, 1, 0, 0, 0)`` up to
scale.

A kernel vector ``c`` of the Hankel matrix is read as ``g(t) = sum_j c_j t**j``
of formal degree ``len(c) - 1``; ``g`` vanishes at every ``t`` of a
decomposition, and a drop in actual degree means a root at t = infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import poly
from .exact import Matrix, as_rational, express, format_rational, integer_vector, kernel, rank
from .geom import ParamCurve


@dataclass(frozen=True)
class BinForm:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(as_rational(x) for x in self.coeffs)
        if not c:
            raise ValueError("a binary form needs at least one coefficient")
        if not any(c):
            raise ValueError("the zero form has no rank")
        object.__setattr__(self, "coeffs", c)

    @property
    def e(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def power_sum(cls, e: int, terms: Sequence[tuple]) -> "BinForm":
        """``sum lam * (x + t*y)**e`` over ``(t, lam)``; ``t=None`` stands for ``y**e``."""
        a = [Fraction(0)] * (e + 1)
        for t, lam in terms:
            lam = as_rational(lam)
            if t is None:
                a[e] += lam
            else:
                t = as_rational(t)
                for i in range(e + 1):
                    a[i] += lam * t**i
        return cls(tuple(a))


@dataclass(frozen=True)
class RankResult:
    e: int
    rank: int
    border_rank: int
    apolar_witness: tuple[Fraction, ...]
    squarefree: bool

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "rank": self.rank,
            "border_rank": self.border_rank,
            "g": [format_rational(x) for x in self.apolar_witness],
            "squarefree": self.squarefree,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RankResult":
        return cls(
            int(obj["e"]),
            int(obj["rank"]),
            int(obj["border_rank"]),
            tuple(as_rational(x) for x in obj["g"]),
            bool(obj["squarefree"]),
        )


def _coeffs(f) -> tuple[Fraction, ...]:
    if isinstance(f, BinForm):
        return f.coeffs
    return BinForm(tuple(f)).coeffs


def hankel(f, k: int) -> Matrix:
    """Catalecticant with ``e-k+1`` rows and ``k+1`` columns."""
    a = _coeffs(f)
    e = len(a) - 1
    if not 0 <= k <= e:
        raise ValueError(f"k={k} outside 0..{e}")
    return Matrix(tuple(tuple(a[i + j] for j in range(k + 1)) for i in range(e - k + 1)), k + 1)


def border_rank_binary(f) -> int:
    a = _coeffs(f)
    return rank(hankel(a, (len(a) - 1) // 2))


def homogeneous_squarefree(g: Sequence, formal_degree: int) -> bool:
    """Squarefree test for the binary form of degree ``formal_degree`` with dehomogenization g."""
    g = poly.trim(g)
    if not g:
        return False
    if formal_degree - poly.degree(g) >= 2:
        return False
    return poly.is_squarefree(g)


def rank_binary(f) -> RankResult:
    a = _coeffs(f)
    e = len(a) - 1
    r = border_rank_binary(a)
    K = kernel(hankel(a, r))
    if K.dim == 1:
        g = integer_vector(K.vectors[0])
        sf = homogeneous_squarefree(g, r)
        return RankResult(e, r if sf else e - r + 2, r, tuple(Fraction(x) for x in g), sf)
    # a pencil of apolar forms of degree r = e/2 + 1; its general member is squarefree
    if K.dim != 2 or 2 * r != e + 2:
        raise ArithmeticError(f"unexpected apolar kernel of dimension {K.dim} in degree {r}")
    g1, g2 = (integer_vector(v) for v in K.vectors)
    for lam, mu in _pencil_params():
        g = [lam * x + mu * y for x, y in zip(g1, g2)]
        if homogeneous_squarefree(g, r):
            return RankResult(e, r, r, tuple(Fraction(x) for x in integer_vector(g)), True)
    raise ArithmeticError("no squarefree member found in the apolar pencil")


def _pencil_params():
    yield (1, 0)
    yield (0, 1)
    for c in range(1, 200):
        yield (1, c)
        yield (1, -c)


def waring_decomposition(f) -> list[tuple[Fraction | None, Fraction]] | None:
    """An explicit minimal decomposition when it is defined over Q.

    Returns ``[(t, lam), ...]`` with ``f = sum lam (x + t y)**e`` (``t=None``
    for ``y**e``), or ``None`` when the rank is not the border rank or the
    apolar form does not split over Q.
    """
    a = _coeffs(f)
    e = len(a) - 1
    res = rank_binary(a)
    if not res.squarefree:
        return None
    g = poly.trim(list(res.apolar_witness))
    ts: list = list(poly.rational_roots(g))
    if poly.degree(g) == res.border_rank - 1:
        ts.append(None)
    if len(ts) != res.rank:
        return None
    vecs = []
    for t in ts:
        if t is None:
            vecs.append([0] * e + [1])
        else:
            vecs.append([t**i for i in range(e + 1)])
    lam = express(vecs, a)
    if lam is None:
        raise ArithmeticError("apolar roots do not reproduce the form")
    return list(zip(ts, lam))


def curve_form(P: Sequence, C: ParamCurve, d: int) -> BinForm:
    """Coordinates of P in the span of nu_d(C), read as a binary form of degree e*d.

    ``nu_d(C(t))`` corresponds to ``(x + t*y)**(e*d)``, so ranks with respect
    to the curve are ranks of this form.
    """
    basis = C.compose(d)
    coeffs = express(basis, list(P))
    if coeffs is None:
        raise ValueError("point is not in the span of the curve's Veronese image")
    return BinForm(coeffs)


def curve_point_rank(P: Sequence, C: ParamCurve, d: int) -> RankResult:
    """Rank and border rank of P with respect to the rational normal curve nu_d(C)."""
    if hasattr(P, "coords"):
        P = P.coords
    return rank_binary(curve_form(P, C, d))
