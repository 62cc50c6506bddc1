"""Projective points, monomial bases, Veronese maps, lines and conics.

Coordinates on P^n = P(S^d) are monomial evaluations: the Veronese image of
``p`` has coordinate ``p**alpha`` at monomial ``alpha`` (no multinomial
weights). Monomials of a fixed degree are listed in lexicographic order with
``x0`` largest, which for a single degree is the graded lex order.

Curves are parametrized, ``gamma(t) = sum_j c_j t**j`` with ``c_j`` in
Q^{m+1}. A line through ``p`` and ``q`` is ``p + t q``; a conic is
``v0 + t v1 + t**2 v2`` with independent ``v0, v1, v2`` (hence smooth).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from . import poly
from .exact import as_rational, integer_vector, kernel, rank, span, intersect

Form = dict  # exponent tuple -> Fraction


def ambient_dim(m: int, d: int) -> int:
    """Projective dimension n_{m,d} = C(m+d, m) - 1 of the degree-d Veronese target."""
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    return comb(m + d, m) - 1


@lru_cache(maxsize=None)
def monomials(m: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the degree-d monomials in m+1 variables."""
    if m == 0:
        return ((d,),)
    return tuple((a,) + rest for a in range(d, -1, -1) for rest in monomials(m - 1, d - a))


@lru_cache(maxsize=None)
def monomial_index(m: int, d: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomials(m, d))}


@dataclass(frozen=True)
class MonomialBasis:
    m: int
    d: int

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return monomials(self.m, self.d)

    def __len__(self) -> int:
        return comb(self.m + self.d, self.m)

    def index(self, exponent: Sequence[int]) -> int:
        return monomial_index(self.m, self.d)[tuple(exponent)]


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^m, normalized so that its first nonzero coordinate is 1."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(as_rational(x) for x in self.coords)
        lead = next((x for x in c if x), None)
        if lead is None:
            raise ValueError("all coordinates are zero")
        object.__setattr__(self, "coords", tuple(x / lead for x in c))

    @classmethod
    def of(cls, *coords) -> "ProjPoint":
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
            coords = tuple(coords[0])
        return cls(tuple(coords))

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    def ints(self) -> list[int]:
        """Primitive integer representative with positive leading coordinate."""
        return integer_vector(self.coords)

    def embed(self, m: int) -> "ProjPoint":
        """Same point inside P^m via the coordinate inclusion x -> (x, 0, ..., 0)."""
        if m < self.m:
            raise ValueError("cannot embed into a smaller space")
        return ProjPoint(self.coords + (Fraction(0),) * (m - self.m))

    def __repr__(self) -> str:
        return "[" + ":".join(str(x) for x in self.coords) + "]"


def veronese_vector(coords: Sequence, d: int) -> list:
    """All degree-d monomials of ``coords`` (in MonomialBasis order)."""
    m = len(coords) - 1
    pw = []
    for c in coords:
        row = [1]
        for _ in range(d):
            row.append(row[-1] * c)
        pw.append(row)
    out = []
    for alpha in monomials(m, d):
        v = 1
        for i, a in enumerate(alpha):
            if a:
                v *= pw[i][a]
        out.append(v)
    return out


def veronese_point_vector(p: ProjPoint, d: int) -> list[int]:
    """Veronese vector of the primitive integer representative of ``p``."""
    return veronese_vector(p.ints(), d)


def veronese(p: ProjPoint, d: int) -> ProjPoint:
    return ProjPoint(tuple(veronese_point_vector(p, d)))


# -- forms --------------------------------------------------------------------


def form_at(form: Form, coords: Sequence):
    total = Fraction(0)
    for alpha, a in form.items():
        term = a
        for c, e in zip(coords, alpha):
            if e:
                term *= Fraction(c) ** e
        total += term
    return total


def form_degree(form: Form) -> int:
    return sum(next(iter(form)))


def form_mul(f: Form, g: Form) -> Form:
    out: Form = {}
    for a, x in f.items():
        for b, y in g.items():
            e = tuple(i + j for i, j in zip(a, b))
            out[e] = out.get(e, 0) + x * y
    return {e: c for e, c in out.items() if c}


# -- curves -------------------------------------------------------------------

KINDS = {"line": 1, "conic": 2}


@dataclass(frozen=True)
class ParamCurve:
    """A line or smooth conic in P^m given by a polynomial parametrization.

    ``coeffs[i][j]`` is the coefficient of ``t**j`` in the i-th coordinate.
    """

    kind: str
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        e = KINDS[self.kind]
        coeffs = tuple(tuple(as_rational(x) for x in row) for row in self.coeffs)
        if any(len(row) != e + 1 for row in coeffs):
            raise ValueError(f"a {self.kind} needs {e + 1} coefficients per coordinate")
        object.__setattr__(self, "coeffs", coeffs)
        if rank([list(col) for col in zip(*coeffs)]) != e + 1:
            raise ValueError(f"degenerate {self.kind} parametrization")

    @property
    def m(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return KINDS[self.kind]

    def coefficient_vectors(self) -> list[list]:
        """``c_j`` for j = 0..e, as lists (ints when integral)."""
        return [_maybe_int(col) for col in zip(*self.coeffs)]

    def polys(self) -> list[list]:
        return [_maybe_int(row) for row in self.coeffs]

    def vector(self, t) -> list:
        t = as_rational(t)
        out = [poly.evaluate(list(row), t) for row in self.coeffs]
        return _maybe_int(out)

    def point(self, t) -> ProjPoint:
        return ProjPoint(tuple(self.vector(t)))

    def defining_points(self) -> tuple[ProjPoint, ProjPoint]:
        """For a line ``p + t q``: the points p and q."""
        if self.kind != "line":
            raise ValueError("only lines have defining points")
        c0, c1 = self.coefficient_vectors()
        return ProjPoint(tuple(c0)), ProjPoint(tuple(c1))

    def compose(self, d: int) -> list[list]:
        """Coefficient vectors of nu_d(gamma(t)): entry j is the t**j coefficient."""
        return [list(v) for v in _compose(self, d)]

    def jet_rows(self, t0, k: int, d: int) -> list[list]:
        """Taylor coefficients of nu_d(gamma(t)) at t0 of orders 0..k-1.

        Row j is (1/j!) d^j/dt^j nu_d(gamma(t)) at t = t0; these span the
        linear span of nu_d of the length-k subscheme of the curve at gamma(t0).
        """
        cs = _compose(self, d)
        t0 = as_rational(t0)
        if t0.denominator == 1:
            t0 = int(t0)
        n = len(cs[0])
        rows = []
        for j in range(k):
            row = [0] * n
            for i in range(j, len(cs)):
                w = comb(i, j) * t0 ** (i - j)
                if w:
                    ci = cs[i]
                    for a in range(n):
                        if ci[a]:
                            row[a] += w * ci[a]
            rows.append(row)
        return rows

    def span_dim(self, d: int) -> int:
        """Vector-space dimension of the span of nu_d(curve)."""
        return rank(self.compose(d))

    def in_coordinate_plane(self) -> bool:
        return all(not any(row) for row in self.coeffs[3:])

    def equation(self) -> Form:
        """Defining form of the curve inside the plane x3 = ... = xm = 0.

        For m > 2 the returned form only involves x0, x1, x2, so it cuts the
        plane in exactly this curve.
        """
        if not self.in_coordinate_plane():
            raise ValueError("equations are only available for curves in the plane x3=...=0")
        m = self.m
        if self.kind == "line":
            (a0, a1, a2), (b0, b1, b2) = [c[:3] for c in self.coefficient_vectors()]
            n = (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
            n = integer_vector(n)
            out = {}
            for i in range(3):
                if n[i]:
                    e = [0] * (m + 1)
                    e[i] = 1
                    out[tuple(e)] = Fraction(n[i])
            return out
        # conic: quadratic forms in x0..x2 vanishing on gamma
        quads = [e for e in monomials(2, 2)]
        gp = [list(row) for row in self.coeffs[:3]]
        cols = []
        for e in quads:
            p = [1]
            for i, a in enumerate(e):
                if a:
                    p = poly.mul(p, poly.power(gp[i], a))
            cols.append(p + [0] * (5 - len(p)))
        M = [[cols[j][i] for j in range(6)] for i in range(5)]
        K = kernel(M)
        if K.dim != 1:
            raise ArithmeticError("conic equation is not unique")
        vec = integer_vector(K.vectors[0])
        out = {}
        for e, c in zip(quads, vec):
            if c:
                out[tuple(e) + (0,) * (m - 2)] = Fraction(c)
        return out

    def form_on_curve(self, form: Form) -> list:
        """The univariate polynomial form(gamma(t))."""
        gp = self.polys()
        total: list = []
        for alpha, a in form.items():
            p: list = [a]
            for i, e in enumerate(alpha):
                if e:
                    p = poly.mul(p, poly.power(gp[i], e))
            total = poly.add(total, p)
        return total

    def to_json(self) -> dict:
        from .exact import format_rational

        return {
            "kind": self.kind,
            "parametrization": [[format_rational(x) for x in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ParamCurve":
        return cls(obj["kind"], tuple(tuple(as_rational(x) for x in row) for row in obj["parametrization"]))


@lru_cache(maxsize=256)
def _compose(curve: ParamCurve, d: int) -> tuple[tuple, ...]:
    m = curve.m
    e = curve.degree
    gp = curve.polys()
    powers = []
    for g in gp:
        row = [[1]]
        for _ in range(d):
            row.append(poly.mul(row[-1], g))
        powers.append(row)
    n = comb(m + d, m)
    out = [[0] * n for _ in range(e * d + 1)]
    for idx, alpha in enumerate(monomials(m, d)):
        p: list = [1]
        for i, a in enumerate(alpha):
            if a:
                p = poly.mul(p, powers[i][a])
        for j, c in enumerate(p):
            out[j][idx] = c
    return tuple(tuple(_maybe_int(r)) for r in out)


def _maybe_int(xs) -> list:
    out = []
    for x in xs:
        if isinstance(x, Fraction) and x.denominator == 1:
            out.append(int(x))
        else:
            out.append(x)
    return out


def line_through(p: ProjPoint, q: ProjPoint) -> ParamCurve:
    """The line ``p + t q``: p at t = 0, q at t = infinity."""
    if p.m != q.m:
        raise ValueError("points live in different spaces")
    if p == q:
        raise ValueError("a line needs two distinct points")
    a, b = p.ints(), q.ints()
    return ParamCurve("line", tuple((x, y) for x, y in zip(a, b)))


def conic_from_vectors(v0: Sequence, v1: Sequence, v2: Sequence) -> ParamCurve:
    """Smooth conic ``v0 + t v1 + t**2 v2``."""
    return ParamCurve("conic", tuple((a, b, c) for a, b, c in zip(v0, v1, v2)))


def standard_conic(m: int = 2) -> ParamCurve:
    """The conic [1 : t : t**2] in the plane x3 = ... = xm = 0."""
    z = [0] * (m + 1)
    v0, v1, v2 = list(z), list(z), list(z)
    v0[0], v1[1], v2[2] = 1, 1, 1
    return conic_from_vectors(v0, v1, v2)


def same_line(a: ParamCurve, b: ParamCurve) -> bool:
    return rank(a.coefficient_vectors() + b.coefficient_vectors()) == 2


@dataclass(frozen=True)
class ReducibleConic:
    """Union of two distinct coplanar lines meeting in one point."""

    line1: ParamCurve
    line2: ParamCurve
    kind: str = field(default="reducible-conic", init=False)

    def __post_init__(self):
        if self.line1.kind != "line" or self.line2.kind != "line":
            raise ValueError("a reducible conic is made of two lines")
        if same_line(self.line1, self.line2):
            raise ValueError("the two lines coincide")
        vecs = self.line1.coefficient_vectors() + self.line2.coefficient_vectors()
        if rank(vecs) != 3:
            raise ValueError("the two lines are not coplanar")

    @property
    def degree(self) -> int:
        return 2

    @property
    def m(self) -> int:
        return self.line1.m

    def lines(self) -> tuple[ParamCurve, ParamCurve]:
        return (self.line1, self.line2)

    def meeting_point(self) -> ProjPoint:
        n = self.m + 1
        s = intersect(span(self.line1.coefficient_vectors(), n), span(self.line2.coefficient_vectors(), n))
        return ProjPoint(tuple(s.vectors[0]))

    def equation(self) -> Form:
        return form_mul(self.line1.equation(), self.line2.equation())

    def compose(self, d: int) -> list[list]:
        return self.line1.compose(d) + self.line2.compose(d)

    def span_dim(self, d: int) -> int:
        return rank(self.compose(d))

    def to_json(self) -> dict:
        return {"kind": self.kind, "lines": [self.line1.to_json(), self.line2.to_json()]}

    @classmethod
    def from_json(cls, obj: dict) -> "ReducibleConic":
        l1, l2 = obj["lines"]
        return cls(ParamCurve.from_json(l1), ParamCurve.from_json(l2))


def curve_from_json(obj: dict):
    if obj["kind"] == "reducible-conic":
        return ReducibleConic.from_json(obj)
    return ParamCurve.from_json(obj)


@dataclass(frozen=True)
class ConicFit:
    """Result of fitting conics through five plane points."""

    form: Form
    kernel_dim: int
    degenerate: bool

    @property
    def unique(self) -> bool:
        return self.kernel_dim == 1


def quadric_matrix(form: Form) -> list[list[Fraction]]:
    """Symmetric 3x3 matrix of a ternary quadratic form (first three variables)."""
    S = [[Fraction(0)] * 3 for _ in range(3)]
    for alpha, a in form.items():
        idx = [i for i, e in enumerate(alpha) for _ in range(e)]
        i, j = idx
        if i == j:
            S[i][i] += a
        else:
            S[i][j] += Fraction(a) / 2
            S[j][i] += Fraction(a) / 2
    return S


def _det3(S) -> Fraction:
    return (
        S[0][0] * (S[1][1] * S[2][2] - S[1][2] * S[2][1])
        - S[0][1] * (S[1][0] * S[2][2] - S[1][2] * S[2][0])
        + S[0][2] * (S[1][0] * S[2][1] - S[1][1] * S[2][0])
    )


def conic_through(points: Sequence[ProjPoint]) -> ConicFit:
    """Conics through five points of P^2 (or of the plane x3=...=0).

    ``kernel_dim > 1`` flags non-uniqueness; ``degenerate`` is set when the
    first reduced kernel generator has a singular matrix (the form factors).
    """
    if len(points) != 5:
        raise ValueError("conic_through needs exactly five points")
    quads = monomials(2, 2)
    rows = []
    for p in points:
        c = p.ints()
        if any(c[3:]):
            raise ValueError("points must lie in the plane x3=...=0")
        rows.append(veronese_vector(c[:3], 2))
    K = kernel(rows)
    gen = integer_vector(K.vectors[0])
    m = points[0].m
    form = {tuple(e) + (0,) * (m - 2): Fraction(c) for e, c in zip(quads, gen) if c}
    return ConicFit(form, K.dim, _det3(quadric_matrix(form)) == 0)


def compose_curve(curve, d: int) -> list[list]:
    """Coordinate polynomials of nu_d(gamma(t)), one per monomial (low degree first)."""
    cs = curve.compose(d)
    n = len(cs[0])
    return [[cs[j][i] for j in range(len(cs))] for i in range(n)]
