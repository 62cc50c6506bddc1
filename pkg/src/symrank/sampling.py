"""Seeded random samples: binary forms with known rank, planar test schemes."""

from __future__ import annotations

import random
from fractions import Fraction

from .binary import BinForm
from .geom import ParamCurve, ProjPoint, conic_from_vectors, line_through
from .exact import rank
from .scheme import CurvComponent, Scheme


def _rational(rng: random.Random, R: int = 12, Q: int = 4) -> Fraction:
    return Fraction(rng.randint(-R, R), rng.randint(1, Q))


def _nonzero_rational(rng: random.Random) -> Fraction:
    x = Fraction(0)
    while x == 0:
        x = _rational(rng)
    return x


def random_power_sum(rng: random.Random, e: int, r: int, allow_infinity: bool = True) -> tuple[BinForm, list]:
    """Sum of r powers (x + t y)^e with distinct rational t (t = None is y^e)."""
    ts: list = []
    while len(ts) < r:
        t = None if allow_infinity and rng.random() < 0.1 else _rational(rng)
        if t not in ts:
            ts.append(t)
    terms = [(t, _nonzero_rational(rng)) for t in ts]
    return BinForm.power_sum(e, terms), terms


def random_binary_jet(rng: random.Random, e: int, k: int) -> BinForm:
    """General point of the span of a degree-k jet of the rational normal curve.

    Taylor coefficients of (1, t, ..., t^e) at t0 up to order k-1, combined
    with random coefficients; the top-order coefficient is nonzero.
    """
    t0 = _rational(rng)
    line = ParamCurve("line", tuple((Fraction(int(i == 0)), Fraction(int(i == 1))) for i in range(2)))
    rows = line.jet_rows(t0, k, e)
    coeffs = [_rational(rng) for _ in range(k - 1)] + [_nonzero_rational(rng)]
    a = [sum(c * row[i] for c, row in zip(coeffs, rows)) for i in range(e + 1)]
    # rows are in monomial order x^e, x^(e-1) y, ...; that is a_0, ..., a_e
    return BinForm(tuple(a))


# -- planar schemes -------------------------------------------------------------------


def _random_plane_vector(rng: random.Random, R: int = 5) -> tuple[int, int, int]:
    while True:
        v = tuple(rng.randint(-R, R) for _ in range(3))
        if any(v):
            return v


def _random_line(rng: random.Random, through: ProjPoint | None = None) -> ParamCurve:
    while True:
        p = through if through is not None else ProjPoint(_random_plane_vector(rng))
        q = ProjPoint(_random_plane_vector(rng))
        if p != q:
            return line_through(p, q)


def _random_conic(rng: random.Random) -> ParamCurve:
    while True:
        vs = [_random_plane_vector(rng, 3) for _ in range(3)]
        if rank(vs) == 3:
            return conic_from_vectors(*vs)


class _Builder:
    def __init__(self, rng: random.Random, d: int):
        self.rng = rng
        self.d = d
        self.comps: list[CurvComponent] = []
        self.used: set = set()

    @property
    def degree(self) -> int:
        return sum(c.k for c in self.comps)

    def add(self, comp: CurvComponent) -> bool:
        if comp.point in self.used:
            return False
        self.used.add(comp.point)
        self.comps.append(comp)
        return True

    def load_curve(self, curve: ParamCurve, load: int, max_jet: int, fixed: list | None = None) -> None:
        """Put components of total degree ``load`` on ``curve``."""
        rng = self.rng
        placed = 0
        for t0, k in fixed or []:
            if self.add(CurvComponent.jet(curve, t0, k)):
                placed += k
        tries = 0
        while placed < load and tries < 200:
            tries += 1
            k = min(load - placed, rng.choice([1, 1, 1, 2, 2, 3, max_jet]))
            k = max(1, min(k, max_jet))
            t0 = Fraction(rng.randint(-15, 15), rng.choice([1, 1, 1, 2, 3]))
            comp = CurvComponent.jet(curve, t0, k) if k > 1 else CurvComponent.reduced(curve.point(t0))
            if self.add(comp):
                placed += k

    def add_random_points(self, count: int) -> None:
        added = 0
        while added < count:
            p = ProjPoint(_random_plane_vector(self.rng, 9))
            if self.add(CurvComponent.reduced(p)):
                added += 1

    def scheme(self) -> Scheme:
        comps = list(self.comps)
        while sum(c.k for c in comps) >= 3 * self.d:
            comps.pop()
        return Scheme(2, tuple(comps))


def _line_load(rng: random.Random, d: int) -> int:
    return rng.choice([rng.randint(2, d), d + 1, d + 1, d + 2, d + 2, d + 3, rng.randint(d // 2, d + 4)])


def _conic_load(rng: random.Random, d: int) -> int:
    return rng.choice([rng.randint(5, 2 * d), 2 * d + 1, 2 * d + 1, 2 * d + 2, 2 * d + 2, 2 * d + 3])


def random_planar_scheme(rng: random.Random, d: int) -> tuple[str, Scheme]:
    """One scheme of degree < 3d from a structured family.

    Families: jets and points on one, two or three lines (sometimes through
    a common point, sometimes with a jet at a meeting point), on one smooth
    conic, or on a conic and a line, with random extra points.
    """
    family = rng.choice(["line", "two-lines", "three-lines", "conic", "conic-line", "scatter"])
    b = _Builder(rng, d)
    max_jet = rng.choice([1, 2, 3, 4])
    if family in ("line", "two-lines", "three-lines"):
        n = {"line": 1, "two-lines": 2, "three-lines": 3}[family]
        common = ProjPoint(_random_plane_vector(rng)) if n > 1 and rng.random() < 0.5 else None
        lines = []
        while len(lines) < n:
            L = _random_line(rng, common)
            if all(L.equation() != M.equation() and rank(L.coefficient_vectors() + M.coefficient_vectors()) == 3 for M in lines):
                lines.append(L)
        for i, L in enumerate(lines):
            fixed = None
            if common is not None and i == 0 and rng.random() < 0.5:
                fixed = [(0, rng.randint(1, 3))]  # a jet at the common point, along the first line
            b.load_curve(L, _line_load(rng, d) if i == 0 or rng.random() < 0.6 else rng.randint(1, d), max_jet, fixed)
    elif family in ("conic", "conic-line"):
        C = _random_conic(rng)
        b.load_curve(C, _conic_load(rng, d), max_jet)
        if family == "conic-line":
            b.load_curve(_random_line(rng), _line_load(rng, d) if rng.random() < 0.5 else rng.randint(1, d), max_jet)
    target = rng.randint(min(b.degree, 3 * d - 1), 3 * d - 1)
    if family == "scatter":
        target = rng.randint(d, 3 * d - 1)
    extra = min(max(0, target - b.degree), rng.choice([0, 1, 2, 4, 8, 3 * d]))
    b.add_random_points(extra)
    Z = b.scheme()
    if Z.degree == 0:
        Z = Scheme(2, (CurvComponent.reduced(ProjPoint((1, 0, 0))),))
    return family, Z
