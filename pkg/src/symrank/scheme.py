"""Curvilinear zero-dimensional schemes on lines and smooth conics.

A component is the divisor ``k * gamma(t0)`` on a parametrized carrier curve,
or a reduced point with no carrier. The linear conditions such a scheme
imposes on degree-d forms are the Taylor coefficients of ``nu_d(gamma(t))``
at ``t0`` up to order ``k - 1``; everything else (h^0, h^1, spans, residuals)
is computed from that.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence, Union

from . import poly
from .exact import (
    Matrix,
    SubspaceBasis,
    as_rational,
    format_rational,
    integer_vector,
    kernel,
    rank,
    span,
)
from .geom import (
    ParamCurve,
    ProjPoint,
    ReducibleConic,
    form_at,
    line_through,
    veronese_point_vector,
    veronese_vector,
    _det3,
    quadric_matrix,
    monomials,
)

Divisor = Union[ParamCurve, ReducibleConic]


@dataclass(frozen=True)
class CurvComponent:
    """The length-k subscheme of ``carrier`` supported at ``carrier(t0)``.

    A reduced point may be given without a carrier.
    """

    carrier: ParamCurve | None
    t0: Fraction | None
    k: int
    point: ProjPoint

    @classmethod
    def jet(cls, carrier: ParamCurve, t0, k: int) -> "CurvComponent":
        if k < 1:
            raise ValueError("component degree must be at least 1")
        t0 = as_rational(t0)
        return cls(carrier, t0, k, carrier.point(t0))

    @classmethod
    def reduced(cls, p: ProjPoint) -> "CurvComponent":
        return cls(None, None, 1, p)

    def with_degree(self, k: int) -> "CurvComponent":
        if self.carrier is None and k != 1:
            raise ValueError("a point without carrier can only have degree 1")
        return CurvComponent(self.carrier, self.t0, k, self.point)

    def rows(self, d: int) -> list[list]:
        if self.carrier is None:
            return [veronese_point_vector(self.point, d)]
        if self.k == 1:
            return [veronese_point_vector(self.point, d)]
        return self.carrier.jet_rows(self.t0, self.k, d)

    def to_json(self) -> dict:
        if self.carrier is None:
            return {"point": [format_rational(x) for x in self.point.coords], "degree": 1}
        return {"carrier": self.carrier.to_json(), "t0": format_rational(self.t0), "degree": self.k}

    @classmethod
    def from_json(cls, obj: dict) -> "CurvComponent":
        if "carrier" in obj and obj["carrier"] is not None:
            return cls.jet(ParamCurve.from_json(obj["carrier"]), as_rational(obj["t0"]), int(obj["degree"]))
        if int(obj.get("degree", 1)) != 1:
            raise ValueError("a point without carrier must have degree 1")
        return cls.reduced(ProjPoint(tuple(as_rational(x) for x in obj["point"])))


@dataclass(frozen=True)
class Scheme:
    """A curvilinear zero-dimensional scheme in P^m."""

    m: int
    components: tuple[CurvComponent, ...] = ()

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        seen = set()
        for c in comps:
            if c.point.m != self.m:
                raise ValueError("component lives in a different projective space")
            if c.point in seen:
                raise ValueError(f"two components supported at {c.point}")
            seen.add(c.point)

    @classmethod
    def from_points(cls, points: Sequence[ProjPoint], m: int | None = None) -> "Scheme":
        points = list(points)
        if m is None:
            if not points:
                raise ValueError("m is required for an empty scheme")
            m = points[0].m
        return cls(m, tuple(CurvComponent.reduced(p) for p in points))

    @property
    def support(self) -> list[ProjPoint]:
        return [c.point for c in self.components]

    @property
    def degree(self) -> int:
        return sum(c.k for c in self.components)

    def reduced(self) -> "Scheme":
        return Scheme(self.m, tuple(c.with_degree(1) if c.carrier is not None else c for c in self.components))

    def is_reduced(self) -> bool:
        return all(c.k == 1 for c in self.components)

    def union(self, other: "Scheme") -> "Scheme":
        if other.m != self.m:
            raise ValueError("schemes in different spaces")
        comps = list(self.components)
        where = {c.point: i for i, c in enumerate(comps)}
        for c in other.components:
            i = where.get(c.point)
            if i is None:
                where[c.point] = len(comps)
                comps.append(c)
                continue
            old = comps[i]
            if c.k == 1:
                continue
            if old.k == 1:
                comps[i] = c
            elif old.carrier == c.carrier and old.t0 == c.t0:
                comps[i] = old if old.k >= c.k else c
            else:
                raise ValueError(f"non-curvilinear union at {c.point}")
        return Scheme(self.m, tuple(comps))

    def __contains__(self, p: ProjPoint) -> bool:
        return any(c.point == p for c in self.components)

    def to_json(self) -> dict:
        return {"m": self.m, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, obj, m: int | None = None) -> "Scheme":
        if isinstance(obj, list):
            comps = [CurvComponent.from_json(c) for c in obj]
            if m is None:
                if not comps:
                    raise ValueError("an empty component list needs an explicit m")
                m = comps[0].point.m
            return cls(m, tuple(comps))
        return cls(int(obj["m"]), tuple(CurvComponent.from_json(c) for c in obj["components"]))


@dataclass(frozen=True)
class HFunction:
    """h^0 and h^1 of the twisted ideal sheaf I_Z(d)."""

    d: int
    h0: int
    h1: int
    conditions_rank: int

    def to_json(self) -> dict:
        return {"d": self.d, "h0": self.h0, "h1": self.h1}


def degree(Z: Scheme) -> int:
    return Z.degree


def condition_rows(Z: Scheme, d: int) -> list[list]:
    rows: list[list] = []
    for c in Z.components:
        rows.extend(c.rows(d))
    return rows


def conditions_matrix(Z: Scheme, d: int) -> Matrix:
    """One row per jet functional, on the degree-d monomial basis."""
    n = comb(Z.m + d, Z.m)
    return Matrix.from_rows(condition_rows(Z, d), n)


def h01(Z: Scheme, d: int) -> HFunction:
    if d < 0:
        raise ValueError("negative twist")
    r = rank(condition_rows(Z, d))
    return HFunction(d, comb(Z.m + d, Z.m) - r, Z.degree - r, r)


def span_image(Z: Scheme, d: int) -> SubspaceBasis:
    """Linear span of nu_d(Z), as a subspace of the coordinates of P^n."""
    return span(condition_rows(Z, d), comb(Z.m + d, Z.m))


def subschemes(Z: Scheme) -> Iterator[Scheme]:
    """All subschemes, i.e. every choice of degrees 0 <= b_i <= a_i."""
    ranges = [range(c.k + 1) for c in Z.components]
    for ks in itertools.product(*ranges):
        yield Scheme(Z.m, tuple(c.with_degree(k) for c, k in zip(Z.components, ks) if k))


def proper_subschemes(Z: Scheme) -> Iterator[Scheme]:
    full = tuple(c.k for c in Z.components)
    ranges = [range(c.k + 1) for c in Z.components]
    for ks in itertools.product(*ranges):
        if ks == full:
            continue
        yield Scheme(Z.m, tuple(c.with_degree(k) for c, k in zip(Z.components, ks) if k))


# -- divisors -----------------------------------------------------------------


def _divisor_forms(D) -> list[dict]:
    if isinstance(D, ReducibleConic):
        return [D.line1.equation(), D.line2.equation()]
    if isinstance(D, ParamCurve):
        return [D.equation()]
    if isinstance(D, dict):
        return [D]
    raise TypeError(f"unsupported divisor {type(D).__name__}")


def contact_order(c: CurvComponent, form: dict) -> float:
    """Order of vanishing of ``form`` along the component's carrier at its support.

    ``math.inf`` when the component lies inside the hypersurface.
    """
    if c.carrier is None or c.k == 1:
        return math.inf if form_at(form, c.point.coords) == 0 else 0
    p = c.carrier.form_on_curve(form)
    mu = poly.vanishing_order(p, c.t0)
    return math.inf if mu is None else mu


def residual(Z: Scheme, D) -> Scheme:
    """Residual scheme Res_D(Z), with ideal I_Z : I_D.

    For a component k*p on a carrier not contained in D, with D vanishing to
    order mu along the carrier at p, the residual is (k - mu)*p (nothing if
    mu >= k). Components on carriers contained in D disappear. Reducible
    conics are handled one line at a time.
    """
    cur = Z
    for form in _divisor_forms(D):
        comps = []
        for c in cur.components:
            mu = contact_order(c, form)
            k = c.k - mu
            if k > 0:
                comps.append(c.with_degree(int(k)))
        cur = Scheme(Z.m, tuple(comps))
    return cur


def intersection(Z: Scheme, D) -> Scheme:
    """The subscheme Z cap D (on each carrier, the truncation of length k - deg Res)."""
    res = {c.point: c.k for c in residual(Z, D).components}
    comps = []
    for c in Z.components:
        k = c.k - res.get(c.point, 0)
        if k > 0:
            comps.append(c.with_degree(k))
    return Scheme(Z.m, tuple(comps))


def intersection_degree(Z: Scheme, D) -> int:
    return Z.degree - residual(Z, D).degree


# -- excess curves ------------------------------------------------------------


@dataclass(frozen=True)
class ExcessCurve:
    """A line meeting Z in degree >= d+2 or a conic meeting it in degree >= 2d+2."""

    kind: str  # "line" | "conic" | "reducible-conic"
    form: dict
    intersection_degree: int
    curve: Divisor | None = None


def _line_key(form: dict, m: int) -> tuple:
    vec = [form.get(tuple(int(i == j) for j in range(m + 1)), 0) for i in range(3)]
    v = integer_vector(vec)
    if next(x for x in v if x) < 0:
        v = [-x for x in v]
    return tuple(v)


def _form_key(form: dict) -> tuple:
    items = sorted(form.items())
    v = integer_vector([c for _, c in items])
    if v[0] < 0:
        v = [-x for x in v]
    return tuple(e for e, _ in items), tuple(v)


def _check_planar(Z: Scheme, d: int) -> None:
    if Z.degree >= 3 * d:
        raise ValueError(f"excess curve detection needs deg(Z) < 3d (deg {Z.degree}, d {d})")
    if Z.m < 2:
        raise ValueError("excess curve detection needs m >= 2")
    if Z.m > 2:
        for c in Z.components:
            if any(c.point.coords[3:]) or (c.carrier is not None and not c.carrier.in_coordinate_plane()):
                raise ValueError("for m > 2 the scheme must lie in the plane x3=...=0")
        if Z.degree - len(Z.components) > d:
            raise ValueError("for m > 2 need deg(Z) - deg(Z_red) <= d")


def _degree_on(Z: Scheme, form: dict, on_support: Sequence[bool] | None = None) -> int:
    total = 0
    for i, c in enumerate(Z.components):
        if on_support is not None and not on_support[i]:
            continue
        total += int(min(c.k, contact_order(c, form)))
    return total


def excess_curve_detect(Z: Scheme, d: int) -> ExcessCurve | None:
    """Search for a line L with deg(L cap Z) >= d+2 or a conic T with deg(T cap Z) >= 2d+2.

    Candidates, in this order: carrier lines; lines through two support
    points; carrier conics; unions of two candidate lines; irreducible conics
    through five support points. ``Z`` must be planar and of degree < 3d.

    The search is complete when every excess conic that is not a carrier
    passes through at least five support points, which holds for schemes
    whose non-reduced parts sit on lines and at most one conic.
    """
    _check_planar(Z, d)
    m = Z.m
    comps = Z.components
    pts = [c.point.ints()[:3] for c in comps]

    # lines
    lines: list[tuple[dict, ParamCurve, int]] = []
    seen: set = set()

    def consider_line(curve: ParamCurve):
        form = curve.equation()
        key = _line_key(form, m)
        if key in seen:
            return None
        seen.add(key)
        on = [sum(a * b for a, b in zip(key, p)) == 0 for p in pts]
        deg = _degree_on(Z, form, on)
        lines.append((form, curve, deg))
        if deg >= d + 2:
            return ExcessCurve("line", form, deg, curve)
        return None

    for c in comps:
        if c.carrier is not None and c.carrier.kind == "line":
            hit = consider_line(c.carrier)
            if hit:
                return hit
    for i, j in itertools.combinations(range(len(comps)), 2):
        hit = consider_line(line_through(comps[i].point, comps[j].point))
        if hit:
            return hit

    if Z.degree < 2 * d + 2:
        return None

    # carrier conics
    for c in comps:
        if c.carrier is not None and c.carrier.kind == "conic":
            form = c.carrier.equation()
            deg = _degree_on(Z, form)
            if deg >= 2 * d + 2:
                return ExcessCurve("conic", form, deg, c.carrier)

    # pairs of lines
    for (f1, l1, a), (f2, l2, b) in itertools.combinations(lines, 2):
        if a + b < 2 * d + 2:
            continue
        rc = ReducibleConic(l1, l2)
        deg = intersection_degree(Z, rc)
        if deg >= 2 * d + 2:
            return ExcessCurve("reducible-conic", rc.equation(), deg, rc)

    # irreducible conics through >= 5 support points
    hit = _conic_search(Z, d, pts)
    return hit


def _conic_search(Z: Scheme, d: int, pts: list[list[int]]) -> ExcessCurve | None:
    comps = Z.components
    N = len(comps)
    if N < 5:
        return None
    q2 = [veronese_vector(p, 2) for p in pts]
    quads = monomials(2, 2)
    ks = [c.k for c in comps]
    head = min(N, d + 1)
    tried: set = set()
    for quad in itertools.combinations(range(head), 4):
        if _three_collinear([pts[i] for i in quad]):
            continue
        K = kernel([q2[i] for i in quad])
        if K.dim != 2:
            continue
        g1, g2 = (integer_vector(v) for v in K.vectors)
        groups: dict[tuple, list[int]] = {}
        for j in range(N):
            if j in quad:
                continue
            a = sum(x * y for x, y in zip(g1, q2[j]))
            b = sum(x * y for x, y in zip(g2, q2[j]))
            if a == 0 and b == 0:
                continue
            g = math.gcd(a, b)
            key = (a // g, b // g) if (a, b) > (0, 0) else (-a // g, -b // g)
            groups.setdefault(key, []).append(j)
        base = sum(ks[i] for i in quad)
        for (a, b), members in groups.items():
            if base + sum(ks[j] for j in members) < 2 * d + 2:
                continue
            coeffs = [b * x - a * y for x, y in zip(g1, g2)]
            form = {tuple(e) + (0,) * (Z.m - 2): Fraction(c) for e, c in zip(quads, coeffs) if c}
            key = _form_key(form)
            if key in tried:
                continue
            tried.add(key)
            if _det3(quadric_matrix(form)) == 0:
                continue
            deg = _degree_on(Z, form)
            if deg >= 2 * d + 2:
                return ExcessCurve("conic", form, deg, None)
    return None


def _three_collinear(pts: Sequence[Sequence[int]]) -> bool:
    for a, b, c in itertools.combinations(pts, 3):
        if rank([a, b, c]) < 3:
            return True
    return False
