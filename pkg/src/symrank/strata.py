"""Admissible (border rank, rank) pairs and explicit witnesses.

For m >= 2, s >= 5, d >= 2s + 2 and s <= r <= 2d + s - 7 a point of border
rank s and symmetric rank r exists exactly when

* r = s,
* d + 2 - s <= r <= d + s - 2 and r + s = d (mod 2), or
* 2d + 2 - s <= r <= 2d + s - 7.

Each admissible pair is realized by an explicit construction:

``equal``
    a general point in the span of s general points.
``middle``
    a degree-b jet on a line plus s - b points off it, b = (d+2+s-r)/2.
``top-even``
    a degree-b jet on a smooth conic plus s - b points off it,
    b = (2d+2+s-r)/2.
``top-odd-o3`` / ``top-odd-o4``
    jets on two meeting lines (degrees w, w or w+1, w) plus extra points,
    with c = (2d+3+s-r)/2 and w = floor(c/2); c even gives the first
    variant, c odd the second.

All configurations live in the coordinate plane x3 = ... = xm = 0. Every
"general" choice is a seeded pseudo-random rational draw followed by exact
verification of the open conditions the construction needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (
    as_rational,
    format_rational,
    integer_vector,
    intersect,
    member,
    rank,
    span,
)
from .geom import (
    ParamCurve,
    ProjPoint,
    ReducibleConic,
    curve_from_json,
    form_at,
    line_through,
    standard_conic,
    veronese_point_vector,
)
from .scheme import CurvComponent, Scheme, proper_subschemes, span_image

BAND_TAGS = ("equal", "middle", "top-even", "top-odd-o3", "top-odd-o4", "inadmissible")


class HypothesisError(ValueError):
    """Parameters outside the range where the classification applies."""


class InadmissibleError(ValueError):
    """No point with this (border rank, rank) pair exists."""


class ConstructionError(RuntimeError):
    """A construction failed exact verification after all retries."""


@dataclass(frozen=True)
class Band:
    tag: str
    params: dict = field(default_factory=dict)

    @property
    def admissible(self) -> bool:
        return self.tag != "inadmissible"


def check_hypotheses(m: int, s: int, d: int, r: int | None = None) -> None:
    if m < 2:
        raise HypothesisError(f"need m >= 2 (got m={m})")
    if s < 5:
        raise HypothesisError(f"need s >= 5 (got s={s})")
    if d < 2 * s + 2:
        raise HypothesisError(f"need d >= 2s+2 = {2 * s + 2} (got d={d})")
    if r is not None and not s <= r <= 2 * d + s - 7:
        raise HypothesisError(f"need {s} <= r <= {2 * d + s - 7} (got r={r})")


def admissible(m: int, s: int, d: int, r: int) -> Band:
    check_hypotheses(m, s, d, r)
    if r == s:
        return Band("equal")
    if d + 2 - s <= r <= d + s - 2:
        if (r + s - d) % 2 == 0:
            return Band("middle", {"b": (d + 2 + s - r) // 2})
        return Band("inadmissible", {"reason": "parity"})
    if 2 * d + 2 - s <= r <= 2 * d + s - 7:
        if (r + s) % 2 == 0:
            return Band("top-even", {"b": (2 * d + 2 + s - r) // 2})
        c = (2 * d + 3 + s - r) // 2
        w = c // 2
        return Band("top-odd-o3" if c % 2 == 0 else "top-odd-o4", {"c": c, "w": w})
    return Band("inadmissible", {"reason": "gap"})


def admissible_ranks(m: int, s: int, d: int) -> list[int]:
    check_hypotheses(m, s, d)
    return [r for r in range(s, 2 * d + s - 6) if admissible(m, s, d, r).admissible]


# -- witnesses ----------------------------------------------------------------


@dataclass
class Witness:
    """A point P with an evincing scheme A and a decomposition set B."""

    m: int
    d: int
    s: int
    r: int
    band: str
    params: dict
    P: ProjPoint
    A: Scheme
    B: tuple[ProjPoint, ...]
    seed: int = 0
    parts: dict = field(default_factory=dict)

    @property
    def vector(self) -> list[int]:
        return integer_vector(self.P.coords)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "d": self.d,
            "s": self.s,
            "r": self.r,
            "band": self.band,
            "params": dict(self.params),
            "seed": self.seed,
            "P": [format_rational(x) for x in self.P.coords],
            "A": self.A.to_json(),
            "B": [_point_json(p) for p in self.B],
            "intermediates": {k: _encode(v) for k, v in self.parts.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Witness":
        return cls(
            m=int(obj["m"]),
            d=int(obj["d"]),
            s=int(obj["s"]),
            r=int(obj["r"]),
            band=str(obj["band"]),
            params=dict(obj["params"]),
            P=ProjPoint(tuple(as_rational(x) for x in obj["P"])),
            A=Scheme.from_json(obj["A"]),
            B=tuple(_point_from_json(p) for p in obj["B"]),
            seed=int(obj.get("seed", 0)),
            parts={k: _decode(v) for k, v in obj.get("intermediates", {}).items()},
        )


def _point_json(p: ProjPoint) -> list[str]:
    return [format_rational(x) for x in p.coords]


def _point_from_json(obj) -> ProjPoint:
    return ProjPoint(tuple(as_rational(x) for x in obj))


def _encode(v):
    if isinstance(v, (ParamCurve, ReducibleConic)):
        return {"type": "curve", "value": v.to_json()}
    if isinstance(v, Scheme):
        return {"type": "scheme", "value": v.to_json()}
    if isinstance(v, ProjPoint):
        return {"type": "point", "value": _point_json(v)}
    if isinstance(v, tuple) and all(isinstance(p, ProjPoint) for p in v):
        return {"type": "points", "value": [_point_json(p) for p in v]}
    if isinstance(v, list) and v and isinstance(v[0], (list, tuple)):
        return {"type": "vectors", "value": [[format_rational(x) for x in u] for u in v]}
    if isinstance(v, list):
        return {"type": "vector", "value": [format_rational(x) for x in v]}
    raise TypeError(f"cannot encode {type(v).__name__}")


def _decode(obj):
    t, v = obj["type"], obj["value"]
    if t == "curve":
        return curve_from_json(v)
    if t == "scheme":
        return Scheme.from_json(v)
    if t == "point":
        return _point_from_json(v)
    if t == "points":
        return tuple(_point_from_json(p) for p in v)
    if t == "vectors":
        return [integer_vector([as_rational(x) for x in u]) for u in v]
    if t == "vector":
        return integer_vector([as_rational(x) for x in v])
    raise ValueError(f"unknown intermediate type {t!r}")


# -- helpers --------------------------------------------------------------------


def _rng(seed: int, *key) -> random.Random:
    return random.Random(":".join(str(x) for x in (seed,) + key))


def _basis_point(m: int, i: int) -> ProjPoint:
    return ProjPoint(tuple(int(j == i) for j in range(m + 1)))


def _plane_point(m: int, x0, x1, x2) -> ProjPoint:
    return ProjPoint((x0, x1, x2) + (0,) * (m - 2))


def random_plane_points(rng: random.Random, m: int, count: int, avoid: Sequence = (), used=(), R: int = 9):
    """``count`` distinct random points of the plane x3=...=0 off the given curves."""
    forms = [c.equation() if not isinstance(c, dict) else c for c in avoid]
    taken = set(used)
    out: list[ProjPoint] = []
    while len(out) < count:
        c = [rng.randint(-R, R) for _ in range(3)]
        if not any(c):
            continue
        p = _plane_point(m, *c)
        if p in taken:
            continue
        if any(form_at(f, p.coords) == 0 for f in forms):
            continue
        taken.add(p)
        out.append(p)
    return out


def _nonzero(rng: random.Random, R: int = 9) -> int:
    x = 0
    while x == 0:
        x = rng.randint(-R, R)
    return x


def veronese_vectors(points: Sequence[ProjPoint], d: int) -> list[list[int]]:
    return [veronese_point_vector(p, d) for p in points]


def is_minimal(P: Sequence, A: Scheme, d: int) -> bool:
    """True when P lies in no span of nu_d(F) for a proper subscheme F of A."""
    for F in proper_subschemes(A):
        if F.degree == 0:
            if not any(P):
                return False
            continue
        if member(P, span_image(F, d)) is not None:
            return False
    return True


def _unique_point(S1, S2, what: str) -> list[int]:
    I = intersect(S1, S2)
    if I.dim != 1:
        raise ConstructionError(f"{what}: expected a single point, got a space of dimension {I.dim}")
    return integer_vector(I.vectors[0])


def _combine(base: Sequence, vecs: Sequence[Sequence], coeffs: Sequence[int]) -> list:
    out = list(base)
    for c, v in zip(coeffs, vecs):
        for i, x in enumerate(v):
            if x:
                out[i] += c * x
    return out


def _finish(W: Witness) -> Witness:
    """Exact post-construction checks shared by all bands."""
    P = W.vector
    if W.A.degree != W.s or len(W.B) != W.r or len(set(W.B)) != W.r:
        raise ConstructionError("wrong sizes")
    if member(P, span_image(W.A, W.d)) is None:
        raise ConstructionError("P is not in the span of nu_d(A)")
    if member(P, span(veronese_vectors(W.B, W.d))) is None:
        raise ConstructionError("P is not in the span of nu_d(B)")
    return W


# -- constructions ------------------------------------------------------------


def construct_equal(m: int, s: int, d: int, seed: int = 0, retries: int = 32) -> Witness:
    """A general point of the span of s general points (rank = border rank = s)."""
    rng = _rng(seed, "equal", m, s, d)
    for _ in range(retries):
        pts = random_plane_points(rng, m, s)
        vecs = veronese_vectors(pts, d)
        if rank(vecs) != s:
            continue
        P = _combine([0] * len(vecs[0]), vecs, [_nonzero(rng) for _ in pts])
        A = Scheme.from_points(pts, m)
        if not is_minimal(P, A, d):
            continue
        W = Witness(m, d, s, s, "equal", {}, ProjPoint(tuple(P)), A, tuple(pts), seed, {})
        return _finish(W)
    raise ConstructionError("equal band: no general configuration found")


def construct_middle(m: int, s: int, d: int, r: int, seed: int = 0, retries: int = 32) -> Witness:
    band = admissible(m, s, d, r)
    if band.tag != "middle":
        raise InadmissibleError(f"(s, r) = ({s}, {r}) is not in the middle band for d = {d}")
    b = band.params["b"]
    rng = _rng(seed, "middle", m, s, d, r)
    L = line_through(_basis_point(m, 0), _basis_point(m, 1))
    jet = Scheme(m, (CurvComponent.jet(L, 0, b),))
    on_line = tuple(L.point(t) for t in range(1, d - b + 3))
    Q = _unique_point(span_image(jet, d), span(veronese_vectors(on_line, d)), "line core point")
    for _ in range(retries):
        extra = tuple(random_plane_points(rng, m, s - b, avoid=[L], used=on_line + (L.point(0),)))
        ev = veronese_vectors(extra, d)
        P = _combine(Q, ev, [_nonzero(rng) for _ in extra])
        A = jet.union(Scheme.from_points(extra, m))
        if not is_minimal(P, A, d):
            continue
        parts = {"line": L, "jet": jet, "line_points": on_line, "extra_points": extra, "core_point": Q}
        W = Witness(m, d, s, r, "middle", {"b": b}, ProjPoint(tuple(P)), A, on_line + extra, seed, parts)
        return _finish(W)
    raise ConstructionError("middle band: verification failed after retries")


def construct_top_even(m: int, s: int, d: int, r: int, seed: int = 0, retries: int = 32) -> Witness:
    band = admissible(m, s, d, r)
    if band.tag != "top-even":
        raise InadmissibleError(f"(s, r) = ({s}, {r}) is not in the even top band for d = {d}")
    b = band.params["b"]
    rng = _rng(seed, "top-even", m, s, d, r)
    C = standard_conic(m)
    jet = Scheme(m, (CurvComponent.jet(C, 0, b),))
    on_conic = tuple(C.point(t) for t in range(1, 2 * d + 3 - b))
    Q = _unique_point(span_image(jet, d), span(veronese_vectors(on_conic, d)), "conic core point")
    for _ in range(retries):
        extra = tuple(random_plane_points(rng, m, s - b, avoid=[C], used=on_conic + (C.point(0),)))
        ev = veronese_vectors(extra, d)
        P = _combine(Q, ev, [_nonzero(rng) for _ in extra])
        A = jet.union(Scheme.from_points(extra, m))
        if not is_minimal(P, A, d):
            continue
        parts = {"conic": C, "jet": jet, "conic_points": on_conic, "extra_points": extra, "core_point": Q}
        W = Witness(m, d, s, r, "top-even", {"b": b}, ProjPoint(tuple(P)), A, on_conic + extra, seed, parts)
        return _finish(W)
    raise ConstructionError("top-even band: verification failed after retries")


@dataclass
class TwoLinesCore:
    line1: ParamCurve
    line2: ParamCurve
    jet1: Scheme
    jet2: Scheme
    points1: tuple[ProjPoint, ...]
    points2: tuple[ProjPoint, ...]
    partial_point: list[int]
    pencil: list[list[int]]
    core_point: list[int]

    @property
    def A(self) -> Scheme:
        return self.jet1.union(self.jet2)

    @property
    def B(self) -> tuple[ProjPoint, ...]:
        return self.points1 + self.points2

    def parts(self) -> dict:
        return {
            "line1": self.line1,
            "line2": self.line2,
            "jet1": self.jet1,
            "jet2": self.jet2,
            "points1": self.points1,
            "points2": self.points2,
            "partial_point": self.partial_point,
            "pencil": self.pencil,
            "core_point": self.core_point,
        }


def two_lines_core(m: int, w: int, d: int, variant: str, rng: random.Random, retries: int = 32) -> TwoLinesCore:
    """Jets of degree w (o1) or w+1 (o2) at O on L1 and w at O2 on L2.

    Points B1 on L1 (|B1| = d + 2 - deg A1) and B2 on L2 (|B2| = d - w + 1)
    avoid O and O2; the spans of nu_d(A1 u A2) and nu_d(B1 u B2) meet in a
    line M through P' = <nu_d(A1)> cap <nu_d(B1)>, and the core point is a
    general point of M.
    """
    if variant not in ("o1", "o2"):
        raise ValueError("variant must be 'o1' or 'o2'")
    k1 = w if variant == "o1" else w + 1
    # L1 = {x2 = 0} with O = [1:0:0] at t = 0; L2 = {x1 = 0} with O2 = [1:0:1] at t = 0, O at t = -1
    L1 = line_through(_basis_point(m, 0), _basis_point(m, 1))
    L2 = line_through(_plane_point(m, 1, 0, 1), _basis_point(m, 2))
    jet1 = Scheme(m, (CurvComponent.jet(L1, 0, k1),))
    jet2 = Scheme(m, (CurvComponent.jet(L2, 0, w),))
    pts1 = tuple(L1.point(t) for t in range(1, d + 3 - k1))
    pts2 = tuple(L2.point(t) for t in range(1, d - w + 2))
    A = jet1.union(jet2)
    Pp = _unique_point(span_image(jet1, d), span(veronese_vectors(pts1, d)), "partial point")
    M = intersect(span_image(A, d), span(veronese_vectors(pts1 + pts2, d)))
    if M.dim != 2:
        raise ConstructionError(f"pencil has dimension {M.dim}, expected a line")
    other = next(integer_vector(v) for v in M.vectors if rank([Pp, list(v)]) == 2)
    for _ in range(retries):
        lam = _nonzero(rng)
        core = [x + lam * y for x, y in zip(Pp, other)]
        if is_minimal(core, A, d):
            return TwoLinesCore(L1, L2, jet1, jet2, pts1, pts2, Pp, [integer_vector(v) for v in M.vectors], integer_vector(core))
    raise ConstructionError("two-lines core: no general point of the pencil found")


def construct_two_lines(w: int, d: int, variant: str, m: int = 2, seed: int = 0) -> Witness:
    """Standalone two-lines witness: border rank 2w (o1) / 2w+1 (o2),
    rank 2d+3-2w (o1) / 2d+2-2w (o2)."""
    if variant == "o1" and not (w >= 3 and d >= 4 * w - 1):
        raise HypothesisError("o1 needs w >= 3 and d >= 4w - 1")
    if variant == "o2" and not (w >= 2 and d >= 4 * w + 1):
        raise HypothesisError("o2 needs w >= 2 and d >= 4w + 1")
    rng = _rng(seed, "two-lines", variant, m, w, d)
    core = two_lines_core(m, w, d, variant, rng)
    A = core.A
    B = core.B
    s = A.degree
    r = len(B)
    W = Witness(m, d, s, r, f"two-lines-{variant}", {"w": w}, ProjPoint(tuple(core.core_point)), A, B, seed, core.parts())
    return _finish(W)


def construct_top_odd(m: int, s: int, d: int, r: int, seed: int = 0, retries: int = 32) -> Witness:
    band = admissible(m, s, d, r)
    if band.tag not in ("top-odd-o3", "top-odd-o4"):
        raise InadmissibleError(f"(s, r) = ({s}, {r}) is not in the odd top band for d = {d}")
    c, w = band.params["c"], band.params["w"]
    variant = "o1" if band.tag == "top-odd-o3" else "o2"
    rng = _rng(seed, band.tag, m, s, d, r)
    core = two_lines_core(m, w, d, variant, rng)
    n_extra = s - core.A.degree
    used = core.B + tuple(comp.point for comp in core.A.components)
    for _ in range(retries):
        extra = tuple(random_plane_points(rng, m, n_extra, avoid=[core.line1, core.line2], used=used))
        ev = veronese_vectors(extra, d)
        P = _combine(core.core_point, ev, [_nonzero(rng) for _ in extra])
        A = core.A.union(Scheme.from_points(extra, m))
        if not is_minimal(P, A, d):
            continue
        parts = core.parts()
        parts["extra_points"] = extra
        W = Witness(m, d, s, r, band.tag, {"c": c, "w": w}, ProjPoint(tuple(P)), A, core.B + extra, seed, parts)
        return _finish(W)
    raise ConstructionError("odd top band: verification failed after retries")


def witness(m: int, s: int, d: int, r: int, seed: int = 0) -> Witness:
    """Construct a point with border rank s and rank r (dispatches on the band)."""
    band = admissible(m, s, d, r)
    if band.tag == "equal":
        return construct_equal(m, s, d, seed)
    if band.tag == "middle":
        return construct_middle(m, s, d, r, seed)
    if band.tag == "top-even":
        return construct_top_even(m, s, d, r, seed)
    if band.tag in ("top-odd-o3", "top-odd-o4"):
        return construct_top_odd(m, s, d, r, seed)
    raise InadmissibleError(f"no point of border rank {s} and rank {r} exists for d = {d} ({band.params['reason']})")
