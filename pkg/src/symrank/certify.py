"""Certificates for (border rank, symmetric rank) of constructed witnesses.

A certificate bundles

* ``br_cert``: P lies in the span of nu_d(A), in no span of a proper
  subscheme of A, and the middle catalecticant of P has rank s. The
  flattening bounds the border rank from below, the curvilinear (hence
  smoothable) scheme A bounds it from above.
* ``sr_upper``: the coefficients writing P in terms of nu_d(B).
* ``sr_lower``: a checklist of every computational fact the lower-bound
  argument for the band consumes; the deductive step itself is cited by
  name, not re-proved.
* ``h1_check``, ``residual_split`` and ``falsification`` reports.

Every item is recomputed from the witness by :func:`verify_certificate`;
nothing stored in a certificate is trusted.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from .binary import curve_point_rank
from .exact import (
    Matrix,
    express,
    format_rational,
    integer_vector,
    intersect,
    join,
    member,
    rank,
    span,
)
from .falsify import configuration_pool, falsify_search
from .geom import ParamCurve, ProjPoint, ReducibleConic, form_at, monomial_index, monomials
from .scheme import (
    Scheme,
    condition_rows,
    h01,
    intersection,
    intersection_degree,
    proper_subschemes,
    residual,
    span_image,
)
from .strata import Witness, admissible, veronese_vectors

SCHEMA = "rank-cert/1"

# names of the lower-bound arguments, one per construction
LOWER_BOUND_ARGUMENT = {
    "equal": "generic-span",
    "middle": "line-splitting",
    "top-even": "conic-splitting",
    "top-odd-o3": "two-lines-plus-points",
    "top-odd-o4": "two-lines-plus-points",
    "two-lines-o1": "two-lines",
    "two-lines-o2": "two-lines",
}

RANK_FORMULA = {
    "equal": "s",
    "middle": "d+2+s-2b",
    "top-even": "2d+2+s-2b",
    "top-odd-o3": "2d+3+s-4w",
    "top-odd-o4": "2d+1+s-4w",
    "two-lines-o1": "2d+3-2w",
    "two-lines-o2": "2d+2-2w",
}


class CertificateError(Exception):
    """A check failed; ``item`` names the first failing item."""

    def __init__(self, item: str, message: str = ""):
        super().__init__(f"{item}: {message}" if message else item)
        self.item = item
        self.message = message


class SchemaError(ValueError):
    pass


class _Checklist:
    def __init__(self, prefix: str = ""):
        self.items: list[dict] = []
        self.prefix = prefix

    def add(self, name: str, ok: bool, value) -> None:
        self.items.append({"item": name, "ok": bool(ok), "value": value})
        if not ok:
            raise CertificateError(f"{self.prefix}{name}", f"check failed (value {value})")


# -- flattenings ----------------------------------------------------------------


def flattening_matrix(P: Sequence, m: int, d: int, k: int) -> Matrix:
    """Catalecticant of P: rows degree-k monomials, columns degree-(d-k), entry P[beta+gamma]."""
    if not 1 <= k <= d - 1:
        raise ValueError(f"flattening order k={k} outside 1..{d - 1}")
    if hasattr(P, "coords"):
        P = P.coords
    P = integer_vector(P)
    if len(P) != comb(m + d, m):
        raise ValueError("vector length does not match (m, d)")
    idx = monomial_index(m, d)
    rows = []
    for beta in monomials(m, k):
        rows.append([P[idx[tuple(a + b for a, b in zip(beta, gamma))]] for gamma in monomials(m, d - k)])
    return Matrix.from_rows(rows, comb(m + d - k, m))


def flattening_rank(P: Sequence, m: int, d: int, k: int) -> int:
    return rank(flattening_matrix(P, m, d, k))


# -- border rank ------------------------------------------------------------------


def _fmt(xs) -> list[str]:
    return [format_rational(x) for x in xs]


def minimality_log(P: Sequence, A: Scheme, d: int) -> dict:
    """Check P against the span of every proper subscheme of A."""
    total = 0
    for F in proper_subschemes(A):
        total += 1
        if F.degree and member(P, span_image(F, d)) is not None:
            return {"proper_subschemes": total, "excluded": total - 1, "first_containing": F.to_json()}
    return {"proper_subschemes": total, "excluded": total}


def certify_border_rank(W: Witness) -> dict:
    P = W.vector
    s, d = W.A.degree, W.d
    ch = _Checklist("br_cert.")
    ch.add("degree", s == W.s, {"deg_A": s, "s": W.s})
    ch.add("regime", 2 * s <= d + 1, {"s": s, "d": d})
    coeffs = express(condition_rows(W.A, d), P)
    ch.add("membership", coeffs is not None, coeffs is not None)
    log = minimality_log(P, W.A, d)
    ch.add("minimality", log["excluded"] == log["proper_subschemes"], log)
    k = d // 2
    fr = flattening_rank(P, W.m, d, k)
    ch.add("flattening", fr == s, {"k": k, "rank": fr})
    return {
        "flattening_k": k,
        "flattening_rank": fr,
        "membership": _fmt(coeffs),
        "minimality": log,
        "border_rank": s,
        "cactus_rank": s,
        "uniqueness": "deg A <= (d+1)/2 and P is in no span of a proper subscheme, so A is the only scheme of degree <= s spanning P; cactus rank equals border rank",
    }


# -- rank upper bound ----------------------------------------------------------------


def certify_sr_upper(W: Witness) -> dict:
    P = W.vector
    ch = _Checklist("sr_upper.")
    ch.add("size", len(W.B) == W.r and len(set(W.B)) == W.r, {"B": len(W.B), "r": W.r})
    vecs = veronese_vectors(W.B, W.d)
    coeffs = express(vecs, P)
    ch.add("membership", coeffs is not None, coeffs is not None)
    ch.add("independent", rank(vecs) == W.r, rank(vecs))
    ch.add("coefficients-nonzero", all(coeffs), sum(1 for c in coeffs if c))
    return {"B_size": W.r, "coefficients": _fmt(coeffs)}


# -- rank lower bound ----------------------------------------------------------------


def _same_point(u: Sequence, v: Sequence) -> bool:
    return rank([list(u), list(v)]) == 1


def _split_point(P, extra: Sequence[ProjPoint], carrier_rows, d: int, n: int):
    """span({P} u nu_d(E)) cap span(nu_d(carrier))."""
    return intersect(span([list(P)] + veronese_vectors(extra, d), n), span(carrier_rows, n))


def _carrier_checks(ch: _Checklist, W: Witness, carrier_rows: list, carrier_dim: int, core: list, extra):
    d, n = W.d, len(W.vector)
    ev = veronese_vectors(extra, d)
    dim_c = rank(carrier_rows)
    dim_ce = rank(carrier_rows + ev)
    ch.add(
        "span-splitting",
        dim_c == carrier_dim and dim_ce == dim_c + len(extra),
        {"carrier": dim_c, "carrier_plus_extra": dim_ce, "extra": len(extra)},
    )
    I = _split_point(W.vector, extra, carrier_rows, d, n)
    ok = I.dim == 1 and _same_point(I.vectors[0], core)
    ch.add("split-point", ok, {"dim": I.dim, "is_core_point": ok})


def _plane_conics(Z: Scheme) -> int:
    # conics of the plane x3=...=0 through Z; Z lies in that plane
    return 6 - h01(Z, 2).conditions_rank


def _h1_item(ch: _Checklist, W: Witness) -> None:
    Z = W.A.union(Scheme.from_points(W.B, W.m))
    h = h01(Z, W.d).h1
    ch.add("h1-positive", h > 0, {"h1": h, "degree": Z.degree})


def _residual_item(ch: _Checklist, W: Witness, D, deg_D: int) -> None:
    Z = W.A.union(Scheme.from_points(W.B, W.m))
    R = residual(Z, D)
    h = h01(R, W.d - deg_D).h1
    ch.add("residual-vanishing", h == 0, {"h1": h, "residual_degree": R.degree, "twist": W.d - deg_D})


def _degree_bound(ch: _Checklist, W: Witness) -> None:
    # a hypothetical shorter decomposition B' gives deg(A u B') <= s + r - 1
    v = W.s + W.r - 1
    ch.add("degree-bound", v < 3 * W.d, {"shorter_union_degree": v, "bound": 3 * W.d})


def _lower_equal(W: Witness, ch: _Checklist) -> None:
    vecs = veronese_vectors(W.B, W.d)
    ch.add("independent", rank(vecs) == W.s, rank(vecs))
    coeffs = express(vecs, W.vector)
    ch.add("coefficients-nonzero", coeffs is not None and all(coeffs), coeffs is not None)
    fr = flattening_rank(W.vector, W.m, W.d, W.d // 2)
    ch.add("flattening", fr == W.s, fr)


def _lower_middle(W: Witness, ch: _Checklist) -> None:
    d, s, r = W.d, W.s, W.r
    parts = W.parts
    L: ParamCurve = parts["line"]
    jet: Scheme = parts["jet"]
    on_line = parts["line_points"]
    extra = parts["extra_points"]
    Q = parts["core_point"]
    b = W.params["b"]
    band = admissible(W.m, s, d, r)
    ch.add(
        "band",
        band.tag == "middle" and band.params["b"] == b and len(extra) == s - b and len(on_line) == d + 2 - b,
        {"b": b, "extra": len(extra), "on_line": len(on_line)},
    )
    on = intersection(W.A, L)
    off = residual(W.A, L)
    ch.add(
        "jet-on-line",
        on.degree == b and len(on.components) == 1 and off.is_reduced() and off.degree == s - b,
        {"on_line": on.degree, "off_line": off.degree},
    )
    res = curve_point_rank(Q, L, d)
    ch.add(
        "line-rank",
        res.border_rank == b and res.rank == d + 2 - b,
        {"border_rank": res.border_rank, "rank": res.rank, "sum": res.rank + res.border_rank},
    )
    n = len(W.vector)
    ok = member(Q, span_image(jet, d)) is not None and member(Q, span(veronese_vectors(on_line, d), n)) is not None
    ch.add("core-spans", ok, ok)
    ch.add("extra-count", len(extra) <= d, len(extra))
    _carrier_checks(ch, W, L.compose(d), d + 1, Q, extra)
    _degree_bound(ch, W)
    _h1_item(ch, W)
    _residual_item(ch, W, L, 1)


def _lower_top_even(W: Witness, ch: _Checklist) -> None:
    d, s, r = W.d, W.s, W.r
    parts = W.parts
    C: ParamCurve = parts["conic"]
    jet: Scheme = parts["jet"]
    on_conic = parts["conic_points"]
    extra = parts["extra_points"]
    Q = parts["core_point"]
    b = W.params["b"]
    band = admissible(W.m, s, d, r)
    ch.add(
        "band",
        band.tag == "top-even" and band.params["b"] == b and 5 <= b <= s and len(on_conic) == 2 * d + 2 - b,
        {"b": b, "on_conic": len(on_conic)},
    )
    ch.add("extra-count", len(extra) == s - b and len(extra) <= d - 1, len(extra))
    on = intersection(W.A, C)
    off = residual(W.A, C)
    ch.add(
        "jet-on-conic",
        on.degree == b and len(on.components) == 1 and off.is_reduced() and off.degree == s - b,
        {"on_conic": on.degree, "off_conic": off.degree},
    )
    res = curve_point_rank(Q, C, d)
    ch.add(
        "conic-rank",
        res.border_rank == b and res.rank == 2 * d + 2 - b,
        {"border_rank": res.border_rank, "rank": res.rank},
    )
    n = len(W.vector)
    ok = member(Q, span_image(jet, d)) is not None and member(Q, span(veronese_vectors(on_conic, d), n)) is not None
    ch.add("core-spans", ok, ok)
    h0 = _plane_conics(jet)
    ch.add("unique-conic", h0 == 1, {"conics_through_jet": h0})
    _carrier_checks(ch, W, C.compose(d), 2 * d + 1, Q, extra)
    _degree_bound(ch, W)
    _h1_item(ch, W)
    _residual_item(ch, W, C, 2)


def _two_lines_items(W: Witness, ch: _Checklist, variant: str, w: int) -> None:
    """The seven checks shared by the two-lines constructions."""
    d = W.d
    parts = W.parts
    L1: ParamCurve = parts["line1"]
    L2: ParamCurve = parts["line2"]
    jet1: Scheme = parts["jet1"]
    jet2: Scheme = parts["jet2"]
    k1 = w if variant == "o1" else w + 1
    core_A = jet1.union(jet2)
    n = len(W.vector)

    if W.band.startswith("two-lines"):
        if variant == "o1":
            ok = w >= 3 and d >= 4 * w - 1
        else:
            ok = w >= 2 and d >= 4 * w + 1
    else:
        extra = len(parts["extra_points"])
        if variant == "o1":
            ok = w >= 3 and W.s >= 2 * w and d >= 2 * W.s - 1 and extra == W.s - 2 * w
        else:
            ok = w >= 2 and W.s >= 2 * w + 1 and d >= 2 * W.s - 1 and extra == W.s - 2 * w - 1
    ok = ok and jet1.degree == k1 and jet2.degree == w
    ok = ok and len(parts["points1"]) == d + 2 - k1 and len(parts["points2"]) == d - w + 1
    ch.add("params", ok, {"w": w, "variant": variant, "deg_A1": jet1.degree, "deg_A2": jet2.degree})

    ch.add("br-regime", 2 * W.s <= d + 1, {"s": W.s, "d": d})
    _h1_item(ch, W)
    _degree_bound(ch, W)

    a1 = intersection_degree(W.A, L1)
    a2 = intersection_degree(W.A, L2)
    h0 = _plane_conics(core_A)
    ch.add("unique-conic", a1 >= 3 and a2 >= 3 and h0 == 1, {"deg_L1": a1, "deg_L2": a2, "conics": h0})

    Pp = parts["partial_point"]
    core = parts["core_point"]
    M = intersect(span_image(core_A, d), span(veronese_vectors(parts["points1"] + parts["points2"], d), n))
    ok = M.dim == 2 and M.contains(Pp) and M.contains(core) and not _same_point(Pp, core)
    ch.add("pencil-line", ok, {"dim": M.dim})

    res = curve_point_rank(Pp, L1, d)
    ch.add(
        "partial-rank",
        res.border_rank == k1 and res.rank == d + 2 - k1,
        {"border_rank": res.border_rank, "rank": res.rank},
    )


def _lower_two_lines(W: Witness, ch: _Checklist) -> None:
    variant = W.band.rsplit("-", 1)[1]
    _two_lines_items(W, ch, variant, W.params["w"])


def _lower_top_odd(W: Witness, ch: _Checklist) -> None:
    band = admissible(W.m, W.s, W.d, W.r)
    w = W.params["w"]
    ch.add("band", band.tag == W.band and band.params == W.params, dict(band.params))
    variant = "o1" if W.band == "top-odd-o3" else "o2"
    _two_lines_items(W, ch, variant, w)
    parts = W.parts
    D = ReducibleConic(parts["line1"], parts["line2"])
    _carrier_checks(ch, W, D.compose(W.d), 2 * W.d + 1, parts["core_point"], parts["extra_points"])
    ch.add("extra-count", len(parts["extra_points"]) <= W.d - 1, len(parts["extra_points"]))
    _residual_item(ch, W, D, 2)


_LOWER = {
    "equal": _lower_equal,
    "middle": _lower_middle,
    "top-even": _lower_top_even,
    "top-odd-o3": _lower_top_odd,
    "top-odd-o4": _lower_top_odd,
    "two-lines-o1": _lower_two_lines,
    "two-lines-o2": _lower_two_lines,
}


def certify_sr_lower(W: Witness) -> dict:
    if W.band not in _LOWER:
        raise CertificateError("sr_lower.band", f"unknown construction {W.band!r}")
    ch = _Checklist("sr_lower.")
    _LOWER[W.band](W, ch)
    arg = LOWER_BOUND_ARGUMENT[W.band]
    if W.band == "equal":
        conclusion = f"sr(P) = {W.r} (flattening lower bound)"
    else:
        conclusion = f"sr(P) = {W.r}, conditional on {arg}"
    return {
        "argument": arg,
        "rank_formula": RANK_FORMULA[W.band],
        "checklist": ch.items,
        "conclusion": conclusion,
    }


# -- h1 and residual splitting ---------------------------------------------------------


def h1_check(W: Witness) -> dict:
    Z = W.A.union(Scheme.from_points(W.B, W.m))
    h = h01(Z, W.d).h1
    if W.r > W.s and h == 0:
        raise CertificateError("h1_check", "A u B imposes independent conditions")
    return {"h1": h, "degree": Z.degree}


def divisor_of(W: Witness):
    """The curve the residual splitting is applied to, with its degree."""
    p = W.parts
    if W.band == "middle":
        return p["line"], 1
    if W.band == "top-even":
        return p["conic"], 2
    if "line1" in p:
        return ReducibleConic(p["line1"], p["line2"]), 2
    return None, 0


def verify_lemma_v4_instance(A: Scheme, B: Sequence[ProjPoint], D, d: int, P=None, core=None) -> dict:
    """Residual splitting along a line or conic D, checked on one instance.

    Hypothesis: h^1 of I_{Res_D(A u B)}(d - deg D) vanishes. Conclusions,
    with E the points of B off D: nu_d(E) is independent; E is Res_D(A) as
    a set of reduced points; the spans of nu_d(A cap D) and nu_d(B cap D)
    meet. When P is given, also P lies in the span of that intersection and
    nu_d(E); when ``core`` is given, it lies in the intersection.

    ``status`` is "hypothesis-not-met", "verified" or "conclusion-failed".
    """
    deg_D = 1 if isinstance(D, ParamCurve) and D.kind == "line" else 2
    m = A.m
    Z = A.union(Scheme.from_points(B, m))
    R = residual(Z, D)
    h = h01(R, d - deg_D).h1
    report: dict = {"divisor_degree": deg_D, "hypothesis": {"h1": h, "twist": d - deg_D, "met": h == 0}}
    if h != 0:
        report["status"] = "hypothesis-not-met"
        return report
    forms = [D.line1.equation(), D.line2.equation()] if isinstance(D, ReducibleConic) else [D.equation()]
    def on_D(p: ProjPoint) -> bool:
        return any(form_at(f, p.coords) == 0 for f in forms)

    E = [p for p in B if not on_D(p)]
    B_on = [p for p in B if on_D(p)]
    n = comb(m + d, m)
    ev = veronese_vectors(E, d)
    indep = rank(ev) == len(E) if E else True
    resA = residual(A, D)
    same = resA.is_reduced() and set(resA.support) == set(E) and resA.degree == len(E)
    A_on = intersection(A, D)
    I = intersect(span_image(A_on, d), span(veronese_vectors(B_on, d), n)) if B_on else None
    I_dim = I.dim if I is not None else 0
    conc = {"extra_independent": indep, "extra_is_residual": same, "intersection_dim": I_dim}
    ok = indep and same and I_dim > 0
    if P is not None and I_dim > 0:
        inside = join(I, span(ev, n)).contains(list(P))
        conc["P_in_join"] = inside
        ok = ok and inside
    if core is not None and I_dim > 0:
        conc["core_in_intersection"] = I.contains(list(core))
        ok = ok and conc["core_in_intersection"]
    report["conclusions"] = conc
    report["extra_points"] = len(E)
    report["status"] = "verified" if ok else "conclusion-failed"
    return report


def residual_split(W: Witness) -> dict:
    D, _ = divisor_of(W)
    if D is None:
        return {"applicable": False}
    rep = verify_lemma_v4_instance(W.A, W.B, D, W.d, W.vector, W.parts.get("core_point"))
    if rep["status"] != "verified":
        raise CertificateError("residual_split", rep["status"])
    rep["applicable"] = True
    return rep


# -- falsification ------------------------------------------------------------------


def witness_curves(W: Witness) -> list:
    return [W.parts[k] for k in ("line", "conic", "line1", "line2") if k in W.parts]


def witness_pool(W: Witness, seed: int = 0):
    pts = list(W.B) + [c.point for c in W.A.components]
    return configuration_pool(witness_curves(W), pts, W.m, seed=seed)


def falsification(W: Witness, budget: int = 1000, seed: int = 0) -> dict:
    pool = witness_pool(W, seed)
    out = falsify_search(W.vector, W.m, W.d, W.r - 1, budget, pool, seed=seed, anchors=[W.B])
    rep = {"budget": budget, "seed": seed, "k_max": W.r - 1, **out.to_json()}
    if not out.exhausted:
        raise CertificateError("falsification", "found a decomposition shorter than r")
    return rep


# -- full certificates ---------------------------------------------------------------


def certify(W: Witness, falsify_budget: int = 1000, falsify_seed: int = 0) -> dict:
    """Run every check; raise :class:`CertificateError` on the first failure."""
    return {
        "schema": SCHEMA,
        "witness": W.to_json(),
        "br_cert": certify_border_rank(W),
        "sr_upper": certify_sr_upper(W),
        "sr_lower": certify_sr_lower(W),
        "h1_check": h1_check(W),
        "residual_split": residual_split(W),
        "falsification": falsification(W, falsify_budget, falsify_seed),
    }


SECTIONS = ("br_cert", "sr_upper", "sr_lower", "h1_check", "residual_split", "falsification")


def verify_certificate(obj: dict) -> dict:
    """Recompute a certificate from its witness and compare section by section.

    Raises :class:`SchemaError` on a wrong or missing schema tag and
    :class:`CertificateError` naming the first failing item otherwise.
    """
    if not isinstance(obj, dict) or obj.get("schema") != SCHEMA:
        raise SchemaError(f"expected schema {SCHEMA!r}, got {obj.get('schema') if isinstance(obj, dict) else None!r}")
    try:
        W = Witness.from_json(obj["witness"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError("witness", f"unreadable witness ({exc})") from exc
    fal = obj.get("falsification", {})
    fresh = certify(W, int(fal.get("budget", 1000)), int(fal.get("seed", 0)))
    if fresh["witness"] != obj["witness"]:
        raise CertificateError("witness", "witness does not round-trip")
    for key in SECTIONS:
        if obj.get(key) != fresh[key]:
            raise CertificateError(key, "stored section differs from recomputation")
    return fresh
