"""Budgeted search for decompositions shorter than a claimed rank.

Candidate sets are drawn from a pool of rational points (points on the
curves of a witness configuration, the witness's own points, and random
plane points). Each candidate is screened modulo a large prime with numpy
and every hit is confirmed in exact arithmetic before it is reported, so
a reported decomposition is always genuine. Testing sets of the largest
allowed size is enough: a shorter decomposition extends to one of any
larger size by adding points.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .exact import express, integer_vector
from .geom import ParamCurve, ProjPoint, ReducibleConic, veronese_point_vector

PRIME = 2**31 - 1


@dataclass
class FalsifyOutcome:
    found: tuple[ProjPoint, ...] | None
    tests: int
    sizes: list[int]
    pool_size: int
    false_alarms: int = 0
    mode: str = "random"

    @property
    def exhausted(self) -> bool:
        return self.found is None

    def to_json(self) -> dict:
        out = {
            "outcome": "exhausted" if self.found is None else "found",
            "tests": self.tests,
            "sizes": list(self.sizes),
            "pool_size": self.pool_size,
            "mode": self.mode,
        }
        if self.found is not None:
            out["decomposition"] = [[str(x) for x in p.coords] for p in self.found]
        return out


def _mod_vector(v: Sequence[int]) -> np.ndarray:
    return np.array([x % PRIME for x in v], dtype=np.int64)


def _in_span_mod(V: np.ndarray, target: np.ndarray) -> bool:
    """Is ``target`` in the row space of ``V`` over GF(PRIME)?"""
    M = np.vstack([V, target[None, :]]) % PRIME
    k = V.shape[0]
    for i in range(k):
        nz = np.flatnonzero(M[i])
        if nz.size == 0:
            continue
        c = nz[0]
        inv = pow(int(M[i, c]), PRIME - 2, PRIME)
        M[i] = M[i] * inv % PRIME
        below = M[i + 1 :, c].copy()
        if below.any():
            M[i + 1 :] = (M[i + 1 :] - np.outer(below, M[i]) % PRIME) % PRIME
    return not M[k].any()


def _exact_decomposition(P: Sequence[int], pts: Sequence[ProjPoint], d: int):
    vecs = [veronese_point_vector(p, d) for p in pts]
    coeffs = express(vecs, P)
    if coeffs is None:
        return None
    return tuple(p for p, c in zip(pts, coeffs) if c)


def falsify_search(
    P: Sequence,
    m: int,
    d: int,
    k_max: int,
    budget: int,
    pool: Sequence[ProjPoint],
    seed: int = 0,
    anchors: Sequence[Sequence[ProjPoint]] = (),
) -> FalsifyOutcome:
    """Look for at most ``k_max`` pool points whose Veronese span contains P.

    Enumerates every ``k_max``-subset when there are at most ``budget`` of
    them, otherwise tests ``budget`` seeded samples: half uniform, half
    perturbations of the ``anchors`` (drop a few points, fill up from the
    pool).
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    P = integer_vector(P)
    pool = list(dict.fromkeys(pool))
    N = len(pool)
    if N == 0 or k_max <= 0:
        return FalsifyOutcome(None, 0, [], N, mode="empty")
    vec_mod = np.array([_mod_vector(veronese_point_vector(p, d)) for p in pool], dtype=np.int64)
    target = _mod_vector(P)
    k = min(k_max, N)
    index = {p: i for i, p in enumerate(pool)}
    anchor_idx = [[index[p] for p in a if p in index] for a in anchors]
    anchor_idx = [a for a in anchor_idx if a]

    false_alarms = 0
    tests = 0

    def check(subset) -> tuple[ProjPoint, ...] | None:
        nonlocal false_alarms, tests
        tests += 1
        if not _in_span_mod(vec_mod[list(subset)], target):
            return None
        found = _exact_decomposition(P, [pool[i] for i in subset], d)
        if found is None:
            false_alarms += 1
        return found

    if comb(N, k) <= budget:
        for subset in itertools.combinations(range(N), k):
            hit = check(subset)
            if hit is not None:
                return FalsifyOutcome(hit, tests, [k], N, false_alarms, "exhaustive")
        return FalsifyOutcome(None, tests, [k], N, false_alarms, "exhaustive")

    rng = random.Random(f"falsify:{seed}:{m}:{d}:{k_max}")
    seen: set = set()
    attempts = 0
    while tests < budget and attempts < 20 * budget:
        attempts += 1
        if anchor_idx and tests % 2:
            base = list(rng.choice(anchor_idx))
            rng.shuffle(base)
            keep = base[: max(0, min(len(base), k) - rng.randint(1, 3))]
            rest = [i for i in range(N) if i not in keep]
            subset = keep + rng.sample(rest, k - len(keep))
        else:
            subset = rng.sample(range(N), k)
        key = tuple(sorted(subset))
        if key in seen:
            continue
        seen.add(key)
        hit = check(key)
        if hit is not None:
            return FalsifyOutcome(hit, tests, [k], N, false_alarms, "random")
    return FalsifyOutcome(None, tests, [k], N, false_alarms, "random")


def configuration_pool(
    curves: Sequence,
    points: Sequence[ProjPoint],
    m: int,
    seed: int = 0,
    per_curve: int = 12,
    n_random: int = 24,
    R: int = 9,
) -> list[ProjPoint]:
    """Rational points on the given curves, the given points, and random plane points."""
    params = sorted({Fraction(t) for t in range(-per_curve, per_curve + 1)} | {Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(2, 3)})
    pool: list[ProjPoint] = list(points)
    flat: list[ParamCurve] = []
    for c in curves:
        if isinstance(c, ReducibleConic):
            flat.extend(c.lines())
        else:
            flat.append(c)
    for c in flat:
        pool.extend(c.point(t) for t in params)
    rng = random.Random(f"pool:{seed}:{m}")
    added = 0
    while added < n_random:
        c = [rng.randint(-R, R) for _ in range(3)]
        if not any(c):
            continue
        pool.append(ProjPoint(tuple(c) + (0,) * (m - 2)))
        added += 1
    return list(dict.fromkeys(pool))
