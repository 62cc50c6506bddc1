"""Dense univariate polynomials over Q.

A polynomial is a list of coefficients, lowest degree first. The zero
polynomial is the empty list.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def trim(a: Sequence) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    """Degree of ``a``; -1 for the zero polynomial."""
    return len(trim(a)) - 1


def add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a: Sequence, c) -> list:
    return trim([c * x for x in a])


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return trim(out)


def power(a: Sequence, k: int) -> list:
    out: list = [1]
    for _ in range(k):
        out = mul(out, a)
    return out


def derivative(a: Sequence) -> list:
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a: Sequence, t):
    acc = 0
    for c in reversed(a):
        acc = acc * t + c
    return acc


def divmod_(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = trim(a)
    return trim(q), a


def monic(a: Sequence) -> list:
    a = trim(a)
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def gcd_poly(a: Sequence, b: Sequence) -> list:
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a)


def is_squarefree(a: Sequence) -> bool:
    """True when ``a`` has no repeated root (over an algebraic closure)."""
    a = trim(a)
    if len(a) <= 2:
        return bool(a)
    return degree(gcd_poly(a, derivative(a))) == 0


def vanishing_order(a: Sequence, t0) -> int | None:
    """Multiplicity of ``t0`` as a root of ``a``; ``None`` for the zero polynomial."""
    a = trim(a)
    if not a:
        return None
    k = 0
    t0 = Fraction(t0)
    while True:
        # synthetic division by (t - t0)
        n = len(a)
        q = [Fraction(0)] * (n - 1)
        acc = Fraction(0)
        for i in range(n - 1, 0, -1):
            acc = acc * t0 + a[i]
            q[i - 1] = acc
        rem = acc * t0 + a[0]
        if rem:
            return k
        k += 1
        a = trim(q)


def rational_roots(a: Sequence) -> list[Fraction]:
    """Distinct rational roots of ``a`` (rational root theorem)."""
    a = trim(a)
    if not a:
        raise ValueError("the zero polynomial has every number as a root")
    den = 1
    for x in a:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in a]
    roots = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    ints = ints[low:]
    if len(ints) == 1:
        return roots
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    c0, cn = abs(ints[0]), abs(ints[-1])
    for p in _divisors(c0):
        for q in _divisors(cn):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if evaluate(ints, cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out
