"""Exact linear algebra over the rationals.

Everything here works on plain Python ``int`` / ``fractions.Fraction`` data.
Elimination is done fraction-free on integer rows (each row is scaled by the
lcm of its denominators, and divided by the gcd of its entries after every
update), which keeps coefficient growth in check for the desk-scale matrices
this package produces. Results are returned as ``Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Matrix",
    "SubspaceBasis",
    "as_rational",
    "format_rational",
    "parse_rational",
    "integer_vector",
    "rref",
    "rank",
    "kernel",
    "span",
    "member",
    "express",
    "intersect",
    "join",
]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def format_rational(q) -> str:
    """Serialize as ``"p/q"``; the denominator is omitted when it is 1."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        raise TypeError(f"expected a 'p/q' string, got {type(s).__name__}")
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        den_i = int(den)
        if den_i <= 0:
            raise ValueError(f"denominator must be positive in {s!r}")
        return Fraction(int(num), den_i)
    return Fraction(int(s))


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix stored row by row."""

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(rows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        z = Fraction(0)
        return cls(tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.rows)) if self.rows else (), len(self.rows))

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        v = [as_rational(x) for x in v]
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)


@dataclass(frozen=True)
class SubspaceBasis:
    """A linear subspace of Q^ambient_dim, held as a reduced row-echelon basis."""

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, v: Sequence) -> bool:
        return member(v, self) is not None

    def __len__(self) -> int:
        return len(self.vectors)


# -- integer kernels -------------------------------------------------------


def integer_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    v = [x if isinstance(x, int) else as_rational(x) for x in v]
    den = 1
    for x in v:
        if not isinstance(x, int):
            den = lcm(den, x.denominator)
    if den == 1:
        row = [int(x) for x in v]
    else:
        row = [int(x * den) for x in v]
    g = reduce(gcd, row, 0)
    if g > 1:
        row = [x // g for x in row]
    return row


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _echelon(rows: list[list[int]], ncols: int, stop_col: int | None = None):
    """Forward fraction-free elimination, in place.

    Returns the list of pivot columns; ``rows[:len(pivots)]`` is in echelon
    form. Pivots are only searched for in columns ``< stop_col``.
    """
    n = len(rows)
    stop = ncols if stop_col is None else stop_col
    pivots: list[int] = []
    r = 0
    for c in range(stop):
        if r == n:
            break
        best = -1
        best_bits = 0
        for i in range(r, n):
            x = rows[i][c]
            if x:
                bits = abs(x).bit_length()
                if best < 0 or bits < best_bits:
                    best, best_bits = i, bits
                    if bits == 1:
                        break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, n):
            a = rows[i][c]
            if a:
                g = gcd(p, a)
                pp, aa = p // g, a // g
                rows[i] = _primitive([pp * x - aa * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
    return pivots


def _to_int_rows(rows) -> list[list[int]]:
    return [integer_vector(r) for r in rows]


def _rref_int(rows: list[list[int]], ncols: int):
    """Reduced echelon form; returns (Fraction rows of the nonzero part, pivots)."""
    pivots = _echelon(rows, ncols)
    k = len(pivots)
    for i in range(k - 1, -1, -1):
        c = pivots[i]
        prow = rows[i]
        p = prow[c]
        for j in range(i):
            a = rows[j][c]
            if a:
                g = gcd(p, a)
                pp, aa = p // g, a // g
                rows[j] = _primitive([pp * x - aa * y for x, y in zip(rows[j], prow)])
    out = []
    for i in range(k):
        p = rows[i][pivots[i]]
        out.append(tuple(Fraction(x, p) for x in rows[i]))
    return out, pivots


# -- public operations -------------------------------------------------------


def _as_matrix(M) -> Matrix:
    if isinstance(M, Matrix):
        return M
    return Matrix.from_rows(M)


def rref(M) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form of ``M`` and its pivot columns.

    Zero rows are kept at the bottom so the shape is preserved.
    """
    M = _as_matrix(M)
    nonzero, pivots = _rref_int(_to_int_rows(M.rows), M.ncols)
    z = (Fraction(0),) * M.ncols
    rows = tuple(nonzero) + (z,) * (M.nrows - len(nonzero))
    return Matrix(rows, M.ncols), pivots


def rank(M) -> int:
    if isinstance(M, Matrix):
        rows, ncols = M.rows, M.ncols
    else:
        rows = list(M)
        if not rows:
            return 0
        ncols = len(rows[0])
    if not rows:
        return 0
    return len(_echelon(_to_int_rows(rows), ncols))


def span(vectors: Iterable[Sequence], ambient_dim: int | None = None) -> SubspaceBasis:
    """Reduced basis of the span of ``vectors``."""
    vectors = list(vectors)
    if ambient_dim is None:
        if not vectors:
            raise ValueError("ambient_dim is required for an empty spanning set")
        ambient_dim = len(vectors[0])
    for v in vectors:
        if len(v) != ambient_dim:
            raise ValueError("dimension mismatch")
    if not vectors:
        return SubspaceBasis(ambient_dim, (), ())
    basis, pivots = _rref_int(_to_int_rows(vectors), ambient_dim)
    return SubspaceBasis(ambient_dim, tuple(basis), tuple(pivots))


def kernel(M) -> SubspaceBasis:
    """Basis of ``{v : M v = 0}``."""
    M = _as_matrix(M)
    n = M.ncols
    if M.nrows == 0:
        return span([[int(i == j) for j in range(n)] for i in range(n)], n)
    nonzero, pivots = _rref_int(_to_int_rows(M.rows), n)
    pivset = set(pivots)
    gens = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(nonzero, pivots):
            v[c] = -row[f]
        gens.append(v)
    return span(gens, n)


def member(v: Sequence, S: SubspaceBasis) -> tuple[Fraction, ...] | None:
    """Coefficients of ``v`` on the basis of ``S``, or ``None`` if ``v`` is not in ``S``."""
    if len(v) != S.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {S.ambient_dim}")
    v = [as_rational(x) for x in v]
    coeffs = tuple(v[p] for p in S.pivots)
    resid = list(v)
    for c, b in zip(coeffs, S.vectors):
        if c:
            for j, x in enumerate(b):
                if x:
                    resid[j] -= c * x
    if any(resid):
        return None
    return coeffs


def express(vectors: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...] | None:
    """Coefficients ``c`` with ``sum(c_i * vectors[i]) == v``, or ``None``.

    When the generators are dependent, free coefficients are set to zero.
    """
    k = len(vectors)
    n = len(v)
    if any(len(u) != n for u in vectors):
        raise ValueError("dimension mismatch")
    if k == 0:
        return () if not any(v) else None
    # columns: generators then target
    cols = [integer_vector(u) for u in vectors]
    target = [as_rational(x) for x in v]
    tden = 1
    for x in target:
        tden = lcm(tden, x.denominator)
    tcol = [int(x * tden) for x in target]
    rows = [[col[i] for col in cols] + [tcol[i]] for i in range(n)]
    nonzero, pivots = _rref_int(rows, k + 1)
    if pivots and pivots[-1] == k:
        return None
    sol = [Fraction(0)] * k
    for row, c in zip(nonzero, pivots):
        sol[c] = row[k]
    # undo the per-generator and target scalings
    out = []
    for j, u in enumerate(vectors):
        # u = ratio * cols[j]
        ratio = next((as_rational(x) / y for x, y in zip(u, cols[j]) if y), Fraction(1))
        out.append(sol[j] / (tden * ratio))
    return tuple(out)


def join(S1: SubspaceBasis, S2: SubspaceBasis) -> SubspaceBasis:
    if S1.ambient_dim != S2.ambient_dim:
        raise ValueError("dimension mismatch")
    return span(list(S1.vectors) + list(S2.vectors), S1.ambient_dim)


def intersect(S1: SubspaceBasis, S2: SubspaceBasis) -> SubspaceBasis:
    """Intersection of two subspaces (Zassenhaus' algorithm)."""
    if S1.ambient_dim != S2.ambient_dim:
        raise ValueError("dimension mismatch")
    n = S1.ambient_dim
    if not S1.vectors or not S2.vectors:
        return SubspaceBasis(n, (), ())
    zero = [0] * n
    rows = []
    for u in S1.vectors:
        iu = integer_vector(u)
        rows.append(iu + iu)
    for v in S2.vectors:
        rows.append(integer_vector(v) + zero)
    pivots = _echelon(rows, 2 * n)
    gens = [rows[i][n:] for i, c in enumerate(pivots) if c >= n]
    return span(gens, n)
