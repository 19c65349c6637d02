"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (plain ``int`` is accepted wherever a
scalar is expected and compares/hashes identically).  Vectors are tuples and
matrices are tuples of row tuples, so every value is immutable and hashable.
Pivoting is always "first nonzero entry in column order", which makes every
basis produced here reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple
Matrix = tuple


class NotInSpanError(ValueError):
    """Raised when a vector is asked for coordinates outside a span."""


def frac(x) -> Fraction:
    """Parse ``x`` (int, Fraction or ``"p/q"`` string) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(frac(x) for x in entries)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], x: Sequence) -> Vector:
    return tuple(dot(row, x) for row in a)


def is_zero(v: Iterable) -> bool:
    return all(x == 0 for x in v)


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns (increasing).

    >>> rref([[2, 4], [1, 2]])
    (((Fraction(1, 1), Fraction(2, 1)), (Fraction(0, 1), Fraction(0, 1))), [0])
    """
    rows = [list(map(frac, r)) for r in m]
    if not rows:
        return (), []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def row_basis(vectors: Sequence[Sequence]) -> list[Vector]:
    """Echelon basis (nonzero RREF rows) of the span of ``vectors``."""
    if not vectors:
        return []
    red, piv = rref(vectors)
    return [red[i] for i in range(len(piv))]


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column.

    Each basis vector sets its own free variable to 1 and the other free
    variables to 0.  ``ncols`` is needed only when ``m`` has no rows.
    """
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return list(identity(ncols))
    n = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -red[i][f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One exact solution of ``a x = b`` (free variables zero), or None."""
    n = len(a[0]) if a else 0
    aug = [tuple(row) + (bi,) for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = red[i][n]
    return tuple(x)


def integer_normalize(v: Sequence) -> tuple[tuple[int, ...], Fraction]:
    """Scale ``v`` by a positive rational to coprime integers.

    Returns ``(w, k)`` with ``w == k * v``.  The zero vector maps to itself.
    """
    v = [frac(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints), Fraction(1)
    return tuple(x // g for x in ints), Fraction(den, g)


class QuotientMap:
    """Linear coordinates on ``span(space) / span(subspace)``.

    The quotient basis is the echelon basis of ``space`` reduced modulo the
    echelon basis of ``subspace``; calling the map on a vector of
    ``span(space)`` returns its coordinates in that basis.
    """

    def __init__(self, space: Sequence[Sequence], subspace: Sequence[Sequence] = (),
                 ambient_dim: int | None = None):
        vecs = [vector(v) for v in space]
        sub = row_basis([vector(v) for v in subspace])
        if ambient_dim is None:
            ambient_dim = len(vecs[0]) if vecs else (len(sub[0]) if sub else 0)
        self.ambient_dim = ambient_dim
        self.subspace_basis = sub
        reduced = [self._reduce(v, sub) for v in vecs]
        self.basis = row_basis(reduced)
        if any(not self._in_span(w, vecs) for w in sub):
            raise NotInSpanError("subspace is not contained in the span of space")
        self.dim = len(self.basis)
        # coordinates are read off pivot entries of the stacked echelon basis
        stacked = self.basis + sub
        if stacked:
            red, piv = rref(stacked)
            self._pivots = piv
            sq = [[row[p] for p in piv] for row in stacked]
            self._inv = _inverse(sq)
        else:
            self._pivots = []
            self._inv = ()
        self._stacked = stacked

    @staticmethod
    def _reduce(v: Vector, echelon: list[Vector]) -> Vector:
        v = list(v)
        for row in echelon:
            p = next(i for i, x in enumerate(row) if x != 0)
            if v[p] != 0:
                f = v[p] / row[p]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    @staticmethod
    def _in_span(v: Vector, vecs: list[Vector]) -> bool:
        if is_zero(v):
            return True
        if not vecs:
            return False
        return rank(vecs + [v]) == rank(vecs)

    def __call__(self, v: Sequence) -> Vector:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError(f"dimension mismatch: {len(v)} vs {self.ambient_dim}")
        if not self._stacked:
            if not is_zero(v):
                raise NotInSpanError("not in span")
            return ()
        picked = [v[p] for p in self._pivots]
        c = tuple(dot(picked, col) for col in transpose(self._inv))
        recon = [sum((ci * row[j] for ci, row in zip(c, self._stacked)), Fraction(0))
                 for j in range(self.ambient_dim)]
        if tuple(recon) != v:
            raise NotInSpanError("not in span")
        return c[: self.dim]


def quotient_coords(space: Sequence[Sequence], subspace: Sequence[Sequence] = ()) -> QuotientMap:
    return QuotientMap(space, subspace)


def _inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(map(frac, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def inverse(a: Sequence[Sequence]) -> Matrix:
    return _inverse(a)
