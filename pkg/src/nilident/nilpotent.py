"""Unitriangular groups UT(m, Q), their Lie algebras, and abelianization.

Elements store only their strictly upper-triangular entries, flattened in
row-major order, so a UT(m) element and its logarithm are both vectors of
length ``m (m - 1) / 2``.  Entries are ints or Fractions; ints stay ints
under multiplication and inversion, which keeps integer instances fast.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg as la

__all__ = [
    "UTElement", "LieElement", "GeneratorSystem", "LieClosure",
    "mat_log", "mat_exp", "lie_closure", "abelianized_coords", "Abelianization",
    "bracket",
]


@lru_cache(maxsize=None)
def _layout(m: int):
    """Index tables for flat strictly-upper storage of size m."""
    pos = {}
    for i in range(m):
        for j in range(i + 1, m):
            pos[i, j] = len(pos)
    # for each flat slot (i, j): the pairs of slots (i, k), (k, j) with i < k < j
    terms = tuple(
        tuple((pos[i, k], pos[k, j]) for k in range(i + 1, j))
        for (i, j) in pos
    )
    return pos, terms


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _strict_product(a: Sequence, b: Sequence, m: int) -> tuple:
    """Product of two strictly upper-triangular matrices (flat storage)."""
    _, terms = _layout(m)
    return tuple(sum(a[p] * b[q] for p, q in t) if t else 0 for t in terms)


def _flat_from_matrix(mat: Sequence[Sequence], diag) -> tuple:
    m = len(mat)
    for i, row in enumerate(mat):
        if len(row) != m:
            raise ValueError("matrix must be square")
        for j, x in enumerate(row):
            x = la.frac(x)
            if i > j and x != 0:
                raise ValueError(f"entry ({i + 1},{j + 1}) = {x} below the diagonal must be 0")
            if i == j and x != diag:
                raise ValueError(f"diagonal entry ({i + 1},{j + 1}) = {x} must be {diag}")
    return tuple(_norm(la.frac(mat[i][j])) for i in range(m) for j in range(i + 1, m))


def _to_matrix(flat: Sequence, m: int, diag) -> tuple:
    pos, _ = _layout(m)
    return tuple(
        tuple(Fraction(flat[pos[i, j]]) if i < j else Fraction(diag if i == j else 0)
              for j in range(m))
        for i in range(m)
    )


class UTElement:
    """An upper unitriangular m x m rational matrix."""

    __slots__ = ("m", "flat", "_hash")

    def __init__(self, m: int, flat: Sequence):
        if len(flat) != m * (m - 1) // 2:
            raise ValueError("wrong number of entries for UT(%d)" % m)
        self.m = m
        self.flat = tuple(_norm(x) for x in flat)
        self._hash = None

    @classmethod
    def from_matrix(cls, mat: Sequence[Sequence]) -> "UTElement":
        """Build from a full matrix; raises ValueError unless unitriangular."""
        return cls(len(mat), _flat_from_matrix(mat, 1))

    @classmethod
    def identity(cls, m: int) -> "UTElement":
        return cls(m, (0,) * (m * (m - 1) // 2))

    @property
    def matrix(self) -> tuple:
        return _to_matrix(self.flat, self.m, 1)

    def is_identity(self) -> bool:
        return not any(self.flat)

    def __mul__(self, other: "UTElement") -> "UTElement":
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        prod = _strict_product(self.flat, other.flat, self.m)
        return UTElement(self.m, [a + b + c for a, b, c in zip(self.flat, other.flat, prod)])

    def inverse(self) -> "UTElement":
        # (I + N)^-1 = sum_k (-N)^k, finite since N is nilpotent
        m = self.m
        neg = tuple(-x for x in self.flat)
        total = list(neg)
        power = neg
        for _ in range(m - 2):
            power = _strict_product(power, neg, m)
            total = [a + b for a, b in zip(total, power)]
        return UTElement(m, total)

    def __pow__(self, k: int) -> "UTElement":
        base = self if k >= 0 else self.inverse()
        result = UTElement.identity(self.m)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, UTElement) and self.m == other.m and self.flat == other.flat

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.flat))
        return self._hash

    def key(self) -> str:
        """Canonical text key: entries in lowest terms."""
        return ",".join(str(Fraction(x)) for x in self.flat)

    def __repr__(self):
        return f"UTElement({self.m}, {[str(Fraction(x)) for x in self.flat]})"


class LieElement:
    """A strictly upper-triangular m x m rational matrix."""

    __slots__ = ("m", "flat")

    def __init__(self, m: int, flat: Sequence):
        if len(flat) != m * (m - 1) // 2:
            raise ValueError("wrong number of entries for u(%d)" % m)
        self.m = m
        self.flat = tuple(_norm(x) for x in flat)

    @classmethod
    def from_matrix(cls, mat: Sequence[Sequence]) -> "LieElement":
        """Build from a full matrix; raises ValueError unless strictly upper."""
        return cls(len(mat), _flat_from_matrix(mat, 0))

    @property
    def matrix(self) -> tuple:
        return _to_matrix(self.flat, self.m, 0)

    def vector(self) -> tuple:
        return tuple(Fraction(x) for x in self.flat)

    def __add__(self, other):
        return LieElement(self.m, [a + b for a, b in zip(self.flat, other.flat)])

    def __sub__(self, other):
        return LieElement(self.m, [a - b for a, b in zip(self.flat, other.flat)])

    def __rmul__(self, c):
        return LieElement(self.m, [c * a for a in self.flat])

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.m == other.m and self.flat == other.flat

    def __hash__(self):
        return hash((self.m, self.flat))

    def __repr__(self):
        return f"LieElement({self.m}, {[str(Fraction(x)) for x in self.flat]})"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    xy = _strict_product(x.flat, y.flat, x.m)
    yx = _strict_product(y.flat, x.flat, x.m)
    return LieElement(x.m, [a - b for a, b in zip(xy, yx)])


def _series(flat: tuple, m: int, coeff) -> list:
    total = [Fraction(0)] * len(flat)
    power = flat
    for k in range(1, m):
        c = coeff(k)
        total = [t + c * p for t, p in zip(total, power)]
        power = _strict_product(power, flat, m)
    return total


@lru_cache(maxsize=None)
def _factorial(k: int) -> int:
    return 1 if k <= 1 else k * _factorial(k - 1)


def mat_log(u: UTElement | Sequence[Sequence]) -> LieElement:
    """``log(I + N) = sum_{k>=1} (-1)^(k+1) N^k / k``, exact (N^m = 0)."""
    if not isinstance(u, UTElement):
        u = UTElement.from_matrix(u)
    return LieElement(u.m, _series(u.flat, u.m, lambda k: Fraction((-1) ** (k + 1), k)))


def mat_exp(x: LieElement | Sequence[Sequence]) -> UTElement:
    """``exp(N) = sum_{k>=0} N^k / k!``, exact (N^m = 0)."""
    if not isinstance(x, LieElement):
        x = LieElement.from_matrix(x)
    return UTElement(x.m, _series(x.flat, x.m, lambda k: Fraction(1, _factorial(k))))


@dataclass(frozen=True)
class GeneratorSystem:
    m: int
    gens: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.gens) != len(self.labels):
            raise ValueError("gens and labels must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("generator labels must be unique")
        for g in self.gens:
            if not isinstance(g, UTElement) or g.m != self.m:
                raise ValueError(f"every generator must be a UTElement of size {self.m}")

    @classmethod
    def of(cls, m: int, gens: Iterable, labels: Iterable[str] | None = None) -> "GeneratorSystem":
        gens = tuple(g if isinstance(g, UTElement) else UTElement.from_matrix(g) for g in gens)
        if labels is None:
            labels = tuple(f"s{i}" for i in range(len(gens)))
        return cls(m, gens, tuple(labels))

    def __len__(self):
        return len(self.gens)

    def subsystem(self, labels: Iterable[str]) -> "GeneratorSystem":
        keep = set(labels)
        pairs = [(g, l) for g, l in zip(self.gens, self.labels) if l in keep]
        return GeneratorSystem(self.m, tuple(g for g, _ in pairs), tuple(l for _, l in pairs))

    def element(self, label: str) -> UTElement:
        return self.gens[self.labels.index(label)]


@dataclass(frozen=True)
class LieClosure:
    """Echelon bases of ``Lie(T)`` and of ``[T, T]`` (flat vectors)."""
    m: int
    lie_basis: tuple
    derived_basis: tuple

    @property
    def lie_elements(self) -> list:
        return [LieElement(self.m, v) for v in self.lie_basis]

    @property
    def derived_elements(self) -> list:
        return [LieElement(self.m, v) for v in self.derived_basis]


def lie_closure(t: Sequence[LieElement], m: int | None = None) -> LieClosure:
    """Span of left-nested brackets of ``t``: all lengths, and lengths >= 2."""
    if m is None:
        if not t:
            return LieClosure(0, (), ())
        m = t[0].m
    gens = [x for x in t if any(x.flat)]
    level = la.row_basis([x.vector() for x in gens])
    if not level:
        return LieClosure(m, (), ())
    gen_basis = [LieElement(m, v) for v in level]
    levels = [level]
    # brackets of length >= m vanish, so at most m - 1 levels are nonzero
    while True:
        nxt = [bracket(LieElement(m, b), g).vector() for b in levels[-1] for g in gen_basis]
        nxt = la.row_basis([v for v in nxt if not la.is_zero(v)])
        if not nxt:
            break
        levels.append(nxt)
    lie = la.row_basis([v for lv in levels for v in lv])
    derived = la.row_basis([v for lv in levels[1:] for v in lv])
    return LieClosure(m, tuple(lie), tuple(derived))


@dataclass(frozen=True)
class Abelianization:
    """Coordinates of ``Lie(S) / [S, S]`` and the images of the generators."""
    r: int
    coords: tuple
    closure: LieClosure
    qmap: la.QuotientMap

    def project(self, g: UTElement) -> tuple:
        """Coordinates of ``log g``; ``g`` must lie in the group generated."""
        return self.qmap(mat_log(g).vector())


def abelianized_coords(s: GeneratorSystem | Sequence[UTElement], m: int | None = None) -> Abelianization:
    if isinstance(s, GeneratorSystem):
        gens, m = list(s.gens), s.m
    else:
        gens = list(s)
        if m is None:
            m = gens[0].m if gens else 0
    logs = [mat_log(g) for g in gens]
    closure = lie_closure(logs, m)
    size = m * (m - 1) // 2
    qmap = la.QuotientMap(closure.lie_basis, closure.derived_basis, ambient_dim=size)
    coords = tuple(qmap(x.vector()) for x in logs)
    return Abelianization(qmap.dim, coords, closure, qmap)
