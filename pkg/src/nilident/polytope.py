"""Exact convex hulls: V- to H-representation by Fourier-Motzkin elimination.

A hull ``Conv(points)`` is written as the projection onto ``x`` of
``{(x, lam) : sum lam_j p_j = x, sum lam_j = 1, lam >= 0}``.  The equalities
are solved for as many ``lam`` as possible by Gaussian elimination (rows free
of ``lam`` are the affine-hull equations); the remaining ``lam`` are removed
one at a time by Fourier-Motzkin with Chernikov's history rule.  The result
is then cut down to facet-defining inequalities, normalized, and sorted.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .lp import Feasible, solve_standard

__all__ = [
    "VRep", "HalfSpace", "HRep", "Interior", "SeparatedStrictly", "Boundary",
    "NotInHullError", "v_to_h", "classify_origin", "caratheodory_decompose",
    "in_hull",
]


@dataclass(frozen=True)
class VRep:
    dim: int
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise ValueError("a V-representation needs at least one point")
        if any(len(p) != self.dim for p in self.points):
            raise ValueError("all points must have length dim")

    @classmethod
    def of(cls, points: Sequence[Sequence]) -> "VRep":
        pts = tuple(la.vector(p) for p in points)
        if not pts:
            raise ValueError("a V-representation needs at least one point")
        return cls(len(pts[0]), pts)


@dataclass(frozen=True, order=True)
class HalfSpace:
    """The half-space ``normal . x >= offset``."""
    normal: tuple
    offset: Fraction

    def __post_init__(self):
        if la.is_zero(self.normal):
            raise ValueError("half-space normal must be nonzero")

    def value(self, x: Sequence) -> Fraction:
        return la.dot(self.normal, x)

    def contains(self, x: Sequence) -> bool:
        return self.value(x) >= self.offset

    def __str__(self):
        return f"{list(map(str, self.normal))} . x >= {self.offset}"


@dataclass(frozen=True)
class HRep:
    dim: int
    halfspaces: tuple

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.halfspaces)


@dataclass(frozen=True)
class Interior:
    pass


@dataclass(frozen=True)
class SeparatedStrictly:
    witness: HalfSpace


@dataclass(frozen=True)
class Boundary:
    active: tuple


class NotInHullError(ValueError):
    """The query point lies outside the hull; ``halfspace`` separates it."""

    def __init__(self, halfspace: HalfSpace):
        super().__init__(f"not in hull: separated by {halfspace}")
        self.halfspace = halfspace


def _halfspace(normal, offset) -> HalfSpace:
    ints, k = la.integer_normalize(normal)
    return HalfSpace(ints, Fraction(offset) * k)


def _normalize_row(row):
    ints, _ = la.integer_normalize(row)
    return ints


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return la.rank([la.sub(p, base) for p in points[1:]])


def _fourier_motzkin(ineqs, nvars):
    """Eliminate the first ``nvars`` coordinates of ``row . (vars, x, 1) >= 0``.

    ``ineqs`` is a list of ``(row, history)`` pairs.
    """
    for k in range(nvars):
        pos, neg, keep = [], [], {}
        for row, hist in ineqs:
            c = row[k]
            if c > 0:
                pos.append((row, hist))
            elif c < 0:
                neg.append((row, hist))
            else:
                keep.setdefault(row, hist)
        limit = k + 2
        for prow, ph in pos:
            for nrow, nh in neg:
                hist = ph | nh
                if len(hist) > limit:
                    continue
                a, b = prow[k], -nrow[k]
                row = _normalize_row([b * p + a * q for p, q in zip(prow, nrow)])
                old = keep.get(row)
                if old is None or len(hist) < len(old):
                    keep[row] = hist
        ineqs = []
        for row, hist in keep.items():
            if la.is_zero(row[:-1]):
                if row[-1] < 0:  # pragma: no cover - hull is never empty
                    raise AssertionError("Fourier-Motzkin derived an infeasible system")
                continue
            ineqs.append((row, hist))
    return [row[nvars:] for row, _ in ineqs]


def v_to_h(v: VRep) -> HRep:
    """H-representation ``{normal . x >= offset}`` of ``Conv(v.points)``.

    Lower-dimensional hulls carry their affine-hull equations as pairs of
    opposite half-spaces.  Normals are coprime integer vectors; the list is
    sorted lexicographically by ``(normal, offset)``.
    """
    d, pts = v.dim, v.points
    n = len(pts)
    # columns: lam_0..lam_{n-1}, x_0..x_{d-1}, constant
    eqs = []
    for i in range(d):
        row = [p[i] for p in pts] + [Fraction(-int(j == i)) for j in range(d)] + [Fraction(0)]
        eqs.append(row)
    eqs.append([Fraction(1)] * n + [Fraction(0)] * d + [Fraction(-1)])
    red, piv = la.rref(eqs)
    lam_piv = [(i, p) for i, p in enumerate(piv) if p < n]
    hull_eqs = [red[i][n:] for i, p in enumerate(piv) if p >= n]
    if any(la.is_zero(e[:-1]) for e in hull_eqs):  # pragma: no cover
        raise AssertionError("inconsistent hull equations")

    pivset = {p for _, p in lam_piv}
    free = [j for j in range(n) if j not in pivset]
    # row layout after substitution: free lams, x, constant
    ineqs = []
    for idx, (i, p) in enumerate(lam_piv):
        row = red[i]
        # lam_p = -(sum_f row[f] lam_f + row[x] . x + row[const])
        ineqs.append((tuple(_normalize_row([-row[f] for f in free] + [-c for c in row[n:]])),
                      frozenset([p])))
    for k, f in enumerate(free):
        row = [Fraction(int(j == k)) for j in range(len(free))] + [Fraction(0)] * (d + 1)
        ineqs.append((tuple(_normalize_row(row)), frozenset([f])))

    rows = _fourier_motzkin(ineqs, len(free))

    # canonical form: reduce inequality rows modulo the hull equations
    eq_basis = la.row_basis(hull_eqs)
    reduced = set()
    for row in rows:
        r = list(row)
        for e in eq_basis:
            p = next(j for j, x in enumerate(e) if x != 0)
            if r[p] != 0:
                f = r[p] / e[p]
                r = [a - f * b for a, b in zip(r, e)]
        if not la.is_zero(r[:-1]):
            reduced.add(tuple(_normalize_row(r)))

    dim_p = _affine_rank(pts)
    halfspaces = set()
    for row in reduced:
        normal, const = row[:-1], row[-1]
        tight = [p for p in pts if la.dot(normal, p) + const == 0]
        if tight and _affine_rank(tight) == dim_p - 1:
            halfspaces.add(_halfspace(normal, -const))
    for e in eq_basis:
        normal, const = e[:-1], e[-1]
        halfspaces.add(_halfspace(normal, -const))
        halfspaces.add(_halfspace(la.scale(-1, normal), const))
    return HRep(d, tuple(sorted(halfspaces, key=lambda h: (h.normal, h.offset))))


def classify_origin(h: HRep):
    """Locate the origin against ``h`` by the signs of the offsets."""
    for hs in h.halfspaces:
        if hs.offset > 0:
            return SeparatedStrictly(hs)
    active = tuple(hs for hs in h.halfspaces if hs.offset == 0)
    if active:
        return Boundary(active)
    return Interior()


def _hull_lp(v: VRep, x):
    a = [[p[i] for p in v.points] for i in range(v.dim)]
    a.append([Fraction(1)] * len(v.points))
    return solve_standard(a, list(x) + [Fraction(1)], len(v.points))


def in_hull(v: VRep, x: Sequence) -> bool:
    """Membership by exact LP: is ``x`` a convex combination of the points?"""
    return isinstance(_hull_lp(v, la.vector(x)), Feasible)


def caratheodory_decompose(v: VRep, x: Sequence) -> list[tuple[tuple, Fraction]]:
    """Write ``x`` as a convex combination of at most ``dim + 1`` points.

    Raises :class:`NotInHullError` carrying a separating half-space when
    ``x`` is outside the hull.
    """
    x = la.vector(x)
    if len(x) != v.dim:
        raise ValueError(f"dimension mismatch: {len(x)} vs {v.dim}")
    res = _hull_lp(v, x)
    if not isinstance(res, Feasible):
        y = res.farkas
        # f . p + c >= 0 on every point while f . x + c < 0
        raise NotInHullError(_halfspace(y[:-1], -y[-1]))
    support = [(v.points[j], c) for j, c in enumerate(res.solution) if c > 0]
    # drop affinely dependent points until the support is independent
    while len(support) > 1:
        base = support[0][0]
        diffs = [la.sub(p, base) for p, _ in support[1:]]
        ker = la.kernel_basis(la.transpose(diffs), len(diffs))
        if not ker:
            break
        mu = ker[0]
        mu = (-sum(mu, Fraction(0)),) + tuple(mu)
        # move along mu until the first coefficient hits zero
        t = min(c / m for (_, c), m in zip(support, mu) if m > 0)
        support = [(p, c - t * m) for (p, c), m in zip(support, mu)]
        support = [(p, c) for p, c in support if c > 0]
    return support
