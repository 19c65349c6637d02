"""Exact rational LP feasibility with Farkas certificates.

Everything reduces to the standard-form question "is there ``x >= 0`` with
``A x = b``?", answered by a phase-one simplex over Fractions using Bland's
rule.  Infeasibility comes back as a vector ``y`` with ``y A >= 0`` and
``y b < 0``; both outcomes are re-checked exactly before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import Vector, dot, frac

__all__ = [
    "Feasible", "Infeasible", "LPResult", "ConeSupport",
    "solve_standard", "feasible_nonneg", "cone_support",
]


@dataclass(frozen=True)
class Feasible:
    solution: Vector


@dataclass(frozen=True)
class Infeasible:
    farkas: Vector


LPResult = Feasible | Infeasible


def _check_rect(a: Sequence[Sequence], ncols: int | None = None) -> tuple[int, int]:
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    if any(len(row) != n for row in a):
        raise ValueError("dimension mismatch: ragged constraint matrix")
    return m, n


def solve_standard(a: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> LPResult:
    """Decide ``exists x >= 0 : a x = b`` exactly.

    ``ncols`` gives the number of variables when ``a`` has no rows.
    """
    m, n = _check_rect(a, ncols)
    if len(b) != m:
        raise ValueError(f"dimension mismatch: {m} rows but {len(b)} right-hand sides")
    if m == 0:
        return Feasible((Fraction(0),) * n)

    signs = [1 if frac(bi) >= 0 else -1 for bi in b]
    width = n + m
    rows = []
    for i in range(m):
        s = signs[i]
        row = [s * frac(x) for x in a[i]]
        row.extend(Fraction(int(k == i)) for k in range(m))
        row.append(s * frac(b[i]))
        rows.append(row)
    basis = [n + i for i in range(m)]
    # phase-one reduced costs: artificial columns cost 1
    cost = [-sum((rows[i][j] for i in range(m)), Fraction(0)) for j in range(n)]
    cost.extend(Fraction(0) for _ in range(m))

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            piv = rows[i][enter]
            if piv > 0:
                key = (rows[i][-1] / piv, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # pragma: no cover - phase one is bounded below
            raise RuntimeError("unbounded phase-one problem")
        r = best[1]
        prow = rows[r]
        piv = prow[enter]
        if piv != 1:
            prow = [x / piv if x else x for x in prow]
            rows[r] = prow
        for i in range(m):
            if i != r:
                f = rows[i][enter]
                if f != 0:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        f = cost[enter]
        cost = [x - f * y if y else x for x, y in zip(cost, prow[:width])]
        basis[r] = enter

    residual = sum((rows[i][-1] for i in range(m) if basis[i] >= n), Fraction(0))
    if residual == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = rows[i][-1]
        x = tuple(x)
        for i in range(m):
            if dot(a[i], x) != frac(b[i]):  # pragma: no cover - internal invariant
                raise AssertionError("simplex produced an invalid solution")
        return Feasible(x)

    # duals of the phase-one problem, mapped back to the unsigned rows
    y = tuple(-signs[i] * (1 - cost[n + i]) for i in range(m))
    _check_farkas(a, b, y, n)
    return Infeasible(y)


def _check_farkas(a, b, y, n):
    for j in range(n):
        if sum((y[i] * frac(a[i][j]) for i in range(len(a))), Fraction(0)) < 0:
            raise AssertionError("invalid Farkas certificate")  # pragma: no cover
    if dot(y, [frac(x) for x in b]) >= 0:
        raise AssertionError("invalid Farkas certificate")  # pragma: no cover


def feasible_nonneg(a: Sequence[Sequence], lower: Sequence[tuple[int, object]] = (),
                    ncols: int | None = None) -> LPResult:
    """Is there ``x >= 0`` with ``a x = 0`` and ``x[i] >= bound`` for each pair?

    The Farkas vector ``y`` of an infeasible answer satisfies
    ``y . a[:, j] >= 0`` for every column and ``y . a[:, i] > 0`` for some
    positively bounded index ``i``.
    """
    m, n = _check_rect(a, ncols)
    shift = [Fraction(0)] * n
    for i, bound in lower:
        if not 0 <= i < n:
            raise ValueError(f"dimension mismatch: bound index {i} with {n} variables")
        shift[i] = max(shift[i], frac(bound))
    rhs = [-sum((frac(a[r][j]) * shift[j] for j in range(n)), Fraction(0)) for r in range(m)]
    res = solve_standard(a, rhs, n)
    if isinstance(res, Feasible):
        return Feasible(tuple(s + z for s, z in zip(shift, res.solution)))
    return res


@dataclass(frozen=True)
class ConeSupport:
    """Indices ``i`` admitting ``x >= 0``, ``sum x_j v_j = 0`` with ``x_i > 0``.

    ``witness`` is a nonnegative combination vanishing on the vectors and
    positive exactly on ``survivors``; ``farkas`` maps each excluded index to
    a functional that is ``>= 0`` on every vector and ``> 0`` on that one.
    """
    survivors: frozenset
    witness: Vector
    farkas: dict = field(default_factory=dict)


def cone_support(vectors: Sequence[Sequence]) -> ConeSupport:
    if not vectors:
        raise ValueError("cone_support needs at least one vector")
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("dimension mismatch among vectors")
    n = len(vectors)
    a = [[frac(v[r]) for v in vectors] for r in range(dim)]
    survivors: set[int] = set()
    witness = [Fraction(0)] * n
    farkas = {}
    for i in range(n):
        if i in survivors:
            continue
        res = feasible_nonneg(a, [(i, 1)], n)
        if isinstance(res, Feasible):
            for j, xj in enumerate(res.solution):
                if xj > 0:
                    survivors.add(j)
            witness = [w + x for w, x in zip(witness, res.solution)]
        else:
            farkas[i] = res.farkas
    return ConeSupport(frozenset(survivors), tuple(witness), farkas)
