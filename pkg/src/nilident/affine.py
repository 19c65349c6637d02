"""The groups G_lambda of affine maps ``x -> lambda^n x + c`` of Q.

Here ``lambda = p/q > 1`` with ``gcd(p, q) = 1``, ``n`` is an integer and
``c`` ranges over ``Z[lambda, 1/lambda] = Z[1/(pq)]``.  The identity problem
is decided in one pass over the generators from the fixed points of the
expanding and contracting maps; a NO answer comes with an explicit
left-order (reference point ``p``, sign ``+`` or ``-``) in which every
generator is positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .engines import Decision, IDENTITY, IdentityWord

AFFINE = "affine"


@dataclass(frozen=True)
class Lambda:
    p: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.p <= self.q or gcd(self.p, self.q) != 1:
            raise ValueError(f"lambda = {self.p}/{self.q} must be a reduced fraction > 1")

    @classmethod
    def of(cls, value) -> "Lambda":
        v = Fraction(value)
        return cls(v.numerator, v.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def power(self, n: int) -> Fraction:
        return Fraction(self.p, self.q) ** n

    def in_ring(self, c) -> bool:
        """Is ``c`` in Z[1/(pq)]?"""
        d = Fraction(c).denominator
        pq = self.p * self.q
        while d > 1:
            g = gcd(d, pq)
            if g == 1:
                return False
            d //= g
        return True

    def __str__(self):
        return f"{self.p}/{self.q}" if self.q != 1 else str(self.p)


class AffineMap:
    """``x -> lambda^n x + c``; multiplication is composition ``(f * g)(x) = f(g(x))``."""

    __slots__ = ("lam", "n", "c")

    def __init__(self, lam: Lambda, n: int, c, check: bool = True):
        c = Fraction(c)
        if check and not lam.in_ring(c):
            raise ValueError(f"constant {c} is not in Z[1/{lam.p * lam.q}]")
        self.lam = lam
        self.n = int(n)
        self.c = c

    def __call__(self, x):
        return self.lam.power(self.n) * x + self.c

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        return compose(self, other)

    def inverse(self) -> "AffineMap":
        return inverse(self)

    def is_identity(self) -> bool:
        return self.n == 0 and self.c == 0

    def __eq__(self, other):
        return (isinstance(other, AffineMap) and self.lam == other.lam
                and self.n == other.n and self.c == other.c)

    def __hash__(self):
        return hash((self.n, self.c))

    def __repr__(self):
        return f"AffineMap(lambda={self.lam}, n={self.n}, c={self.c})"


def _same_lambda(f: AffineMap, g: AffineMap):
    if f.lam != g.lam:
        raise ValueError(f"mixed lambda: {f.lam} vs {g.lam}")


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f o g = (n_f + n_g, lambda^n_f c_g + c_f)``."""
    _same_lambda(f, g)
    return AffineMap(f.lam, f.n + g.n, f.lam.power(f.n) * g.c + f.c, check=False)


def inverse(f: AffineMap) -> AffineMap:
    return AffineMap(f.lam, -f.n, -f.lam.power(-f.n) * f.c, check=False)


def mirror(f: AffineMap) -> AffineMap:
    """The outer automorphism ``f -> -f(-x)``, i.e. ``(n, c) -> (n, -c)``."""
    return AffineMap(f.lam, f.n, -f.c, check=False)


def fixed_point(f: AffineMap) -> Fraction:
    if f.n == 0:
        raise ValueError("translations have no unique fixed point")
    return f.c / (1 - f.lam.power(f.n))


@dataclass(frozen=True)
class Expanding:
    fix: Fraction


@dataclass(frozen=True)
class Contracting:
    fix: Fraction


@dataclass(frozen=True)
class TranslationPos:
    pass


@dataclass(frozen=True)
class TranslationNeg:
    pass


@dataclass(frozen=True)
class IdentityMap:
    pass


def classify(f: AffineMap):
    if f.n > 0:
        return Expanding(fixed_point(f))
    if f.n < 0:
        return Contracting(fixed_point(f))
    if f.c > 0:
        return TranslationPos()
    if f.c < 0:
        return TranslationNeg()
    return IdentityMap()


@dataclass(frozen=True)
class Type1:
    """``f > e`` iff ``s1 * n > 0``, or ``n == 0`` and ``s2 * f(0) > 0``."""
    s1: int = 1
    s2: int = 1


@dataclass(frozen=True)
class Type2:
    """``f > e`` iff ``s1 * (f(p) - p) > 0``, or ``f(p) == p`` and ``s2 * n > 0``."""
    p: Fraction
    s1: int = 1
    s2: int = 1


def order_positive(order, f: AffineMap) -> bool:
    """Is ``f`` strictly positive in the given left-order?"""
    if isinstance(order, Type1):
        return order.s1 * f.n > 0 or (f.n == 0 and order.s2 * f.c > 0)
    if isinstance(order, Type2):
        move = f(order.p) - order.p
        return order.s1 * move > 0 or (move == 0 and order.s2 * f.n > 0)
    raise TypeError(f"unknown order descriptor {order!r}")


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)``; ``None`` endpoints are infinite."""
    lo: Fraction | None
    hi: Fraction | None

    @property
    def empty(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo >= self.hi

    def contains(self, x) -> bool:
        return (self.lo is None or x > self.lo) and (self.hi is None or x < self.hi)

    def pick(self) -> Fraction:
        """Midpoint, or an endpoint shifted by one, or 1 for the whole line."""
        if self.lo is not None and self.hi is not None:
            return (self.lo + self.hi) / 2
        if self.lo is not None:
            return self.lo + 1
        if self.hi is not None:
            return self.hi - 1
        return Fraction(1)


EMPTY = Interval(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class IntervalRecord:
    """``L_S`` (all generators move points left) and ``R_S`` (right)."""
    left: Interval
    right: Interval


@dataclass(frozen=True)
class WitnessOrder:
    order: object


class OpCounter:
    """Counts elementary operations performed by :func:`decide_identity_affine`."""

    def __init__(self):
        self.ops = 0


def _as_fraction(pair):
    return None if pair is None else Fraction(pair[0], pair[1])


def _fix_intervals(lam: Lambda, maps: Sequence[AffineMap], counter: OpCounter | None):
    """Single pass over ``maps``: returns ``(identity_index, L_S, R_S)``.

    Fixed points are kept as unreduced integer pairs ``(num, den)`` with
    ``den > 0`` and compared by cross-multiplication.
    """
    p, q = lam.p, lam.q
    pw: dict[int, tuple[int, int]] = {}
    sup_exp = inf_exp = sup_con = inf_con = None
    nonneg_trans = nonpos_trans = False
    ops = 0
    for idx, f in enumerate(maps):
        if f.lam != lam:
            raise ValueError(f"mixed lambda: {f.lam} vs {lam}")
        n = f.n
        a, b = f.c.numerator, f.c.denominator
        if n == 0:
            ops += 1
            if a == 0:
                if counter is not None:
                    counter.ops += ops
                return idx, None, None
            if a > 0:
                nonneg_trans = True
            else:
                nonpos_trans = True
            continue
        t = pw.get(n)
        if t is None:
            t = pw[n] = (q ** n, q ** n - p ** n) if n > 0 else (p ** -n, p ** -n - q ** -n)
        # c / (1 - lambda^n) = a * t0 / (b * t1)
        num, den = a * t[0], b * t[1]
        if den < 0:
            num, den = -num, -den
        ops += 2
        if n > 0:
            if sup_exp is None or num * sup_exp[1] > sup_exp[0] * den:
                sup_exp = (num, den)
            if inf_exp is None or num * inf_exp[1] < inf_exp[0] * den:
                inf_exp = (num, den)
        else:
            if sup_con is None or num * sup_con[1] > sup_con[0] * den:
                sup_con = (num, den)
            if inf_con is None or num * inf_con[1] < inf_con[0] * den:
                inf_con = (num, den)
        ops += 2
    if counter is not None:
        counter.ops += ops
    left = EMPTY if nonneg_trans else Interval(_as_fraction(sup_con), _as_fraction(inf_exp))
    right = EMPTY if nonpos_trans else Interval(_as_fraction(sup_exp), _as_fraction(inf_con))
    return None, left, right


def decide_identity_affine(lam: Lambda, maps: Sequence[AffineMap],
                           labels: Sequence[str] | None = None,
                           counter: OpCounter | None = None) -> Decision:
    """Identity Problem in ``G_lambda`` in a linear number of operations.

    The identity is a product of generators iff both ``L_S`` and ``R_S``
    are empty; otherwise a type-2 order with reference point inside the
    nonempty interval makes every generator positive.
    """
    if not maps:
        return Decision(IDENTITY, False, AFFINE)
    if labels is None:
        labels = [f"s{i}" for i in range(len(maps))]
    ident, left, right = _fix_intervals(lam, maps, counter)
    if ident is not None:
        return Decision(IDENTITY, True, AFFINE, certificate=IdentityWord((labels[ident],)))
    rec = IntervalRecord(left, right)
    if left.empty and right.empty:
        return Decision(IDENTITY, True, AFFINE, (rec,))
    return Decision(IDENTITY, False, AFFINE, (rec,), WitnessOrder(_order_from(rec)))


def _order_from(rec: IntervalRecord):
    if not rec.right.empty:
        return Type2(rec.right.pick(), 1, 1)
    return Type2(rec.left.pick(), -1, 1)


def witness_order(lam: Lambda, maps: Sequence[AffineMap]):
    """A left-order making every map positive; ValueError on YES instances."""
    if not maps:
        return Type1(1, 1)
    ident, left, right = _fix_intervals(lam, maps, None)
    if ident is not None or (left.empty and right.empty):
        raise ValueError("the identity is a product of these maps; no order exists")
    return _order_from(IntervalRecord(left, right))


@dataclass(frozen=True)
class AffineSystem:
    lam: Lambda
    gens: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.gens) != len(self.labels):
            raise ValueError("gens and labels must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("generator labels must be unique")
        for f in self.gens:
            if f.lam != self.lam:
                raise ValueError(f"mixed lambda: {f.lam} vs {self.lam}")

    def __len__(self):
        return len(self.gens)
