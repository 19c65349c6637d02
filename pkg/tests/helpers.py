"""Shared fixtures: Heisenberg generators and random instance generators."""
from __future__ import annotations

import random
from fractions import Fraction

from nilident.affine import AffineMap, AffineSystem, Lambda
from nilident.nilpotent import GeneratorSystem, UTElement

A = UTElement.from_matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
B = UTElement.from_matrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
Z = UTElement.from_matrix([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
E3 = UTElement.identity(3)


def heis(*pairs) -> GeneratorSystem:
    """``heis(("a", A), ("b", B))`` -> generator system in UT(3)."""
    return GeneratorSystem.of(3, [g for _, g in pairs], [lab for lab, _ in pairs])


# curated Heisenberg instances: name -> (system, identity answer, subgroup answer)
CURATED = {
    "abc": (heis(("a", A), ("ainv_b", A.inverse() * B), ("binv", B.inverse())), True, True),
    "ab": (heis(("a", A), ("b", B)), False, False),
    "aab": (heis(("a", A), ("ainv", A.inverse()), ("b", B)), True, False),
    "z": (heis(("z", Z),), False, False),
    "a_ainv": (heis(("a", A), ("ainv", A.inverse())), True, True),
    "empty": (heis(), False, False),
    "e": (heis(("e", E3),), True, True),
}


def random_ut(rng: random.Random, m: int, lo: int = -2, hi: int = 2, zero_bias: float = 0.0):
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i == j:
                row.append(1)
            elif j < i or rng.random() < zero_bias:
                row.append(0)
            else:
                row.append(rng.randint(lo, hi))
        rows.append(row)
    return UTElement.from_matrix(rows)


def random_system(rng: random.Random, m: int | None = None, size: int | None = None,
                  zero_bias: float | None = None) -> GeneratorSystem:
    """Random generator set in UT(m), m in {3,4}, at most 5 generators, entries in [-2,2]."""
    m = m if m is not None else rng.choice((3, 4))
    size = size if size is not None else rng.randint(1, 5)
    bias = zero_bias if zero_bias is not None else rng.choice((0.0, 0.4, 0.7))
    gens = []
    while len(gens) < size:
        g = random_ut(rng, m, zero_bias=bias)
        if not g.is_identity() or rng.random() < 0.02:
            gens.append(g)
    return GeneratorSystem.of(m, gens)


def corpus(n: int, seed: int = 20261015) -> list[GeneratorSystem]:
    """The randomized cross-validation corpus.

    Every instance has entries in [-2, 2]; roughly a third are built to
    contain inverse pairs so that YES answers and multi-round traces occur.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = random_system(rng)
        if rng.random() < 0.35:
            extra = [g.inverse() for g in s.gens[: rng.randint(1, len(s))]]
            extra = [g for g in extra if all(-2 <= x <= 2 for row in g.matrix for x in row)]
            gens = (list(s.gens) + extra)[:5]
            rng.shuffle(gens)
            s = GeneratorSystem.of(s.m, gens)
        out.append(s)
    return out


LAMBDAS = tuple(Lambda.of(v) for v in (2, 3, Fraction(3, 2), Fraction(5, 2)))


def random_affine_map(rng: random.Random, lam: Lambda, nmax: int = 3, allow_identity: bool = True):
    """``x -> lam^n x + c`` with |n| <= nmax and c a small element of Z[1/pq]."""
    pq = lam.p * lam.q
    while True:
        n = rng.randint(-nmax, nmax)
        c = Fraction(rng.randint(-6, 6), pq ** rng.randint(0, 2))
        if allow_identity or n or c:
            return AffineMap(lam, n, c)


def random_affine_system(rng: random.Random, size: int | None = None) -> AffineSystem:
    lam = rng.choice(LAMBDAS)
    size = size if size is not None else rng.randint(1, 6)
    maps = [random_affine_map(rng, lam, allow_identity=rng.random() < 0.05) for _ in range(size)]
    if rng.random() < 0.3 and maps:
        # an inverse pair forces YES
        f = rng.choice(maps)
        maps.append(f.inverse())
        maps = maps[:6]
    return AffineSystem(lam, tuple(maps), tuple(f"s{i}" for i in range(len(maps))))
