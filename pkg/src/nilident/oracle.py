"""Brute-force search over products of generators.

Works for any system exposing ``gens`` and ``labels`` whose elements support
``*``, ``inverse()``, ``is_identity()`` and exact hashing (UT(m, Q) matrices,
affine maps).  Products are read left to right: the word ``[s, t]`` denotes
``s * t``.  Words are compared lexicographically by generator position.
"""
from __future__ import annotations

from dataclasses import dataclass

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """More distinct elements than the configured budget."""


@dataclass(frozen=True)
class BallEnumeration:
    """Every product of 1..depth generators, keyed by element.

    ``elements`` maps each element to its lexicographically least word among
    the shortest ones (as a tuple of labels).
    """
    depth: int
    elements: dict


def _ball(s, depth: int, budget: int) -> dict:
    """Element -> shortest lex-least word as a tuple of generator indices."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    seen: dict = {}
    frontier = []
    for i, g in enumerate(s.gens):
        if g not in seen:
            seen[g] = (i,)
            frontier.append((g, (i,)))
    if len(seen) > budget:
        raise BudgetExceeded(f"budget of {budget} elements exceeded")
    gens = list(enumerate(s.gens))
    for _ in range(depth - 1):
        nxt = []
        for h, word in frontier:
            for i, g in gens:
                x = h * g
                if x not in seen:
                    w = word + (i,)
                    seen[x] = w
                    nxt.append((x, w))
        if len(seen) > budget:
            raise BudgetExceeded(f"budget of {budget} elements exceeded")
        frontier = nxt
        if not frontier:
            break
    return seen


def enumerate_ball(s, depth: int, budget: int = DEFAULT_BUDGET) -> BallEnumeration:
    labels = s.labels
    ball = _ball(s, depth, budget)
    return BallEnumeration(depth, {g: tuple(labels[i] for i in w) for g, w in ball.items()})


def find_word(s, target, max_depth: int, budget: int = DEFAULT_BUDGET) -> list | None:
    """Shortest, lexicographically least word of length <= max_depth for ``target``.

    A word of length ``L`` splits into a prefix of length ``ceil(L/2)`` and a
    suffix of length ``floor(L/2)``, both of which must be shortest words
    for their own products, so a ball of radius ``ceil(max_depth/2)``
    suffices.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if not s.gens:
        return None
    half = (max_depth + 1) // 2
    ball = _ball(s, half, budget)
    by_len: dict[int, list] = {}
    for g, w in ball.items():
        by_len.setdefault(len(w), []).append((w, g))
    for lst in by_len.values():
        lst.sort(key=lambda t: t[0])
    inverses = {}
    for L in range(1, max_depth + 1):
        h = (L + 1) // 2
        rest_len = L - h
        if rest_len == 0:
            w = ball.get(target)
            if w is not None and len(w) == L:
                return [s.labels[i] for i in w]
            continue
        for w, g in by_len.get(h, ()):
            gi = inverses.get(g)
            if gi is None:
                gi = inverses[g] = g.inverse()
            w2 = ball.get(gi * target)
            if w2 is not None and len(w2) == rest_len:
                return [s.labels[i] for i in w + w2]
    return None


def _identity_like(s):
    g = s.gens[0]
    return g * g.inverse()


def find_identity_word(s, max_depth: int, budget: int = DEFAULT_BUDGET) -> list | None:
    """Shortest lex-least word multiplying to the identity, if within depth.

    ``None`` only means no such word of length <= max_depth exists.
    """
    if not s.gens:
        return None
    return find_word(s, _identity_like(s), max_depth, budget)


def find_inverse_word(s, target, max_depth: int, budget: int = DEFAULT_BUDGET) -> list | None:
    """Shortest lex-least word multiplying to ``target^-1``."""
    return find_word(s, target.inverse(), max_depth, budget)


def evaluate(s, word) -> object:
    """Product of the generators named in ``word`` (left to right)."""
    if not word:
        raise ValueError("empty word")
    idx = {lab: i for i, lab in enumerate(s.labels)}
    out = s.gens[idx[word[0]]]
    for lab in word[1:]:
        out = out * s.gens[idx[lab]]
    return out
