"""Decision procedures for the Identity, Subgroup and Left-Order Extension
problems over finitely generated subgroups of UT(m, Q).

Both engines iterate on a shrinking generator set ``S_t`` and use the
abelianization coordinates of ``<S_t>`` (``log`` modulo ``[S_t, S_t]``):

* the facet engine builds ``Conv(pi_t(S_t))`` in H-representation and reads
  the signs of the offsets;
* the cone engine asks, per generator, whether some nonnegative combination
  of the images vanishes with that generator's weight positive.

Every exclusion of a generator is justified by a functional that is
nonnegative on all current images and positive on the excluded one, so the
whole trace doubles as a certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from . import linalg as la
from .lp import cone_support
from .nilpotent import GeneratorSystem, abelianized_coords
from .polytope import (Boundary, Interior, SeparatedStrictly, VRep, classify_origin,
                       v_to_h)

IDENTITY = "identity"
SUBGROUP = "subgroup"
ORDER_EXTENSION = "order-extension"
FACET = "facet"
CONE = "cone"
ENGINES = (FACET, CONE)


class EngineMismatchError(RuntimeError):
    """The two engines returned different answers on the same input."""


@dataclass(frozen=True)
class SeparatingFunctional:
    """``functional . pi_t(s) >= offset > 0`` for every ``s`` in ``labels``."""
    functional: tuple
    offset: Fraction
    round: int
    labels: tuple


@dataclass(frozen=True)
class NonInvertibleWitness:
    """``functional . pi_t(s) >= 0`` for all ``s`` at ``round``, ``> 0`` on ``label``."""
    label: str
    functional: tuple
    round: int = 0


@dataclass(frozen=True)
class StabilizedFullSupport:
    """``0`` is a strictly positive combination of ``pi_t(S_t)``."""
    round: int
    labels: tuple
    combination: tuple | None = None


@dataclass(frozen=True)
class IdentityWord:
    labels: tuple


@dataclass(frozen=True)
class RoundRecord:
    round: int
    surviving_labels: tuple
    quotient_dim: int
    coords: tuple
    facets: tuple | None = None
    cone_witness: tuple | None = None
    excluded: tuple = ()  # (label, functional) pairs


@dataclass(frozen=True)
class Decision:
    problem: str
    answer: bool
    engine: str
    trace: tuple = ()
    certificate: object = None
    support: object = None  # proof backing ``certificate`` when it is not self-contained

    @property
    def rounds(self) -> int:
        return len(self.trace)


def _int_functional(f) -> tuple:
    return la.integer_normalize(f)[0]


def _positive_facet_functional(coords, r, labels, t) -> SeparatingFunctional:
    hrep = v_to_h(VRep(r, tuple(coords)))
    origin = classify_origin(hrep)
    if not isinstance(origin, SeparatedStrictly):  # pragma: no cover
        raise AssertionError("origin is not separated from the hull")
    w = origin.witness
    return SeparatingFunctional(w.normal, w.offset, t, tuple(labels))


def _facet_round(system: GeneratorSystem, t: int):
    """One facet-engine round: ``(record, outcome, next_labels, certificate)``.

    ``outcome`` is ``"yes"``, ``"no"`` or ``"shrink"``.
    """
    ab = abelianized_coords(system)
    labels = system.labels
    if ab.r == 0:
        rec = RoundRecord(t, labels, 0, ab.coords)
        return rec, "yes", None, None
    hrep = v_to_h(VRep(ab.r, ab.coords))
    origin = classify_origin(hrep)
    base = RoundRecord(t, labels, ab.r, ab.coords, facets=hrep.halfspaces)
    if isinstance(origin, Interior):
        return base, "yes", None, None
    if isinstance(origin, SeparatedStrictly):
        w = origin.witness
        cert = SeparatingFunctional(w.normal, w.offset, t, labels)
        return base, "no", None, cert
    assert isinstance(origin, Boundary)
    keep, excluded = [], []
    for lab, c in zip(labels, ab.coords):
        hit = next((h for h in origin.active if h.value(c) != 0), None)
        if hit is None:
            keep.append(lab)
        else:
            excluded.append((lab, hit.normal))
    rec = replace(base, excluded=tuple(excluded))
    return rec, "shrink", tuple(keep), None


def _cone_round(system: GeneratorSystem, t: int):
    ab = abelianized_coords(system)
    labels = system.labels
    cs = cone_support(ab.coords)
    excluded = tuple((labels[i], _int_functional(cs.farkas[i]))
                     for i in range(len(labels)) if i not in cs.survivors)
    rec = RoundRecord(t, labels, ab.r, ab.coords, cone_witness=cs.witness, excluded=excluded)
    if len(cs.survivors) == len(labels):
        return rec, "yes", None, StabilizedFullSupport(t, labels, cs.witness)
    if not cs.survivors:
        cert = _positive_facet_functional(ab.coords, ab.r, labels, t)
        return rec, "no", None, cert
    keep = tuple(labels[i] for i in sorted(cs.survivors))
    return rec, "shrink", keep, None


_ROUND = {FACET: _facet_round, CONE: _cone_round}


def _identity_shortcut(s: GeneratorSystem, engine: str) -> Decision | None:
    if not s.gens:
        return Decision(IDENTITY, False, engine)
    for g, lab in zip(s.gens, s.labels):
        if g.is_identity():
            return Decision(IDENTITY, True, engine, certificate=IdentityWord((lab,)))
    return None


def decide_identity(s: GeneratorSystem, engine: str = FACET) -> Decision:
    """Is the identity a nonempty product of generators of ``s``?"""
    if engine not in _ROUND:
        raise ValueError(f"unknown engine {engine!r}")
    early = _identity_shortcut(s, engine)
    if early is not None:
        return early
    step = _ROUND[engine]
    trace = []
    current = s
    t = 0
    while True:
        rec, outcome, keep, cert = step(current, t)
        trace.append(rec)
        if outcome == "yes":
            if cert is None:
                cert = StabilizedFullSupport(t, current.labels)
            return Decision(IDENTITY, True, engine, tuple(trace), cert)
        if outcome == "no":
            return Decision(IDENTITY, False, engine, tuple(trace), cert)
        if not keep:  # pragma: no cover - the minimal face containing 0 has vertices
            raise AssertionError("empty surviving set after a boundary round")
        if len(keep) >= len(current):  # pragma: no cover
            raise AssertionError("surviving set failed to shrink")
        current = current.subsystem(keep)
        t += 1


def decide_identity_facet(s: GeneratorSystem) -> Decision:
    return decide_identity(s, FACET)


def decide_identity_cone(s: GeneratorSystem) -> Decision:
    return decide_identity(s, CONE)


def decide_subgroup(s: GeneratorSystem, engine: str = FACET) -> Decision:
    """Is the semigroup generated by ``s`` a group?

    Decided by the first round alone: a generator excluded there is not
    invertible in the semigroup.
    """
    if engine not in _ROUND:
        raise ValueError(f"unknown engine {engine!r}")
    if not s.gens:
        return Decision(SUBGROUP, False, engine)
    if all(g.is_identity() for g in s.gens):
        return Decision(SUBGROUP, True, engine, certificate=StabilizedFullSupport(0, s.labels))
    rec, outcome, keep, cert = _ROUND[engine](s, 0)
    if outcome == "yes":
        if cert is None:
            cert = StabilizedFullSupport(0, s.labels)
        return Decision(SUBGROUP, True, engine, (rec,), cert)
    if outcome == "no":
        # a strictly separating functional is positive on every generator
        witness = NonInvertibleWitness(s.labels[0], cert.functional, 0)
    else:
        lab, f = rec.excluded[0]
        witness = NonInvertibleWitness(lab, f, 0)
    return Decision(SUBGROUP, False, engine, (rec,), witness)


def decide_left_order_extension(s: GeneratorSystem, engine: str = FACET) -> Decision:
    """Does ``s`` lie in the positive cone of some left-order?

    In a torsion-free nilpotent group this is exactly the negation of the
    Identity Problem.  When the answer is yes, a round-0 functional that is
    nonnegative on all of ``s`` is reported.
    """
    ident = decide_identity(s, engine)
    cert = ident.certificate
    if not ident.answer and ident.trace:
        cert = None
        if isinstance(ident.certificate, SeparatingFunctional) and ident.certificate.round == 0:
            cert = ident.certificate
        elif ident.trace[0].excluded:
            lab, f = ident.trace[0].excluded[0]
            cert = NonInvertibleWitness(lab, f, 0)
    support = ident.certificate if cert is not ident.certificate else None
    return Decision(ORDER_EXTENSION, not ident.answer, engine, ident.trace, cert, support)


_DECIDERS = {
    IDENTITY: decide_identity,
    SUBGROUP: decide_subgroup,
    ORDER_EXTENSION: decide_left_order_extension,
}


def decide(problem: str, s: GeneratorSystem, engine: str = "both") -> list[Decision]:
    """Run one or both engines; with ``"both"`` the answers must agree."""
    fn = _DECIDERS[problem]
    engines = ENGINES if engine == "both" else (engine,)
    out = [fn(s, e) for e in engines]
    if len({d.answer for d in out}) > 1:
        raise EngineMismatchError(
            f"{problem}: " + ", ".join(f"{d.engine}={d.answer}" for d in out))
    return out
