"""Independent re-checking of decisions and their certificates.

Every check recomputes the abelianization coordinates from the instance and
evaluates the certificate's inequalities exactly.  The functions return a
list of human-readable failures; an empty list means the certificate holds.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .affine import AffineSystem, IntervalRecord, WitnessOrder, decide_identity_affine, order_positive
from .engines import (IDENTITY, ORDER_EXTENSION, SUBGROUP, Decision, IdentityWord,
                      NonInvertibleWitness, SeparatingFunctional, StabilizedFullSupport)
from .nilpotent import GeneratorSystem, abelianized_coords
from .oracle import evaluate
from .polytope import Interior, VRep, classify_origin, v_to_h


def _coords(system: GeneratorSystem, labels) -> dict:
    unknown = [lab for lab in labels if lab not in system.labels]
    if unknown:
        raise KeyError(f"unknown labels {unknown}")
    sub = system.subsystem(labels)
    ab = abelianized_coords(sub)
    return ab, dict(zip(sub.labels, ab.coords))


def check_identity_word(system, labels) -> list[str]:
    if not labels:
        return ["identity word is empty"]
    try:
        prod = evaluate(system, list(labels))
    except KeyError as e:
        return [f"identity word uses unknown label {e}"]
    return [] if prod.is_identity() else [f"word {list(labels)} does not multiply to the identity"]


def check_word_value(system, labels, target) -> list[str]:
    try:
        prod = evaluate(system, list(labels))
    except (KeyError, ValueError) as e:
        return [f"bad word {list(labels)}: {e}"]
    return [] if prod == target else [f"word {list(labels)} has the wrong value"]


def _check_nonneg(f, coords: dict, positive_on, what) -> list[str]:
    errs = []
    for lab, c in coords.items():
        if len(f) != len(c):
            return [f"{what}: functional has length {len(f)}, quotient has dimension {len(c)}"]
        v = la.dot(f, c)
        if v < 0:
            errs.append(f"{what}: f({lab}) = {v} < 0")
        if lab == positive_on and v <= 0:
            errs.append(f"{what}: f({lab}) = {v} is not positive")
    return errs


def check_trace(system: GeneratorSystem, trace) -> list[str]:
    """Each round's exclusions are justified and rounds chain correctly."""
    errs = []
    expected = system.labels
    for k, rec in enumerate(trace):
        if rec.round != k:
            errs.append(f"round {k}: recorded as round {rec.round}")
        if tuple(rec.surviving_labels) != tuple(expected):
            errs.append(f"round {k}: surviving set {list(rec.surviving_labels)} "
                        f"should be {list(expected)}")
            return errs
        ab, coords = _coords(system, rec.surviving_labels)
        if tuple(rec.coords) != tuple(ab.coords):
            errs.append(f"round {k}: recorded images differ from recomputed ones")
        for lab, f in rec.excluded:
            if lab not in coords:
                errs.append(f"round {k}: excluded label {lab!r} is not surviving")
                continue
            errs += _check_nonneg(f, coords, lab, f"round {k} exclusion of {lab!r}")
        gone = {lab for lab, _ in rec.excluded}
        expected = tuple(lab for lab in rec.surviving_labels if lab not in gone)
    return errs


def check_separating(system, cert: SeparatingFunctional) -> list[str]:
    if cert.offset <= 0:
        return [f"separating functional has offset {cert.offset} <= 0"]
    ab, coords = _coords(system, cert.labels)
    errs = []
    for lab, c in coords.items():
        if len(c) != len(cert.functional):
            return ["separating functional has the wrong dimension"]
        v = la.dot(cert.functional, c)
        if v < cert.offset:
            errs.append(f"separating functional: f({lab}) = {v} < {cert.offset}")
    return errs


def check_full_support(system, cert: StabilizedFullSupport) -> list[str]:
    ab, coords = _coords(system, cert.labels)
    if not cert.labels:
        return ["full support claimed for an empty set"]
    if cert.combination is not None:
        x = cert.combination
        if len(x) != len(ab.coords):
            return ["combination has the wrong length"]
        if any(xi <= 0 for xi in x):
            return ["combination is not strictly positive"]
        total = [Fraction(0)] * ab.r
        for xi, c in zip(x, ab.coords):
            total = [t + xi * ci for t, ci in zip(total, c)]
        return [] if la.is_zero(total) else ["combination does not vanish"]
    if ab.r == 0:
        return []
    origin = classify_origin(v_to_h(VRep(ab.r, ab.coords)))
    return [] if isinstance(origin, Interior) else ["origin is not interior to the hull"]


def check_non_invertible(system, cert: NonInvertibleWitness) -> list[str]:
    if cert.round != 0:
        return ["only round-0 non-invertibility witnesses are supported"]
    _, coords = _coords(system, system.labels)
    if cert.label not in coords:
        return [f"unknown witness label {cert.label!r}"]
    return _check_nonneg(cert.functional, coords, cert.label, "non-invertibility witness")


def _last_round_is(trace, cert) -> list[str]:
    if not trace:
        return ["missing round trace"]
    last = trace[-1]
    if cert.round != last.round or tuple(cert.labels) != tuple(last.surviving_labels):
        return ["separating functional does not refer to the final round"]
    return []


def _identity_no(system, d: Decision, cert) -> list[str]:
    if not system.gens:
        return []
    if not isinstance(cert, SeparatingFunctional):
        return ["NO for the identity problem needs a separating functional"]
    return check_trace(system, d.trace) + _last_round_is(d.trace, cert) + check_separating(system, cert)


def _identity_yes(system, cert) -> list[str]:
    if isinstance(cert, IdentityWord):
        return check_identity_word(system, cert.labels)
    if isinstance(cert, StabilizedFullSupport):
        return check_full_support(system, cert)
    return ["YES for the identity problem needs an identity word or full-support evidence"]


def verify_decision(system, d: Decision) -> list[str]:
    if isinstance(system, AffineSystem):
        return verify_affine(system, d)
    if d.problem == IDENTITY:
        return _identity_yes(system, d.certificate) if d.answer else _identity_no(system, d, d.certificate)
    if d.problem == SUBGROUP:
        if d.answer:
            c = d.certificate
            if not isinstance(c, StabilizedFullSupport) or c.round != 0 \
                    or tuple(c.labels) != tuple(system.labels):
                return ["subgroup YES needs round-0 full support on all generators"]
            return check_full_support(system, c)
        if not system.gens:
            return []
        if not isinstance(d.certificate, NonInvertibleWitness):
            return ["subgroup NO needs a non-invertible generator"]
        return check_non_invertible(system, d.certificate)
    if d.problem == ORDER_EXTENSION:
        if not d.answer:
            return _identity_yes(system, d.certificate)
        if not system.gens:
            return []
        errs = []
        c = d.certificate
        if isinstance(c, SeparatingFunctional):
            if c.round != 0:
                errs.append("reported functional is not from round 0")
            proof = c
        elif isinstance(c, NonInvertibleWitness):
            errs += check_non_invertible(system, c)
            proof = d.support
        else:
            return ["order extension needs a round-0 functional"]
        return errs + _identity_no(system, d, proof)
    return [f"unknown problem {d.problem!r}"]


def verify_affine(system: AffineSystem, d: Decision) -> list[str]:
    c = d.certificate
    if not d.answer:
        if not system.gens:
            return []
        if not isinstance(c, WitnessOrder):
            return ["affine NO needs a witness order"]
        bad = [lab for lab, f in zip(system.labels, system.gens) if not order_positive(c.order, f)]
        return [f"witness order does not make {lab!r} positive" for lab in bad]
    if isinstance(c, IdentityWord):
        return check_identity_word(system, c.labels)
    again = decide_identity_affine(system.lam, system.gens, system.labels)
    if not again.answer:
        return ["recomputed intervals are not both empty"]
    if d.trace and isinstance(d.trace[0], IntervalRecord) and d.trace != again.trace:
        return ["recorded intervals differ from recomputed ones"]
    return []
