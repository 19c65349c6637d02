"""Instance files and structured result documents.

Instance format (text, version 1)::

    # comments start with '#'
    version 1                 # optional; only 1 is accepted
    kind unitriangular
    dim 3
    gen a                     # followed by `dim` rows of `dim` entries
    1 1 0
    0 1 0
    0 0 1

    kind affine
    lambda 3/2
    gen f 1 -1/2              # label, exponent n, constant c

Rationals are written ``p`` or ``p/q``; decimals are rejected.  Result
documents are single-line JSON objects (schema ``nilident.result/1``) with
rationals as ``"numerator/denominator"`` strings and integer functionals as
JSON integers.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .affine import (AffineMap, AffineSystem, Interval, IntervalRecord, Lambda, Type1,
                     Type2, WitnessOrder)
from .engines import (Decision, IdentityWord, NonInvertibleWitness, RoundRecord,
                      SeparatingFunctional, StabilizedFullSupport)
from .nilpotent import GeneratorSystem, UTElement

INSTANCE_VERSION = 1
RESULT_SCHEMA = "nilident.result/1"

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class InstanceError(ValueError):
    """Malformed instance file; the message names the line and field."""


def parse_rational(tok: str, where: str) -> Fraction:
    if not _RATIONAL.match(tok):
        raise InstanceError(f"{where}: {tok!r} is not an exact rational (use p or p/q)")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise InstanceError(f"{where}: {tok!r} has zero denominator") from None


@dataclass(frozen=True)
class Instance:
    kind: str
    system: object  # GeneratorSystem or AffineSystem
    source: str = "<string>"


def parse_instance(text: str, source: str = "<string>") -> Instance:
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((no, body.split()))
    kind = None
    header: dict = {}
    gens: list = []
    i = 0

    def where(no, what=""):
        return f"{source}:{no}" + (f": {what}" if what else "")

    while i < len(lines):
        no, toks = lines[i]
        key = toks[0]
        if key == "version":
            if len(toks) != 2 or toks[1] != str(INSTANCE_VERSION):
                raise InstanceError(where(no, f"unsupported version {' '.join(toks[1:])!r}"))
        elif key == "kind":
            if len(toks) != 2 or toks[1] not in ("unitriangular", "affine"):
                raise InstanceError(where(no, "kind must be 'unitriangular' or 'affine'"))
            kind = toks[1]
        elif key == "dim":
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise InstanceError(where(no, "dim must be a positive integer"))
            header["dim"] = int(toks[1])
        elif key == "lambda":
            if len(toks) != 2:
                raise InstanceError(where(no, "lambda takes one value"))
            val = parse_rational(toks[1], where(no, "lambda"))
            try:
                header["lambda"] = Lambda.of(val)
            except ValueError as e:
                raise InstanceError(where(no, f"lambda: {e}")) from None
        elif key == "gen":
            if kind is None:
                raise InstanceError(where(no, "'kind' must precede generators"))
            if kind == "unitriangular":
                if "dim" not in header:
                    raise InstanceError(where(no, "'dim' must precede generators"))
                if len(toks) != 2:
                    raise InstanceError(where(no, "expected 'gen <label>'"))
                m = header["dim"]
                label = toks[1]
                rows = []
                for r in range(m):
                    i += 1
                    if i >= len(lines):
                        raise InstanceError(where(no, f"generator {label!r}: expected {m} rows"))
                    rno, rtoks = lines[i]
                    if len(rtoks) != m:
                        raise InstanceError(where(rno, f"generator {label!r} row {r + 1}: "
                                                       f"expected {m} entries, got {len(rtoks)}"))
                    rows.append([parse_rational(t, where(rno, f"generator {label!r} "
                                                              f"entry ({r + 1},{c + 1})"))
                                 for c, t in enumerate(rtoks)])
                try:
                    g = UTElement.from_matrix(rows)
                except ValueError as e:
                    raise InstanceError(where(no, f"generator {label!r}: {e}")) from None
                gens.append((no, label, g))
            else:
                if "lambda" not in header:
                    raise InstanceError(where(no, "'lambda' must precede generators"))
                if len(toks) != 4:
                    raise InstanceError(where(no, "expected 'gen <label> <n> <c>'"))
                label = toks[1]
                if not re.match(r"^[+-]?\d+$", toks[2]):
                    raise InstanceError(where(no, f"generator {label!r}: exponent {toks[2]!r} "
                                                  "must be an integer"))
                c = parse_rational(toks[3], where(no, f"generator {label!r} constant"))
                lam = header["lambda"]
                if not lam.in_ring(c):
                    raise InstanceError(where(no, f"generator {label!r}: constant {c} is not in "
                                                  f"Z[1/{lam.p * lam.q}]"))
                gens.append((no, label, AffineMap(lam, int(toks[2]), c)))
        else:
            raise InstanceError(where(no, f"unknown directive {key!r}"))
        i += 1
    if kind is None:
        raise InstanceError(f"{source}: missing 'kind' line")
    seen = set()
    for no, label, _ in gens:
        if label in seen:
            raise InstanceError(where(no, f"duplicate generator label {label!r}"))
        seen.add(label)
    labels = tuple(lab for _, lab, _ in gens)
    elems = tuple(g for _, _, g in gens)
    if kind == "unitriangular":
        if "dim" not in header:
            raise InstanceError(f"{source}: missing 'dim' line")
        return Instance(kind, GeneratorSystem(header["dim"], elems, labels), source)
    if "lambda" not in header:
        raise InstanceError(f"{source}: missing 'lambda' line")
    return Instance(kind, AffineSystem(header["lambda"], elems, labels), source)


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InstanceError(f"{path}: {e.strerror}") from None
    return parse_instance(text, str(path))


def format_instance(inst_or_system) -> str:
    """Serialize a system back into the instance text format."""
    system = getattr(inst_or_system, "system", inst_or_system)
    out = [f"version {INSTANCE_VERSION}"]
    if isinstance(system, GeneratorSystem):
        out += ["kind unitriangular", f"dim {system.m}"]
        for lab, g in zip(system.labels, system.gens):
            out.append(f"gen {lab}")
            out += [" ".join(str(x) for x in row) for row in g.matrix]
    else:
        out += ["kind affine", f"lambda {system.lam}"]
        for lab, f in zip(system.labels, system.gens):
            out.append(f"gen {lab} {f.n} {f.c}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- results

def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unq(s: str) -> Fraction:
    return Fraction(s)


def _ints(v):
    return [int(x) for x in v]


def certificate_to_dict(c):
    if c is None:
        return None
    if isinstance(c, SeparatingFunctional):
        return {"type": "separating_functional", "functional": _ints(c.functional),
                "offset": q(c.offset), "round": c.round, "labels": list(c.labels)}
    if isinstance(c, NonInvertibleWitness):
        return {"type": "non_invertible_witness", "label": c.label,
                "functional": _ints(c.functional), "round": c.round}
    if isinstance(c, StabilizedFullSupport):
        return {"type": "stabilized_full_support", "round": c.round, "labels": list(c.labels),
                "combination": None if c.combination is None else [q(x) for x in c.combination]}
    if isinstance(c, IdentityWord):
        return {"type": "identity_word", "labels": list(c.labels)}
    if isinstance(c, WitnessOrder):
        return {"type": "witness_order", "order": order_to_dict(c.order)}
    raise TypeError(f"unknown certificate {c!r}")


def certificate_from_dict(d):
    if d is None:
        return None
    t = d["type"]
    if t == "separating_functional":
        return SeparatingFunctional(tuple(d["functional"]), unq(d["offset"]), d["round"],
                                    tuple(d["labels"]))
    if t == "non_invertible_witness":
        return NonInvertibleWitness(d["label"], tuple(d["functional"]), d["round"])
    if t == "stabilized_full_support":
        comb = d.get("combination")
        return StabilizedFullSupport(d["round"], tuple(d["labels"]),
                                     None if comb is None else tuple(unq(x) for x in comb))
    if t == "identity_word":
        return IdentityWord(tuple(d["labels"]))
    if t == "witness_order":
        return WitnessOrder(order_from_dict(d["order"]))
    raise ValueError(f"unknown certificate type {t!r}")


def order_to_dict(o):
    if isinstance(o, Type1):
        return {"type": 1, "s1": o.s1, "s2": o.s2}
    return {"type": 2, "p": q(o.p), "s1": o.s1, "s2": o.s2}


def order_from_dict(d):
    if d["type"] == 1:
        return Type1(d["s1"], d["s2"])
    return Type2(unq(d["p"]), d["s1"], d["s2"])


def _interval_to_dict(iv: Interval):
    return {"empty": iv.empty, "lo": None if iv.lo is None else q(iv.lo),
            "hi": None if iv.hi is None else q(iv.hi)}


def _interval_from_dict(d):
    return Interval(None if d["lo"] is None else unq(d["lo"]),
                    None if d["hi"] is None else unq(d["hi"]))


def round_to_dict(r):
    if isinstance(r, IntervalRecord):
        return {"L": _interval_to_dict(r.left), "R": _interval_to_dict(r.right)}
    return {
        "round": r.round,
        "surviving": list(r.surviving_labels),
        "quotient_dim": r.quotient_dim,
        "coords": [[q(x) for x in c] for c in r.coords],
        "facets": None if r.facets is None else [
            {"normal": _ints(h.normal), "offset": q(h.offset)} for h in r.facets],
        "cone_witness": None if r.cone_witness is None else [q(x) for x in r.cone_witness],
        "excluded": [{"label": lab, "functional": _ints(f)} for lab, f in r.excluded],
    }


def round_from_dict(d):
    if "L" in d:
        return IntervalRecord(_interval_from_dict(d["L"]), _interval_from_dict(d["R"]))
    from .polytope import HalfSpace
    return RoundRecord(
        d["round"], tuple(d["surviving"]), d["quotient_dim"],
        tuple(tuple(unq(x) for x in c) for c in d["coords"]),
        None if d["facets"] is None else tuple(
            HalfSpace(tuple(h["normal"]), unq(h["offset"])) for h in d["facets"]),
        None if d["cone_witness"] is None else tuple(unq(x) for x in d["cone_witness"]),
        tuple((e["label"], tuple(e["functional"])) for e in d["excluded"]),
    )


def decision_to_dict(d: Decision) -> dict:
    return {
        "engine": d.engine,
        "answer": "YES" if d.answer else "NO",
        "rounds": [round_to_dict(r) for r in d.trace],
        "certificate": certificate_to_dict(d.certificate),
        "support": certificate_to_dict(d.support),
    }


def decision_from_dict(d: dict, problem: str) -> Decision:
    return Decision(problem, d["answer"] == "YES", d["engine"],
                    tuple(round_from_dict(r) for r in d["rounds"]),
                    certificate_from_dict(d["certificate"]),
                    support=certificate_from_dict(d.get("support")))


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def canonical(doc: dict) -> str:
    """The document with timing removed, for byte-level comparisons."""
    return dumps({k: v for k, v in doc.items() if k != "timing"})
