"""Command-line front end.

Exit status: 0 = YES (or verified / word found), 1 = NO (or verification
failed / no word), 2 = input error, 3 = the two engines disagree.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import formats
from .affine import OpCounter, decide_identity_affine
from .engines import IDENTITY, ORDER_EXTENSION, SUBGROUP, EngineMismatchError, decide
from .formats import InstanceError, load_instance
from .oracle import DEFAULT_BUDGET, BudgetExceeded, find_identity_word, find_inverse_word
from .verify import check_identity_word, check_word_value, verify_decision

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3

PROBLEMS = {"identity": IDENTITY, "subgroup": SUBGROUP, "order-extend": ORDER_EXTENSION}


class CommandError(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status


def _require(inst, kind, command):
    if inst.kind != kind:
        raise InstanceError(f"{inst.source}: '{command}' needs a {kind} instance, got {inst.kind}")


def _witness_search(system, problem, answer, args) -> dict:
    """Constructive evidence from the oracle; never changes the decision."""
    try:
        if problem in (IDENTITY, ORDER_EXTENSION) and answer == (problem == IDENTITY):
            word = find_identity_word(system, args.max_depth, args.budget)
            if word is None:
                return {"note": f"witness: not found within depth {args.max_depth}"}
            return {"identity_word": word}
        if problem == SUBGROUP and answer:
            words = {}
            for lab, g in zip(system.labels, system.gens):
                w = find_inverse_word(system, g, args.max_depth, args.budget)
                if w is None:
                    return {"note": f"witness: no inverse of {lab!r} within depth {args.max_depth}"}
                words[lab] = w
            return {"inverse_words": words}
    except BudgetExceeded:
        return {"note": "witness: not found within budget"}
    return {}


def run_instance(command: str, path: str, args) -> tuple[int, dict]:
    inst = load_instance(path)
    start = time.perf_counter_ns()
    doc = {"schema": formats.RESULT_SCHEMA, "instance": Path(path).name, "kind": inst.kind}
    counters = {}
    if command in PROBLEMS:
        _require(inst, "unitriangular", command)
        problem = PROBLEMS[command]
        try:
            decisions = decide(problem, inst.system, args.engine)
        except EngineMismatchError as e:
            raise CommandError(EXIT_MISMATCH, f"engine mismatch: {e}") from None
        answer = decisions[0].answer
        counters["rounds"] = {d.engine: d.rounds for d in decisions}
    elif command == "affine-identity":
        _require(inst, "affine", command)
        problem = IDENTITY
        counter = OpCounter()
        s = inst.system
        decisions = [decide_identity_affine(s.lam, s.gens, s.labels, counter)]
        answer = decisions[0].answer
        counters["operations"] = counter.ops
    else:  # pragma: no cover - argparse restricts commands
        raise ValueError(command)
    doc.update(problem=problem, answer="YES" if answer else "NO",
               engines=[d.engine for d in decisions],
               decisions=[formats.decision_to_dict(d) for d in decisions])
    if args.witness:
        w = _witness_search(inst.system, problem, answer, args)
        if w:
            doc["witness"] = w
    doc["counters"] = counters
    doc["timing"] = {"wall_ns": time.perf_counter_ns() - start}
    return (EXIT_YES if answer else EXIT_NO), doc


def run_oracle(path: str, args) -> tuple[int, dict]:
    inst = load_instance(path)
    start = time.perf_counter_ns()
    doc = {"schema": formats.RESULT_SCHEMA, "instance": Path(path).name, "kind": inst.kind,
           "problem": "oracle-search", "max_depth": args.max_depth}
    try:
        word = find_identity_word(inst.system, args.max_depth, args.budget)
    except BudgetExceeded:
        word = None
        doc["note"] = "not found within budget"
    doc["identity_word"] = word
    doc["answer"] = "FOUND" if word is not None else "NOT_FOUND"
    doc["timing"] = {"wall_ns": time.perf_counter_ns() - start}
    return (EXIT_YES if word is not None else EXIT_NO), doc


def run_verify(instance_path: str, result_path: str) -> tuple[int, dict]:
    inst = load_instance(instance_path)
    try:
        lines = [ln for ln in Path(result_path).read_text().splitlines() if ln.strip()]
        docs = [json.loads(ln) for ln in lines]
    except (OSError, json.JSONDecodeError) as e:
        raise InstanceError(f"{result_path}: cannot read result document: {e}") from None
    failures = []
    checked = 0
    for doc in docs:
        if doc.get("schema") != formats.RESULT_SCHEMA:
            raise InstanceError(f"{result_path}: unsupported schema {doc.get('schema')!r}")
        if doc.get("problem") == "oracle-search":
            if doc.get("identity_word"):
                failures += check_identity_word(inst.system, doc["identity_word"])
            checked += 1
            continue
        try:
            decisions = [formats.decision_from_dict(d, doc["problem"]) for d in doc["decisions"]]
        except (KeyError, TypeError, ValueError) as e:
            raise InstanceError(f"{result_path}: malformed result document: {e}") from None
        if len({d.answer for d in decisions}) > 1:
            failures.append("decisions disagree")
        for d in decisions:
            checked += 1
            try:
                errs = verify_decision(inst.system, d)
            except (KeyError, ValueError) as e:
                errs = [f"cannot re-check: {e}"]
            failures += [f"{d.engine}: {e}" for e in errs]
        w = doc.get("witness", {})
        if "identity_word" in w:
            failures += check_identity_word(inst.system, w["identity_word"])
        for lab, word in w.get("inverse_words", {}).items():
            target = inst.system.gens[inst.system.labels.index(lab)].inverse()
            failures += check_word_value(inst.system, word, target)
    out = {"schema": formats.RESULT_SCHEMA, "problem": "verify", "checked": checked,
           "valid": not failures, "failures": failures}
    return (EXIT_YES if not failures else EXIT_NO), out


def _fmt_vec(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def _fmt_halfspace(normal, offset):
    terms = [f"{'+' if k >= 0 else '-'} {abs(k)}*x{i}" for i, k in enumerate(normal) if k]
    first = terms[0].replace("+ ", "").replace("- ", "-")
    return " ".join([first] + terms[1:]) + f" >= {offset}"


def render_human(doc: dict) -> str:
    out = []
    prob = doc.get("problem")
    if prob == "verify":
        out.append(f"verify: {'OK' if doc['valid'] else 'FAILED'} ({doc['checked']} decisions checked)")
        out += [f"  {f}" for f in doc["failures"]]
        return "\n".join(out)
    out.append(f"instance: {doc.get('instance')}  ({doc.get('kind')})")
    if prob == "oracle-search":
        w = doc["identity_word"]
        out.append(f"oracle search to depth {doc['max_depth']}: "
                   + (" * ".join(w) if w else doc.get("note", "no identity word")))
        return "\n".join(out)
    out.append(f"problem: {prob}")
    out.append(f"answer: {doc['answer']}")
    for d in doc["decisions"]:
        out.append(f"engine {d['engine']}: {d['answer']} ({len(d['rounds'])} rounds)")
        for r in d["rounds"]:
            if "L" in r:
                for name in ("L", "R"):
                    iv = r[name]
                    lo = "-inf" if iv["lo"] is None else str(formats.unq(iv["lo"]))
                    hi = "+inf" if iv["hi"] is None else str(formats.unq(iv["hi"]))
                    out.append(f"  {name}_S = {'empty' if iv['empty'] else f'({lo}, {hi})'}")
                continue
            t = r["round"]
            out.append(f"  round {t}: S_{t} = {{{', '.join(r['surviving'])}}}, r_{t} = {r['quotient_dim']}")
            for lab, c in zip(r["surviving"], r["coords"]):
                out.append(f"    pi_{t}({lab}) = {_fmt_vec(formats.unq(x) for x in c)}")
            if r["facets"] is not None:
                for h in r["facets"]:
                    out.append(f"    facet  {_fmt_halfspace(h['normal'], formats.unq(h['offset']))}")
            if r["cone_witness"] is not None:
                out.append(f"    cone witness x = {_fmt_vec(formats.unq(x) for x in r['cone_witness'])}")
            for e in r["excluded"]:
                out.append(f"    excluded {e['label']} by f = {_fmt_vec(e['functional'])}")
        out.append(f"  certificate: {_describe(d['certificate'])}")
        if d.get("support"):
            out.append(f"  supported by: {_describe(d['support'])}")
    w = doc.get("witness")
    if w:
        if "identity_word" in w:
            out.append("witness: " + " * ".join(w["identity_word"]) + " = e")
        for lab, word in w.get("inverse_words", {}).items():
            out.append(f"witness: {lab}^-1 = " + " * ".join(word))
        if "note" in w:
            out.append(w["note"])
    if "operations" in doc.get("counters", {}):
        out.append(f"operations: {doc['counters']['operations']}")
    return "\n".join(out)


def _describe(c) -> str:
    if c is None:
        return "none (empty generating set)"
    t = c["type"]
    if t == "separating_functional":
        return (f"separating functional f = {_fmt_vec(c['functional'])}, "
                f"f >= {formats.unq(c['offset'])} on round {c['round']}")
    if t == "non_invertible_witness":
        return f"{c['label']} is not invertible: f = {_fmt_vec(c['functional'])}"
    if t == "stabilized_full_support":
        return f"stabilized full support at round {c['round']}"
    if t == "identity_word":
        return "identity word " + " * ".join(c["labels"])
    if t == "witness_order":
        o = c["order"]
        if o["type"] == 1:
            return f"left-order of type 1 (s1={o['s1']:+d}, s2={o['s2']:+d})"
        return f"left-order of type 2 (p={formats.unq(o['p'])}, s1={o['s1']:+d}, s2={o['s2']:+d})"
    return t


def _run_one(command, path, args):
    try:
        if command == "oracle-search":
            return run_oracle(path, args)
        return run_instance(command, path, args)
    except InstanceError as e:
        return EXIT_INPUT, {"schema": formats.RESULT_SCHEMA, "instance": Path(path).name,
                            "error": str(e)}
    except CommandError as e:
        return e.status, {"schema": formats.RESULT_SCHEMA, "instance": Path(path).name,
                          "error": str(e)}


def _emit(doc, fmt, stream):
    if "error" in doc:
        print(f"error: {doc['error']}", file=sys.stderr)
        if fmt == "structured":
            print(formats.dumps(doc), file=stream)
        return
    print(formats.dumps(doc) if fmt == "structured" else render_human(doc), file=stream)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilident", description=(
        "Decide the Identity, Subgroup and Left-Order Extension problems for "
        "subgroups of UT(m, Q) and for affine groups G_lambda, with certificates."))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["human", "structured"], default="human")
        sp.add_argument("--max-depth", type=int, default=8)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    for name in ("identity", "subgroup", "order-extend", "affine-identity", "oracle-search"):
        sp = sub.add_parser(name)
        sp.add_argument("instance", help="instance file (a directory with --batch)")
        sp.add_argument("--engine", choices=["facet", "cone", "both"], default="both")
        sp.add_argument("--witness", action="store_true",
                        help="also search for constructive evidence with the oracle")
        sp.add_argument("--batch", action="store_true",
                        help="process every *.inst file in the given directory")
        common(sp)
    sp = sub.add_parser("verify")
    sp.add_argument("instance")
    sp.add_argument("result", help="structured result document to re-check")
    common(sp)
    return p


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        try:
            status, doc = run_verify(args.instance, args.result)
        except InstanceError as e:
            status, doc = EXIT_INPUT, {"schema": formats.RESULT_SCHEMA, "error": str(e)}
        _emit(doc, args.format, stdout)
        return status
    if args.batch:
        paths = sorted(str(p) for p in Path(args.instance).glob("*.inst"))
        if not Path(args.instance).is_dir():
            print(f"error: {args.instance}: not a directory", file=sys.stderr)
            return EXIT_INPUT
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_run_one, [args.command] * len(paths), paths,
                                    [args] * len(paths)))
        status = 0
        for code, doc in results:
            _emit(doc, args.format, stdout)
            if code in (EXIT_INPUT, EXIT_MISMATCH):
                status = max(status, code)
        return status
    status, doc = _run_one(args.command, args.instance, args)
    _emit(doc, args.format, stdout)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
