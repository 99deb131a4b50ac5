"""Command line front end: check structures, compute invariants, run perturbation sweeps."""
from __future__ import annotations

import argparse
import json
import sys

from .algebras import check_qa, jones_algebra
from .coalg import trace_element
from .diagrams import DiagramError, builtin, builtins, parse, perturb, render, traverse
from .exactnum import MalformedScalar, parse_scalar
from .invariants import PreconditionViolation, inv_knot, inv_link, inv_tangle, oracle_contract
from .structures import (AxiomViolation, StructureFormatError, TwistOQC, check_oqc, check_qc,
                         check_twist_oqc, homfly_structure, jones_quantum, jones_structure,
                         parse_structure, trivial_structure)


class InputError(Exception):
    """Bad command-line input (exit status 2)."""


def load_preset(selector: str):
    """``jones``, ``homfly:n=3`` or ``trivial:beta=q``."""
    name, _, args = selector.partition(":")
    params = {}
    for part in filter(None, args.split(",")):
        key, eq, val = part.partition("=")
        if not eq:
            raise InputError(f"preset parameter {part!r} is not key=value")
        params[key.strip()] = val.strip()
    try:
        if name == "jones" and not params:
            return jones_structure()
        if name == "homfly" and set(params) <= {"n"}:
            return homfly_structure(int(params.get("n", 2)))
        if name == "trivial" and set(params) <= {"beta"}:
            return trivial_structure(parse_scalar(params.get("beta", "1")))
    except (ValueError, MalformedScalar) as exc:
        raise InputError(f"bad preset {selector!r}: {exc}") from None
    raise InputError(f"unknown preset {selector!r}; use jones, homfly:n=<k> or trivial:beta=<scalar>")


def load_structure(args):
    if args.preset:
        return load_preset(args.preset), args.preset
    try:
        with open(args.file) as fh:
            return parse_structure(fh.read()), args.file
    except OSError as exc:
        raise InputError(str(exc)) from None
    except StructureFormatError as exc:
        raise InputError(f"{args.file}: {exc}") from None


def load_diagram(name: str):
    if name in builtins():
        return builtin(name)
    try:
        with open(name) as fh:
            return parse(fh.read(), name)
    except OSError:
        raise InputError(f"no builtin diagram or file named {name!r}; builtins: "
                         f"{', '.join(sorted(builtins()))}") from None
    except DiagramError as exc:
        raise InputError(f"{name}: {exc}") from None


def load_element(S, selector: str | None):
    C = S.C
    if selector is None or selector == "trace":
        return trace_element(C), "trace"
    if selector.startswith("basis:"):
        try:
            return C.basis(C.index(selector[6:])), selector
        except KeyError as exc:
            raise InputError(str(exc)) from None
    if selector.startswith("file:"):
        coeffs = {}
        try:
            with open(selector[5:]) as fh:
                for lineno, raw in enumerate(fh, 1):
                    line = raw.split("#", 1)[0].split(None, 1)
                    if line:
                        if len(line) != 2:
                            raise InputError(f"{selector[5:]} line {lineno}: expected '<label> <scalar>'")
                        coeffs[line[0]] = parse_scalar(line[1])
            return C.element(coeffs), selector
        except (OSError, KeyError, MalformedScalar) as exc:
            raise InputError(f"{selector[5:]}: {exc}") from None
    raise InputError(f"element must be trace, basis:<label> or file:<path>, not {selector!r}")


def emit(args, record: dict, text: str):
    if args.format == "record":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def census(D):
    return [{"start_segment": c.start_segment, "labels": len(c.lines), "extrema": c.census}
            for c in traverse(D).components]


# commands ---------------------------------------------------------------------

def cmd_check(args) -> int:
    S, source = load_structure(args)
    if isinstance(S, TwistOQC):
        report = check_twist_oqc(S)
    else:
        report = check_oqc(S)
    if args.preset == "jones":
        report.extend(check_qc(jones_quantum()), prefix="quantum coalgebra: ")
        report.extend(check_qa(jones_algebra()), prefix="quantum algebra: ")
    for r in report.results:
        emit(args, {"command": "check", "structure": source, "axiom": r.name, "passed": r.passed,
                    "witnesses": [str(w) for w in r.witnesses]}, str(r))
    emit(args, {"command": "check", "structure": source, "ok": report.ok},
         "all axioms pass" if report.ok else f"FAILED: {', '.join(report.failed())}")
    return 0 if report.ok else 1


def evaluate(S, D, element):
    """Tangles give a functional (or its value on ``element``); links a scalar."""
    if D.kind == "tangle":
        f = inv_tangle(S, D)
        return f if element is None else f(element)
    return inv_link(S, element, D)


def cmd_invariant(args) -> int:
    S, source = load_structure(args)
    D = load_diagram(args.diagram)
    el, el_name = (None, None) if (D.kind == "tangle" and args.element is None) \
        else load_element(S, args.element)
    value = evaluate(S, D, el)
    if hasattr(value, "coords"):
        shown = [str(x) for x in value.coords]
        text = "\n".join(f"{lab}: {x}" for lab, x in zip(S.C.labels, shown))
    else:
        shown = str(value)
        text = shown
    record = {"command": "invariant", "diagram": D.name or args.diagram, "hash": D.digest(),
              "structure": source, "element": el_name, "value": shown, "census": census(D)}
    status = 0
    if args.oracle:
        if D.kind == "tangle" and el is None:
            raise InputError("--oracle needs a closed diagram or an element")
        oracle = oracle_contract(S, el if el is not None else trace_element(S.C), D)
        # the oracle closes tangles, so compare with the knot value
        target = value if D.kind == "link" else inv_knot(S, el, D)
        agree = oracle == target
        record["oracle"], record["oracle_agrees"] = str(oracle), agree
        text += f"\noracle: {oracle} ({'agrees' if agree else 'DISAGREES'})"
        status = 0 if agree else 1
    emit(args, record, text)
    return status


def cmd_perturb(args) -> int:
    S, source = load_structure(args)
    D = load_diagram(args.diagram)
    el, el_name = (None, None) if (D.kind == "tangle" and args.element is None) \
        else load_element(S, args.element)
    base = evaluate(S, D, el)
    mismatch = None
    for k in range(args.n):
        P = perturb(D, args.seed + k, args.moves)
        v = evaluate(S, P, el)
        if v != base:
            mismatch = (k, P, v)
            break
    shown = [str(x) for x in base.coords] if hasattr(base, "coords") else str(base)
    record = {"command": "perturb", "diagram": D.name or args.diagram, "hash": D.digest(),
              "structure": source, "element": el_name, "seed": args.seed, "variants": args.n,
              "moves": args.moves, "value": shown, "all_equal": mismatch is None}
    if mismatch is None:
        text = f"{args.n} variants, all equal to {shown}"
    else:
        k, P, v = mismatch
        record["mismatch"] = {"variant": k, "diagram": render(P), "value": str(v)}
        text = f"MISMATCH at variant {k}:\n{render(P)}value {v}, expected {shown}"
    emit(args, record, text)
    return 0 if mismatch is None else 1


def cmd_render(args) -> int:
    D = load_diagram(args.diagram)
    sys.stdout.write(render(D))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="qcinv", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def structure_opts(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--preset", help="jones | homfly:n=<k> | trivial:beta=<scalar>")
        g.add_argument("--file", help="structure file")
        sp.add_argument("--format", choices=("text", "record"), default="text")

    sp = sub.add_parser("check", help="verify the axioms of a structure")
    structure_opts(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("invariant", help="compute an invariant")
    structure_opts(sp)
    sp.add_argument("--diagram", required=True, help="builtin name or DSL file")
    sp.add_argument("--element", help="trace | basis:<label> | file:<path>")
    sp.add_argument("--oracle", action="store_true", help="cross-check with the state-sum oracle")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("perturb", help="check invariance under random regular-isotopy moves")
    structure_opts(sp)
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--element")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int, default=20, help="number of variants")
    sp.add_argument("--moves", type=int, default=10, help="moves per variant")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("render", help="print a diagram in canonical form")
    sp.add_argument("--diagram", required=True)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionViolation, AxiomViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
