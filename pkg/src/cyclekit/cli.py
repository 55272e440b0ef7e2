"""Command-line interface.

Exit codes: 0 on success, 1 when an analysis finds that a requested
property fails (an invalid cut, a cycle set violating the structural
properties), 2 on unreadable or ill-formed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .attractor import attractor_presentation
from .cycleset import (
    AncestorAmbiguity,
    CycleSetValidationError,
    check_property_a,
    check_property_b,
    nondegenerate_ancestor,
    realize_truncated,
)
from .dds import DdsError
from .digraph import DigraphError, state_space
from .ingest import (
    AnalysisReport,
    ParseError,
    element_token,
    emit_network,
    parse_cycleset,
    parse_network,
    report_json,
    to_dot,
)
from .semidirect import decompose_attractors
from .wiring import (
    Cut,
    InvalidCutError,
    ProductFunction,
    WiringError,
    decode_state,
    enumerate_cuts,
    extract,
    wiring_diagram,
)


class _CliArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliArgumentError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cyclekit", add_help=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state-space", help="DOT of a network's state space")
    p.add_argument("input")

    p = sub.add_parser("attractors", help="JSON presentation of the attractors")
    p.add_argument("input")
    p.add_argument("--max-length", type=int, default=None)

    p = sub.add_parser("wiring", help="DOT of the wiring diagram")
    p.add_argument("input")

    p = sub.add_parser("cuts", help="valid cuts of the wiring diagram")
    p.add_argument("input")

    p = sub.add_parser("decompose", help="semi-direct decomposition along a cut")
    p.add_argument("input")
    p.add_argument("--cut", required=True,
                   help="comma-separated variable names or 1-based indices")

    p = sub.add_parser("verify-theorem",
                       help="check the attractor decomposition at one level")
    p.add_argument("input")
    p.add_argument("--cut", required=True)
    p.add_argument("--level", type=int, required=True)

    p = sub.add_parser("cycleset-check",
                       help="relation and property verdicts for a cycle set")
    p.add_argument("input")
    p.add_argument("--realize", action="store_true")

    p = sub.add_parser("realize", help="DOT of the truncated realization")
    p.add_argument("input")
    return parser


def _read_input(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_cut(spec: str, f: ProductFunction) -> Cut:
    chosen = set()
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token in f.names:
            chosen.add(f.names.index(token))
        elif token.isdigit():
            index = int(token) - 1
            if not 0 <= index < f.arity:
                raise _CliArgumentError(f"cut index {token} out of range")
            chosen.add(index)
        else:
            raise _CliArgumentError(f"unknown variable {token!r} in --cut")
    return Cut(f.arity, tuple(sorted(chosen)))


def _attractor_report(f: ProductFunction, max_length: Optional[int]) -> AnalysisReport:
    d = f.to_dds()
    bound = max_length if max_length is not None else d.size
    presentation = attractor_presentation(d)
    orbits = [
        {"length": k, "representative": [d.label(v) for v in rep]}
        for k, rep in presentation.generators
        if k <= bound
    ]
    counts: dict[str, int] = {}
    for orbit in orbits:
        counts[str(orbit["length"])] = counts.get(str(orbit["length"]), 0) + 1
    return AnalysisReport(
        system={
            "variables": list(f.names),
            "alphabet": f.alphabet,
            "state_count": d.size,
        },
        attractors={
            "max_length": bound,
            "lengths": sorted({o["length"] for o in orbits}),
            "counts": counts,
            "orbits": orbits,
        },
    )


def _fresh_env_names(names: Sequence[str], kept: Sequence[str]) -> list[str]:
    out = []
    taken = set(names)
    for name in kept:
        candidate = f"e_{name}"
        while candidate in taken:
            candidate += "_"
        taken.add(candidate)
        out.append(candidate)
    return out


def _cmd_decompose(f: ProductFunction, cut: Cut, out) -> int:
    try:
        dec = extract(f, cut)
    except InvalidCutError as exc:
        print(f"invalid cut: {exc}", file=out)
        return 1
    x_names = [f.names[i] for i in cut.x]
    out.write(f"# semi-direct decomposition along [{', '.join(x_names)}]\n")
    out.write("sigma: " + " ".join(str(s + 1) for s in dec.sigma) + "\n")
    out.write("first-block: " + (" ".join(dec.permuted.names[:dec.block_size])
                                 if dec.block_size else "-") + "\n")
    out.write("kept-inputs: " + (" ".join(dec.permuted.names[i]
                                          for i in dec.kept_inputs)
                                 if dec.kept_inputs else "-") + "\n")
    out.write("verified: true\n")
    if dec.g is not None:
        out.write("\n# first-block update\n")
        out.write(emit_network(dec.g))
    if dec.fiber_arity:
        env_names = _fresh_env_names(dec.permuted.names,
                                     [dec.permuted.names[i]
                                      for i in dec.kept_inputs])
        names = tuple(env_names) + dec.permuted.names[dec.block_size:]
        ell = len(env_names)
        q = dec.alphabet
        size = q ** len(names)
        tables = []
        for i in range(ell):
            tables.append(tuple(decode_state(s, len(names), q)[i]
                                for s in range(size)))
        tables.extend(dec.h_tables)
        h_fn = ProductFunction(q, names, tuple(tables))
        out.write("\n# fiber update (placeholder inputs keep their value)\n")
        out.write(emit_network(h_fn))
    return 0


def _cmd_verify_theorem(f: ProductFunction, cut: Cut, level: int, out) -> int:
    if level < 1:
        raise _CliArgumentError("--level must be positive")
    try:
        dec = extract(f, cut)
    except InvalidCutError as exc:
        print(f"invalid cut: {exc}", file=out)
        return 1
    spec = dec.to_semidirect_spec()
    report = decompose_attractors(spec, level)
    blocks = [
        {
            "representative": [spec.base.label(v) for v in block.representative],
            "period": block.period,
            "cycle_count": len(block.cycles),
        }
        for block in report.blocks
    ]
    document = AnalysisReport(
        system={
            "variables": list(f.names),
            "alphabet": f.alphabet,
            "state_count": f.state_count,
        },
        decomposition={
            "level": level,
            "cut": [f.names[i] for i in cut.x],
            "lhs_count": len(report.lhs.elements),
            "blocks": blocks,
            "rhs_count": sum(b["cycle_count"] for b in blocks),
            "verified": True,
            "equivariant": True,
        },
    )
    out.write(report_json(document))
    return 0


def _cmd_cycleset_check(text: str, want_dot: bool, out) -> int:
    try:
        cs = parse_cycleset(text)
    except CycleSetValidationError as exc:
        out.write(f"relations: violated ({exc})\n")
        return 1
    out.write("relations: ok\n")
    failed = False
    violation = check_property_a(cs)
    if violation is None:
        out.write("Property A: ok\n")
    else:
        failed = True
        out.write(
            f"Property A: violated at level {violation.level} "
            f"({element_token(violation.x)} and {element_token(violation.y)} "
            f"repeat equally at level {violation.other_level})\n")
    violation = check_property_b(cs)
    if violation is None:
        out.write("Property B: ok\n")
    else:
        failed = True
        out.write(
            f"Property B: violated at level {violation.level} "
            f"({element_token(violation.x)} is fixed by rotating "
            f"{violation.other_level} steps but is not a repetition from "
            f"level {violation.other_level})\n")
    ambiguous = []
    for n in range(1, cs.bound + 1):
        for x in cs.level(n):
            found = nondegenerate_ancestor(cs, n, x)
            if isinstance(found, AncestorAmbiguity):
                ambiguous.append((n, x, found))
    for n, x, found in ambiguous:
        pairs = ", ".join(
            f"(level {d}, {element_token(y)})" for d, y in found.witnesses)
        out.write(
            f"ancestor ambiguity: {element_token(x)} at level {n} "
            f"has witnesses {pairs}\n")
    if want_dot:
        out.write(to_dot(realize_truncated(cs)))
    return 1 if failed else 0


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """Entry point with injectable streams; returns the exit code."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _CliArgumentError as exc:
        print(f"error: {exc}", file=err)
        return 2

    try:
        if args.command in ("state-space", "attractors", "wiring", "cuts",
                            "decompose", "verify-theorem"):
            text = _read_input(args.input, sys.stdin)
            f = parse_network(text)
            if args.command == "state-space":
                d = f.to_dds()
                out.write(to_dot(state_space(d), labels=d.labels))
                return 0
            if args.command == "attractors":
                out.write(report_json(_attractor_report(f, args.max_length)))
                return 0
            if args.command == "wiring":
                out.write(to_dot(wiring_diagram(f), labels=f.names))
                return 0
            if args.command == "cuts":
                for cut in enumerate_cuts(wiring_diagram(f)):
                    x_names = ",".join(f.names[i] for i in cut.x)
                    y_names = ",".join(f.names[i] for i in cut.y)
                    flag = "trivial" if cut.is_trivial else "nontrivial"
                    out.write(f"X=[{x_names}] Y=[{y_names}] {flag}\n")
                return 0
            cut = _parse_cut(args.cut, f)
            if args.command == "decompose":
                return _cmd_decompose(f, cut, out)
            return _cmd_verify_theorem(f, cut, args.level, out)
        if args.command == "cycleset-check":
            text = _read_input(args.input, sys.stdin)
            return _cmd_cycleset_check(text, args.realize, out)
        if args.command == "realize":
            text = _read_input(args.input, sys.stdin)
            cs = parse_cycleset(text)
            out.write(to_dot(realize_truncated(cs)))
            return 0
        raise AssertionError(f"unhandled command {args.command}")
    except _CliArgumentError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (ParseError, CycleSetValidationError, DigraphError, DdsError,
            WiringError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
