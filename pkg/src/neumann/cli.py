"""Command line surface.

Exit codes: 0 success or property verified; 1 checked and failed; 2 usage
or parse error; 3 the window was too small to complete the computation
(an out-of-window incompleteness, distinct from a genuine failure).

All output is plain text with stable ordering, so identical invocations
produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import random
import sys

from .gl2 import NU, OMEGA, ProjMat2, compose, first_column, tau_power
from .involution import (
    BlockSpecError,
    InvolutionWindow,
    OutOfWindow,
    assemble,
    parse_block_spec,
    sigma,
    sigma_star,
    validate,
)
from .structure import (
    TooFewBlocks,
    Unrealizable,
    check_independence,
    check_tietze,
    independent_generators,
    structure_report,
    synthesize_blocks,
)
from .verify import FailureReason, check_neumann, coset_decompose
from .graph import build, cayley_vs_distant, to_adjacency, to_dot

OK = 0
FAILED = 1
USAGE = 2
INCOMPLETE = 3


def _load_window(path: str) -> tuple[list[int], InvolutionWindow] | int:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cases = parse_block_spec(fh.read())
    except OSError as e:
        print(f"error: cannot read {path}: {e.strerror}", file=sys.stderr)
        return USAGE
    except BlockSpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    return cases, assemble(cases)


def _cmd_validate(args, out) -> int:
    loaded = _load_window(args.spec)
    if isinstance(loaded, int):
        return loaded
    _, w = loaded
    out(f"window {w.lo} {w.hi}")
    report = validate(w)
    for n, m in report.involution_failures:
        out(f"involution {n} {m}")
    for n, d, dm in report.delta_failures:
        out(f"delta {n} {d} {dm}")
    for n, lhs, rhs in report.iota_failures:
        out(f"iota {n} {lhs} {rhs}")
    for n, lhs, rhs in report.iotaeq_failures:
        out(f"iotaeq {n} {lhs} {rhs}")
    out(f"checked {report.iota_checked + report.iotaeq_checked}"
        f" skipped {report.iota_skipped + report.iotaeq_skipped}")
    out("ok" if report.ok else "fail")
    return OK if report.ok else FAILED


def _cmd_generators(args, out) -> int:
    loaded = _load_window(args.spec)
    if isinstance(loaded, int):
        return loaded
    _, w = loaded
    for n in w.indices():
        s = sigma_star(w, n)
        out(f"{n} {w.iota_of(n)} {w.delta_of(n)} {s.a} {s.b} {s.c} {s.d}")
    return OK


def _cmd_neumann_check(args, out) -> int:
    loaded = _load_window(args.spec)
    if isinstance(loaded, int):
        return loaded
    _, w = loaded
    report = check_neumann(w, args.height, args.oracle_len, args.oracle_cap)
    out(f"height {report.height_bound}")
    out(f"targets {report.targets_checked}")
    out(f"oracle-len {report.oracle_len}")
    out(f"oracle-cap {report.oracle_cap}")
    out(f"ball {report.ball_size}")
    hard = False
    incomplete = False
    for f in report.failures:
        if f.reason is FailureReason.OUT_OF_WINDOW:
            out(f"failure {f.vertex.label()} {f.reason.value} {f.index}")
            incomplete = True
        else:
            out(f"failure {f.vertex.label()} {f.reason.value}")
            hard = True
    out("verdict " + ("ok" if report.verified else "fail"))
    if args.render:
        from .plotting import render_neumann_report

        render_neumann_report(report, args.render)
    if hard:
        return FAILED
    if incomplete:
        return INCOMPLETE
    return OK


def _sample_elements(count: int, seed: int) -> list[ProjMat2]:
    """Deterministic sample of group elements as words tau^a omega tau^b ..."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        g = tau_power(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 4)):
            g = compose(g, OMEGA if rng.random() < 0.5 else NU)
            g = compose(g, tau_power(rng.randint(-3, 3)))
        out.append(g)
    return out


def _cmd_coset_check(args, out) -> int:
    loaded = _load_window(args.spec)
    if isinstance(loaded, int):
        return loaded
    _, w = loaded
    sample = _sample_elements(args.count, args.seed)
    per_g: dict[ProjMat2, tuple] = {}
    checked = 0
    ok = True
    for g in sample:
        if first_column(g).height > args.height:
            continue
        checked += 1
        try:
            d = coset_decompose(w, g)
        except OutOfWindow as e:
            out(f"incomplete out-of-window {e.index}")
            return INCOMPLETE
        r = g.rep
        sr = d.s.rep
        out(f"g {r.a} {r.b} {r.c} {r.d} s {sr.a} {sr.b} {sr.c} {sr.d} t {d.kind.value} {d.n}")
        if compose(d.s, d.coset_rep()) != g:
            ok = False
        prev = per_g.setdefault(g, (d.s, d.kind, d.n))
        if prev != (d.s, d.kind, d.n):
            ok = False
    out(f"checked {checked} of {len(sample)}")
    out("verdict " + ("ok" if ok else "fail"))
    return OK if ok else FAILED


def _cmd_structure(args, out) -> int:
    loaded = _load_window(args.spec)
    if isinstance(loaded, int):
        return loaded
    cases, _ = loaded
    report = structure_report(cases)
    for line in report.lines():
        out(line)
    if args.render:
        from .plotting import render_structure_report

        render_structure_report(report, args.render)
    return OK if report.cond2_ok and report.cond3_ok else FAILED


def _cmd_independence(args, out) -> int:
    loaded = _load_window(args.spec)
    if isinstance(loaded, int):
        return loaded
    _, w = loaded
    gate_ok = True
    for block in w.provenance:
        out(f"block {block.case_id} base {block.base}")
        gens = independent_generators(w, block)
        for g in gens:
            verdict = "ok" if g.matches else "mismatch"
            out(f"generator {g.index} {g.gen_class.value}"
                f" expected {g.expected.value} {verdict}")
            gate_ok = gate_ok and g.matches
        for text, holds in check_tietze(block, w):
            out(f"tietze {text} {'ok' if holds else 'fail'}")
            if block.case_id != 6:
                gate_ok = gate_ok and holds
        free = check_independence(
            [(sigma(w, g.index), g.gen_class) for g in gens], args.max_len
        )
        out(f"independence max-len {args.max_len} {'ok' if free else 'fail'}")
        gate_ok = gate_ok and free
    out("verdict " + ("ok" if gate_ok else "fail"))
    return OK if gate_ok else FAILED


def _cmd_graph(args, out) -> int:
    g = build(args.height)
    text = to_dot(g) if args.format == "dot" else to_adjacency(g)
    out(text.rstrip("\n"))
    if args.render:
        from .plotting import render_distant_graph

        render_distant_graph(g, args.render)
    return OK


def _cmd_iso_check(args, out) -> int:
    loaded = _load_window(args.spec)
    if isinstance(loaded, int):
        return loaded
    _, w = loaded
    try:
        verdict = cayley_vs_distant(w, args.height)
    except OutOfWindow as e:
        out(f"incomplete out-of-window {e.index}")
        return INCOMPLETE
    out("cayley-vs-distant " + ("ok" if verdict else "fail"))
    return OK if verdict else FAILED


def _cmd_synthesize(args, out) -> int:
    targets = (args.r2, args.r3, args.rinfp, args.rinfm)
    try:
        result = synthesize_blocks(targets, args.pad, args.blocks)
    except Unrealizable as e:
        out(f"# unrealizable: {e}")
        return FAILED
    except TooFewBlocks as e:
        out(f"# too few blocks: {e}")
        return USAGE
    out(f"# targets {args.r2} {args.r3} {args.rinfp} {args.rinfm}"
        f" pad {args.pad} blocks {args.blocks} exact {result.exact_len}")
    for cid in result.cases:
        out(f"block {cid}")
    return OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="neumann",
        description="Build and verify Neumann subgroups of the extended modular group",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def spec_cmd(name: str, help_: str):
        c = sub.add_parser(name, help=help_)
        c.add_argument("--spec", required=True, help="block spec file")
        return c

    spec_cmd("validate", "check a block spec's involution conditions")
    spec_cmd("generators", "list the generator matrices of a spec")

    c = spec_cmd("neumann-check", "existence/uniqueness check up to a height")
    c.add_argument("--height", type=int, required=True)
    c.add_argument("--oracle-len", type=int, default=None,
                   help="word length of the uniqueness ball (default 2*height)")
    c.add_argument("--oracle-cap", type=int, default=None,
                   help="column height cap for the ball; 0 disables (default 2*height)")
    c.add_argument("--render", metavar="PATH", help="write a target scatter figure")

    c = spec_cmd("coset-check", "decompose sampled elements into subgroup times tau^n(nu)")
    c.add_argument("--height", type=int, required=True)
    c.add_argument("--count", type=int, default=500)
    c.add_argument("--seed", type=int, default=0)

    c = spec_cmd("structure", "free-product factor counts and constraints")
    c.add_argument("--render", metavar="PATH", help="write a stacked-bar figure")

    c = spec_cmd("independence", "designated generators, eliminations, short relations")
    c.add_argument("--max-len", type=int, default=8)

    c = sub.add_parser("graph", help="export the distant graph ball")
    c.add_argument("--height", type=int, required=True)
    c.add_argument("--format", choices=("dot", "adj"), default="dot")
    c.add_argument("--render", metavar="PATH", help="write a Farey arc figure")

    c = spec_cmd("iso-check", "compare Cayley adjacency with the distant graph")
    c.add_argument("--height", type=int, required=True)

    c = sub.add_parser("synthesize", help="emit a block spec realizing target factor counts")
    c.add_argument("--r2", type=int, required=True)
    c.add_argument("--r3", type=int, required=True)
    c.add_argument("--rinfp", type=int, required=True)
    c.add_argument("--rinfm", type=int, required=True)
    c.add_argument("--pad", type=int, default=1, help="case used to pad the sequence")
    c.add_argument("--blocks", type=int, required=True, help="total number of blocks")
    return p


_COMMANDS = {
    "validate": _cmd_validate,
    "generators": _cmd_generators,
    "neumann-check": _cmd_neumann_check,
    "coset-check": _cmd_coset_check,
    "structure": _cmd_structure,
    "independence": _cmd_independence,
    "graph": _cmd_graph,
    "iso-check": _cmd_iso_check,
    "synthesize": _cmd_synthesize,
}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else 0

    def out(line: str) -> None:
        print(line)

    try:
        return _COMMANDS[args.command](args, out)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
