"""Command line interface.

Subcommands:

* validate   parse a circuit file and report its shape
* member     decide one membership query
* eval       print every gate's set in the engine's representation
* bounds     print per-gate cutoffs and, where defined, the value bound
* transform  rewrite a circuit (vectorize, eliminate inter, push comp, expand)
* gen        build a circuit from a combinatorial instance (JSON)
* xcheck     run all applicable engines against each other
* bench      CSV timing rows over one or more circuits

Exit codes: 0 decided/ok, 1 xcheck disagreement, 2 parse or validation
error, 3 I/O error, 4 unsupported fragment, 5 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .bounds import CutoffMode, cutoff_profile, value_bound
from .circuit import (
    INF,
    Circuit,
    CircuitError,
    GateKind,
    fragment_of,
    parse_circuit,
    serialize_circuit,
)
from .engines import (
    DEFAULT_BUDGET,
    EngineBudget,
    applicable_engines,
    decide,
    eval_clamped_scalar,
    eval_clamped_vector,
    eval_exact,
    xcheck_circuit,
)
from .errors import BudgetExceeded, FragmentError
from .reductions import (
    CvpInstance,
    ExactCoverInstance,
    GapInstance,
    MajorityDagInstance,
    from_cvp,
    from_exact_cover,
    from_gap,
    from_majority_dag,
)
from .transforms import (
    demorgan_rewrite,
    eliminate_cap,
    expand_formula,
    to_vector_gcdfree,
    to_vector_primefact,
)

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3
EXIT_FRAGMENT = 4
EXIT_BUDGET = 5


def _load_circuit(path: str) -> Circuit:
    return parse_circuit(Path(path).read_text(encoding="utf-8"))


def _parse_query(text: str, c: Circuit):
    if not c.vector:
        b = int(text)
        if b < 0:
            raise ValueError("query must be a natural number")
        return b
    if text.strip().lower() == "inf":
        return INF
    parts = [int(p) for p in text.split(",")]
    if len(parts) != c.dim or any(p < 0 for p in parts):
        raise ValueError(f"query must be {c.dim} comma-separated naturals or 'inf'")
    return tuple(parts)


def _budget(args) -> EngineBudget:
    return EngineBudget(
        max_set_elems=args.max_set_elems,
        max_grid_cells=args.max_grid_cells,
        max_memo_entries=args.max_memo,
        max_formula_gates=getattr(args, "max_formula_gates", DEFAULT_BUDGET.max_formula_gates),
    )


def _add_budget_args(p: argparse.ArgumentParser):
    p.add_argument("--max-set-elems", type=int, default=DEFAULT_BUDGET.max_set_elems)
    p.add_argument("--max-grid-cells", type=int, default=DEFAULT_BUDGET.max_grid_cells)
    p.add_argument("--max-memo", type=int, default=DEFAULT_BUDGET.max_memo_entries)


def _fragment_str(c: Circuit) -> str:
    kinds = sorted(str(k) for k in fragment_of(c))
    return "{" + ", ".join(kinds) + "}"


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_validate(args) -> int:
    c = _load_circuit(args.circuit)
    shape = f"vector dim {c.dim}" if c.vector else "scalar"
    print(f"ok: {len(c)} gates, fragment {_fragment_str(c)}, {shape}")
    return EXIT_OK


def _cmd_member(args) -> int:
    c = _load_circuit(args.circuit)
    b = _parse_query(args.query, c)
    v = decide(c, b, engine=args.engine, cutoff_mode=args.cutoff_mode, budget=_budget(args))
    line = f"member={'true' if v.member else 'false'} engine={v.engine} cutoff={v.cutoff_mode}"
    print(line)
    if args.verbose:
        for k in sorted(v.stats):
            print(f"  {k}={v.stats[k]}")
        if v.witness is not None:
            pairs = ", ".join(f"{g}: {val}" for g, val in sorted(v.witness.items()))
            print(f"  witness={{{pairs}}}")
    return EXIT_OK


def _format_elems(elems, cap: int) -> str:
    shown = elems[:cap]
    body = ", ".join(
        "(" + ",".join(map(str, e)) + ")" if isinstance(e, tuple) else str(e)
        for e in shown
    )
    if len(elems) > cap:
        body += f", ... (+{len(elems) - cap} more)"
    return "{" + body + "}"


def _cmd_eval(args) -> int:
    c = _load_circuit(args.circuit)
    frag = fragment_of(c)
    budget = _budget(args)
    cap = args.upto
    if GateKind.COMP not in frag:
        sets = eval_exact(c, budget)
        for g in c.gates:
            elems = sorted(sets[g.gid], key=lambda e: (e is INF, e))
            print(f"gate {g.gid} {g.kind}: {_format_elems(elems, cap)}")
        print(f"output gate {c.output} (exact)")
        return EXIT_OK
    if c.vector:
        reps, _ = eval_clamped_vector(c, args.cutoff_mode, budget)
        for g in c.gates:
            r = reps[g.gid]
            cells = sorted(r.below)
            print(
                f"gate {g.gid} {g.kind}: {_format_elems(cells, cap)}"
                f" sat={'in' if r.sat else 'out'} inf={'in' if r.inf else 'out'}"
                f" cutoff={r.cutoff}"
            )
    else:
        reps, _ = eval_clamped_scalar(c, args.cutoff_mode, budget)
        for g in c.gates:
            r = reps[g.gid]
            elems = r.elements_upto(r.cutoff - 1)
            print(
                f"gate {g.gid} {g.kind}: {_format_elems(elems, cap)}"
                f" tail={'in' if r.tail else 'out'} cutoff={r.cutoff}"
            )
    print(f"output gate {c.output} (clamped, {args.cutoff_mode} cutoffs)")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    c = _load_circuit(args.circuit)
    modes = ["certified", "structural"] if args.mode == "both" else [args.mode]
    for mode in modes:
        try:
            prof = cutoff_profile(c, mode)
        except FragmentError as e:
            print(f"# {mode} cutoffs: {e}")
            continue
        print(f"# {mode} cutoffs")
        for g in c.gates:
            n = prof[g.gid]
            shown = f"2^{(n - 1).bit_length()}+1" if n > (1 << 64) else str(n)
            print(f"gate {g.gid} {g.kind} cutoff={shown}")
    if not c.vector and GateKind.COMP not in fragment_of(c):
        vb = value_bound(c)
        print(f"value-bound 2^{vb.exponent}")
    return EXIT_OK


def _cmd_transform(args) -> int:
    c = _load_circuit(args.circuit)
    lines = []
    if args.to in ("gcdfree", "primefact"):
        if args.query is None:
            raise ValueError(f"--query is required for --to {args.to}")
        b = _parse_query(args.query, c)
        fn = to_vector_gcdfree if args.to == "gcdfree" else to_vector_primefact
        vc, q, emap = fn(c, b)
        base = ",".join(map(str, emap.base))
        lines.append(f"# transform {args.to} base={base}")
        if emap.kind == "prime-factors":
            lines.append("# last coordinate collects primes outside the base")
        qtext = "inf" if q is INF else ",".join(map(str, q))
        lines.append(f"# query {qtext}")
        out = vc
    elif args.to == "cap-elim":
        out = eliminate_cap(c)
        lines.append("# transform cap-elim")
    elif args.to == "demorgan":
        out = demorgan_rewrite(c)
        lines.append("# transform demorgan")
    else:  # formula
        out = expand_formula(c, max_gates=args.max_formula_gates)
        lines.append("# transform formula")
    text = "".join(line + "\n" for line in lines) + serialize_circuit(out)
    _write_out(text, args.output)
    return EXIT_OK


def _cmd_gen(args) -> int:
    payload = json.loads(Path(args.instance).read_text(encoding="utf-8"))
    if args.kind == "exact-cover":
        inst = ExactCoverInstance(
            universe=tuple(payload["universe"]), sets=tuple(tuple(s) for s in payload["sets"])
        )
        red = from_exact_cover(inst)
    elif args.kind == "gap":
        inst = GapInstance(
            edges=tuple((u, v) for u, v in payload["edges"]),
            s=payload["s"],
            t=payload["t"],
            nodes=tuple(payload.get("nodes", ())),
        )
        red = from_gap(inst)
    elif args.kind == "cvp":
        inst = CvpInstance(
            gates=tuple(tuple(row) for row in payload["gates"]),
            output=payload["output"],
            assignment=dict(payload.get("assignment", {})),
        )
        red = from_cvp(inst)
    else:  # majority
        inst = MajorityDagInstance(
            root=payload["root"],
            children={k: tuple(v) for k, v in payload["children"].items()},
            labels=dict(payload["labels"]),
        )
        red = from_majority_dag(inst)
    lines = [f"# reduction {args.kind}", f"# note {red.note}", f"# query {red.query}"]
    if red.negate:
        lines.append("# negated-verdict")
    text = "".join(line + "\n" for line in lines) + serialize_circuit(red.circuit)
    _write_out(text, args.output)
    return EXIT_OK


def _cmd_xcheck(args) -> int:
    c = _load_circuit(args.circuit)
    engines = applicable_engines(c)
    problems = xcheck_circuit(c, max_b=args.max_b, cutoff_mode=args.cutoff_mode, budget=_budget(args))
    if problems:
        for p in problems:
            print(f"DISAGREE {p}")
        print(f"{len(problems)} disagreement(s) across engines: {', '.join(engines)}")
        return EXIT_DISAGREE
    print(f"agree: engines {', '.join(engines)} on {args.circuit}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    budget = _budget(args)
    queries = args.query or ["0", "1", "2"]
    print("circuit,b,engine,member,micros,memo_entries")
    for path in args.circuits:
        c = _load_circuit(path)
        for qtext in queries:
            b = _parse_query(qtext, c)
            t0 = time.perf_counter()
            v = decide(c, b, engine=args.engine, cutoff_mode=args.cutoff_mode, budget=budget)
            micros = 0 if args.deterministic else int((time.perf_counter() - t0) * 1e6)
            memo = v.stats.get("memo_entries", 0)
            qcol = "inf" if b is INF else (",".join(map(str, b)) if isinstance(b, tuple) else b)
            print(f"{path},{qcol},{v.engine},{str(v.member).lower()},{micros},{memo}")
    return EXIT_OK


def _write_out(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# parser wiring

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="setcircuits",
        description="membership queries on arithmetic circuits over sets of naturals",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a circuit file")
    p.add_argument("circuit")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("member", help="decide b in I(C)")
    p.add_argument("circuit")
    p.add_argument("query", help="natural number; for vector circuits 'c1,...,cm' or 'inf'")
    p.add_argument("--engine", default="auto")
    p.add_argument("--cutoff-mode", default="structural", choices=["structural", "certified"])
    p.add_argument("--verbose", action="store_true")
    _add_budget_args(p)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("eval", help="print each gate's set")
    p.add_argument("circuit")
    p.add_argument("--upto", type=int, default=32, help="list at most this many elements per gate")
    p.add_argument("--cutoff-mode", default="structural", choices=["structural", "certified"])
    _add_budget_args(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bounds", help="print per-gate cutoffs and value bounds")
    p.add_argument("circuit")
    p.add_argument("--mode", default="both", choices=["certified", "structural", "both"])
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("transform", help="rewrite a circuit")
    p.add_argument("circuit")
    p.add_argument(
        "--to",
        required=True,
        choices=["gcdfree", "primefact", "cap-elim", "demorgan", "formula"],
    )
    p.add_argument("--query", help="membership query to carry through vectorizing transforms")
    p.add_argument("--max-formula-gates", type=int, default=DEFAULT_BUDGET.max_formula_gates)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("gen", help="build a circuit from a JSON instance")
    p.add_argument("kind", choices=["exact-cover", "gap", "cvp", "majority"])
    p.add_argument("instance", help="path to the instance JSON")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("xcheck", help="cross-check every applicable engine")
    p.add_argument("circuit")
    p.add_argument("--max-b", type=int, default=24)
    p.add_argument("--cutoff-mode", default="structural", choices=["structural", "certified"])
    _add_budget_args(p)
    p.set_defaults(func=_cmd_xcheck)

    p = sub.add_parser("bench", help="CSV timing rows")
    p.add_argument("circuits", nargs="+")
    p.add_argument("--query", action="append", help="repeatable; default 0 1 2")
    p.add_argument("--engine", default="auto")
    p.add_argument("--cutoff-mode", default="structural", choices=["structural", "certified"])
    p.add_argument("--deterministic", action="store_true", help="zero the micros column")
    _add_budget_args(p)
    p.set_defaults(func=_cmd_bench)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CircuitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FragmentError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FRAGMENT
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (json.JSONDecodeError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
