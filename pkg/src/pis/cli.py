"""Command-line interface: ``pis <command> ...``.

Exit codes of ``pis check``: 0 deadlock-free, 1 deadlock witness found,
2 compositional check inapplicable, 3 budget exceeded / unknown,
4 invalid input.
"""

from __future__ import annotations

import argparse
import sys

from . import refine
from .bench import bench_backends, bench_scaling, scaling_csv
from .composition import BudgetExceeded
from .dot import emit_dot
from .equivalence import branching_bisimilar, hidden_behavior, is_minimal, is_tau_free, minimize
from .generators import generate_ex1, generate_star
from .system import PortRef, QueryError, validate
from .textfmt import ParseError, parse_system, read_system, render_protocol, render_system
from .topology import comm_graph
from .verifier import Outcome, check_oracle, check_theorem, format_trace

EXIT_OK, EXIT_WITNESS, EXIT_INAPPLICABLE, EXIT_UNKNOWN, EXIT_INVALID = range(5)


def _load(path: str, check: bool = True):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_system(text) if check else read_system(text)


def cmd_validate(args) -> int:
    system = _load(args.file, check=False)
    problems = validate(system, warnings=True)
    for v in problems:
        print(v)
    errors = [v for v in problems if v.severity == "error"]
    if not errors:
        print(f"{system.name}: valid")
    return EXIT_OK if not errors else EXIT_INVALID


def _print_verdict(label: str, verdict) -> None:
    print(f"{label}: {verdict.outcome.value}")
    for f in verdict.failures:
        line = f"  - {f}"
        if f.trace is not None:
            line += f"  trace: {format_trace(f.trace)}"
        print(line)
    if verdict.trace is not None:
        print(f"  witness: {format_trace(verdict.trace)}")
    for p in verdict.non_minimal_ports:
        print(f"  note: protocol of {p} is not minimal; checked its minimized form")


def cmd_check(args) -> int:
    system = _load(args.file)
    theorem = check_theorem(system)
    _print_verdict("theorem", theorem)
    if not args.oracle:
        return EXIT_OK if theorem.deadlock_free else EXIT_INAPPLICABLE
    try:
        oracle = check_oracle(system, args.budget)
    except BudgetExceeded as exc:
        print(f"oracle: unknown ({exc})")
        return EXIT_OK if theorem.deadlock_free else EXIT_UNKNOWN
    _print_verdict("oracle", oracle)
    if theorem.deadlock_free and oracle.outcome is Outcome.DEADLOCK_WITNESS:
        print("SOUNDNESS VIOLATION: theorem and oracle disagree", file=sys.stderr)
    if oracle.outcome is Outcome.DEADLOCK_WITNESS:
        return EXIT_WITNESS
    return EXIT_OK


def cmd_conformance(args) -> int:
    system = _load(args.file)
    print(f"{'port':<16} {'conform':<8} {'states':>6} {'min':>4} {'tau-free':<8} minimal")
    all_ok = True
    for p in system.port_refs:
        prot = system.protocols[p]
        m = minimize(prot)
        ok = branching_bisimilar(prot, hidden_behavior(system, p))
        all_ok &= ok
        print(f"{str(p):<16} {'yes' if ok else 'NO':<8} {len(prot.states):>6} {len(m.states):>4} "
              f"{'yes' if is_tau_free(m) else 'no':<8} {'yes' if is_minimal(prot) else 'no'}")
    return EXIT_OK if all_ok else EXIT_INAPPLICABLE


def cmd_graph(args) -> int:
    system = _load(args.file)
    graph = comm_graph(system)
    if args.dot:
        sys.stdout.write(emit_dot(graph, system.name))
    else:
        for u, v in graph.edges:
            print(f"{u} -- {v}")
    return EXIT_OK


def cmd_minimize(args) -> int:
    system = _load(args.file)
    p = PortRef.parse(args.port)
    system.check_port(p)
    sys.stdout.write(render_protocol(p, minimize(system.protocols[p])))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "ex1":
        system = generate_ex1()
    else:
        if args.n is None:
            raise QueryError("gen star needs <n>")
        system = generate_star(args.n)
    sys.stdout.write(render_system(system))
    return EXIT_OK


def _int_list(values) -> list[int]:
    out = []
    for v in values:
        out += [int(x) for x in v.split(",") if x]
    return out


def cmd_bench(args) -> int:
    if args.target == "star":
        sys.stdout.write(scaling_csv(bench_scaling(_int_list(args.n or ["100,200,400"]))))
    else:
        sizes = _int_list(args.n or ["50,100,200,400"])
        print("states,transitions," + ",".join(f"{b}_ms" for b in refine.BACKENDS) + ",agree")
        for row in bench_backends(sizes):
            times = ",".join(f"{row[f'{b}_ms']:.3f}" for b in refine.BACKENDS)
            print(f"{row['states']},{row['transitions']},{times},{row['agree']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pis", description="Deadlock verification for protocol interaction systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check well-formedness")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="decide deadlock-freedom")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="also explore the global behavior")
    p.add_argument("--budget", type=int, default=None, help="composite state budget of the oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("conformance", help="per-port conformance table")
    p.add_argument("file")
    p.set_defaults(func=cmd_conformance)

    p = sub.add_parser("graph", help="protocol communication graph")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("minimize", help="print a minimized port protocol")
    p.add_argument("file")
    p.add_argument("port", metavar="cid.pid")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("gen", help="emit an example system")
    p.add_argument("family", choices=["ex1", "star"])
    p.add_argument("n", nargs="?", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="scaling benchmarks")
    p.add_argument("target", choices=["star", "kernel"])
    p.add_argument("--n", nargs="+", help="sizes, space or comma separated")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"invalid input:\n{exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (QueryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
