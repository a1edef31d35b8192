"""Command-line interface: fuse, resolve, generate, bench.

Exit codes: 0 on success, 1 for I/O or parse problems, 2 when an output
violates its own contract (a resolved graph failing the cycle check).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from ._kernels import ENV_VAR as BACKEND_ENV_VAR
from .bench import ALGORITHMS, run_benchmark, write_bench_csv
from .fileio import (
    FusedCsvError,
    read_fused_csv,
    render_mass_table,
    write_fused_csv,
)
from .fusion import fuse_profile
from .graph import build_graph, check_dag2, incremental_dag2, naive_dag2, to_dot, to_edge_csv
from .profiles import ProfileParseError, load_profile
from .synth import StructureFamily, generate_degree_sweep, generate_structure, StructureSpec

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONTRACT = 2


class _Parser(argparse.ArgumentParser):
    """Argument errors are parse errors: report them with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="evipref", description=__doc__)
    parser.add_argument("--version", action="version", version=f"evipref {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_fuse = sub.add_parser("fuse", help="fuse a preference profile into per-pair masses")
    p_fuse.add_argument("profile", help="profile text file")
    p_fuse.add_argument("--strategy", required=True, choices=["A", "B"])
    p_fuse.add_argument("--out", required=True, help="fused-pair CSV output path")
    p_fuse.add_argument("--dot", help="DOT output path (default: --out with .dot suffix)")
    p_fuse.add_argument("--quiet", action="store_true", help="skip the stdout mass table")

    p_resolve = sub.add_parser("resolve", help="eliminate preference cycles from fused pairs")
    p_resolve.add_argument("fused", help="fused-pair CSV input path")
    p_resolve.add_argument("--algo", required=True, choices=list(ALGORITHMS))
    p_resolve.add_argument("--out", required=True, help="DOT output path")
    p_resolve.add_argument("--edges-csv", help="also write the edge list as CSV")
    p_resolve.add_argument("--backend", choices=["auto", "numba", "python"],
                           help=f"kernel backend (default: ${BACKEND_ENV_VAR} or auto)")

    p_gen = sub.add_parser("generate", help="emit a synthetic cycle structure as fused pairs")
    p_gen.add_argument("--family", required=True,
                       choices=[f.value for f in StructureFamily])
    p_gen.add_argument("--circles", required=True, type=int, help="number of circles")
    p_gen.add_argument("--seed", required=True, type=int)
    p_gen.add_argument("--out", required=True, help="fused-pair CSV output path")

    p_bench = sub.add_parser("bench", help="compare the two algorithms across topologies")
    p_bench.add_argument("--families", default=",".join(f.value for f in StructureFamily),
                         help="comma-separated families (default: all)")
    p_bench.add_argument("--reps", type=int, default=10, help="timed repetitions per cell")
    p_bench.add_argument("--seed", type=int, default=0, help="base seed for the sweep")
    p_bench.add_argument("--min-nodes", type=int, default=20)
    p_bench.add_argument("--max-nodes", type=int, default=380)
    p_bench.add_argument("--step", type=int, default=40)
    p_bench.add_argument("--seeds-per-size", type=int, default=10)
    p_bench.add_argument("--algos", default=",".join(ALGORITHMS),
                         help="comma-separated algorithms (default: both)")
    p_bench.add_argument("--backend", default="auto",
                         choices=["auto", "numba", "python", "both"])
    p_bench.add_argument("--out", required=True, help="benchmark CSV output path")
    p_bench.add_argument("--quiet", action="store_true")
    return parser


def _cmd_fuse(args) -> int:
    try:
        profile = load_profile(args.profile)
    except OSError as exc:
        print(f"evipref: cannot read profile: {exc}", file=sys.stderr)
        return EXIT_IO
    except ProfileParseError as exc:
        print(f"evipref: {exc}", file=sys.stderr)
        return EXIT_IO
    fused = fuse_profile(profile, args.strategy)
    labels = dict(enumerate(profile.alternatives))
    try:
        write_fused_csv(fused, args.out, labels)
        dot_path = args.dot or str(Path(args.out).with_suffix(".dot"))
        graph = build_graph(fused)
        Path(dot_path).write_text(to_dot(graph, labels))
    except OSError as exc:
        print(f"evipref: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if not args.quiet:
        print(render_mass_table(fused, labels), end="")
    return EXIT_OK


def _cmd_resolve(args) -> int:
    try:
        fused, labels = read_fused_csv(args.fused)
    except OSError as exc:
        print(f"evipref: cannot read fused pairs: {exc}", file=sys.stderr)
        return EXIT_IO
    except FusedCsvError as exc:
        print(f"evipref: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.algo == "naive":
        graph = naive_dag2(build_graph(fused), backend=args.backend)
    else:
        graph = incremental_dag2(fused, backend=args.backend)
    ok, offender = check_dag2(graph, backend=args.backend)
    try:
        Path(args.out).write_text(to_dot(graph, labels))
        if args.edges_csv:
            Path(args.edges_csv).write_text(to_edge_csv(graph, labels))
    except OSError as exc:
        print(f"evipref: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if graph.demoted:
        listed = " ".join(f"({labels[i]},{labels[j]})" for i, j in graph.demoted)
        print(f"demoted {len(graph.demoted)} pair(s): {listed}")
    else:
        print("no cycles found; graph unchanged")
    if not ok:
        nodes = ", ".join(labels[n] for n in offender.nodes)
        print(f"evipref: output still has a paradox component: {nodes}", file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_OK


def _cmd_generate(args) -> int:
    try:
        spec = StructureSpec(StructureFamily(args.family), args.circles, args.seed)
    except ValueError as exc:
        print(f"evipref: {exc}", file=sys.stderr)
        return EXIT_IO
    fused = generate_structure(spec)
    try:
        write_fused_csv(fused, args.out)
    except OSError as exc:
        print(f"evipref: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    nodes = sorted({n for fp in fused for n in fp.pair})
    print(f"wrote {len(fused)} pairs over {len(nodes)} nodes to {args.out}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        families = tuple(StructureFamily(f.strip()) for f in args.families.split(",") if f.strip())
        algorithms = tuple(a.strip() for a in args.algos.split(",") if a.strip())
        for a in algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
    except ValueError as exc:
        print(f"evipref: {exc}", file=sys.stderr)
        return EXIT_IO
    specs = generate_degree_sweep(
        base_seed=args.seed,
        families=families,
        min_nodes=args.min_nodes,
        max_nodes=args.max_nodes,
        step=args.step,
        seeds_per_size=args.seeds_per_size,
    )
    backends = ("numba", "python") if args.backend == "both" else (args.backend,)
    progress = None if args.quiet else lambda msg: print(msg, file=sys.stderr)
    records = run_benchmark(
        specs, reps=args.reps, algorithms=algorithms, backends=backends, progress=progress
    )
    try:
        write_bench_csv(records, args.out)
    except OSError as exc:
        print(f"evipref: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    failures = [r for r in records if r.status != "ok"]
    print(f"wrote {len(records)} records to {args.out}"
          + (f" ({len(failures)} failed)" if failures else ""))
    return EXIT_OK


_COMMANDS = {
    "fuse": _cmd_fuse,
    "resolve": _cmd_resolve,
    "generate": _cmd_generate,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
