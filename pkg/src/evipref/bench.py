"""Runtime benchmark for the two cycle-elimination algorithms.

Structures are generated (and flattened to kernel arrays) outside the
timed region; a timed sample covers exactly one algorithm run. For the
incremental algorithm that includes its initialization sort, which is
part of the algorithm proper. Timing uses the monotonic performance
counter, and each record reports how many samples its mean is built on.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._kernels import KernelSet, get_kernels, warmup
from .fusion import RelationKind
from .graph import _pack_edges, RelationEdge
from .synth import StructureSpec, generate_structure, node_count

ALGORITHMS = ("naive", "incremental")

BENCH_COLUMNS = [
    "family",
    "nodes",
    "circles",
    "seed",
    "algorithm",
    "backend",
    "samples",
    "mean_time_s",
    "demoted_edges",
    "status",
]


@dataclass(frozen=True)
class BenchRecord:
    family: str
    nodes: int
    circles: int
    seed: int
    algorithm: str
    backend: str
    samples: int
    mean_time_s: float
    demoted_edges: int
    status: str = "ok"


@dataclass(frozen=True)
class PackedInstance:
    """A generated structure flattened to kernel arrays."""

    spec: StructureSpec
    n_nodes: int
    ei: np.ndarray
    ej: np.ndarray
    kind: np.ndarray
    d: np.ndarray


def pack_instance(spec: StructureSpec) -> PackedInstance:
    fused = generate_structure(spec)
    edges = [
        RelationEdge(pair=fp.pair, kind=fp.decided, mass=fp.mass, d_incomp=fp.d_incomp)
        for fp in fused
        if fp.decided != RelationKind.INCOMPARABILITY
    ]
    nodes = sorted({n for fp in fused for n in fp.pair})
    ei, ej, kind, d = _pack_edges(nodes, edges)
    return PackedInstance(spec, len(nodes), ei, ej, kind, d)


def run_naive(inst: PackedInstance, kernels: KernelSet) -> tuple[float, int]:
    t0 = time.perf_counter()
    _, n_demoted = kernels.naive_demote(inst.n_nodes, inst.ei, inst.ej, inst.kind, inst.d)
    elapsed = time.perf_counter() - t0
    return elapsed, int(n_demoted)


def run_incremental(inst: PackedInstance, kernels: KernelSet) -> tuple[float, int]:
    t0 = time.perf_counter()
    # ascending (d, i, j), then popped back to front: most confident first
    order = np.lexsort((inst.ej, inst.ei, inst.d))[::-1].astype(np.int64)
    _, _, n_demoted = kernels.incremental_admit(
        inst.n_nodes, order, inst.ei, inst.ej, inst.kind
    )
    elapsed = time.perf_counter() - t0
    return elapsed, int(n_demoted)


_RUNNERS: dict[str, Callable[[PackedInstance, KernelSet], tuple[float, int]]] = {
    "naive": run_naive,
    "incremental": run_incremental,
}


def run_benchmark(
    specs: Sequence[StructureSpec],
    reps: int = 10,
    algorithms: Sequence[str] = ALGORITHMS,
    backends: Sequence[str] | None = None,
    progress: Callable[[str], None] | None = None,
) -> list[BenchRecord]:
    """Time every (spec, algorithm, backend) cell; mean over ``reps`` runs."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    for algo in algorithms:
        if algo not in _RUNNERS:
            raise ValueError(f"unknown algorithm {algo!r}")
    kernel_sets = [get_kernels(b) for b in backends] if backends else [get_kernels()]
    for ks in kernel_sets:
        warmup(ks)

    records: list[BenchRecord] = []
    for spec in specs:
        try:
            inst = pack_instance(spec)
        except Exception as exc:  # record the failure, keep sweeping
            for ks in kernel_sets:
                for algo in algorithms:
                    records.append(
                        BenchRecord(
                            spec.family.value,
                            node_count(spec.family, spec.n_circles),
                            spec.n_circles,
                            spec.seed,
                            algo,
                            ks.name,
                            0,
                            math.nan,
                            -1,
                            status=f"generation failed: {exc}",
                        )
                    )
            continue
        for ks in kernel_sets:
            for algo in algorithms:
                runner = _RUNNERS[algo]
                times = []
                demoted = -1
                for _ in range(reps):
                    elapsed, demoted = runner(inst, ks)
                    times.append(elapsed)
                records.append(
                    BenchRecord(
                        spec.family.value,
                        inst.n_nodes,
                        spec.n_circles,
                        spec.seed,
                        algo,
                        ks.name,
                        reps,
                        sum(times) / reps,
                        demoted,
                    )
                )
                if progress:
                    progress(
                        f"{spec.family.value} nodes={inst.n_nodes} seed={spec.seed} "
                        f"{algo}/{ks.name}: {sum(times) / reps:.6f}s"
                    )
    return records


def write_bench_csv(records: Sequence[BenchRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.family,
                    r.nodes,
                    r.circles,
                    r.seed,
                    r.algorithm,
                    r.backend,
                    r.samples,
                    f"{r.mean_time_s:.9f}",
                    r.demoted_edges,
                    r.status,
                ]
            )


def mean_times_by_size(
    records: Sequence[BenchRecord], family: str, algorithm: str
) -> dict[int, float]:
    """Mean wall time per node count, averaged over seeds, for one cell."""
    sums: dict[int, list[float]] = {}
    for r in records:
        if r.family == family and r.algorithm == algorithm and r.status == "ok":
            sums.setdefault(r.nodes, []).append(r.mean_time_s)
    return {nodes: sum(ts) / len(ts) for nodes, ts in sorted(sums.items())}
