"""Array kernels for cycle detection and elimination.

The two paradox-avoidance algorithms spend essentially all their time in
tight graph loops, so those loops live here as self-contained functions
over plain int64/float64 arrays. Each function is written once and run
either as-is (pure Python over numpy arrays) or JIT-compiled by numba.

Backend selection: the ``EVIPREF_BACKEND`` environment variable may be
set to ``numba``, ``python``, or ``auto`` (default). ``auto`` uses numba
when it is importable and falls back to Python otherwise. Callers can
also override per call via the ``backend=`` argument on the public graph
functions, which is how the benchmark compares the two.

Edge encoding shared by every kernel: an edge list over nodes 0..n-1
where edge e has endpoints ``ei[e] < ej[e]`` and a kind code. Strict
preference contributes the arc i->j, inverse preference the arc j->i,
and indifference contributes both arcs as one removable unit.

Two different cycle notions are in play, on purpose. Component-based
detection (scc_labels, the sweep inside naive_demote) connects nodes
through strict arcs only: indifference 2-cycles are tolerated by
definition, so they must not be able to strongly-connect otherwise
unrelated cycles (a chain of triangles tied together by indifference
units stays one paradox component per triangle). The incremental gate,
by contrast, walks every arc including both arcs of an indifference
unit, because a path through an indifference is still a path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

ENV_VAR = "EVIPREF_BACKEND"

KIND_STRICT = 0
KIND_INVERSE = 1
KIND_INDIFFERENCE = 2


def _scc_labels(n, indptr, targets):
    """Tarjan strongly-connected components, iteratively.

    Returns (comp, n_comp): comp[v] is the component id of node v.
    Ids follow stack-pop order; callers wanting a canonical order must
    reorder by smallest contained node.
    """
    index = np.full(n, -1, np.int64)
    low = np.zeros(n, np.int64)
    on_stack = np.zeros(n, np.uint8)
    scc_stack = np.empty(n, np.int64)
    work_node = np.empty(n, np.int64)
    work_edge = np.empty(n, np.int64)
    comp = np.full(n, -1, np.int64)

    counter = 0
    n_comp = 0
    scc_top = -1
    for root in range(n):
        if index[root] != -1:
            continue
        top = 0
        work_node[0] = root
        work_edge[0] = indptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        scc_top += 1
        scc_stack[scc_top] = root
        on_stack[root] = 1
        while top >= 0:
            v = work_node[top]
            e = work_edge[top]
            if e < indptr[v + 1]:
                work_edge[top] = e + 1
                w = targets[e]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    scc_top += 1
                    scc_stack[scc_top] = w
                    on_stack[w] = 1
                    top += 1
                    work_node[top] = w
                    work_edge[top] = indptr[w]
                elif on_stack[w] == 1:
                    if index[w] < low[v]:
                        low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        w = scc_stack[scc_top]
                        scc_top -= 1
                        on_stack[w] = 0
                        comp[w] = n_comp
                        if w == v:
                            break
                    n_comp += 1
                top -= 1
                if top >= 0:
                    p = work_node[top]
                    if low[v] < low[p]:
                        low[p] = low[v]
    return comp, n_comp


def _naive_demote(n, ei, ej, kind, d):
    """Repeated SCC sweep: drop the weakest edge of every paradox component.

    Components are computed over strict arcs only; loops until none of
    size >= 3 remains. Within a component the removed edge minimizes
    (d, i, j) over all edges with both endpoints inside, indifference
    units losing both arcs at once. Returns (demoted, n_demoted) with
    edge indices in removal order.
    """
    n_edges = ei.shape[0]
    active = np.ones(n_edges, np.uint8)
    demoted = np.empty(n_edges, np.int64)
    n_demoted = 0

    max_arcs = 2 * n_edges
    arc_src = np.empty(max_arcs, np.int64)
    arc_dst = np.empty(max_arcs, np.int64)
    indptr = np.empty(n + 1, np.int64)
    targets = np.empty(max_arcs, np.int64)
    fill = np.empty(n, np.int64)

    index = np.empty(n, np.int64)
    low = np.empty(n, np.int64)
    on_stack = np.empty(n, np.uint8)
    scc_stack = np.empty(n, np.int64)
    work_node = np.empty(n, np.int64)
    work_edge = np.empty(n, np.int64)
    comp = np.empty(n, np.int64)
    comp_size = np.empty(n, np.int64)
    comp_done = np.empty(n, np.uint8)
    comp_best = np.empty(n, np.int64)

    while True:
        # connectivity arcs of the surviving edges; indifference units do
        # not strongly-connect (their 2-cycles are tolerated)
        n_arcs = 0
        for e in range(n_edges):
            if active[e] == 0:
                continue
            k = kind[e]
            if k == KIND_STRICT:
                arc_src[n_arcs] = ei[e]
                arc_dst[n_arcs] = ej[e]
                n_arcs += 1
            elif k == KIND_INVERSE:
                arc_src[n_arcs] = ej[e]
                arc_dst[n_arcs] = ei[e]
                n_arcs += 1
        # CSR by source via counting sort
        for v in range(n + 1):
            indptr[v] = 0
        for a in range(n_arcs):
            indptr[arc_src[a] + 1] += 1
        for v in range(n):
            indptr[v + 1] += indptr[v]
        for v in range(n):
            fill[v] = indptr[v]
        for a in range(n_arcs):
            s = arc_src[a]
            targets[fill[s]] = arc_dst[a]
            fill[s] += 1

        # Tarjan, iteratively
        for v in range(n):
            index[v] = -1
            on_stack[v] = 0
        counter = 0
        n_comp = 0
        scc_top = -1
        for root in range(n):
            if index[root] != -1:
                continue
            top = 0
            work_node[0] = root
            work_edge[0] = indptr[root]
            index[root] = counter
            low[root] = counter
            counter += 1
            scc_top += 1
            scc_stack[scc_top] = root
            on_stack[root] = 1
            while top >= 0:
                v = work_node[top]
                e = work_edge[top]
                if e < indptr[v + 1]:
                    work_edge[top] = e + 1
                    w = targets[e]
                    if index[w] == -1:
                        index[w] = counter
                        low[w] = counter
                        counter += 1
                        scc_top += 1
                        scc_stack[scc_top] = w
                        on_stack[w] = 1
                        top += 1
                        work_node[top] = w
                        work_edge[top] = indptr[w]
                    elif on_stack[w] == 1:
                        if index[w] < low[v]:
                            low[v] = index[w]
                else:
                    if low[v] == index[v]:
                        while True:
                            w = scc_stack[scc_top]
                            scc_top -= 1
                            on_stack[w] = 0
                            comp[w] = n_comp
                            if w == v:
                                break
                        n_comp += 1
                    top -= 1
                    if top >= 0:
                        p = work_node[top]
                        if low[v] < low[p]:
                            low[p] = low[v]

        for c in range(n_comp):
            comp_size[c] = 0
            comp_done[c] = 0
            comp_best[c] = -1
        for v in range(n):
            comp_size[comp[v]] += 1

        # one pass over the edges: weakest (d, i, j) edge per component
        for e in range(n_edges):
            if active[e] == 0:
                continue
            c = comp[ei[e]]
            if c != comp[ej[e]] or comp_size[c] < 3:
                continue
            best = comp_best[c]
            if best == -1:
                better = True
            elif d[e] < d[best]:
                better = True
            elif d[e] == d[best] and (
                ei[e] < ei[best] or (ei[e] == ei[best] and ej[e] < ej[best])
            ):
                better = True
            else:
                better = False
            if better:
                comp_best[c] = e

        removed_any = False
        # visiting nodes in ascending order yields components ordered by
        # their smallest member
        for v in range(n):
            c = comp[v]
            if comp_size[c] < 3 or comp_done[c] == 1:
                continue
            comp_done[c] = 1
            best = comp_best[c]
            if best != -1:
                active[best] = 0
                demoted[n_demoted] = best
                n_demoted += 1
                removed_any = True
        if not removed_any:
            break
    return demoted, n_demoted


def _incremental_admit(n, order, ei, ej, kind):
    """Insert edges most-confident-first, gating each with a DFS.

    ``order`` lists edge indices in processing order. An edge is admitted
    only if adding its arc(s) cannot close a cycle of length >= 3, i.e.
    no path of two or more arcs already leads from the arc head back to
    the arc tail (both directions are probed for indifference). Rejected
    edges are demoted. Returns (admitted, demoted, n_demoted).
    """
    n_edges = ei.shape[0]
    admitted = np.zeros(n_edges, np.uint8)
    demoted = np.empty(n_edges, np.int64)
    n_demoted = 0

    cap = 2 * n_edges + 1
    head = np.full(n, -1, np.int64)
    nxt = np.empty(cap, np.int64)
    dst = np.empty(cap, np.int64)
    n_arcs = 0

    visited = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    stamp = 0

    for t in range(order.shape[0]):
        e = order[t]
        i = ei[e]
        j = ej[e]
        k = kind[e]
        n_probes = 2 if k == KIND_INDIFFERENCE else 1
        blocked = False
        for p in range(n_probes):
            if blocked:
                break
            if k == KIND_STRICT:
                start, target = j, i
            elif k == KIND_INVERSE:
                start, target = i, j
            elif p == 0:
                start, target = i, j
            else:
                start, target = j, i
            # look for a path of length >= 2: seed the search with the
            # successors of `start` other than `target` (a lone start->target
            # arc would be the tolerated 2-cycle, not a paradox)
            stamp += 1
            visited[start] = stamp
            sp = 0
            a = head[start]
            while a != -1:
                w = dst[a]
                if w != target and visited[w] != stamp:
                    visited[w] = stamp
                    stack[sp] = w
                    sp += 1
                a = nxt[a]
            found = False
            while sp > 0:
                v = stack[sp - 1]
                sp -= 1
                a = head[v]
                while a != -1:
                    w = dst[a]
                    if w == target:
                        found = True
                        break
                    if visited[w] != stamp:
                        visited[w] = stamp
                        stack[sp] = w
                        sp += 1
                    a = nxt[a]
                if found:
                    break
            if found:
                blocked = True
        if blocked:
            demoted[n_demoted] = e
            n_demoted += 1
        else:
            admitted[e] = 1
            if k == KIND_STRICT or k == KIND_INDIFFERENCE:
                dst[n_arcs] = j
                nxt[n_arcs] = head[i]
                head[i] = n_arcs
                n_arcs += 1
            if k == KIND_INVERSE or k == KIND_INDIFFERENCE:
                dst[n_arcs] = i
                nxt[n_arcs] = head[j]
                head[j] = n_arcs
                n_arcs += 1
    return admitted, demoted, n_demoted


@dataclass(frozen=True)
class KernelSet:
    name: str
    scc_labels: Callable
    naive_demote: Callable
    incremental_admit: Callable


_PYTHON_KERNELS = KernelSet("python", _scc_labels, _naive_demote, _incremental_admit)

_numba_kernels: Optional[KernelSet] = None
_numba_failed = False


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _load_numba_kernels() -> Optional[KernelSet]:
    global _numba_kernels, _numba_failed
    if _numba_kernels is not None or _numba_failed:
        return _numba_kernels
    try:
        import numba
    except ImportError:
        _numba_failed = True
        return None
    jit = numba.njit(cache=True)
    _numba_kernels = KernelSet(
        "numba",
        jit(_scc_labels),
        jit(_naive_demote),
        jit(_incremental_admit),
    )
    return _numba_kernels


def get_kernels(backend: str | None = None) -> KernelSet:
    """Resolve a kernel backend: explicit argument, else env var, else auto."""
    requested = backend if backend is not None else os.environ.get(ENV_VAR, "auto")
    requested = requested.lower()
    if requested == "python":
        return _PYTHON_KERNELS
    if requested == "numba":
        kernels = _load_numba_kernels()
        if kernels is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        return kernels
    if requested == "auto":
        kernels = _load_numba_kernels()
        return kernels if kernels is not None else _PYTHON_KERNELS
    raise ValueError(f"unknown backend {requested!r}, expected numba/python/auto")


def warmup(kernels: KernelSet) -> None:
    """Run each kernel on a toy instance so JIT compilation happens here,
    not inside a timed region."""
    n = 3
    ei = np.array([0, 1, 0], np.int64)
    ej = np.array([1, 2, 2], np.int64)
    kind = np.array([KIND_STRICT, KIND_STRICT, KIND_INVERSE], np.int64)
    d = np.array([0.5, 0.6, 0.4], np.float64)
    indptr = np.array([0, 1, 2, 3], np.int64)
    targets = np.array([1, 2, 0], np.int64)
    kernels.scc_labels(n, indptr, targets)
    kernels.naive_demote(n, ei, ej, kind, d)
    kernels.incremental_admit(n, np.array([1, 0, 2], np.int64), ei, ej, kind)
