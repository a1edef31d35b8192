"""Seeded generators for the three benchmark cycle topologies.

Families (node ids are 1-based):

* nested: one base triangle 1->3->2->1 plus chords 1->k and k->2 for
  k = 4..N+2, so all N circles run through nodes 1 and 2.
* entangled: overlapping triangles on a chain; circle t sits on nodes
  {t, t+1, t+2} with arcs t->t+1, t+1->t+2 and the return arc t+2->t.
* nonnested: N disjoint triangles on {3t-2, 3t-1, 3t}, consecutive
  triangles tied together by an indifference unit between 3t and 3t+1.

Every structural relation gets a random mass: four uniform degrees fed
through the single-agent fusion path, redrawn until the decided relation
matches the drawn arrow, so masses are random but never contradict the
topology. Given the same spec the output is bit-for-bit identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .evidence import jousselme_distance
from .fusion import (
    INCOMPARABILITY_MASS,
    FusedPair,
    Pair,
    RelationKind,
    decide,
    single_agent_mass,
)

_MAX_REJECTS = 100_000


class StructureFamily(str, Enum):
    NESTED = "nested"
    ENTANGLED = "entangled"
    NONNESTED = "nonnested"


@dataclass(frozen=True)
class StructureSpec:
    family: StructureFamily
    n_circles: int
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", StructureFamily(self.family))
        if self.n_circles < 1:
            raise ValueError(f"need at least one circle, got {self.n_circles}")


def node_count(family: StructureFamily, n_circles: int) -> int:
    family = StructureFamily(family)
    if family in (StructureFamily.NESTED, StructureFamily.ENTANGLED):
        return n_circles + 2
    return 3 * n_circles


def circles_for_nodes(family: StructureFamily, n_nodes: int) -> int:
    """Circle count whose realized structure is closest to n_nodes nodes."""
    family = StructureFamily(family)
    if family in (StructureFamily.NESTED, StructureFamily.ENTANGLED):
        return max(1, n_nodes - 2)
    return max(1, round(n_nodes / 3))


def structure_relations(spec: StructureSpec) -> list[tuple[Pair, RelationKind]]:
    """The family's arrow layout as (pair, kind), lexicographic by pair."""
    n = spec.n_circles
    rel: list[tuple[Pair, RelationKind]] = []
    if spec.family == StructureFamily.NESTED:
        rel.append(((1, 2), RelationKind.INVERSE_PREFERENCE))  # arc 2->1
        rel.append(((1, 3), RelationKind.STRICT_PREFERENCE))
        rel.append(((2, 3), RelationKind.INVERSE_PREFERENCE))  # arc 3->2
        for k in range(4, n + 3):
            rel.append(((1, k), RelationKind.STRICT_PREFERENCE))
            rel.append(((2, k), RelationKind.INVERSE_PREFERENCE))
    elif spec.family == StructureFamily.ENTANGLED:
        for t in range(1, n + 2):
            rel.append(((t, t + 1), RelationKind.STRICT_PREFERENCE))
        for t in range(1, n + 1):
            rel.append(((t, t + 2), RelationKind.INVERSE_PREFERENCE))  # arc t+2->t
    else:
        for t in range(1, n + 1):
            a, b, c = 3 * t - 2, 3 * t - 1, 3 * t
            rel.append(((a, b), RelationKind.STRICT_PREFERENCE))
            rel.append(((b, c), RelationKind.STRICT_PREFERENCE))
            rel.append(((a, c), RelationKind.INVERSE_PREFERENCE))  # arc c->a
            if t < n:
                rel.append(((c, c + 1), RelationKind.INDIFFERENCE))
    rel.sort(key=lambda item: item[0])
    return rel


def generate_structure(spec: StructureSpec) -> list[FusedPair]:
    """Structural relations annotated with structure-consistent random masses."""
    rng = np.random.default_rng(spec.seed)
    out: list[FusedPair] = []
    for pair, kind in structure_relations(spec):
        for _ in range(_MAX_REJECTS):
            mass = single_agent_mass(rng.random(4))
            if decide(mass) == kind:
                break
        else:
            raise RuntimeError(f"rejection sampling stalled for pair {pair}")
        out.append(
            FusedPair(
                pair=pair,
                mass=mass,
                decided=kind,
                d_incomp=jousselme_distance(mass, INCOMPARABILITY_MASS),
            )
        )
    return out


def sweep_node_counts(min_nodes: int = 20, max_nodes: int = 380, step: int = 40) -> list[int]:
    return list(range(min_nodes, max_nodes + 1, step))


def sweep_seed(base_seed: int, family: StructureFamily, n_nodes: int, rep: int) -> int:
    """Stable per-cell seed; pure arithmetic so sweeps replay exactly."""
    family_idx = list(StructureFamily).index(StructureFamily(family))
    return ((base_seed * 3 + family_idx) * 100_003 + n_nodes) * 1_009 + rep


def generate_degree_sweep(
    base_seed: int = 0,
    families: tuple[StructureFamily, ...] = tuple(StructureFamily),
    min_nodes: int = 20,
    max_nodes: int = 380,
    step: int = 40,
    seeds_per_size: int = 10,
) -> list[StructureSpec]:
    """Benchmark grid: per family, 10 node counts, several seeds each."""
    specs: list[StructureSpec] = []
    for family in families:
        family = StructureFamily(family)
        for n_nodes in sweep_node_counts(min_nodes, max_nodes, step):
            n_circles = circles_for_nodes(family, n_nodes)
            for rep in range(seeds_per_size):
                specs.append(
                    StructureSpec(
                        family=family,
                        n_circles=n_circles,
                        seed=sweep_seed(base_seed, family, n_nodes, rep),
                    )
                )
    return specs
