"""Belief-function arithmetic over small finite frames.

A frame holds an ordered tuple of atom labels. Subsets of the frame are
plain integers interpreted as bitmasks over that ordering: bit ``k`` set
means atom ``k`` belongs to the subset, so index 0 is the empty set,
``2**n - 1`` is the whole frame, and the intersection of two subsets is
the bitwise AND of their indices. Mass functions are dense float vectors
of length ``2**n`` indexed that way.

The combination rule implemented here is the unnormalized conjunctive
rule: conflict accumulates on the empty set instead of being rescaled
away, so the empty-set entry of a combined mass is meaningful and is
never dropped.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

MASS_TOL = 1e-9

MAX_ATOMS = 16

# Largest frame size for which the full 2^n x 2^n Jaccard matrix is
# materialized; beyond this the distance falls back to a sparse loop.
_DENSE_JACCARD_MAX_ATOMS = 10


class FrameMismatchError(ValueError):
    """Raised when an operation mixes mass functions on different frames."""


class TotalConflictError(ValueError):
    """Raised when all mass sits on the empty set and a transform needs more."""


@dataclass(frozen=True)
class Frame:
    """Ordered frame of discernment with canonical bitmask subset indexing."""

    atoms: tuple[str, ...]

    def __post_init__(self) -> None:
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not (2 <= len(atoms) <= MAX_ATOMS):
            raise ValueError(f"frame must have 2..{MAX_ATOMS} atoms, got {len(atoms)}")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atom labels must be distinct")

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def n_subsets(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full(self) -> int:
        """Bitmask of the whole frame."""
        return (1 << len(self.atoms)) - 1

    def atom_index(self, atom: int | str) -> int:
        if isinstance(atom, str):
            return self.atoms.index(atom)
        if not 0 <= atom < len(self.atoms):
            raise ValueError(f"atom index {atom} out of range")
        return atom

    def singleton(self, atom: int | str) -> int:
        return 1 << self.atom_index(atom)

    def subset(self, atoms: Iterable[int | str]) -> int:
        mask = 0
        for a in atoms:
            mask |= self.singleton(a)
        return mask

    def members(self, subset: int) -> tuple[str, ...]:
        """Atom labels of a bitmask subset."""
        self._check_subset(subset)
        return tuple(a for k, a in enumerate(self.atoms) if subset >> k & 1)

    def subset_size(self, subset: int) -> int:
        self._check_subset(subset)
        return subset.bit_count()

    def _check_subset(self, subset: int) -> None:
        if not 0 <= subset <= self.full:
            raise ValueError(f"subset index {subset} out of range for {self.n_atoms} atoms")


@dataclass(frozen=True, eq=False)
class MassFunction:
    """Allocation of unit belief over the power set of a frame.

    ``masses[k]`` is the mass of the subset with bitmask ``k``. Entries are
    nonnegative and sum to 1; the empty set may carry mass (conflict from
    the unnormalized conjunctive rule). Instances are immutable; the array
    is copied on construction and marked read-only.
    """

    frame: Frame
    masses: np.ndarray
    simple_support: bool = False
    tol: InitVar[float] = MASS_TOL

    def __post_init__(self, tol: float) -> None:
        arr = np.asarray(self.masses, dtype=np.float64).copy()
        if arr.shape != (self.frame.n_subsets,):
            raise ValueError(
                f"expected {self.frame.n_subsets} mass entries, got shape {arr.shape}"
            )
        if arr.min() < -tol or arr.max() > 1.0 + tol:
            raise ValueError("mass entries must lie in [0, 1]")
        total = float(arr.sum())
        if abs(total - 1.0) > max(tol, MASS_TOL * self.frame.n_subsets):
            raise ValueError(f"masses must sum to 1, got {total!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "masses", arr)

    def mass(self, subset: int) -> float:
        self.frame._check_subset(subset)
        return float(self.masses[subset])

    def focal(self) -> Iterator[tuple[int, float]]:
        """Yield (subset, mass) for every subset with nonzero mass."""
        for k in np.flatnonzero(self.masses):
            yield int(k), float(self.masses[k])

    def conflict(self) -> float:
        """Mass stranded on the empty set."""
        return float(self.masses[0])

    def is_vacuous(self) -> bool:
        return float(self.masses[self.frame.full]) == 1.0

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{{{','.join(self.frame.members(k)) or ''}}}={v:.5f}" for k, v in self.focal()
        )
        return f"MassFunction({parts})"


@dataclass(frozen=True, eq=False)
class JaccardMatrix:
    """Similarity matrix D(A, B) = |A∩B| / |A∪B| over all subset pairs.

    The empty set is included with D(∅, ∅) = 1 and D(∅, B) = 0 otherwise,
    which keeps the matrix positive semi-definite so the induced distance
    stays within [0, 1] even for masses that carry conflict.
    """

    frame: Frame
    entries: np.ndarray


def jaccard_matrix(frame: Frame) -> JaccardMatrix:
    if frame.n_atoms > _DENSE_JACCARD_MAX_ATOMS:
        raise ValueError(
            f"dense Jaccard matrix limited to {_DENSE_JACCARD_MAX_ATOMS} atoms"
        )
    return JaccardMatrix(frame, _jaccard_entries(frame.n_atoms))


@lru_cache(maxsize=None)
def _subset_sizes(n_atoms: int) -> np.ndarray:
    sizes = np.array([k.bit_count() for k in range(1 << n_atoms)], dtype=np.int64)
    sizes.setflags(write=False)
    return sizes


@lru_cache(maxsize=None)
def _atom_membership(n_atoms: int) -> np.ndarray:
    """0/1 matrix: row per atom, column per subset, 1 when the atom is in it."""
    idx = np.arange(1 << n_atoms)
    rows = np.stack([(idx >> bit) & 1 for bit in range(n_atoms)]).astype(np.float64)
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=None)
def _jaccard_entries(n_atoms: int) -> np.ndarray:
    sizes = _subset_sizes(n_atoms)
    idx = np.arange(1 << n_atoms)
    inter = sizes[idx[:, None] & idx[None, :]].astype(np.float64)
    union = sizes[idx[:, None] | idx[None, :]].astype(np.float64)
    union[0, 0] = 1.0  # avoid 0/0; fixed up below
    d = inter / union
    d[0, :] = 0.0
    d[:, 0] = 0.0
    d[0, 0] = 1.0
    d.setflags(write=False)
    return d


def vacuous(frame: Frame) -> MassFunction:
    """Total ignorance: all mass on the whole frame."""
    arr = np.zeros(frame.n_subsets)
    arr[frame.full] = 1.0
    return MassFunction(frame, arr, simple_support=True)


def simple_support(frame: Frame, focal: int, degree: float) -> MassFunction:
    """Mass function committing ``degree`` to one focal set, the rest to ignorance.

    ``focal`` must be a nonempty proper subset of the frame. A degree of 0
    yields the vacuous mass; a degree of 1 is categorical on ``focal``.
    """
    frame._check_subset(focal)
    if focal == 0 or focal == frame.full:
        raise ValueError("focal set must be a nonempty proper subset of the frame")
    if not 0.0 <= degree <= 1.0:
        raise ValueError(f"belief degree must lie in [0, 1], got {degree}")
    arr = np.zeros(frame.n_subsets)
    arr[focal] = degree
    arr[frame.full] = 1.0 - degree
    return MassFunction(frame, arr, simple_support=True)


def _require_same_frame(m1: MassFunction, m2: MassFunction) -> Frame:
    if m1.frame != m2.frame:
        raise FrameMismatchError(f"frames differ: {m1.frame.atoms} vs {m2.frame.atoms}")
    return m1.frame


def conjunctive_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Unnormalized conjunctive rule: product mass lands on set intersections.

    The empty set absorbs the mass of disjoint focal pairs; no rescaling is
    applied, so the total stays 1 and the conflict is readable off index 0.
    """
    frame = _require_same_frame(m1, m2)
    out = np.zeros(frame.n_subsets)
    nz2 = np.flatnonzero(m2.masses)
    v2 = m2.masses[nz2]
    for a in np.flatnonzero(m1.masses):
        np.add.at(out, int(a) & nz2, m1.masses[a] * v2)
    return MassFunction(frame, out)


def conjunctive_combine_many(ms: Sequence[MassFunction]) -> MassFunction:
    if not ms:
        raise ValueError("need at least one mass function to combine")
    combined = ms[0]
    for m in ms[1:]:
        combined = conjunctive_combine(combined, m)
    return combined


def mean_combine(ms: Sequence[MassFunction]) -> MassFunction:
    """Pointwise average of the given mass functions.

    Sums are exactly rounded per subset, so the result is bit-identical
    under any permutation of the inputs.
    """
    if not ms:
        raise ValueError("need at least one mass function to average")
    frame = ms[0].frame
    for m in ms[1:]:
        _require_same_frame(ms[0], m)
    stacked = np.stack([m.masses for m in ms])
    out = np.array([math.fsum(stacked[:, k]) for k in range(frame.n_subsets)])
    return MassFunction(frame, out / len(ms))


def bel(m: MassFunction, subset: int) -> float:
    """Belief committed to ``subset``: mass of its nonempty subsets."""
    m.frame._check_subset(subset)
    idx = np.arange(m.frame.n_subsets)
    inside = (idx & subset) == idx
    inside[0] = False  # empty set never counts as support
    return float(m.masses[inside].sum())


def pl(m: MassFunction, subset: int) -> float:
    """Plausibility of ``subset``: mass of everything intersecting it."""
    m.frame._check_subset(subset)
    idx = np.arange(m.frame.n_subsets)
    return float(m.masses[(idx & subset) != 0].sum())


def _betp_weights(m: MassFunction) -> tuple[np.ndarray, float]:
    norm = 1.0 - float(m.masses[0])
    if norm <= 0.0:
        raise TotalConflictError("pignistic transform undefined: all mass on the empty set")
    sizes = _subset_sizes(m.frame.n_atoms)
    return sizes, norm


def betp_singleton(m: MassFunction, atom: int | str) -> float:
    """Pignistic probability of one atom.

    Each focal set spreads its mass uniformly over its atoms, after
    discounting whatever sits on the empty set.
    """
    sizes, norm = _betp_weights(m)
    bit = m.frame.atom_index(atom)
    idx = np.arange(m.frame.n_subsets)
    member = (idx >> bit & 1) == 1
    return float((m.masses[member] / sizes[member]).sum() / norm)


def betp_atoms(m: MassFunction) -> np.ndarray:
    """Pignistic probabilities of all atoms, in frame order."""
    sizes, norm = _betp_weights(m)
    shares = np.divide(
        m.masses, sizes, out=np.zeros_like(m.masses), where=sizes > 0
    )
    return _atom_membership(m.frame.n_atoms) @ shares / norm


def betp(m: MassFunction, subset: int) -> float:
    """Pignistic measure of an arbitrary subset.

    Uses the standard transform weight |X∩Y| / |Y| for each focal set Y,
    which coincides with ``betp_singleton`` on singletons and makes the
    measure additive over atoms.
    """
    m.frame._check_subset(subset)
    sizes, norm = _betp_weights(m)
    idx = np.arange(m.frame.n_subsets)
    overlap = sizes[idx & subset].astype(np.float64)
    weights = np.divide(overlap, sizes, out=np.zeros_like(overlap), where=sizes > 0)
    return float((m.masses * weights).sum() / norm)


def jousselme_distance(m1: MassFunction, m2: MassFunction) -> float:
    """Jaccard-weighted quadratic-form distance between two mass vectors.

    d = sqrt(0.5 * (m1-m2)^T D (m1-m2)) with D the Jaccard similarity
    matrix extended to the empty set. Ranges over [0, 1] and satisfies the
    metric axioms.
    """
    frame = _require_same_frame(m1, m2)
    delta = m1.masses - m2.masses
    if frame.n_atoms <= _DENSE_JACCARD_MAX_ATOMS:
        d = _jaccard_entries(frame.n_atoms)
        quad = float(delta @ d @ delta)
    else:
        # sparse fallback: only the differing subsets contribute
        nz = np.flatnonzero(delta)
        sizes = _subset_sizes(frame.n_atoms)
        quad = 0.0
        for a in nz:
            da = delta[a]
            for b in nz:
                if a == 0 or b == 0:
                    sim = 1.0 if a == b else 0.0
                else:
                    sim = sizes[a & b] / sizes[a | b]
                quad += da * delta[b] * sim
    # rounding can push the form a hair below zero for near-equal inputs
    return math.sqrt(max(0.5 * quad, 0.0))
