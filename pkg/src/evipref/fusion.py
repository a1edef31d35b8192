"""Elicitation model and fusion strategies for pairwise preferences.

Every unordered pair of alternatives (i, j), always oriented i < j, gets
a four-atom frame: the alternatives compare as strictly-better (gt),
strictly-worse (lt), equivalent (eq), or not comparable at all (nc).
Each agent contributes one belief degree per relation, interpreted as a
simple-support mass function, and two combination pipelines turn the
whole population's degrees into a single mass per pair:

* strategy A averages each agent's four supports first, then combines
  agents conjunctively. Conflict piles up on the empty set as agents are
  added, which is exactly why strategy B exists.
* strategy B combines all agents conjunctively within each relation
  first (co-focal supports never conflict), then averages the four
  per-relation results, so its output always has zero empty-set mass.

The decided relation is the pignistic argmax, and every pair also gets
its distance to the categorical "not comparable" mass, which later
drives cycle elimination in the collective graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Mapping, Sequence

from .evidence import (
    Frame,
    MassFunction,
    betp_atoms,
    conjunctive_combine_many,
    jousselme_distance,
    mean_combine,
    simple_support,
)

Pair = tuple[int, int]
Degrees = tuple[float, float, float, float]


class RelationKind(IntEnum):
    """The four pairwise relations, in frame-atom order."""

    STRICT_PREFERENCE = 0
    INVERSE_PREFERENCE = 1
    INDIFFERENCE = 2
    INCOMPARABILITY = 3

    @property
    def token(self) -> str:
        return _TOKENS[self]

    @classmethod
    def from_token(cls, token: str) -> "RelationKind":
        try:
            return _FROM_TOKEN[token]
        except KeyError:
            raise ValueError(f"unknown relation token {token!r}") from None


_TOKENS = {
    RelationKind.STRICT_PREFERENCE: "gt",
    RelationKind.INVERSE_PREFERENCE: "lt",
    RelationKind.INDIFFERENCE: "eq",
    RelationKind.INCOMPARABILITY: "nc",
}
_FROM_TOKEN = {v: k for k, v in _TOKENS.items()}

PREFERENCE_FRAME = Frame(("gt", "lt", "eq", "nc"))

#: Categorical mass on "not comparable"; reference point for edge removal.
INCOMPARABILITY_MASS = MassFunction(
    PREFERENCE_FRAME,
    [0.0] * 8 + [1.0] + [0.0] * 7,
    simple_support=True,
)


def _check_degrees(degrees: Sequence[float]) -> Degrees:
    degrees = tuple(float(d) for d in degrees)
    if len(degrees) != 4:
        raise ValueError(f"expected 4 belief degrees, got {len(degrees)}")
    for d in degrees:
        if not 0.0 <= d <= 1.0:
            raise ValueError(f"belief degree must lie in [0, 1], got {d}")
    return degrees


@dataclass(frozen=True)
class PairAssessment:
    """One agent's four belief degrees for one alternative pair.

    Degrees are independent simple supports, one per relation kind; they
    are not required to sum to 1.
    """

    agent: str
    pair: Pair
    degrees: Degrees

    def __post_init__(self) -> None:
        i, j = self.pair
        if not i < j:
            raise ValueError(f"pair must be oriented (i, j) with i < j, got {self.pair}")
        object.__setattr__(self, "degrees", _check_degrees(self.degrees))


@dataclass(frozen=True)
class DefaultTemplate:
    """Fallback degree rows, one per declared relation kind."""

    rows: Mapping[RelationKind, Degrees]

    def __post_init__(self) -> None:
        rows = {RelationKind(k): _check_degrees(v) for k, v in self.rows.items()}
        if set(rows) != set(RelationKind):
            missing = set(RelationKind) - set(rows)
            raise ValueError(f"template missing rows for {sorted(k.name for k in missing)}")
        object.__setattr__(self, "rows", rows)

    def row(self, kind: RelationKind) -> Degrees:
        return self.rows[kind]


DEFAULT_TEMPLATE = DefaultTemplate(
    {
        RelationKind.STRICT_PREFERENCE: (0.8, 0.2, 0.3, 0.1),
        RelationKind.INVERSE_PREFERENCE: (0.1, 0.9, 0.2, 0.1),
        RelationKind.INDIFFERENCE: (0.3, 0.3, 0.7, 0.0),
        RelationKind.INCOMPARABILITY: (0.1, 0.1, 0.0, 0.9),
    }
)


@dataclass(frozen=True)
class PreferenceProfile:
    """All agents' assessments over an ordered set of alternatives.

    ``declarations`` holds each agent's stated relation per pair (their
    personal preference graph); ``assessments`` holds explicit degree
    overrides. Degree lookup order is: explicit assessment, then the
    template row of the declared relation, then the incomparability row
    for pairs the agent never mentioned.
    """

    alternatives: tuple[str, ...]
    agents: tuple[str, ...]
    assessments: tuple[PairAssessment, ...] = ()
    declarations: Mapping[tuple[str, Pair], RelationKind] = field(default_factory=dict)
    template: DefaultTemplate = DEFAULT_TEMPLATE

    def __post_init__(self) -> None:
        alts = tuple(str(a) for a in self.alternatives)
        agents = tuple(str(a) for a in self.agents)
        if len(set(alts)) != len(alts):
            raise ValueError("alternative labels must be distinct")
        if len(set(agents)) != len(agents):
            raise ValueError("agent names must be distinct")
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "assessments", tuple(self.assessments))
        object.__setattr__(self, "declarations", dict(self.declarations))

        seen: set[tuple[str, Pair]] = set()
        explicit: dict[tuple[str, Pair], Degrees] = {}
        for a in self.assessments:
            self._check_pair(a.pair)
            self._check_agent(a.agent)
            key = (a.agent, a.pair)
            if key in seen:
                raise ValueError(f"duplicate assessment for agent {a.agent} pair {a.pair}")
            seen.add(key)
            explicit[key] = a.degrees
        for (agent, pair), kind in self.declarations.items():
            self._check_agent(agent)
            self._check_pair(pair)
            RelationKind(kind)
        object.__setattr__(self, "_explicit", explicit)

    def _check_agent(self, agent: str) -> None:
        if agent not in self.agents:
            raise ValueError(f"unknown agent {agent!r}")

    def _check_pair(self, pair: Pair) -> None:
        i, j = pair
        n = len(self.alternatives)
        if not (0 <= i < j < n):
            raise ValueError(f"pair {pair} invalid for {n} alternatives")

    def pairs(self) -> list[Pair]:
        """All unordered pairs in lexicographic order."""
        n = len(self.alternatives)
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def index_of(self, label: str) -> int:
        try:
            return self.alternatives.index(label)
        except ValueError:
            raise ValueError(f"unknown alternative {label!r}") from None


@dataclass(frozen=True)
class FusedPair:
    """Fusion output for one pair: combined mass, decision, and the
    distance from that mass to categorical incomparability."""

    pair: Pair
    mass: MassFunction
    decided: RelationKind
    d_incomp: float


def resolve_degrees(profile: PreferenceProfile, agent: str, pair: Pair) -> Degrees:
    """Degrees an agent effectively holds for a pair, after defaulting."""
    profile._check_agent(agent)
    profile._check_pair(pair)
    explicit = profile._explicit.get((agent, pair))
    if explicit is not None:
        return explicit
    kind = profile.declarations.get((agent, pair), RelationKind.INCOMPARABILITY)
    return profile.template.row(kind)


def degree_supports(degrees: Sequence[float]) -> list[MassFunction]:
    """The four simple supports encoded by one agent's degree row."""
    degrees = _check_degrees(degrees)
    return [
        simple_support(PREFERENCE_FRAME, 1 << k, degrees[k]) for k in range(4)
    ]


def single_agent_mass(degrees: Sequence[float]) -> MassFunction:
    """One agent's fused view of a pair: the mean of its four supports."""
    return mean_combine(degree_supports(degrees))


def strategy_a(profile: PreferenceProfile, pair: Pair) -> MassFunction:
    """Average per agent first, then combine agents conjunctively."""
    if not profile.agents:
        raise ValueError("profile has no agents")
    per_agent = [
        single_agent_mass(resolve_degrees(profile, agent, pair))
        for agent in profile.agents
    ]
    return conjunctive_combine_many(per_agent)


def strategy_b(profile: PreferenceProfile, pair: Pair) -> MassFunction:
    """Combine agents conjunctively within each relation, then average.

    Co-focal simple supports cannot conflict, so the result carries no
    empty-set mass regardless of how many agents contribute.
    """
    if not profile.agents:
        raise ValueError("profile has no agents")
    per_relation = []
    for k in range(4):
        supports = [
            degree_supports(resolve_degrees(profile, agent, pair))[k]
            for agent in profile.agents
        ]
        per_relation.append(conjunctive_combine_many(supports))
    return mean_combine(per_relation)


_STRATEGIES = {"A": strategy_a, "B": strategy_b}


def decide(mass: MassFunction) -> RelationKind:
    """Pignistic argmax over the four relations.

    Exact ties go to incomparability first (commit to as little as
    possible), then to the lowest atom index, making the decision total
    and deterministic.
    """
    probs = betp_atoms(mass)
    best = probs.max()
    if probs[RelationKind.INCOMPARABILITY] == best:
        return RelationKind.INCOMPARABILITY
    return RelationKind(int((probs == best).argmax()))


def fuse_pair(mass: MassFunction, pair: Pair) -> FusedPair:
    return FusedPair(
        pair=pair,
        mass=mass,
        decided=decide(mass),
        d_incomp=jousselme_distance(mass, INCOMPARABILITY_MASS),
    )


def fuse_profile(profile: PreferenceProfile, strategy: str) -> list[FusedPair]:
    """Fuse every pair of the profile; output in lexicographic pair order."""
    if len(profile.alternatives) < 2:
        raise ValueError("need at least two alternatives")
    if not profile.agents:
        raise ValueError("profile has no agents")
    try:
        combine = _STRATEGIES[strategy.upper()]
    except (KeyError, AttributeError):
        raise ValueError(f"unknown strategy {strategy!r}, expected 'A' or 'B'") from None
    return [fuse_pair(combine(profile, pair), pair) for pair in profile.pairs()]
