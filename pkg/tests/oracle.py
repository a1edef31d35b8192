"""Slow, exact reference implementations used to pin expected values.

Everything here works on dictionaries keyed by frozensets of atom labels
and uses exact rational arithmetic, enumerating focal-set pairs by brute
force. It shares no code or representation with the package under test:
the package indexes subsets by bitmask into dense float arrays, the
oracle spells subsets out as frozensets and keeps Fractions until the
final float conversion. Agreement between the two is therefore a real
cross-check, not a tautology.
"""

from fractions import Fraction
from itertools import chain, combinations
from math import sqrt


def powerset(atoms):
    atoms = tuple(atoms)
    return [
        frozenset(c) for c in chain.from_iterable(
            combinations(atoms, r) for r in range(len(atoms) + 1)
        )
    ]


def as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(str(x))


def simple_support(atoms, focal, degree):
    atoms = frozenset(atoms)
    focal = frozenset(focal)
    degree = as_fraction(degree)
    assert focal and focal < atoms
    m = {focal: degree, atoms: 1 - degree}
    return {k: v for k, v in m.items() if v != 0} or {atoms: Fraction(1)}


def mean_combine(ms):
    keys = set().union(*ms)
    n = len(ms)
    out = {}
    for k in keys:
        v = sum((m.get(k, Fraction(0)) for m in ms), Fraction(0)) / n
        if v != 0:
            out[k] = v
    return out


def conjunctive_combine(m1, m2):
    out = {}
    for a, va in m1.items():
        for b, vb in m2.items():
            key = a & b
            out[key] = out.get(key, Fraction(0)) + va * vb
    return {k: v for k, v in out.items() if v != 0}


def conjunctive_combine_many(ms):
    combined = ms[0]
    for m in ms[1:]:
        combined = conjunctive_combine(combined, m)
    return combined


def bel(m, subset):
    subset = frozenset(subset)
    return sum(
        (v for k, v in m.items() if k and k <= subset), Fraction(0)
    )


def pl(m, subset):
    subset = frozenset(subset)
    return sum((v for k, v in m.items() if k & subset), Fraction(0))


def betp_singleton(m, atom):
    conflict = m.get(frozenset(), Fraction(0))
    total = Fraction(0)
    for k, v in m.items():
        if atom in k:
            total += v / len(k)
    return total / (1 - conflict)


def jousselme_distance(m1, m2, atoms):
    """Full quadratic-form evaluation over every subset pair of the frame."""
    subsets = powerset(atoms)
    delta = {s: m1.get(s, Fraction(0)) - m2.get(s, Fraction(0)) for s in subsets}
    quad = Fraction(0)
    for a in subsets:
        for b in subsets:
            if not a and not b:
                sim = Fraction(1)
            elif not a or not b:
                sim = Fraction(0)
            else:
                sim = Fraction(len(a & b), len(a | b))
            quad += delta[a] * delta[b] * sim
    return sqrt(float(quad / 2))


# ---------------------------------------------------------------------------
# The worked three-agent / five-alternative scenario, spelled out from its
# published inputs so the oracle can regenerate every fused value.

PREF_ATOMS = ("gt", "lt", "eq", "nc")

TEMPLATE = {
    "gt": (Fraction(8, 10), Fraction(2, 10), Fraction(3, 10), Fraction(1, 10)),
    "lt": (Fraction(1, 10), Fraction(9, 10), Fraction(2, 10), Fraction(1, 10)),
    "eq": (Fraction(3, 10), Fraction(3, 10), Fraction(7, 10), Fraction(0)),
    "nc": (Fraction(1, 10), Fraction(1, 10), Fraction(0), Fraction(9, 10)),
}

# Declared relations per agent over alternatives 1..5 (pair keys have i < j).
DECLARATIONS = {
    "u1": {(1, 2): "eq", (2, 3): "gt", (3, 4): "gt", (3, 5): "gt", (4, 5): "gt"},
    "u2": {(1, 2): "eq", (2, 4): "lt", (4, 5): "gt", (3, 4): "gt"},
    "u3": {(1, 2): "lt", (2, 3): "gt", (2, 4): "lt", (4, 5): "lt"},
}

# Explicit degree overrides (gt, lt, eq, nc) for three contested pairs.
OVERRIDES = {
    ("u1", (2, 3)): (Fraction(8, 10), Fraction(7, 10), Fraction(6, 10), Fraction(5, 10)),
    ("u1", (2, 4)): (Fraction(4, 10), Fraction(1, 10), Fraction(3, 10), Fraction(6, 10)),
    ("u1", (3, 4)): (Fraction(9, 10), Fraction(8, 10), Fraction(7, 10), Fraction(6, 10)),
    ("u2", (2, 3)): (Fraction(5, 10), Fraction(4, 10), Fraction(6, 10), Fraction(9, 10)),
    ("u2", (2, 4)): (Fraction(2, 10), Fraction(4, 10), Fraction(3, 10), Fraction(1, 10)),
    ("u2", (3, 4)): (Fraction(9, 10), Fraction(8, 10), Fraction(1, 10), Fraction(7, 10)),
    ("u3", (2, 3)): (Fraction(6, 10), Fraction(2, 10), Fraction(4, 10), Fraction(1, 10)),
    ("u3", (2, 4)): (Fraction(3, 10), Fraction(5, 10), Fraction(2, 10), Fraction(1, 10)),
    ("u3", (3, 4)): (Fraction(8, 10), Fraction(1, 10), Fraction(6, 10), Fraction(9, 10)),
}

AGENTS = ("u1", "u2", "u3")
ALTERNATIVES = (1, 2, 3, 4, 5)


def degrees_for(agent, pair):
    if (agent, pair) in OVERRIDES:
        return OVERRIDES[agent, pair]
    kind = DECLARATIONS[agent].get(pair, "nc")
    return TEMPLATE[kind]


def _supports(degrees):
    frame = frozenset(PREF_ATOMS)
    out = []
    for atom, deg in zip(PREF_ATOMS, degrees):
        deg = as_fraction(deg)
        m = {frame: 1 - deg}
        if deg != 0:
            m[frozenset({atom})] = deg
        out.append({k: v for k, v in m.items() if v != 0})
    return out


def strategy_a(pair):
    per_agent = [mean_combine(_supports(degrees_for(a, pair))) for a in AGENTS]
    return conjunctive_combine_many(per_agent)


def strategy_b(pair):
    per_relation = []
    for k in range(4):
        ms = [_supports(degrees_for(a, pair))[k] for a in AGENTS]
        per_relation.append(conjunctive_combine_many(ms))
    return mean_combine(per_relation)


def decide(m):
    """Argmax of pignistic probability, ties to `nc` then atom order."""
    probs = [betp_singleton(m, atom) for atom in PREF_ATOMS]
    best = max(probs)
    if probs[3] == best:
        return "nc"
    return PREF_ATOMS[probs.index(best)]


INCOMPARABILITY_MASS = {frozenset({"nc"}): Fraction(1)}


def d_incomp(m):
    return jousselme_distance(m, INCOMPARABILITY_MASS, PREF_ATOMS)


def all_pairs():
    return [
        (i, j)
        for i in ALTERNATIVES
        for j in ALTERNATIVES
        if i < j
    ]
