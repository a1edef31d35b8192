"""Shared fixtures: the worked three-agent scenario over five alternatives."""

import pytest

from evipref import (
    PairAssessment,
    PreferenceProfile,
    RelationKind,
    fuse_profile,
)

K = RelationKind

# Alternatives are labelled "1".."5"; pairs below use 0-based indices.
DECLARATIONS = {
    ("u1", (0, 1)): K.INDIFFERENCE,
    ("u1", (1, 2)): K.STRICT_PREFERENCE,
    ("u1", (2, 3)): K.STRICT_PREFERENCE,
    ("u1", (2, 4)): K.STRICT_PREFERENCE,
    ("u1", (3, 4)): K.STRICT_PREFERENCE,
    ("u2", (0, 1)): K.INDIFFERENCE,
    ("u2", (1, 3)): K.INVERSE_PREFERENCE,
    ("u2", (2, 3)): K.STRICT_PREFERENCE,
    ("u2", (3, 4)): K.STRICT_PREFERENCE,
    ("u3", (0, 1)): K.INVERSE_PREFERENCE,
    ("u3", (1, 2)): K.STRICT_PREFERENCE,
    ("u3", (1, 3)): K.INVERSE_PREFERENCE,
    ("u3", (3, 4)): K.INVERSE_PREFERENCE,
}

OVERRIDES = {
    ("u1", (1, 2)): (0.8, 0.7, 0.6, 0.5),
    ("u1", (1, 3)): (0.4, 0.1, 0.3, 0.6),
    ("u1", (2, 3)): (0.9, 0.8, 0.7, 0.6),
    ("u2", (1, 2)): (0.5, 0.4, 0.6, 0.9),
    ("u2", (1, 3)): (0.2, 0.4, 0.3, 0.1),
    ("u2", (2, 3)): (0.9, 0.8, 0.1, 0.7),
    ("u3", (1, 2)): (0.6, 0.2, 0.4, 0.1),
    ("u3", (1, 3)): (0.3, 0.5, 0.2, 0.1),
    ("u3", (2, 3)): (0.8, 0.1, 0.6, 0.9),
}


def make_demo_profile() -> PreferenceProfile:
    return PreferenceProfile(
        alternatives=("1", "2", "3", "4", "5"),
        agents=("u1", "u2", "u3"),
        assessments=tuple(
            PairAssessment(agent=agent, pair=pair, degrees=deg)
            for (agent, pair), deg in OVERRIDES.items()
        ),
        declarations=DECLARATIONS,
    )


@pytest.fixture(scope="session")
def demo_profile() -> PreferenceProfile:
    return make_demo_profile()


@pytest.fixture(scope="session")
def fused_a(demo_profile):
    return fuse_profile(demo_profile, "A")


@pytest.fixture(scope="session")
def fused_b(demo_profile):
    return fuse_profile(demo_profile, "B")


def by_pair(fused):
    return {fp.pair: fp for fp in fused}
