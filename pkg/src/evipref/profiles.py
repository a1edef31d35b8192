"""Text format for preference profiles.

A profile file is line oriented; ``#`` starts a comment. It opens with
two header directives, then any number of sections::

    alternatives 1 2 3 4 5
    agents u1 u2 u3

    [defaults]
    preference      0.8 0.2 0.3 0.1
    inverse         0.1 0.9 0.2 0.1
    indifference    0.3 0.3 0.7 0.0
    incomparability 0.1 0.1 0.0 0.9

    [relations u1]
    1 = 2
    2 > 3

    [overrides u1]
    2 3  0.8 0.7 0.6 0.5

``[relations X]`` lists agent X's declared relations, one ``a OP b`` per
line with OP one of ``>`` (strict), ``<`` (inverse), ``=`` (indifference)
or ``~`` (incomparability); orientation is normalized to the order the
alternatives were listed in. ``[overrides X]`` gives explicit degrees
(strict, inverse, indifference, incomparability) for single pairs and
wins over declarations. ``[defaults]`` replaces the built-in template and
must then cover all four relations. Unknown directives, sections or row
shapes are rejected with the offending line number.
"""

from __future__ import annotations

from .fusion import (
    DEFAULT_TEMPLATE,
    DefaultTemplate,
    PairAssessment,
    PreferenceProfile,
    RelationKind,
)

_OPS = {
    ">": RelationKind.STRICT_PREFERENCE,
    "<": RelationKind.INVERSE_PREFERENCE,
    "=": RelationKind.INDIFFERENCE,
    "~": RelationKind.INCOMPARABILITY,
}
_OP_OF = {v: k for k, v in _OPS.items()}

_MIRROR = {
    RelationKind.STRICT_PREFERENCE: RelationKind.INVERSE_PREFERENCE,
    RelationKind.INVERSE_PREFERENCE: RelationKind.STRICT_PREFERENCE,
    RelationKind.INDIFFERENCE: RelationKind.INDIFFERENCE,
    RelationKind.INCOMPARABILITY: RelationKind.INCOMPARABILITY,
}

_KIND_WORDS = {
    "preference": RelationKind.STRICT_PREFERENCE,
    "inverse": RelationKind.INVERSE_PREFERENCE,
    "indifference": RelationKind.INDIFFERENCE,
    "incomparability": RelationKind.INCOMPARABILITY,
}
_WORD_OF = {v: k for k, v in _KIND_WORDS.items()}


class ProfileParseError(ValueError):
    def __init__(self, line_no: int, message: str, source: str = "<profile>") -> None:
        self.line_no = line_no
        super().__init__(f"{source}:{line_no}: {message}")


def _parse_degrees(tokens: list[str], line_no: int, source: str) -> tuple[float, ...]:
    if len(tokens) != 4:
        raise ProfileParseError(line_no, f"expected 4 degrees, got {len(tokens)}", source)
    try:
        degrees = tuple(float(t) for t in tokens)
    except ValueError:
        raise ProfileParseError(line_no, f"bad degree value in {tokens}", source) from None
    for d in degrees:
        if not 0.0 <= d <= 1.0:
            raise ProfileParseError(line_no, f"degree {d} outside [0, 1]", source)
    return degrees


def parse_profile(text: str, source: str = "<profile>") -> PreferenceProfile:
    alternatives: list[str] | None = None
    agents: list[str] | None = None
    template_rows: dict[RelationKind, tuple[float, ...]] = {}
    template_line: int | None = None
    declarations: dict[tuple[str, tuple[int, int]], RelationKind] = {}
    assessments: list[PairAssessment] = []
    seen_overrides: set[tuple[str, tuple[int, int]]] = set()

    section: tuple[str, str] | None = None  # (kind, agent)

    def alt_index(label: str, line_no: int) -> int:
        assert alternatives is not None
        try:
            return alternatives.index(label)
        except ValueError:
            raise ProfileParseError(line_no, f"unknown alternative {label!r}", source) from None

    def oriented(a: str, b: str, kind: RelationKind, line_no: int):
        ia, ib = alt_index(a, line_no), alt_index(b, line_no)
        if ia == ib:
            raise ProfileParseError(line_no, f"self-pair {a!r}", source)
        if ia < ib:
            return (ia, ib), kind
        return (ib, ia), _MIRROR[kind]

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        if line.startswith("["):
            if not line.endswith("]"):
                raise ProfileParseError(line_no, "unterminated section header", source)
            parts = line[1:-1].split()
            if alternatives is None or agents is None:
                raise ProfileParseError(
                    line_no, "alternatives and agents must be declared first", source
                )
            if parts == ["defaults"]:
                section = ("defaults", "")
                template_line = line_no
            elif len(parts) == 2 and parts[0] in ("relations", "overrides"):
                if parts[1] not in agents:
                    raise ProfileParseError(line_no, f"unknown agent {parts[1]!r}", source)
                section = (parts[0], parts[1])
            else:
                raise ProfileParseError(line_no, f"unknown section {line!r}", source)
            continue

        tokens = line.split()
        if section is None:
            if tokens[0] == "alternatives":
                if alternatives is not None:
                    raise ProfileParseError(line_no, "alternatives declared twice", source)
                if len(tokens) < 3:
                    raise ProfileParseError(line_no, "need at least two alternatives", source)
                alternatives = tokens[1:]
                if len(set(alternatives)) != len(alternatives):
                    raise ProfileParseError(line_no, "duplicate alternative label", source)
            elif tokens[0] == "agents":
                if agents is not None:
                    raise ProfileParseError(line_no, "agents declared twice", source)
                if len(tokens) < 2:
                    raise ProfileParseError(line_no, "need at least one agent", source)
                agents = tokens[1:]
                if len(set(agents)) != len(agents):
                    raise ProfileParseError(line_no, "duplicate agent name", source)
            else:
                raise ProfileParseError(line_no, f"unknown directive {tokens[0]!r}", source)
            continue

        kind_name, agent = section
        if kind_name == "defaults":
            if tokens[0] not in _KIND_WORDS:
                raise ProfileParseError(line_no, f"unknown relation {tokens[0]!r}", source)
            kind = _KIND_WORDS[tokens[0]]
            if kind in template_rows:
                raise ProfileParseError(line_no, f"duplicate defaults row {tokens[0]!r}", source)
            template_rows[kind] = _parse_degrees(tokens[1:], line_no, source)
        elif kind_name == "relations":
            if len(tokens) != 3 or tokens[1] not in _OPS:
                raise ProfileParseError(
                    line_no, "expected '<alt> <op> <alt>' with op one of > < = ~", source
                )
            pair, kind = oriented(tokens[0], tokens[2], _OPS[tokens[1]], line_no)
            if (agent, pair) in declarations:
                raise ProfileParseError(
                    line_no, f"agent {agent!r} already declared pair {pair}", source
                )
            declarations[(agent, pair)] = kind
        else:  # overrides
            if len(tokens) != 6:
                raise ProfileParseError(
                    line_no, "expected '<alt> <alt> <4 degrees>'", source
                )
            ia, ib = alt_index(tokens[0], line_no), alt_index(tokens[1], line_no)
            if ia == ib:
                raise ProfileParseError(line_no, f"self-pair {tokens[0]!r}", source)
            degrees = _parse_degrees(tokens[2:], line_no, source)
            if ia > ib:
                ia, ib = ib, ia
                degrees = (degrees[1], degrees[0], degrees[2], degrees[3])
            if (agent, (ia, ib)) in seen_overrides:
                raise ProfileParseError(
                    line_no, f"agent {agent!r} already has degrees for pair ({ia}, {ib})",
                    source,
                )
            seen_overrides.add((agent, (ia, ib)))
            assessments.append(PairAssessment(agent=agent, pair=(ia, ib), degrees=degrees))

    if alternatives is None:
        raise ProfileParseError(0, "missing 'alternatives' directive", source)
    if agents is None:
        raise ProfileParseError(0, "missing 'agents' directive", source)

    if template_rows:
        if set(template_rows) != set(RelationKind):
            missing = sorted(_WORD_OF[k] for k in set(RelationKind) - set(template_rows))
            raise ProfileParseError(
                template_line or 0, f"defaults section missing rows: {', '.join(missing)}",
                source,
            )
        template = DefaultTemplate(template_rows)
    else:
        template = DEFAULT_TEMPLATE

    return PreferenceProfile(
        alternatives=tuple(alternatives),
        agents=tuple(agents),
        assessments=tuple(assessments),
        declarations=declarations,
        template=template,
    )


def load_profile(path) -> PreferenceProfile:
    with open(path) as fh:
        return parse_profile(fh.read(), source=str(path))


def format_profile(profile: PreferenceProfile) -> str:
    """Render a profile in the canonical file layout."""
    lines = [
        "alternatives " + " ".join(profile.alternatives),
        "agents " + " ".join(profile.agents),
        "",
        "[defaults]",
    ]
    for kind in RelationKind:
        row = profile.template.row(kind)
        lines.append(f"{_WORD_OF[kind]} " + " ".join(f"{d:g}" for d in row))
    for agent in profile.agents:
        declared = sorted(
            (pair, kind) for (a, pair), kind in profile.declarations.items() if a == agent
        )
        if declared:
            lines += ["", f"[relations {agent}]"]
            for (i, j), kind in declared:
                lines.append(
                    f"{profile.alternatives[i]} {_OP_OF[kind]} {profile.alternatives[j]}"
                )
        overrides = sorted(
            (a for a in profile.assessments if a.agent == agent), key=lambda a: a.pair
        )
        if overrides:
            lines += ["", f"[overrides {agent}]"]
            for a in overrides:
                i, j = a.pair
                degrees = " ".join(f"{d:g}" for d in a.degrees)
                lines.append(f"{profile.alternatives[i]} {profile.alternatives[j]}  {degrees}")
    return "\n".join(lines) + "\n"
