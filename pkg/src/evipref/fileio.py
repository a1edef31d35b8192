"""Fused-pair CSV interchange and the human-readable mass table.

The CSV is the wire format between the fusion stage and the graph stage:
one row per pair with the six mass entries that the fusion pipelines can
produce (empty set, the four singletons, the full frame), the pignistic
probabilities, the decided relation token and the distance to
incomparability. Floats are written with five decimals, so a reloaded
mass is an approximation of the in-memory one; downstream consumers only
read the decision and the distance off it.
"""

from __future__ import annotations

import csv
import io
from typing import Mapping, Sequence, TextIO

import numpy as np

from .evidence import MassFunction, betp_atoms
from .fusion import PREFERENCE_FRAME, FusedPair, RelationKind

FUSED_COLUMNS = [
    "i",
    "j",
    "m_empty",
    "m_gt",
    "m_lt",
    "m_eq",
    "m_nc",
    "m_full",
    "betp_gt",
    "betp_lt",
    "betp_eq",
    "betp_nc",
    "decided",
    "d_incomp",
]

# subset indices of the six columns above in a 4-atom frame
_MASS_SUBSETS = (0, 1, 2, 4, 8, 15)

# five-decimal rounding leaves the reloaded mass sum slightly off 1
_LOAD_TOL = 1e-3


class FusedCsvError(ValueError):
    """Malformed fused-pair CSV."""


def _fmt(x: float) -> str:
    return f"{x:.5f}"


def write_fused_rows(fused: Sequence[FusedPair], out: TextIO,
                     labels: Mapping[int, str] | None = None) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FUSED_COLUMNS)
    for fp in fused:
        i, j = fp.pair
        betp = betp_atoms(fp.mass)
        row = [
            labels[i] if labels else str(i),
            labels[j] if labels else str(j),
            *(_fmt(fp.mass.mass(k)) for k in _MASS_SUBSETS),
            *(_fmt(p) for p in betp),
            fp.decided.token,
            _fmt(fp.d_incomp),
        ]
        writer.writerow(row)


def fused_csv_text(fused: Sequence[FusedPair],
                   labels: Mapping[int, str] | None = None) -> str:
    buf = io.StringIO()
    write_fused_rows(fused, buf, labels)
    return buf.getvalue()


def write_fused_csv(fused: Sequence[FusedPair], path,
                    labels: Mapping[int, str] | None = None) -> None:
    with open(path, "w", newline="") as fh:
        write_fused_rows(fused, fh, labels)


def _mirror_if_needed(pair, masses, kind):
    """Reorient a pair to ascending node id, swapping the two strict atoms."""
    i, j = pair
    if i < j:
        return pair, masses, kind
    masses = masses.copy()
    masses[1], masses[2] = masses[2], masses[1]
    if kind == RelationKind.STRICT_PREFERENCE:
        kind = RelationKind.INVERSE_PREFERENCE
    elif kind == RelationKind.INVERSE_PREFERENCE:
        kind = RelationKind.STRICT_PREFERENCE
    return (j, i), masses, kind


def read_fused_rows(rows, source: str = "<fused>") -> tuple[list[FusedPair], dict[int, str]]:
    """Parse fused CSV rows into FusedPairs plus a node-id -> label map.

    Node ids are assigned by first appearance, which reproduces the
    producer's ordering for files written by this package.
    """
    it = iter(rows)
    try:
        header = next(it)
    except StopIteration:
        raise FusedCsvError(f"{source}: empty file") from None
    if header != FUSED_COLUMNS:
        raise FusedCsvError(f"{source}: unexpected header {header!r}")
    ids: dict[str, int] = {}
    labels: dict[int, str] = {}
    fused: list[FusedPair] = []
    seen: set[tuple[int, int]] = set()
    for line_no, row in enumerate(it, start=2):
        if len(row) != len(FUSED_COLUMNS):
            raise FusedCsvError(f"{source}:{line_no}: expected {len(FUSED_COLUMNS)} fields")
        rec = dict(zip(FUSED_COLUMNS, row))
        for label in (rec["i"], rec["j"]):
            if label not in ids:
                ids[label] = len(ids)
                labels[ids[label]] = label
        if rec["i"] == rec["j"]:
            raise FusedCsvError(f"{source}:{line_no}: self-pair {rec['i']!r}")
        try:
            masses = np.zeros(PREFERENCE_FRAME.n_subsets)
            for col, subset in zip(FUSED_COLUMNS[2:8], _MASS_SUBSETS):
                masses[subset] = float(rec[col])
            kind = RelationKind.from_token(rec["decided"])
            d_incomp = float(rec["d_incomp"])
        except ValueError as exc:
            raise FusedCsvError(f"{source}:{line_no}: {exc}") from None
        pair = (ids[rec["i"]], ids[rec["j"]])
        pair, masses, kind = _mirror_if_needed(pair, masses, kind)
        if pair in seen:
            raise FusedCsvError(f"{source}:{line_no}: duplicate pair {rec['i']},{rec['j']}")
        seen.add(pair)
        try:
            mass = MassFunction(PREFERENCE_FRAME, masses, tol=_LOAD_TOL)
        except ValueError as exc:
            raise FusedCsvError(f"{source}:{line_no}: {exc}") from None
        fused.append(FusedPair(pair=pair, mass=mass, decided=kind, d_incomp=d_incomp))
    return fused, labels


def read_fused_csv(path) -> tuple[list[FusedPair], dict[int, str]]:
    with open(path, newline="") as fh:
        return read_fused_rows(csv.reader(fh), source=str(path))


def render_mass_table(fused: Sequence[FusedPair],
                      labels: Mapping[int, str] | None = None) -> str:
    """Aligned five-decimal table of per-pair masses and decisions."""
    headers = ["pair", "empty", "gt", "lt", "eq", "nc", "full", "decided", "d_incomp"]
    rows = []
    for fp in fused:
        i, j = fp.pair
        pair_text = f"({labels[i] if labels else i},{labels[j] if labels else j})"
        rows.append(
            [pair_text]
            + [_fmt(fp.mass.mass(k)) for k in _MASS_SUBSETS]
            + [fp.decided.token, _fmt(fp.d_incomp)]
        )
    widths = [max(len(h), *(len(r[c]) for r in rows)) if rows else len(h)
              for c, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"
