"""Probabilistic chord-progression matrix: the harmonic core.

An 8-bar theme loops forever. Each of the ten valence regions declares, for
each theme bar, a small weighted set of chord alternatives sharing one
harmonic function; the realized chord is sampled per bar. Bars 7-8 of every
region close the theme with a cadence (dominant/subdominant then tonic).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .theory import (
    Chord,
    ChordQuality,
    MINOR_FLAVOR_QUALITIES,
    NOTE_TO_PC,
    Scale,
    ScaleMode,
    TheoryError,
    chord_tones,
)

N_REGIONS = 10
THEME_BARS = 8
PROB_SUM_TOL = 1e-9


class MatrixError(ValueError):
    pass


_ROMAN_RE = re.compile(r"^(VII|VI|IV|V|III|II|I|vii|vi|iv|v|iii|ii|i)")

_ROMAN_DEGREE = {
    "i": 1, "ii": 2, "iii": 3, "iv": 4, "v": 5, "vi": 6, "vii": 7,
}

# Harmonic function by scale degree of the roman-numeral label.
_DEGREE_FUNCTION = {
    1: "tonic", 2: "subdominant", 3: "tonic", 4: "subdominant",
    5: "dominant", 6: "tonic", 7: "dominant",
}


def chord_function(label: str) -> str:
    """Classify a roman-numeral label into tonic/subdominant/dominant."""
    m = _ROMAN_RE.match(label)
    if not m:
        raise MatrixError(f"cannot read roman numeral from label {label!r}")
    return _DEGREE_FUNCTION[_ROMAN_DEGREE[m.group(0).lower()]]


@dataclass(frozen=True)
class ChordCell:
    """Weighted chord alternatives for one (region, bar) slot."""

    alternatives: Tuple[Tuple[Chord, float], ...]

    def probabilities(self) -> Tuple[float, ...]:
        return tuple(p for _, p in self.alternatives)

    def chords(self) -> Tuple[Chord, ...]:
        return tuple(c for c, _ in self.alternatives)


@dataclass(frozen=True)
class ChordProgressionMatrix:
    """10 valence regions x 8 theme bars of ChordCells, plus a key per region."""

    cells: Tuple[Tuple[ChordCell, ...], ...]  # [region][bar-1]
    key_per_region: Tuple[Scale, ...]

    def cell(self, region: int, bar: int) -> ChordCell:
        return self.cells[region][bar - 1]

    def scale_for_region(self, region: int) -> Scale:
        return self.key_per_region[region]


def validate_matrix(m: ChordProgressionMatrix) -> List[str]:
    """Return one report entry per violated invariant; empty means valid."""
    report: List[str] = []
    if len(m.cells) != N_REGIONS or len(m.key_per_region) != N_REGIONS:
        report.append(f"matrix must have {N_REGIONS} regions")
        return report
    for r, row in enumerate(m.cells):
        if len(row) != THEME_BARS:
            report.append(f"region {r}: expected {THEME_BARS} bars, got {len(row)}")
            continue
        minor_flavor_bars = 0
        major_scale = Scale(m.key_per_region[r].tonic, ScaleMode.MAJOR)
        for b, cell in enumerate(row, start=1):
            n = len(cell.alternatives)
            if not 1 <= n <= 5:
                report.append(f"region {r} bar {b}: cell size {n} outside 1..5")
                continue
            total = sum(cell.probabilities())
            if abs(total - 1.0) > PROB_SUM_TOL:
                report.append(f"region {r} bar {b}: probabilities sum to {total:g}")
            if n == 1:
                if cell.alternatives[0][1] != 1.0:
                    report.append(f"region {r} bar {b}: single alternative must have probability 1.0")
            else:
                for chord, p in cell.alternatives:
                    if not 0.1 <= p <= 0.8:
                        report.append(
                            f"region {r} bar {b}: probability {p:g} for {chord.function_label} outside [0.1, 0.8]"
                        )
            functions = {chord_function(c.function_label) for c, _ in cell.alternatives}
            if len(functions) > 1:
                report.append(f"region {r} bar {b}: mixed harmonic functions {sorted(functions)}")
            if b == THEME_BARS and functions - {"tonic"}:
                report.append(f"region {r} bar {b}: cadence requires tonic-function chords only")
            if b == THEME_BARS - 1 and functions - {"dominant", "subdominant"}:
                report.append(
                    f"region {r} bar {b}: cadence requires dominant/subdominant-function chords only"
                )
            if any(c in MINOR_FLAVOR_QUALITIES for c in (ch.quality for ch, _ in cell.alternatives)):
                minor_flavor_bars += 1
            if r >= 7:
                major_pcs = set(major_scale.degrees())
                for chord, _ in cell.alternatives:
                    if not chord_tones(chord) <= major_pcs:
                        report.append(
                            f"region {r} bar {b}: {chord.function_label} not in the major mode of the region key"
                        )
        if r <= 2 and minor_flavor_bars < 4:
            report.append(
                f"region {r}: only {minor_flavor_bars} bars offer a minor/diminished alternative (need >= 4)"
            )
    return report


_QUALITY_BY_NAME = {q.value: q for q in ChordQuality}
_MODE_BY_NAME = {s.value: s for s in ScaleMode}


def parse_matrix(text: str) -> ChordProgressionMatrix:
    """Parse the progression-matrix text format (see data/progressions.txt).

    Grammar, one directive per line, `#` comments allowed:
        region <index> key <note> <mode>
        bar <n>: <label> <quality> <root> <prob> [; <label> <quality> <root> <prob>]...
    """
    regions: Dict[int, List[Optional[ChordCell]]] = {}
    keys: Dict[int, Scale] = {}
    current: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("region "):
            parts = line.split()
            if len(parts) != 5 or parts[2] != "key":
                raise MatrixError(f"line {lineno}: expected 'region <idx> key <note> <mode>'")
            current = int(parts[1])
            if parts[3] not in NOTE_TO_PC:
                raise MatrixError(f"line {lineno}: unknown key note {parts[3]!r}")
            if parts[4] not in _MODE_BY_NAME:
                raise MatrixError(f"line {lineno}: unknown mode {parts[4]!r}")
            keys[current] = Scale(NOTE_TO_PC[parts[3]], _MODE_BY_NAME[parts[4]])
            regions[current] = [None] * THEME_BARS
        elif line.startswith("bar "):
            if current is None:
                raise MatrixError(f"line {lineno}: 'bar' directive before any 'region'")
            head, _, body = line.partition(":")
            bar = int(head.split()[1])
            if not 1 <= bar <= THEME_BARS:
                raise MatrixError(f"line {lineno}: bar index {bar} outside 1..{THEME_BARS}")
            alternatives: List[Tuple[Chord, float]] = []
            for entry in body.split(";"):
                fields = entry.split()
                if len(fields) != 4:
                    raise MatrixError(
                        f"line {lineno}: expected '<label> <quality> <root> <prob>', got {entry.strip()!r}"
                    )
                label, quality_name, root_name, prob_s = fields
                if quality_name not in _QUALITY_BY_NAME:
                    raise MatrixError(f"line {lineno}: unknown chord quality {quality_name!r}")
                if root_name not in NOTE_TO_PC:
                    raise MatrixError(f"line {lineno}: unknown root {root_name!r}")
                chord = Chord(NOTE_TO_PC[root_name], _QUALITY_BY_NAME[quality_name], label)
                alternatives.append((chord, float(prob_s)))
            regions[current][bar - 1] = ChordCell(tuple(alternatives))
        else:
            raise MatrixError(f"line {lineno}: unrecognized directive {line!r}")

    missing = sorted(set(range(N_REGIONS)) - set(regions))
    if missing:
        raise MatrixError(f"missing regions: {missing}")
    for r, row in regions.items():
        empty = [i + 1 for i, c in enumerate(row) if c is None]
        if empty:
            raise MatrixError(f"region {r}: missing bars {empty}")
    matrix = ChordProgressionMatrix(
        cells=tuple(tuple(regions[r]) for r in range(N_REGIONS)),
        key_per_region=tuple(keys[r] for r in range(N_REGIONS)),
    )
    return matrix


def load_matrix(document: bytes | str) -> ChordProgressionMatrix:
    """Parse and validate a matrix document; raises MatrixError on violations."""
    text = document.decode("utf-8") if isinstance(document, bytes) else document
    matrix = parse_matrix(text)
    report = validate_matrix(matrix)
    if report:
        raise MatrixError("invalid progression matrix:\n" + "\n".join(report))
    return matrix


def select_chord(
    m: ChordProgressionMatrix, region: int, bar: int, rng: random.Random
) -> Chord:
    """Sample one alternative from the (region, bar) cell by its weights."""
    cell = m.cell(region, bar)
    if len(cell.alternatives) == 1:
        return cell.alternatives[0][0]
    chords = cell.chords()
    weights = cell.probabilities()
    return rng.choices(chords, weights=weights, k=1)[0]


@dataclass(frozen=True)
class HarmonicState:
    """Position within the looping 8-bar theme."""

    theme_bar: int = 1
    current_chord: Optional[Chord] = None
    iteration_count: int = 0


def advance(state: HarmonicState) -> HarmonicState:
    """Move to the next theme bar; bar 8 wraps to 1 and bumps the iteration."""
    if state.theme_bar < THEME_BARS:
        return replace(state, theme_bar=state.theme_bar + 1)
    return replace(state, theme_bar=1, iteration_count=state.iteration_count + 1)


def expected_minor_fraction(m: ChordProgressionMatrix, region: int) -> float:
    """Expected fraction of minor/diminished-quality chords over the theme."""
    total = 0.0
    for bar in range(1, THEME_BARS + 1):
        cell = m.cell(region, bar)
        total += sum(p for c, p in cell.alternatives if c.quality in MINOR_FLAVOR_QUALITIES)
    return total / THEME_BARS
