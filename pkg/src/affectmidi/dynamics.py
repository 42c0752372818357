"""Scalar parameter mappings: tempo, rhythm, roughness, velocity, register.

All mappings are the affine curves anchored at the fixed endpoints:
tempo 60-200 bpm, velocity range [40,70]-[85,115], register [C1,C5]-[G3,C6],
roughness floored at 0.3, marimba doubling above valence 0.8.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .affect import ArousalRhythmRegion
from .theory import note_name_to_midi

log = logging.getLogger(__name__)

SUBDIVISIONS = 8  # eighth-note grid of a 4/4 bar

TEMPO_MIN = 60.0
TEMPO_MAX = 200.0

VELOCITY_LO_BASE = 40
VELOCITY_HI_BASE = 70
VELOCITY_RISE = 45

ROUGHNESS_FLOOR = 0.3
MARIMBA_VALENCE_THRESHOLD = 0.8

INTER_BAR_VELOCITY_CAP = 15  # max change of the per-bar base velocity
NOTE_JITTER = 5  # per-note velocity jitter around the bar base


class FixtureError(ValueError):
    pass


def tempo_bpm(arousal: float) -> float:
    """Linear 60 bpm at arousal 0 up to 200 bpm at arousal 1."""
    return TEMPO_MIN + (TEMPO_MAX - TEMPO_MIN) * arousal


@dataclass(frozen=True)
class VelocityRange:
    lo: int
    hi: int


def _round_half_up(x: float) -> int:
    return int(x + 0.5)


def velocity_range(arousal: float) -> VelocityRange:
    """Permissible per-bar base velocities: [40,70] rising to [85,115]."""
    return VelocityRange(
        lo=_round_half_up(VELOCITY_LO_BASE + VELOCITY_RISE * arousal),
        hi=_round_half_up(VELOCITY_HI_BASE + VELOCITY_RISE * arousal),
    )


def bar_velocity(rng_range: VelocityRange, prev: Optional[int], rng: random.Random) -> int:
    """Uniform base velocity for a bar, capped to within +/-15 of the previous bar.

    When the cap and the current range cannot both hold (a large arousal
    jump), the cap wins and the conflict is logged.
    """
    v = rng.randint(rng_range.lo, rng_range.hi)
    if prev is not None:
        capped = min(max(v, prev - INTER_BAR_VELOCITY_CAP), prev + INTER_BAR_VELOCITY_CAP)
        if not rng_range.lo <= capped <= rng_range.hi:
            log.warning(
                "velocity cap conflicts with range [%d, %d]: prev %d -> %d",
                rng_range.lo, rng_range.hi, prev, capped,
            )
        v = capped
    return min(127, max(1, v))


def jitter_velocity(base: int, rng_range: VelocityRange, rng: random.Random) -> int:
    """Per-note jitter of +/-5 around the bar base, kept near the range."""
    v = base + rng.randint(-NOTE_JITTER, NOTE_JITTER)
    v = min(rng_range.hi + NOTE_JITTER, max(rng_range.lo - NOTE_JITTER, v))
    return min(127, max(1, v))


def roughness(arousal: float) -> float:
    """Rhythmic roughness proxy: 1 - arousal, floored at 0.3."""
    return max(ROUGHNESS_FLOOR, 1.0 - arousal)


@dataclass(frozen=True)
class RhythmPattern:
    """Onset flags for the eight eighth-note subdivisions of a bar."""

    onsets: Tuple[bool, ...]

    def __post_init__(self):
        if len(self.onsets) != SUBDIVISIONS:
            raise FixtureError(f"rhythm pattern must have {SUBDIVISIONS} slots")

    def onset_subdivisions(self) -> List[int]:
        """1-based subdivision indices that carry a note onset."""
        return [i + 1 for i, on in enumerate(self.onsets) if on]

    def count(self) -> int:
        return sum(self.onsets)


def alto_pattern(rough: float, rng: random.Random) -> RhythmPattern:
    """Alto rhythm from roughness: n = clamp(round(8*(1-rough)), 1, 8) onsets.

    Subdivision 1 is always active; the remaining onsets are drawn uniformly
    without replacement from subdivisions 2-8.
    """
    n = min(SUBDIVISIONS, max(1, _round_half_up(SUBDIVISIONS * (1.0 - rough))))
    slots = [True] + [False] * (SUBDIVISIONS - 1)
    for idx in rng.sample(range(1, SUBDIVISIONS), n - 1):
        slots[idx] = True
    return RhythmPattern(tuple(slots))


@dataclass(frozen=True)
class LickBank:
    """Two distinct pre-authored soprano patterns per arousal rhythm region."""

    patterns: Dict[ArousalRhythmRegion, Tuple[RhythmPattern, RhythmPattern]]


def parse_lick_bank(text: str) -> LickBank:
    """Parse the lick-bank text format (see data/licks.txt)."""
    collected: Dict[ArousalRhythmRegion, List[RhythmPattern]] = {r: [] for r in ArousalRhythmRegion}
    by_name = {r.value: r for r in ArousalRhythmRegion}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, body = line.partition(":")
        name = name.strip()
        if name not in by_name:
            raise FixtureError(f"line {lineno}: unknown region {name!r}")
        digits = body.strip()
        if len(digits) != SUBDIVISIONS or set(digits) - {"0", "1"}:
            raise FixtureError(f"line {lineno}: pattern must be {SUBDIVISIONS} binary digits")
        collected[by_name[name]].append(RhythmPattern(tuple(d == "1" for d in digits)))
    for region, pats in collected.items():
        if len(pats) != 2:
            raise FixtureError(f"region {region.value}: expected 2 licks, got {len(pats)}")
        if pats[0] == pats[1]:
            raise FixtureError(f"region {region.value}: licks must be distinct")
    return LickBank({r: (p[0], p[1]) for r, p in collected.items()})


def soprano_pattern(
    region: ArousalRhythmRegion, bank: LickBank, rng: random.Random
) -> RhythmPattern:
    """One of the region's two licks with equal probability."""
    return bank.patterns[region][rng.randrange(2)]


@dataclass(frozen=True)
class RegisterTable:
    """Upper-voice register bounds (low, high) per valence region."""

    bounds: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if len(self.bounds) != 10:
            raise FixtureError("register table must have 10 rows")
        for r, (lo, hi) in enumerate(self.bounds):
            if lo >= hi:
                raise FixtureError(f"region {r}: low {lo} must be below high {hi}")
        lows = [b[0] for b in self.bounds]
        highs = [b[1] for b in self.bounds]
        if lows != sorted(lows) or highs != sorted(highs):
            raise FixtureError("register bounds must be monotone nondecreasing across regions")


def _parse_bound(token: str) -> int:
    """Register bound: raw MIDI number or note name (C4 = 60)."""
    try:
        return int(token)
    except ValueError:
        return note_name_to_midi(token)


def parse_register_table(text: str) -> RegisterTable:
    """Parse the register-table text format (see data/registers.txt)."""
    rows: Dict[int, Tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, body = line.partition(":")
        region = int(head)
        parts = body.split()
        if len(parts) != 2:
            raise FixtureError(f"line {lineno}: expected '<region>: <low> <high>'")
        rows[region] = (_parse_bound(parts[0]), _parse_bound(parts[1]))
    if set(rows) != set(range(10)):
        raise FixtureError(f"register table must define regions 0-9, got {sorted(rows)}")
    return RegisterTable(tuple(rows[r] for r in range(10)))


def register_bounds(region: int, table: RegisterTable) -> Tuple[int, int]:
    return table.bounds[region]


def marimba_doubles(valence: float) -> bool:
    """Marimba doubles the clarinet strictly above valence 0.8."""
    return valence > MARIMBA_VALENCE_THRESHOLD
