"""Four-voice resolution: bass root, tenor voicing, alto motives, soprano.

Tenor voicings minimize the cross-sum dissimilarity against the previous
voicing. The alto walks a Markov chain over four motives (diatonic step
down/up, hold, jump to chord tone); the soprano is a random chord-tone line.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .affect import ArousalMelodyRegion
from .theory import (
    Chord,
    Scale,
    chord_tone_order,
    chord_tones,
    diatonic_step,
    realize_pitch_class_in_range,
)

log = logging.getLogger(__name__)

ROW_SUM_TOL = 1e-9


class MotiveMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class NoteSet:
    """A simultaneous voicing: sorted, duplicate-free MIDI pitches."""

    pitches: Tuple[int, ...]

    def __post_init__(self):
        if not self.pitches:
            raise ValueError("NoteSet must be nonempty")
        if list(self.pitches) != sorted(set(self.pitches)):
            raise ValueError(f"NoteSet pitches must be sorted and distinct: {self.pitches}")
        if not all(0 <= p <= 127 for p in self.pitches):
            raise ValueError(f"NoteSet pitches outside MIDI range: {self.pitches}")


def dissimilarity(n1: NoteSet, n2: NoteSet) -> int:
    """Cross-sum of absolute pitch differences: sum_i sum_j |n1_i - n2_j|.

    Deliberately the full cross product, not a pairwise matching; identical
    multi-note sets therefore have positive self-dissimilarity.
    """
    return sum(abs(a - b) for a in n1.pitches for b in n2.pitches)


def enumerate_voicings(chord: Chord, lo: int, hi: int) -> List[NoteSet]:
    """All closed-position voicings (every inversion, every octave) in [lo, hi]."""
    tones = chord_tone_order(chord)
    k = len(tones)
    out: List[NoteSet] = []
    seen = set()
    for inversion in range(k):
        order = tones[inversion:] + tones[:inversion]
        for bass in range(lo, hi + 1):
            if bass % 12 != order[0]:
                continue
            pitches = [bass]
            ok = True
            for pc in order[1:]:
                nxt = pitches[-1] + (pc - pitches[-1]) % 12
                if nxt == pitches[-1]:
                    nxt += 12
                if nxt > hi:
                    ok = False
                    break
                pitches.append(nxt)
            if ok:
                tup = tuple(pitches)
                if tup not in seen:
                    seen.add(tup)
                    out.append(NoteSet(tup))
    return out


def tenor_voicing(
    chord: Chord,
    prev: NoteSet,
    register: Tuple[int, int],
    rng: Optional[random.Random] = None,
) -> NoteSet:
    """Least-dissimilar closed voicing of `chord` within the register.

    Ties break toward the lowest bass pitch, then lexicographic pitch order.
    If no closed voicing fits the register it is widened an octave at a time
    (logged as a warning) until one does.
    """
    lo, hi = register
    if lo >= hi:
        raise ValueError(f"register low {lo} must be below high {hi}")
    candidates = enumerate_voicings(chord, lo, hi)
    while not candidates:
        lo = max(0, lo - 12)
        hi = min(127, hi + 12)
        log.warning("no %s voicing fits register; widening to [%d, %d]", chord.name(), lo, hi)
        candidates = enumerate_voicings(chord, lo, hi)
    return min(candidates, key=lambda c: (dissimilarity(prev, c), c.pitches))


def bass_note(chord: Chord) -> int:
    """Chord root realized in the fixed bass octave starting at C3 ([48, 59])."""
    return 48 + chord.root


class Motive(Enum):
    STEP_DOWN = "step_down"
    STEP_UP = "step_up"
    HOLD = "hold"
    CHORD_TONE = "chord_tone"


MOTIVE_ORDER = (Motive.STEP_DOWN, Motive.STEP_UP, Motive.HOLD, Motive.CHORD_TONE)


@dataclass(frozen=True)
class MotiveTransitionMatrix:
    """Row-stochastic 4x4 matrix over motives for one arousal melody region."""

    rows: Tuple[Tuple[float, ...], ...]  # indexed by MOTIVE_ORDER
    region: ArousalMelodyRegion

    def row_for(self, motive: Motive) -> Tuple[float, ...]:
        return self.rows[MOTIVE_ORDER.index(motive)]


def validate_motive_matrix(m: MotiveTransitionMatrix) -> None:
    if len(m.rows) != 4 or any(len(r) != 4 for r in m.rows):
        raise MotiveMatrixError("motive matrix must be 4x4")
    for i, row in enumerate(m.rows):
        if any(p < 0 for p in row):
            raise MotiveMatrixError(f"row {MOTIVE_ORDER[i].value}: negative probability")
        if abs(sum(row) - 1.0) > ROW_SUM_TOL:
            raise MotiveMatrixError(f"row {MOTIVE_ORDER[i].value}: sums to {sum(row):g}")


_ROW_LABELS = {m.value: i for i, m in enumerate(MOTIVE_ORDER)}
_REGION_LABELS = {"lower": ArousalMelodyRegion.LOWER, "upper": ArousalMelodyRegion.UPPER}


def parse_motive_matrices(text: str) -> Dict[ArousalMelodyRegion, MotiveTransitionMatrix]:
    """Parse the motive-matrix text format (see data/motives.txt)."""
    matrices: Dict[ArousalMelodyRegion, MotiveTransitionMatrix] = {}
    current: Optional[str] = None
    rows: Dict[int, Tuple[float, ...]] = {}

    def finish():
        if current is None:
            return
        if set(rows) != {0, 1, 2, 3}:
            raise MotiveMatrixError(f"matrix {current!r}: missing rows")
        m = MotiveTransitionMatrix(
            rows=tuple(rows[i] for i in range(4)), region=_REGION_LABELS[current]
        )
        validate_motive_matrix(m)
        matrices[m.region] = m

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("matrix "):
            finish()
            current = line.split()[1]
            if current not in _REGION_LABELS:
                raise MotiveMatrixError(f"line {lineno}: unknown region {current!r}")
            rows = {}
        else:
            label, _, body = line.partition(":")
            label = label.strip()
            if label not in _ROW_LABELS:
                raise MotiveMatrixError(f"line {lineno}: unknown motive row {label!r}")
            values = tuple(float(x) for x in body.split())
            if len(values) != 4:
                raise MotiveMatrixError(f"line {lineno}: expected 4 probabilities")
            rows[_ROW_LABELS[label]] = values
    finish()
    if set(matrices) != set(_REGION_LABELS.values()):
        raise MotiveMatrixError("file must define both lower and upper matrices")
    return matrices


def sample_motive(
    matrix: MotiveTransitionMatrix, prev_motive: Motive, rng: random.Random
) -> Motive:
    row = matrix.row_for(prev_motive)
    return rng.choices(MOTIVE_ORDER, weights=row, k=1)[0]


def clamp_into_register(pitch: int, lo: int, hi: int) -> int:
    """Shift a pitch by octaves until it lies inside [lo, hi]."""
    while pitch < lo:
        pitch += 12
    while pitch > hi:
        pitch -= 12
    if pitch < lo:  # register narrower than an octave; take the nearer bound
        pitch = lo if abs(pitch + 12 - hi) > abs(pitch - lo) else hi
    return pitch


def alto_next(
    prev: int,
    matrix: MotiveTransitionMatrix,
    prev_motive: Motive,
    chord: Chord,
    scale: Scale,
    register: Tuple[int, int],
    rng: random.Random,
) -> Tuple[int, Motive]:
    """Advance the alto line by one motive sampled from the transition matrix."""
    lo, hi = register
    motive = sample_motive(matrix, prev_motive, rng)
    if motive is Motive.STEP_DOWN:
        pitch = diatonic_step(prev, scale, -1)
    elif motive is Motive.STEP_UP:
        pitch = diatonic_step(prev, scale, +1)
    elif motive is Motive.HOLD:
        pitch = prev
    else:
        candidates = sorted(
            p for pc in chord_tones(chord) for p in realize_pitch_class_in_range(pc, lo, hi)
        )
        if candidates:
            pitch = rng.choice(candidates)
        else:
            pitch = prev
    return clamp_into_register(pitch, lo, hi), motive


def soprano_pitches(
    chord: Chord, onset_count: int, register: Tuple[int, int], rng: random.Random
) -> List[int]:
    """One uniformly random in-register chord tone per soprano onset."""
    lo, hi = register
    candidates = sorted(
        p for pc in chord_tones(chord) for p in realize_pitch_class_in_range(pc, lo, hi)
    )
    if not candidates:
        candidates = [clamp_into_register(60 + chord.root, lo, hi)]
    return [rng.choice(candidates) for _ in range(onset_count)]


def initial_alto_pitch(chord: Chord, register: Tuple[int, int]) -> int:
    """Chord tone nearest the register midpoint (session start condition)."""
    lo, hi = register
    mid = (lo + hi) // 2
    candidates = sorted(
        p for pc in chord_tones(chord) for p in realize_pitch_class_in_range(pc, lo, hi)
    )
    if not candidates:
        return mid
    return min(candidates, key=lambda p: (abs(p - mid), p))


def initial_tenor_voicing(chord: Chord, register: Tuple[int, int]) -> NoteSet:
    """Root-position voicing nearest the register center (session start)."""
    lo, hi = register
    mid = (lo + hi) / 2
    candidates = [
        v for v in enumerate_voicings(chord, lo, hi) if v.pitches[0] % 12 == chord.root
    ]
    if not candidates:
        candidates = enumerate_voicings(chord, max(0, lo - 12), min(127, hi + 12))
    return min(candidates, key=lambda v: (abs(sum(v.pitches) / len(v.pitches) - mid), v.pitches))
