"""Music-theory primitives: pitches, scales, chords, diatonic steps.

Pitch is a bare MIDI number (0-127, C4 = 60). Chords are root pitch class +
quality; scales are tonic pitch class + mode with exactly seven degrees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Tuple


class TheoryError(ValueError):
    pass


MIDI_MIN = 0
MIDI_MAX = 127

NOTE_TO_PC = {
    "C": 0, "C#": 1, "Db": 1, "D": 2, "D#": 3, "Eb": 3, "E": 4,
    "F": 5, "F#": 6, "Gb": 6, "G": 7, "G#": 8, "Ab": 8, "A": 9,
    "A#": 10, "Bb": 10, "B": 11,
}

PC_NAMES = ["C", "C#", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B"]

_NOTE_RE = re.compile(r"^([A-Ga-g])([#b]?)(-?\d+)$")


def note_name_to_midi(name: str) -> int:
    """Parse e.g. 'C4' -> 60, 'Eb3' -> 51. C4 = 60 convention."""
    m = _NOTE_RE.match(name.strip())
    if not m:
        raise TheoryError(f"malformed note name: {name!r}")
    letter, accidental, octave = m.groups()
    pc = NOTE_TO_PC[letter.upper() + accidental]
    midi = pc + 12 * (int(octave) + 1)
    if not MIDI_MIN <= midi <= MIDI_MAX:
        raise TheoryError(f"note {name!r} outside MIDI range: {midi}")
    return midi


def midi_to_note_name(midi: int) -> str:
    return f"{PC_NAMES[midi % 12]}{midi // 12 - 1}"


class ChordQuality(Enum):
    MAJOR = "Major"
    MINOR = "Minor"
    DIMINISHED = "Diminished"
    AUGMENTED = "Augmented"
    DOMINANT7 = "Dominant7"
    MAJOR7 = "Major7"
    MINOR7 = "Minor7"
    HALF_DIMINISHED7 = "HalfDiminished7"


_QUALITY_INTERVALS = {
    ChordQuality.MAJOR: (0, 4, 7),
    ChordQuality.MINOR: (0, 3, 7),
    ChordQuality.DIMINISHED: (0, 3, 6),
    ChordQuality.AUGMENTED: (0, 4, 8),
    ChordQuality.DOMINANT7: (0, 4, 7, 10),
    ChordQuality.MAJOR7: (0, 4, 7, 11),
    ChordQuality.MINOR7: (0, 3, 7, 10),
    ChordQuality.HALF_DIMINISHED7: (0, 3, 6, 10),
}

MINOR_FLAVOR_QUALITIES = frozenset({
    ChordQuality.MINOR,
    ChordQuality.DIMINISHED,
    ChordQuality.MINOR7,
    ChordQuality.HALF_DIMINISHED7,
})


@dataclass(frozen=True)
class Chord:
    root: int  # pitch class 0-11
    quality: ChordQuality
    function_label: str = ""  # roman-numeral tag, e.g. "I", "iv", "V7"

    def __post_init__(self):
        if not 0 <= self.root <= 11:
            raise TheoryError(f"chord root must be a pitch class 0-11, got {self.root}")

    def name(self) -> str:
        return f"{PC_NAMES[self.root]} {self.quality.value}"


def chord_tones(chord: Chord) -> FrozenSet[int]:
    """Pitch-class set of the chord (3 tones for triads, 4 for sevenths)."""
    return frozenset((chord.root + iv) % 12 for iv in _QUALITY_INTERVALS[chord.quality])


def chord_tone_order(chord: Chord) -> Tuple[int, ...]:
    """Chord tones as pitch classes in stacked-third order from the root."""
    return tuple((chord.root + iv) % 12 for iv in _QUALITY_INTERVALS[chord.quality])


class ScaleMode(Enum):
    MAJOR = "Major"
    NATURAL_MINOR = "NaturalMinor"
    HARMONIC_MINOR = "HarmonicMinor"


_MODE_STEPS = {
    ScaleMode.MAJOR: (0, 2, 4, 5, 7, 9, 11),
    ScaleMode.NATURAL_MINOR: (0, 2, 3, 5, 7, 8, 10),
    ScaleMode.HARMONIC_MINOR: (0, 2, 3, 5, 7, 8, 11),
}


@dataclass(frozen=True)
class Scale:
    tonic: int  # pitch class 0-11
    mode: ScaleMode

    def __post_init__(self):
        if not 0 <= self.tonic <= 11:
            raise TheoryError(f"scale tonic must be a pitch class 0-11, got {self.tonic}")

    def degrees(self) -> Tuple[int, ...]:
        return tuple((self.tonic + s) % 12 for s in _MODE_STEPS[self.mode])

    def contains(self, midi: int) -> bool:
        return midi % 12 in self.degrees()

    def members_in_range(self, lo: int, hi: int) -> List[int]:
        degs = set(self.degrees())
        return [p for p in range(lo, hi + 1) if p % 12 in degs]


def snap_to_scale(pitch: int, scale: Scale) -> int:
    """Nearest scale member, preferring the one below on non-members/ties."""
    if scale.contains(pitch):
        return pitch
    for delta in range(1, 12):
        if pitch - delta >= MIDI_MIN and scale.contains(pitch - delta):
            return pitch - delta
        if pitch + delta <= MIDI_MAX and scale.contains(pitch + delta):
            return pitch + delta
    raise TheoryError("no scale member in MIDI range")  # unreachable for 7-tone scales


def diatonic_step(pitch: int, scale: Scale, direction: int) -> int:
    """Adjacent scale member above (+1) or below (-1) of the snapped pitch.

    Non-members snap to the nearest member below first. A step past the MIDI
    range saturates at the nearest in-range scale member.
    """
    if direction not in (-1, 1):
        raise TheoryError(f"direction must be -1 or +1, got {direction}")
    p = snap_to_scale(pitch, scale)
    q = p + direction
    while MIDI_MIN <= q <= MIDI_MAX:
        if scale.contains(q):
            return q
        q += direction
    return p  # saturate at the edge of the MIDI range


def realize_pitch_class_in_range(pc: int, lo: int, hi: int) -> List[int]:
    """All MIDI pitches with the given pitch class inside [lo, hi]."""
    return [p for p in range(lo, hi + 1) if p % 12 == pc]
