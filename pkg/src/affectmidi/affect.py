"""Affect state (valence/arousal), region quantization and trajectories.

Everything downstream keys off an AffectState: a (valence, arousal) pair in
[0, 1]^2. Region helpers quantize it into the discrete bands the rule tables
are indexed by.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple


class AffectError(ValueError):
    """Invalid affect input (non-finite values, malformed trajectories)."""


@dataclass(frozen=True)
class AffectState:
    valence: float
    arousal: float


def clamp_affect(valence: float, arousal: float) -> AffectState:
    """Build an AffectState, clamping both coordinates into [0, 1].

    Out-of-range values are clamped rather than rejected: live sensor
    streams can drift slightly outside the nominal range. Non-finite input
    is a hard error.
    """
    if not (math.isfinite(valence) and math.isfinite(arousal)):
        raise AffectError(f"non-finite affect input: ({valence}, {arousal})")
    return AffectState(
        valence=min(1.0, max(0.0, float(valence))),
        arousal=min(1.0, max(0.0, float(arousal))),
    )


def valence_region(state: AffectState) -> int:
    """Quantize valence into one of ten regions, index 0-9.

    Half-open bands [k/10, (k+1)/10), with the top band closed at 1.0.
    """
    return min(int(state.valence * 10), 9)


class ArousalRhythmRegion(Enum):
    LOW = "low"
    MODERATE = "moderate"
    HIGH = "high"


def arousal_rhythm_region(state: AffectState) -> ArousalRhythmRegion:
    """Three-band arousal split used by the soprano rhythm lick bank."""
    if state.arousal < 0.4:
        return ArousalRhythmRegion.LOW
    if state.arousal < 0.75:
        return ArousalRhythmRegion.MODERATE
    return ArousalRhythmRegion.HIGH


class ArousalMelodyRegion(Enum):
    LOWER = "lower"
    UPPER = "upper"


def arousal_melody_region(state: AffectState) -> ArousalMelodyRegion:
    """Two equal arousal bands selecting the alto motive transition matrix."""
    if state.arousal < 0.5:
        return ArousalMelodyRegion.LOWER
    return ArousalMelodyRegion.UPPER


class Interpolation(Enum):
    HOLD = "hold"
    LINEAR = "linear"


@dataclass(frozen=True)
class Trajectory:
    """Timed affect path: (time_offset_seconds, state) points, first at t=0."""

    points: Tuple[Tuple[float, AffectState], ...]
    interpolation: Interpolation = Interpolation.HOLD

    def __post_init__(self):
        if not self.points:
            raise AffectError("trajectory must contain at least one point")
        if self.points[0][0] != 0.0:
            raise AffectError("trajectory must start at time offset 0")
        times = [t for t, _ in self.points]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise AffectError("trajectory time offsets must be strictly increasing")


def sample_trajectory(traj: Trajectory, t: float) -> AffectState:
    """Evaluate a trajectory at time t >= 0.

    Hold mode returns the most recent point; Linear interpolates between
    bracketing points. Past the last point both modes hold the final state.
    """
    if t < 0:
        raise AffectError(f"negative sample time {t}")
    points = traj.points
    if t >= points[-1][0]:
        return points[-1][1]
    # index of the last point at or before t
    idx = 0
    for i, (pt, _) in enumerate(points):
        if pt <= t:
            idx = i
        else:
            break
    if traj.interpolation is Interpolation.HOLD:
        return points[idx][1]
    t0, s0 = points[idx]
    t1, s1 = points[idx + 1]
    frac = (t - t0) / (t1 - t0)
    return AffectState(
        valence=s0.valence + frac * (s1.valence - s0.valence),
        arousal=s0.arousal + frac * (s1.arousal - s0.arousal),
    )


def parse_trajectory_file(text: str, interpolation: Interpolation = Interpolation.HOLD) -> Trajectory:
    """Parse the trajectory text format: `time_seconds,valence,arousal` lines.

    `#` starts a comment; an optional header line naming the columns is
    skipped if present.
    """
    points: List[Tuple[float, AffectState]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise AffectError(f"line {lineno}: expected 3 comma-separated fields, got {len(parts)}")
        if lineno == 1 or not points:
            try:
                float(parts[0])
            except ValueError:
                continue  # header line
        t, v, a = (float(p) for p in parts)
        points.append((t, clamp_affect(v, a)))
    return Trajectory(points=tuple(points), interpolation=interpolation)


class AffectMailbox:
    """Single-slot latest-value-wins cell between control service and renderer.

    The generation loop reads it exactly once per bar boundary; writers
    overwrite freely. A lock keeps the (v, a) pair atomic.
    """

    def __init__(self, initial: AffectState):
        self._lock = threading.Lock()
        self._state = initial

    def put(self, state: AffectState) -> None:
        with self._lock:
            self._state = state

    def get(self) -> AffectState:
        with self._lock:
            return self._state
