"""affectmidi: deterministic valence/arousal-driven four-voice MIDI generation."""

from .affect import (
    AffectState,
    ArousalMelodyRegion,
    ArousalRhythmRegion,
    Interpolation,
    Trajectory,
    arousal_melody_region,
    arousal_rhythm_region,
    clamp_affect,
    sample_trajectory,
    valence_region,
)
from .render import BarPlan, Session, SessionConfig, TimedEvent, render_offline
from .smf import write_smf

__all__ = [
    "AffectState",
    "ArousalMelodyRegion",
    "ArousalRhythmRegion",
    "Interpolation",
    "Trajectory",
    "arousal_melody_region",
    "arousal_rhythm_region",
    "clamp_affect",
    "sample_trajectory",
    "valence_region",
    "BarPlan",
    "Session",
    "SessionConfig",
    "TimedEvent",
    "render_offline",
    "write_smf",
]

__version__ = "0.1.0"
