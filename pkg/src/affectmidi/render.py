"""Per-bar generation loop and the offline event-stream renderer.

A Session owns all musical state (harmonic position, previous voicing, alto
line, velocity memory) plus labeled RNG substreams, and turns one AffectState
into one BarPlan per bar. BarPlans are flattened into a time-sorted
TimedEvent stream, rendered offline to a Standard MIDI File or scheduled
live against the wall clock.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from . import dynamics, fixtures, harmony, voicing
from .affect import (
    AffectState,
    Trajectory,
    arousal_melody_region,
    arousal_rhythm_region,
    sample_trajectory,
    valence_region,
)
from .dynamics import LickBank, RegisterTable, SUBDIVISIONS
from .harmony import ChordProgressionMatrix, HarmonicState
from .rngstreams import RngStreams
from .theory import Chord
from .voicing import Motive, MotiveTransitionMatrix, NoteSet

PPQN = 480
TICKS_PER_BAR = 4 * PPQN
TICKS_PER_SUBDIVISION = TICKS_PER_BAR // SUBDIVISIONS

CHANNEL_PIANO = 0
CHANNEL_STRINGS = 1
CHANNEL_CLARINET = 2
CHANNEL_MARIMBA = 3

# General MIDI programs per channel.
GM_PROGRAMS = {
    CHANNEL_PIANO: 0,      # acoustic grand
    CHANNEL_STRINGS: 48,   # string ensemble
    CHANNEL_CLARINET: 71,  # clarinet
    CHANNEL_MARIMBA: 12,   # marimba
}


class EventKind(Enum):
    NOTE_ON = "note_on"
    NOTE_OFF = "note_off"
    TEMPO = "tempo"
    PROGRAM = "program"


@dataclass(frozen=True)
class TimedEvent:
    tick: int
    seconds: float
    kind: EventKind
    channel: int = 0
    pitch: int = 0
    velocity: int = 0
    tempo_bpm: float = 0.0
    program: int = 0


@dataclass(frozen=True)
class VoiceNote:
    """One scheduled note within a bar."""

    voice: str  # bass | tenor | alto | soprano | soprano_double
    onset: int  # subdivision 1-8
    pitches: Tuple[int, ...]
    duration: int  # in subdivisions, >= 1
    velocity: int
    channel: int


@dataclass(frozen=True)
class BarPlan:
    bar_index: int
    affect: AffectState
    tempo: float
    chord: Chord
    theme_bar: int
    register: Tuple[int, int]
    notes: Tuple[VoiceNote, ...]
    marimba_doubled: bool


@dataclass
class SessionConfig:
    seed: int = 0
    matrix: Optional[ChordProgressionMatrix] = None
    motives: Optional[dict] = None
    licks: Optional[LickBank] = None
    registers: Optional[RegisterTable] = None

    def resolve(self) -> "SessionConfig":
        return SessionConfig(
            seed=self.seed,
            matrix=self.matrix or fixtures.default_matrix(),
            motives=self.motives or fixtures.default_motives(),
            licks=self.licks or fixtures.default_licks(),
            registers=self.registers or fixtures.default_registers(),
        )


class Session:
    """Owns the generation loop's state; one instance per rendered piece."""

    def __init__(self, config: SessionConfig):
        cfg = config.resolve()
        self.config = cfg
        self.rng = RngStreams(cfg.seed)
        self.harmonic = HarmonicState()
        self.bar_index = 0
        self._prev_tenor: Optional[NoteSet] = None
        self._alto_pitch: Optional[int] = None
        self._alto_motive = Motive.HOLD
        self._prev_velocity: Optional[int] = None

    def generate_bar(self, affect: AffectState) -> BarPlan:
        cfg = self.config
        region = valence_region(affect)
        chord = harmony.select_chord(
            cfg.matrix, region, self.harmonic.theme_bar, self.rng.stream("chord")
        )
        tempo = dynamics.tempo_bpm(affect.arousal)
        register = dynamics.register_bounds(region, cfg.registers)
        scale = cfg.matrix.scale_for_region(region)

        if self._prev_tenor is None:
            self._prev_tenor = voicing.initial_tenor_voicing(chord, register)
        if self._alto_pitch is None:
            self._alto_pitch = voicing.initial_alto_pitch(chord, register)
        self._alto_pitch = voicing.clamp_into_register(self._alto_pitch, *register)

        vrange = dynamics.velocity_range(affect.arousal)
        base_velocity = dynamics.bar_velocity(
            vrange, self._prev_velocity, self.rng.stream("velocity")
        )
        self._prev_velocity = base_velocity

        notes: List[VoiceNote] = []

        # Bass: chord root in the fixed C3 octave, whole bar on beat 1.
        notes.append(
            VoiceNote(
                voice="bass",
                onset=1,
                pitches=(voicing.bass_note(chord),),
                duration=SUBDIVISIONS,
                velocity=base_velocity,
                channel=CHANNEL_STRINGS,
            )
        )

        # Tenor: least-dissimilar voicing vs the previous bar, whole bar.
        tenor = voicing.tenor_voicing(chord, self._prev_tenor, register)
        self._prev_tenor = tenor
        notes.append(
            VoiceNote(
                voice="tenor",
                onset=1,
                pitches=tenor.pitches,
                duration=SUBDIVISIONS,
                velocity=base_velocity,
                channel=CHANNEL_PIANO,
            )
        )

        # Alto: motive walk over its roughness-derived rhythm pattern.
        rough = dynamics.roughness(affect.arousal)
        alto_rhythm = dynamics.alto_pattern(rough, self.rng.stream("alto_rhythm"))
        alto_onsets = alto_rhythm.onset_subdivisions()
        motive_matrix: MotiveTransitionMatrix = cfg.motives[arousal_melody_region(affect)]
        for i, onset in enumerate(alto_onsets):
            pitch, motive = voicing.alto_next(
                self._alto_pitch,
                motive_matrix,
                self._alto_motive,
                chord,
                scale,
                register,
                self.rng.stream("motive"),
            )
            self._alto_pitch, self._alto_motive = pitch, motive
            next_onset = alto_onsets[i + 1] if i + 1 < len(alto_onsets) else SUBDIVISIONS + 1
            notes.append(
                VoiceNote(
                    voice="alto",
                    onset=onset,
                    pitches=(pitch,),
                    duration=next_onset - onset,
                    velocity=dynamics.jitter_velocity(
                        base_velocity, vrange, self.rng.stream("jitter")
                    ),
                    channel=CHANNEL_PIANO,
                )
            )

        # Soprano: random chord tones over the region's lick.
        lick = dynamics.soprano_pattern(
            arousal_rhythm_region(affect), cfg.licks, self.rng.stream("lick")
        )
        sop_onsets = lick.onset_subdivisions()
        sop_pitches = voicing.soprano_pitches(
            chord, len(sop_onsets), register, self.rng.stream("soprano")
        )
        doubled = dynamics.marimba_doubles(affect.valence)
        for i, (onset, pitch) in enumerate(zip(sop_onsets, sop_pitches)):
            next_onset = sop_onsets[i + 1] if i + 1 < len(sop_onsets) else SUBDIVISIONS + 1
            vel = dynamics.jitter_velocity(base_velocity, vrange, self.rng.stream("jitter"))
            notes.append(
                VoiceNote(
                    voice="soprano",
                    onset=onset,
                    pitches=(pitch,),
                    duration=next_onset - onset,
                    velocity=vel,
                    channel=CHANNEL_CLARINET,
                )
            )
            if doubled:
                notes.append(
                    VoiceNote(
                        voice="soprano_double",
                        onset=onset,
                        pitches=(pitch,),
                        duration=next_onset - onset,
                        velocity=vel,
                        channel=CHANNEL_MARIMBA,
                    )
                )

        plan = BarPlan(
            bar_index=self.bar_index,
            affect=affect,
            tempo=tempo,
            chord=chord,
            theme_bar=self.harmonic.theme_bar,
            register=register,
            notes=tuple(notes),
            marimba_doubled=doubled,
        )
        self.harmonic = harmony.advance(self.harmonic)
        self.bar_index += 1
        return plan


# Sorting priority: controls and note-offs precede note-ons at equal ticks so
# repeated pitches re-trigger cleanly.
_KIND_PRIORITY = {
    EventKind.TEMPO: 0,
    EventKind.PROGRAM: 1,
    EventKind.NOTE_OFF: 2,
    EventKind.NOTE_ON: 3,
}


def _sort_events(events: List[TimedEvent]) -> List[TimedEvent]:
    return sorted(
        events, key=lambda e: (e.tick, _KIND_PRIORITY[e.kind], e.channel, e.pitch)
    )


def setup_events() -> List[TimedEvent]:
    """Program-change messages establishing the fixed channel mapping."""
    return [
        TimedEvent(tick=0, seconds=0.0, kind=EventKind.PROGRAM, channel=ch, program=prog)
        for ch, prog in sorted(GM_PROGRAMS.items())
    ]


def bar_events(plan: BarPlan, start_tick: int, start_seconds: float) -> List[TimedEvent]:
    """NoteOn/NoteOff pairs for one BarPlan, at absolute ticks/seconds."""
    sec_per_tick = 60.0 / (plan.tempo * PPQN)
    out: List[TimedEvent] = []
    for note in plan.notes:
        on_tick = start_tick + (note.onset - 1) * TICKS_PER_SUBDIVISION
        off_tick = on_tick + note.duration * TICKS_PER_SUBDIVISION
        for pitch in note.pitches:
            out.append(
                TimedEvent(
                    tick=on_tick,
                    seconds=start_seconds + (on_tick - start_tick) * sec_per_tick,
                    kind=EventKind.NOTE_ON,
                    channel=note.channel,
                    pitch=pitch,
                    velocity=note.velocity,
                )
            )
            out.append(
                TimedEvent(
                    tick=off_tick,
                    seconds=start_seconds + (off_tick - start_tick) * sec_per_tick,
                    kind=EventKind.NOTE_OFF,
                    channel=note.channel,
                    pitch=pitch,
                    velocity=0,
                )
            )
    return out


def render_offline(session: Session, trajectory: Trajectory, bars: int) -> List[TimedEvent]:
    """Render `bars` bars, sampling the trajectory at each bar's start time."""
    if bars < 1:
        raise ValueError("bars must be >= 1")
    events: List[TimedEvent] = list(setup_events())
    tick = 0
    seconds = 0.0
    prev_tempo: Optional[float] = None
    for _ in range(bars):
        affect = sample_trajectory(trajectory, seconds)
        plan = session.generate_bar(affect)
        if prev_tempo is None or plan.tempo != prev_tempo:
            events.append(
                TimedEvent(
                    tick=tick, seconds=seconds, kind=EventKind.TEMPO, tempo_bpm=plan.tempo
                )
            )
            prev_tempo = plan.tempo
        events.extend(bar_events(plan, tick, seconds))
        tick += TICKS_PER_BAR
        seconds += 4 * 60.0 / plan.tempo
    return _sort_events(events)


def stream_duration_seconds(events: Sequence[TimedEvent]) -> float:
    return max((e.seconds for e in events), default=0.0)


def audit_note_pairing(events: Sequence[TimedEvent]) -> List[str]:
    """Report unmatched NoteOn/NoteOff events; empty means fully paired."""
    open_notes: dict = {}
    problems: List[str] = []
    for e in events:
        key = (e.channel, e.pitch)
        if e.kind is EventKind.NOTE_ON:
            open_notes[key] = open_notes.get(key, 0) + 1
        elif e.kind is EventKind.NOTE_OFF:
            if open_notes.get(key, 0) <= 0:
                problems.append(f"NoteOff without NoteOn: ch{e.channel} pitch {e.pitch} @ {e.tick}")
            else:
                open_notes[key] -= 1
    for (ch, pitch), n in open_notes.items():
        if n:
            problems.append(f"{n} unmatched NoteOn: ch{ch} pitch {pitch}")
    return problems
