"""Real-time scheduling: wall-clock event emission against a MIDI sink.

The loop owns all musical state. It reads the affect mailbox exactly once
per bar boundary, generates the bar, then sleeps until each event's
scheduled time before emitting it. Stopping mid-bar floods NoteOffs so no
note is left sounding.
"""

from __future__ import annotations

import threading
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Protocol, Tuple

from .affect import AffectMailbox
from .render import (
    BarPlan,
    EventKind,
    Session,
    TimedEvent,
    bar_events,
    setup_events,
    _sort_events,
)


class MidiSink(Protocol):
    def send(self, event: TimedEvent) -> None: ...
    def close(self) -> None: ...


class SinkUnavailableError(RuntimeError):
    pass


@dataclass
class RecordingSink:
    """Test/audit sink: records (wall-clock time, event) pairs."""

    records: List[Tuple[float, TimedEvent]] = field(default_factory=list)

    def send(self, event: TimedEvent) -> None:
        self.records.append((time.monotonic(), event))

    def close(self) -> None:
        pass


class RtMidiSink:
    """System MIDI output via mido/python-rtmidi, when installed."""

    def __init__(self, port_name: str):
        try:
            import mido
        except ImportError as exc:
            raise SinkUnavailableError(
                "live MIDI output requires the 'mido' and 'python-rtmidi' packages"
            ) from exc
        try:
            self._port = mido.open_output(port_name)
        except Exception as exc:
            raise SinkUnavailableError(f"cannot open MIDI port {port_name!r}: {exc}") from exc
        self._mido = mido

    def send(self, event: TimedEvent) -> None:
        m = self._mido
        if event.kind is EventKind.NOTE_ON:
            self._port.send(m.Message("note_on", channel=event.channel,
                                      note=event.pitch, velocity=event.velocity))
        elif event.kind is EventKind.NOTE_OFF:
            self._port.send(m.Message("note_off", channel=event.channel,
                                      note=event.pitch, velocity=0))
        elif event.kind is EventKind.PROGRAM:
            self._port.send(m.Message("program_change", channel=event.channel,
                                      program=event.program))
        # tempo is implicit in wall-clock scheduling; nothing to send

    def close(self) -> None:
        self._port.close()


def _sleep_until(deadline: float) -> None:
    """Sleep until a monotonic deadline; final ~2 ms busy-waits for accuracy."""
    while True:
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            return
        if remaining > 0.002:
            time.sleep(remaining - 0.002)
        else:
            pass  # spin


def run_live(
    session: Session,
    mailbox: AffectMailbox,
    sink: MidiSink,
    stop: Optional[threading.Event] = None,
    max_bars: Optional[int] = None,
    on_bar: Optional[Callable[[BarPlan, float], None]] = None,
) -> None:
    """Generate and emit bars in real time until stopped.

    `on_bar` is called at each bar boundary with the plan and its scheduled
    wall-clock start (monotonic seconds), before the bar's events play.
    """
    stop = stop or threading.Event()
    # Multiset: distinct voices may sound the same channel/pitch at once.
    sounding: Counter = Counter()
    start = time.monotonic()
    try:
        for e in setup_events():
            sink.send(e)
        bar_start = start
        tick = 0
        bars_done = 0
        prev_tempo: Optional[float] = None
        while not stop.is_set() and (max_bars is None or bars_done < max_bars):
            affect = mailbox.get()  # the single per-bar mailbox read
            plan = session.generate_bar(affect)
            if on_bar is not None:
                on_bar(plan, bar_start)
            if prev_tempo is None or plan.tempo != prev_tempo:
                sink.send(TimedEvent(tick=tick, seconds=bar_start - start,
                                     kind=EventKind.TEMPO, tempo_bpm=plan.tempo))
                prev_tempo = plan.tempo
            events = _sort_events(bar_events(plan, tick, bar_start - start))
            for e in events:
                _sleep_until(start + e.seconds)
                if stop.is_set():
                    break
                sink.send(e)
                key = (e.channel, e.pitch)
                if e.kind is EventKind.NOTE_ON:
                    sounding[key] += 1
                elif e.kind is EventKind.NOTE_OFF and sounding[key] > 0:
                    sounding[key] -= 1
            bar_duration = 4 * 60.0 / plan.tempo
            bar_start += bar_duration
            tick += 4 * 480
            bars_done += 1
            if not stop.is_set():
                _sleep_until(bar_start)
    finally:
        # NoteOff flood: leave zero hanging notes regardless of how we exit.
        now = time.monotonic() - start
        for channel, pitch in sorted(sounding.elements()):
            sink.send(
                TimedEvent(tick=tick, seconds=now, kind=EventKind.NOTE_OFF,
                           channel=channel, pitch=pitch, velocity=0)
            )
        sink.close()
