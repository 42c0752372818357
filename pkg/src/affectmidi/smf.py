"""Standard MIDI File (format 1) writer, 480 PPQN, byte-exact output.

Track 0 carries the tempo map; tracks 1-4 carry channels 0-3 (piano,
strings, clarinet, marimba), each opened by its ProgramChange.
"""

from __future__ import annotations

import struct
from typing import Iterable, List, Sequence

from .render import PPQN, EventKind, TimedEvent, _sort_events

N_CHANNELS = 4


def _vlq(value: int) -> bytes:
    """Variable-length quantity encoding."""
    if value < 0:
        raise ValueError("delta time must be nonnegative")
    chunks = [value & 0x7F]
    value >>= 7
    while value:
        chunks.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(chunks))


def _track_chunk(payload: bytes) -> bytes:
    return b"MTrk" + struct.pack(">I", len(payload)) + payload


def _encode_track(events: Sequence[TimedEvent]) -> bytes:
    payload = bytearray()
    last_tick = 0
    for e in events:
        payload += _vlq(e.tick - last_tick)
        last_tick = e.tick
        if e.kind is EventKind.TEMPO:
            uspq = round(60_000_000 / e.tempo_bpm)
            payload += bytes([0xFF, 0x51, 0x03]) + uspq.to_bytes(3, "big")
        elif e.kind is EventKind.PROGRAM:
            payload += bytes([0xC0 | e.channel, e.program])
        elif e.kind is EventKind.NOTE_ON:
            payload += bytes([0x90 | e.channel, e.pitch, e.velocity])
        elif e.kind is EventKind.NOTE_OFF:
            payload += bytes([0x80 | e.channel, e.pitch, e.velocity])
    payload += _vlq(0) + bytes([0xFF, 0x2F, 0x00])  # end of track
    return _track_chunk(bytes(payload))


def write_smf(events: Iterable[TimedEvent]) -> bytes:
    """Serialize a TimedEvent stream as a format-1 SMF."""
    ordered = _sort_events(list(events))
    tempo_track = [e for e in ordered if e.kind is EventKind.TEMPO]
    channel_tracks: List[List[TimedEvent]] = [[] for _ in range(N_CHANNELS)]
    for e in ordered:
        if e.kind in (EventKind.NOTE_ON, EventKind.NOTE_OFF, EventKind.PROGRAM):
            if not 0 <= e.channel < N_CHANNELS:
                raise ValueError(f"event on unmapped channel {e.channel}")
            channel_tracks[e.channel].append(e)
    header = b"MThd" + struct.pack(">IHHH", 6, 1, 1 + N_CHANNELS, PPQN)
    body = _encode_track(tempo_track)
    for track in channel_tracks:
        body += _encode_track(track)
    return header + body
