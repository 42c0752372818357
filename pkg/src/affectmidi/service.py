"""Operator surface: stimulus batch generation and the live control endpoint.

The live endpoint speaks JSON over a websocket (`proto` 1): inbound affect
updates land in the mailbox the generation loop reads at bar boundaries;
outbound messages carry per-bar status plus note records for visualization.
"""

from __future__ import annotations

import asyncio
import hashlib
import json
import queue
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .affect import AffectMailbox, AffectState, Trajectory, clamp_affect
from .dynamics import tempo_bpm
from .live import MidiSink, RecordingSink, run_live
from .render import BarPlan, Session, SessionConfig, TimedEvent, render_offline, stream_duration_seconds
from .rngstreams import child_seed
from .smf import write_smf

PROTOCOL_VERSION = 1

# The 13 stimulus points covering corners, quadrant centers and the middle.
DEFAULT_STIMULUS_POINTS: Tuple[Tuple[float, float], ...] = (
    (0.0, 0.0), (0.0, 0.5), (0.0, 1.0),
    (0.25, 0.25), (0.25, 0.75),
    (0.5, 0.0), (0.5, 0.5), (0.5, 1.0),
    (0.75, 0.25), (0.75, 0.75),
    (1.0, 0.0), (1.0, 0.5), (1.0, 1.0),
)

FAST_TEMPO_THRESHOLD_BPM = 130.0
SLOW_BARS = 8
FAST_BARS = 16


@dataclass(frozen=True)
class StimulusSpec:
    points: Tuple[Tuple[float, float], ...] = DEFAULT_STIMULUS_POINTS
    variants_per_point: int = 3
    seed: int = 0


def stimulus_bar_count(arousal: float) -> int:
    """16 bars at fast tempo (>= 130 bpm, i.e. arousal >= 0.5), else 8."""
    return FAST_BARS if tempo_bpm(arousal) >= FAST_TEMPO_THRESHOLD_BPM else SLOW_BARS


def generate_stimuli(
    spec: StimulusSpec, out_dir: Path, config: Optional[SessionConfig] = None
) -> List[dict]:
    """Render the stimulus batch and write SMF files plus a manifest.

    Each (point, variant) gets its own derived seed, so the batch is a pure
    function of the spec and fixtures.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    base = config or SessionConfig()
    manifest: List[dict] = []
    for p_idx, (v, a) in enumerate(spec.points):
        bars = stimulus_bar_count(a)
        for k in range(spec.variants_per_point):
            seed = child_seed(spec.seed, f"stimulus:{p_idx}:{k}")
            session = Session(SessionConfig(
                seed=seed, matrix=base.matrix, motives=base.motives,
                licks=base.licks, registers=base.registers,
            ))
            trajectory = Trajectory(points=((0.0, clamp_affect(v, a)),))
            events = render_offline(session, trajectory, bars)
            data = write_smf(events)
            stimulus_id = f"p{p_idx:02d}_v{k}"
            filename = f"{stimulus_id}.mid"
            (out_dir / filename).write_bytes(data)
            manifest.append({
                "stimulus_id": stimulus_id,
                "valence": v,
                "arousal": a,
                "seed": seed,
                "bars": bars,
                "duration_seconds": round(stream_duration_seconds(events), 6),
                "file": filename,
                "sha256": hashlib.sha256(data).hexdigest(),
            })
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest


def bar_status_message(plan: BarPlan) -> dict:
    return {
        "type": "bar",
        "index": plan.bar_index,
        "v": plan.affect.valence,
        "a": plan.affect.arousal,
        "tempo": plan.tempo,
        "chord": plan.chord.function_label,
        "theme_bar": plan.theme_bar,
        "doubled": plan.marimba_doubled,
    }


def note_messages(plan: BarPlan) -> List[dict]:
    return [
        {
            "type": "note",
            "bar": plan.bar_index,
            "channel": n.channel,
            "onset": n.onset,
            "duration": n.duration,
            "pitch": p,
        }
        for n in plan.notes
        for p in n.pitches
    ]


class LiveServer:
    """Runs the generation loop in a thread, broadcasting bar statuses."""

    def __init__(
        self,
        config: SessionConfig,
        sink: Optional[MidiSink] = None,
        max_bars: Optional[int] = None,
        initial_affect: AffectState = AffectState(0.5, 0.5),
    ):
        self.config = config
        self.mailbox = AffectMailbox(initial_affect)
        self.sink = sink or RecordingSink()
        self.max_bars = max_bars
        self.stop_event = threading.Event()
        self._subscribers: List[queue.Queue] = []
        self._sub_lock = threading.Lock()
        self._thread: Optional[threading.Thread] = None

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue()
        with self._sub_lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self._sub_lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def _broadcast(self, message: dict) -> None:
        with self._sub_lock:
            for q in self._subscribers:
                q.put(message)

    def _on_bar(self, plan: BarPlan, _scheduled_start: float) -> None:
        self._broadcast(bar_status_message(plan))
        for msg in note_messages(plan):
            self._broadcast(msg)

    def start(self) -> None:
        session = Session(self.config)
        self._thread = threading.Thread(
            target=run_live,
            kwargs=dict(
                session=session,
                mailbox=self.mailbox,
                sink=self.sink,
                stop=self.stop_event,
                max_bars=self.max_bars,
                on_bar=self._on_bar,
            ),
            daemon=True,
        )
        self._thread.start()

    def stop(self, timeout: float = 10.0) -> None:
        self.stop_event.set()
        if self._thread is not None:
            self._thread.join(timeout=timeout)

    def handle_message(self, text: str) -> Optional[dict]:
        """Apply one inbound protocol message; returns an immediate reply or None."""
        try:
            msg = json.loads(text)
            if not isinstance(msg, dict):
                raise ValueError("message must be a JSON object")
            kind = msg["type"]
            if kind == "affect":
                self.mailbox.put(clamp_affect(float(msg["v"]), float(msg["a"])))
                return None
            if kind == "seed":
                return {"type": "seed", "seed": self.config.seed}
            if kind == "stop":
                self.stop_event.set()
                return {"type": "stopped"}
            raise ValueError(f"unknown message type {kind!r}")
        except Exception as exc:
            return {"type": "error", "message": str(exc)}


def create_app(server: LiveServer):
    """FastAPI app exposing the live websocket protocol at /ws."""
    from contextlib import asynccontextmanager

    @asynccontextmanager
    async def lifespan(_app):
        server.start()
        try:
            yield
        finally:
            server.stop()

    app = FastAPI(lifespan=lifespan)
    app.state.server = server

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        await ws.send_json({"type": "hello", "proto": PROTOCOL_VERSION, "seed": server.config.seed})
        q = server.subscribe()
        try:
            while True:
                try:
                    while True:
                        await ws.send_json(q.get_nowait())
                except queue.Empty:
                    pass
                try:
                    text = await asyncio.wait_for(ws.receive_text(), timeout=0.02)
                except asyncio.TimeoutError:
                    continue
                reply = server.handle_message(text)
                if reply is not None:
                    await ws.send_json(reply)
        except WebSocketDisconnect:
            pass
        finally:
            server.unsubscribe(q)

    return app
