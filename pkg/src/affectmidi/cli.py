"""Command-line interface: render, live, stimuli, analyze, validate."""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from . import fixtures
from .affect import Interpolation, parse_trajectory_file
from .analysis import fit_affect_regression, fit_multiple_regression, normalize_rating, parse_ratings_csv
from .dynamics import parse_lick_bank, parse_register_table
from .harmony import load_matrix, validate_matrix
from .render import EventKind, Session, SessionConfig, render_offline, stream_duration_seconds
from .service import LiveServer, StimulusSpec, generate_stimuli
from .smf import write_smf
from .voicing import parse_motive_matrices


def _fixture_options(fn):
    fn = click.option("--matrix", type=click.Path(exists=True), default=None,
                      help="Chord progression matrix file (default: shipped fixture).")(fn)
    fn = click.option("--motives", type=click.Path(exists=True), default=None,
                      help="Motive transition matrix file.")(fn)
    fn = click.option("--licks", type=click.Path(exists=True), default=None,
                      help="Soprano lick bank file.")(fn)
    fn = click.option("--registers", type=click.Path(exists=True), default=None,
                      help="Register table file.")(fn)
    return fn


def _load_config(seed: int, matrix, motives, licks, registers) -> SessionConfig:
    return SessionConfig(
        seed=seed,
        matrix=load_matrix(Path(matrix).read_bytes()) if matrix else None,
        motives=parse_motive_matrices(Path(motives).read_text()) if motives else None,
        licks=parse_lick_bank(Path(licks).read_text()) if licks else None,
        registers=parse_register_table(Path(registers).read_text()) if registers else None,
    )


@click.group()
def main():
    """Valence/arousal-driven four-voice MIDI generator."""


@main.command()
@click.argument("trajectory_file", type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.option("--seed", type=int, default=0, help="Session seed (output is deterministic per seed).")
@click.option("--bars", type=int, default=8, help="Number of bars to render.")
@click.option("--interp", type=click.Choice(["hold", "linear"]), default="hold",
              help="Trajectory interpolation mode.")
@click.option("--event-log", type=click.Path(), default=None,
              help="Optional JSON-lines event log sidecar.")
@_fixture_options
def render(trajectory_file, output, seed, bars, interp, event_log, matrix, motives, licks, registers):
    """Render a trajectory file to a Standard MIDI File."""
    traj = parse_trajectory_file(
        Path(trajectory_file).read_text(), Interpolation(interp)
    )
    session = Session(_load_config(seed, matrix, motives, licks, registers))
    events = render_offline(session, traj, bars)
    Path(output).write_bytes(write_smf(events))
    if event_log:
        with open(event_log, "w") as f:
            for e in events:
                f.write(json.dumps({
                    "tick": e.tick, "seconds": round(e.seconds, 6), "kind": e.kind.value,
                    "channel": e.channel, "pitch": e.pitch, "velocity": e.velocity,
                    "tempo_bpm": e.tempo_bpm, "program": e.program,
                }) + "\n")
    click.echo(f"wrote {output}: {bars} bars, {stream_duration_seconds(events):.1f} s")


@main.command()
@click.option("--seed", type=int, default=0)
@click.option("--port", type=int, default=8765, help="Websocket control port.")
@click.option("--midi-port", default=None, help="System MIDI output port name.")
@_fixture_options
def live(seed, port, midi_port, matrix, motives, licks, registers):
    """Serve the live control endpoint and play in real time."""
    import uvicorn

    from .live import RtMidiSink
    from .service import create_app

    sink = RtMidiSink(midi_port) if midi_port else None
    server = LiveServer(_load_config(seed, matrix, motives, licks, registers), sink=sink)
    uvicorn.run(create_app(server), host="127.0.0.1", port=port)


@main.command()
@click.argument("out_dir", type=click.Path())
@click.option("--seed", type=int, default=0)
@click.option("--variants", type=int, default=3, help="Stimuli per affect point.")
@_fixture_options
def stimuli(out_dir, seed, variants, matrix, motives, licks, registers):
    """Generate the 13-point stimulus batch (3 variants each by default)."""
    spec = StimulusSpec(variants_per_point=variants, seed=seed)
    manifest = generate_stimuli(
        spec, Path(out_dir), _load_config(seed, matrix, motives, licks, registers)
    )
    mean = sum(m["duration_seconds"] for m in manifest) / len(manifest)
    click.echo(f"wrote {len(manifest)} stimuli to {out_dir} (mean duration {mean:.1f} s)")


@main.command()
@click.argument("ratings_csv", type=click.Path(exists=True))
@click.argument("manifest_json", type=click.Path(exists=True))
@click.option("--literal-normalization", is_flag=True,
              help="Use the raw r/(max-min) normalization instead of (r-min)/(max-min).")
def analyze(ratings_csv, manifest_json, literal_normalization):
    """Regress normalized mean ratings against the stimulus parameter settings."""
    records = parse_ratings_csv(Path(ratings_csv).read_text())
    manifest = json.loads(Path(manifest_json).read_text())
    settings = {m["stimulus_id"]: (m["valence"], m["arousal"]) for m in manifest}
    by_stim: dict = {}
    for rec in records:
        if rec.stimulus_id not in settings:
            raise click.ClickException(f"unknown stimulus id {rec.stimulus_id!r}")
        nv, na = normalize_rating(rec, literal=literal_normalization)
        by_stim.setdefault(rec.stimulus_id, []).append((nv, na))
    v_set, a_set, v_mean, a_mean = [], [], [], []
    for sid, pairs in sorted(by_stim.items()):
        v_set.append(settings[sid][0])
        a_set.append(settings[sid][1])
        v_mean.append(sum(p[0] for p in pairs) / len(pairs))
        a_mean.append(sum(p[1] for p in pairs) / len(pairs))
    report = {
        "valence": vars(fit_affect_regression(v_set, v_mean)),
        "arousal": vars(fit_affect_regression(a_set, a_mean)),
        "valence_multiple": vars(fit_multiple_regression(v_set, a_set, v_mean)),
        "arousal_multiple": vars(fit_multiple_regression(v_set, a_set, a_mean)),
    }
    click.echo(json.dumps(report, indent=2))


@main.command()
@_fixture_options
def validate(matrix, motives, licks, registers):
    """Validate fixture files (defaults when no paths are given)."""
    failed = False
    try:
        m = load_matrix(Path(matrix).read_bytes()) if matrix else fixtures.default_matrix()
        report = validate_matrix(m)
        if report:
            failed = True
            for entry in report:
                click.echo(f"matrix: {entry}")
        else:
            click.echo("matrix: ok (80 cells)")
    except Exception as exc:
        failed = True
        click.echo(f"matrix: {exc}")
    for name, loader in (
        ("motives", lambda: parse_motive_matrices(Path(motives).read_text()) if motives
         else fixtures.default_motives()),
        ("licks", lambda: parse_lick_bank(Path(licks).read_text()) if licks
         else fixtures.default_licks()),
        ("registers", lambda: parse_register_table(Path(registers).read_text()) if registers
         else fixtures.default_registers()),
    ):
        try:
            loader()
            click.echo(f"{name}: ok")
        except Exception as exc:
            failed = True
            click.echo(f"{name}: {exc}")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
