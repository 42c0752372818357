import json

from click.testing import CliRunner

from affectmidi.cli import main

TRAJECTORY = """\
# time,valence,arousal
0.0,0.2,0.3
8.0,0.9,0.8
"""


def test_render_writes_smf(tmp_path):
    traj = tmp_path / "traj.csv"
    traj.write_text(TRAJECTORY)
    out = tmp_path / "out.mid"
    log = tmp_path / "events.jsonl"
    result = CliRunner().invoke(main, [
        "render", str(traj), str(out),
        "--seed", "7", "--bars", "4", "--event-log", str(log),
    ])
    assert result.exit_code == 0, result.output
    assert out.read_bytes().startswith(b"MThd")
    lines = [json.loads(l) for l in log.read_text().splitlines()]
    assert any(e["kind"] == "note_on" for e in lines)


def test_render_is_seed_deterministic(tmp_path):
    traj = tmp_path / "traj.csv"
    traj.write_text(TRAJECTORY)
    runner = CliRunner()
    outs = []
    for name in ("a.mid", "b.mid"):
        result = runner.invoke(main, ["render", str(traj), str(tmp_path / name), "--seed", "3"])
        assert result.exit_code == 0, result.output
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]


def test_validate_default_fixtures():
    result = CliRunner().invoke(main, ["validate"])
    assert result.exit_code == 0, result.output
    assert "matrix: ok" in result.output


def test_validate_rejects_bad_matrix(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("region 0 key C Major\nbar 1: I Major C 0.5\n")
    result = CliRunner().invoke(main, ["validate", "--matrix", str(bad)])
    assert result.exit_code == 1
    assert "matrix:" in result.output


def test_stimuli_and_analyze_round_trip(tmp_path):
    runner = CliRunner()
    out_dir = tmp_path / "stim"
    result = runner.invoke(main, ["stimuli", str(out_dir), "--seed", "5", "--variants", "1"])
    assert result.exit_code == 0, result.output
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert len(manifest) == 13

    # synthetic raters whose responses track the settings
    rows = ["participant_id,stimulus_id,rated_valence,rated_arousal"]
    for pid in ("p1", "p2"):
        for entry in manifest:
            rv = 1 + round(entry["valence"] * 8)
            ra = 1 + round(entry["arousal"] * 8)
            rows.append(f"{pid},{entry['stimulus_id']},{rv},{ra}")
    ratings = tmp_path / "ratings.csv"
    ratings.write_text("\n".join(rows) + "\n")

    result = runner.invoke(main, [
        "analyze", str(ratings), str(out_dir / "manifest.json"),
    ])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["valence"]["r_squared"] > 0.99
    assert report["arousal"]["r_squared"] > 0.99
    assert report["valence_multiple"]["coef_valence"] > 0.9
