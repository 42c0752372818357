import math

import pytest
from hypothesis import given, strategies as st

from affectmidi.affect import (
    AffectError,
    AffectState,
    ArousalMelodyRegion,
    ArousalRhythmRegion,
    Interpolation,
    Trajectory,
    arousal_melody_region,
    arousal_rhythm_region,
    clamp_affect,
    parse_trajectory_file,
    sample_trajectory,
    valence_region,
)


class TestClampAffect:
    def test_identity_in_range(self):
        assert clamp_affect(0.5, 0.5) == AffectState(0.5, 0.5)

    def test_clamps_out_of_range(self):
        assert clamp_affect(-0.2, 1.3) == AffectState(0.0, 1.0)

    def test_boundary_preserved(self):
        assert clamp_affect(1.0, 0.0) == AffectState(1.0, 0.0)

    @pytest.mark.parametrize("v,a", [(float("nan"), 0.5), (0.5, float("inf")), (-math.inf, 0)])
    def test_non_finite_rejected(self, v, a):
        with pytest.raises(AffectError):
            clamp_affect(v, a)

    @given(st.floats(allow_nan=False, allow_infinity=False),
           st.floats(allow_nan=False, allow_infinity=False))
    def test_always_in_unit_square(self, v, a):
        s = clamp_affect(v, a)
        assert 0.0 <= s.valence <= 1.0
        assert 0.0 <= s.arousal <= 1.0


class TestValenceRegion:
    def test_lower_boundary(self):
        assert valence_region(AffectState(0.0, 0.0)) == 0

    def test_upper_boundary_clamped(self):
        assert valence_region(AffectState(1.0, 0.0)) == 9

    def test_mid_band(self):
        assert valence_region(AffectState(0.55, 0.0)) == 5

    def test_all_regions_reachable(self):
        seen = {valence_region(AffectState(v / 100, 0.0)) for v in range(101)}
        assert seen == set(range(10))

    @given(st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
    def test_monotone(self, v1, v2):
        lo, hi = sorted([v1, v2])
        assert valence_region(AffectState(lo, 0)) <= valence_region(AffectState(hi, 0))


class TestArousalRegions:
    @pytest.mark.parametrize("a,expected", [
        (0.3, ArousalRhythmRegion.LOW),
        (0.0, ArousalRhythmRegion.LOW),
        (0.4, ArousalRhythmRegion.MODERATE),   # half-open boundary
        (0.5, ArousalRhythmRegion.MODERATE),
        (0.75, ArousalRhythmRegion.HIGH),      # half-open boundary
        (0.8, ArousalRhythmRegion.HIGH),
        (1.0, ArousalRhythmRegion.HIGH),
    ])
    def test_rhythm_region(self, a, expected):
        assert arousal_rhythm_region(AffectState(0.5, a)) is expected

    @pytest.mark.parametrize("a,expected", [
        (0.0, ArousalMelodyRegion.LOWER),
        (0.49, ArousalMelodyRegion.LOWER),
        (0.5, ArousalMelodyRegion.UPPER),
        (1.0, ArousalMelodyRegion.UPPER),
    ])
    def test_melody_region(self, a, expected):
        assert arousal_melody_region(AffectState(0.5, a)) is expected


def two_point_traj(interp):
    return Trajectory(
        points=((0.0, AffectState(0.0, 0.0)), (10.0, AffectState(1.0, 1.0))),
        interpolation=interp,
    )


class TestTrajectory:
    def test_hold_semantics(self):
        assert sample_trajectory(two_point_traj(Interpolation.HOLD), 5.0) == AffectState(0, 0)

    def test_linear_midpoint(self):
        s = sample_trajectory(two_point_traj(Interpolation.LINEAR), 5.0)
        assert s == AffectState(0.5, 0.5)

    def test_past_end_clamps(self):
        s = sample_trajectory(two_point_traj(Interpolation.LINEAR), 20.0)
        assert s == AffectState(1.0, 1.0)

    def test_empty_rejected(self):
        with pytest.raises(AffectError):
            Trajectory(points=())

    def test_nonzero_start_rejected(self):
        with pytest.raises(AffectError):
            Trajectory(points=((1.0, AffectState(0, 0)),))

    def test_non_increasing_rejected(self):
        with pytest.raises(AffectError):
            Trajectory(points=((0.0, AffectState(0, 0)), (0.0, AffectState(1, 1))))

    @given(st.floats(min_value=0, max_value=10))
    def test_linear_continuity(self, t):
        traj = two_point_traj(Interpolation.LINEAR)
        eps = 1e-6
        s1 = sample_trajectory(traj, t)
        s2 = sample_trajectory(traj, min(10.0, t + eps))
        assert abs(s1.valence - s2.valence) < 1e-5
        assert abs(s1.arousal - s2.arousal) < 1e-5


class TestTrajectoryFile:
    def test_parse_basic(self):
        text = "# demo\ntime,valence,arousal\n0,0.1,0.2\n5, 0.5, 0.6  # midway\n10,1,1\n"
        traj = parse_trajectory_file(text)
        assert len(traj.points) == 3
        assert traj.points[1] == (5.0, AffectState(0.5, 0.6))

    def test_values_clamped(self):
        traj = parse_trajectory_file("0,-1,2\n")
        assert traj.points[0][1] == AffectState(0.0, 1.0)

    def test_bad_field_count(self):
        with pytest.raises(AffectError):
            parse_trajectory_file("0,0.5\n")
