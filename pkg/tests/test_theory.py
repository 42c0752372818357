import pytest
from hypothesis import given, strategies as st

from affectmidi.theory import (
    Chord,
    ChordQuality,
    Scale,
    ScaleMode,
    TheoryError,
    chord_tones,
    diatonic_step,
    midi_to_note_name,
    note_name_to_midi,
    snap_to_scale,
)

C_MAJOR = Scale(0, ScaleMode.MAJOR)


class TestChordTones:
    def test_c_major_triad(self):
        assert chord_tones(Chord(0, ChordQuality.MAJOR)) == {0, 4, 7}

    def test_a_minor_triad(self):
        assert chord_tones(Chord(9, ChordQuality.MINOR)) == {9, 0, 4}

    def test_g_dominant_seventh(self):
        assert chord_tones(Chord(7, ChordQuality.DOMINANT7)) == {7, 11, 2, 5}

    @pytest.mark.parametrize("quality,size", [
        (ChordQuality.MAJOR, 3), (ChordQuality.MINOR, 3),
        (ChordQuality.DIMINISHED, 3), (ChordQuality.AUGMENTED, 3),
        (ChordQuality.DOMINANT7, 4), (ChordQuality.MAJOR7, 4),
        (ChordQuality.MINOR7, 4), (ChordQuality.HALF_DIMINISHED7, 4),
    ])
    def test_tone_counts(self, quality, size):
        for root in range(12):
            assert len(chord_tones(Chord(root, quality))) == size

    def test_bad_root_rejected(self):
        with pytest.raises(TheoryError):
            Chord(12, ChordQuality.MAJOR)


class TestNoteNames:
    @pytest.mark.parametrize("name,midi", [("C4", 60), ("C1", 24), ("G3", 55),
                                           ("Eb3", 51), ("F#4", 66), ("A0", 21)])
    def test_known_notes(self, name, midi):
        assert note_name_to_midi(name) == midi

    @pytest.mark.parametrize("bad", ["H4", "C", "4C", "", "C#b4"])
    def test_malformed_rejected(self, bad):
        with pytest.raises(TheoryError):
            note_name_to_midi(bad)

    def test_octave_arithmetic(self):
        for n in range(1, 9):
            assert note_name_to_midi(f"C{n}") - note_name_to_midi(f"C{n-1}") == 12

    def test_round_trip_names(self):
        for midi in range(0, 128):
            assert note_name_to_midi(midi_to_note_name(midi)) == midi


class TestDiatonicStep:
    def test_step_down(self):
        assert diatonic_step(64, C_MAJOR, -1) == 62  # E4 -> D4

    def test_step_up_across_octave(self):
        assert diatonic_step(59, C_MAJOR, +1) == 60  # B3 -> C4

    def test_non_member_snaps_below_then_steps(self):
        # F#4 snaps to F4 (nearest member, below preferred), then steps to G4.
        assert diatonic_step(66, C_MAJOR, +1) == 67

    def test_saturates_at_range_edge(self):
        top = max(Scale(0, ScaleMode.MAJOR).members_in_range(0, 127))
        assert diatonic_step(top, C_MAJOR, +1) == top

    @given(st.integers(min_value=12, max_value=115))
    def test_round_trip_for_members(self, p):
        scale = C_MAJOR
        snapped = snap_to_scale(p, scale)
        up = diatonic_step(snapped, scale, +1)
        assert diatonic_step(up, scale, -1) == snapped

    def test_exhaustive_membership_table(self):
        # Independent oracle: scale membership spelled out, steps by scan.
        members = [p for p in range(0, 128) if p % 12 in {0, 2, 4, 5, 7, 9, 11}]
        for p in range(24, 108):
            snapped = snap_to_scale(p, C_MAJOR)
            above = [m for m in members if m > snapped]
            below = [m for m in members if m < snapped]
            if above:
                assert diatonic_step(p, C_MAJOR, +1) == above[0]
            if below:
                assert diatonic_step(p, C_MAJOR, -1) == below[-1]


class TestScale:
    @pytest.mark.parametrize("mode", list(ScaleMode))
    def test_seven_degrees(self, mode):
        for tonic in range(12):
            assert len(set(Scale(tonic, mode).degrees())) == 7

    def test_harmonic_minor_leading_tone(self):
        assert 11 in Scale(0, ScaleMode.HARMONIC_MINOR).degrees()
        assert 10 in Scale(0, ScaleMode.NATURAL_MINOR).degrees()
