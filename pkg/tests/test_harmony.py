import random
from collections import Counter

import pytest

from affectmidi.harmony import (
    ChordCell,
    ChordProgressionMatrix,
    HarmonicState,
    MatrixError,
    N_REGIONS,
    THEME_BARS,
    advance,
    chord_function,
    expected_minor_fraction,
    load_matrix,
    parse_matrix,
    select_chord,
    validate_matrix,
)
from affectmidi.theory import Chord, ChordQuality, MINOR_FLAVOR_QUALITIES

MINIMAL_REGION = """
bar 1: i Minor C 1.0
bar 2: iv Minor F 1.0
bar 3: i Minor C 1.0
bar 4: v Minor G 1.0
bar 5: i Minor C 1.0
bar 6: iv Minor F 1.0
bar 7: v Minor G 1.0
bar 8: i Minor C 1.0
"""


MINIMAL_MAJOR_REGION = """
bar 1: I Major C 1.0
bar 2: IV Major F 1.0
bar 3: I Major C 1.0
bar 4: V Major G 1.0
bar 5: I Major C 1.0
bar 6: IV Major F 1.0
bar 7: V Major G 1.0
bar 8: I Major C 1.0
"""


def minimal_matrix_text(overrides=None):
    """A trivially valid 10-region document, with optional per-region text."""
    overrides = overrides or {}
    chunks = []
    for r in range(N_REGIONS):
        if r >= 7:
            chunks.append(f"region {r} key C Major")
            chunks.append(overrides.get(r, MINIMAL_MAJOR_REGION))
        else:
            chunks.append(f"region {r} key C NaturalMinor")
            chunks.append(overrides.get(r, MINIMAL_REGION))
    return "\n".join(chunks)


class TestChordFunction:
    @pytest.mark.parametrize("label,fn", [
        ("I", "tonic"), ("i", "tonic"), ("i7", "tonic"), ("Imaj7", "tonic"),
        ("vi", "tonic"), ("VI", "tonic"), ("iii", "tonic"),
        ("ii", "subdominant"), ("iio", "subdominant"), ("IV", "subdominant"),
        ("iv", "subdominant"), ("IVmaj7", "subdominant"),
        ("V", "dominant"), ("V7", "dominant"), ("v", "dominant"), ("viio", "dominant"),
    ])
    def test_classification(self, label, fn):
        assert chord_function(label) == fn

    def test_unreadable_label(self):
        with pytest.raises(MatrixError):
            chord_function("X9")


class TestLoadMatrix:
    def test_default_fixture_loads(self, matrix):
        assert len(matrix.cells) == N_REGIONS
        assert sum(len(row) for row in matrix.cells) == 80

    def test_probability_sum_violation(self):
        text = minimal_matrix_text({0: MINIMAL_REGION.replace(
            "bar 1: i Minor C 1.0",
            "bar 1: i Minor C 0.5 ; VI Major Ab 0.4")})
        with pytest.raises(MatrixError, match="sum to 0.9"):
            load_matrix(text)

    def test_cell_size_violation(self):
        six = " ; ".join(f"i Minor C {p}" for p in ["0.2", "0.2", "0.2", "0.2", "0.1", "0.1"])
        text = minimal_matrix_text({0: MINIMAL_REGION.replace(
            "bar 1: i Minor C 1.0", f"bar 1: {six}")})
        with pytest.raises(MatrixError, match="cell size 6"):
            load_matrix(text)

    def test_probability_range_violation(self):
        text = minimal_matrix_text({0: MINIMAL_REGION.replace(
            "bar 1: i Minor C 1.0",
            "bar 1: i Minor C 0.85 ; VI Major Ab 0.05 ; iv Minor F 0.1")})
        with pytest.raises(MatrixError, match="outside"):
            load_matrix(text)

    def test_cadence_violation_reported(self):
        text = minimal_matrix_text({3: MINIMAL_REGION.replace(
            "bar 8: i Minor C 1.0", "bar 8: iv Minor F 1.0")})
        m = parse_matrix(text)
        report = validate_matrix(m)
        assert any("bar 8" in e and "tonic" in e for e in report)

    def test_missing_region_rejected(self):
        text = "\n".join(
            [f"region {r} key C NaturalMinor" + MINIMAL_REGION for r in range(9)]
        )
        with pytest.raises(MatrixError, match="missing regions"):
            parse_matrix(text)

    def test_bytes_accepted(self):
        load_matrix(minimal_matrix_text().encode())


class TestValidateDefaultMatrix:
    def test_empty_report(self, matrix):
        assert validate_matrix(matrix) == []

    def test_cells_share_function_per_bar(self, matrix):
        for region in range(N_REGIONS):
            for bar in range(1, THEME_BARS + 1):
                cell = matrix.cell(region, bar)
                functions = {chord_function(c.function_label) for c in cell.chords()}
                assert len(functions) == 1

    def test_minor_fraction_monotone_nonincreasing(self, matrix):
        fractions = [expected_minor_fraction(matrix, r) for r in range(N_REGIONS)]
        assert all(a >= b for a, b in zip(fractions, fractions[1:]))

    def test_high_regions_stay_in_major_scale(self, matrix):
        from affectmidi.theory import Scale, ScaleMode, chord_tones
        major = set(Scale(0, ScaleMode.MAJOR).degrees())
        for region in (7, 8, 9):
            for bar in range(1, THEME_BARS + 1):
                for chord in matrix.cell(region, bar).chords():
                    assert chord_tones(chord) <= major


class TestSelectChord:
    def test_single_alternative_deterministic(self, matrix):
        for seed in range(5):
            c = select_chord(matrix, 0, 1, random.Random(seed))
            assert c.function_label == "i"

    def test_region9_bar8_tonic_major(self, matrix):
        for seed in range(20):
            c = select_chord(matrix, 9, 8, random.Random(seed))
            assert chord_function(c.function_label) == "tonic"
            assert c.quality is ChordQuality.MAJOR

    def test_empirical_frequencies_match_weights(self, matrix, rng):
        # Three-alternative cell: region 2, bar 7.
        cell = matrix.cell(2, 7)
        assert len(cell.alternatives) == 3
        counts = Counter(select_chord(matrix, 2, 7, rng) for _ in range(10000))
        for chord, p in cell.alternatives:
            assert abs(counts[chord] / 10000 - p) < 0.03

    def test_sampled_minor_fraction_monotone(self, matrix):
        rng = random.Random(20240817)
        fractions = []
        for region in range(N_REGIONS):
            minor = 0
            for i in range(1000):
                c = select_chord(matrix, region, i % THEME_BARS + 1, rng)
                minor += c.quality in MINOR_FLAVOR_QUALITIES
            fractions.append(minor / 1000)
        assert all(a >= b for a, b in zip(fractions, fractions[1:]))


class TestAdvance:
    def test_simple_increment(self):
        s = advance(HarmonicState(theme_bar=3))
        assert (s.theme_bar, s.iteration_count) == (4, 0)

    def test_wrap_increments_iteration(self):
        s = advance(HarmonicState(theme_bar=8, iteration_count=0))
        assert (s.theme_bar, s.iteration_count) == (1, 1)

    def test_sixteen_advances(self):
        s = HarmonicState()
        for _ in range(16):
            s = advance(s)
        assert (s.theme_bar, s.iteration_count) == (1, 2)
