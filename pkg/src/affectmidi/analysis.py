"""Rating normalization and the regression analyses for listener-study data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

RATING_MIN = 1
RATING_MAX = 9


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class RatingRecord:
    participant_id: str
    stimulus_id: str
    rated_valence: int
    rated_arousal: int

    def __post_init__(self):
        for name, r in (("valence", self.rated_valence), ("arousal", self.rated_arousal)):
            if not RATING_MIN <= r <= RATING_MAX:
                raise AnalysisError(f"rated {name} {r} outside {RATING_MIN}..{RATING_MAX}")


def normalize_rating(record: RatingRecord, literal: bool = False) -> Tuple[float, float]:
    """Map 1..9 SAM ratings onto [0, 1].

    Default mode: (r - min) / (max - min), a bijection from {1..9} onto
    {0, 0.125, ..., 1}. Literal mode divides the raw rating by (max - min)
    without subtracting the minimum, so 9 maps to 1.125; it is kept for
    auditing against the published normalization formula as printed.
    """
    span = RATING_MAX - RATING_MIN
    if literal:
        return (record.rated_valence / span, record.rated_arousal / span)
    return (
        (record.rated_valence - RATING_MIN) / span,
        (record.rated_arousal - RATING_MIN) / span,
    )


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    r_squared: float
    f_statistic: float


def fit_affect_regression(
    settings: Sequence[float], mean_ratings: Sequence[float]
) -> RegressionResult:
    """Simple OLS of mean ratings on parameter settings."""
    x = np.asarray(settings, dtype=float)
    y = np.asarray(mean_ratings, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise AnalysisError("settings and ratings must be equal-length 1-D sequences")
    n = x.size
    if n < 3:
        raise AnalysisError("need at least 3 observations")
    if np.allclose(x, x[0]):
        raise AnalysisError("settings are all equal; slope is undefined")
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    slope = float(np.sum((x - xm) * (y - ym)) / sxx)
    intercept = ym - slope * xm
    pred = intercept + slope * x
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - ym) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    df_res = n - 2
    if ss_res == 0.0 or df_res == 0:
        f_stat = float("inf") if ss_tot > 0 else 0.0
    else:
        f_stat = (ss_tot - ss_res) / (ss_res / df_res)
    return RegressionResult(slope, intercept, r_squared, f_stat)


@dataclass(frozen=True)
class MultipleRegressionResult:
    coef_valence: float
    coef_arousal: float
    intercept: float
    r_squared: float
    f_valence: float
    f_arousal: float


def fit_multiple_regression(
    valence_settings: Sequence[float],
    arousal_settings: Sequence[float],
    ratings: Sequence[float],
) -> MultipleRegressionResult:
    """Two-predictor OLS with intercept; per-coefficient F = t^2."""
    v = np.asarray(valence_settings, dtype=float)
    a = np.asarray(arousal_settings, dtype=float)
    y = np.asarray(ratings, dtype=float)
    if not (v.shape == a.shape == y.shape) or v.ndim != 1:
        raise AnalysisError("inputs must be equal-length 1-D sequences")
    n = v.size
    if n < 4:
        raise AnalysisError("need at least 4 observations")
    X = np.column_stack([np.ones(n), v, a])
    if np.linalg.matrix_rank(X) < 3:
        raise AnalysisError("design matrix is rank deficient")
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    pred = X @ beta
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    df_res = n - 3
    sigma2 = ss_res / df_res if df_res > 0 else 0.0
    xtx_inv = np.linalg.inv(X.T @ X)
    f_stats = []
    for j in (1, 2):
        se2 = sigma2 * xtx_inv[j, j]
        f_stats.append(float("inf") if se2 == 0 else float(beta[j] ** 2 / se2))
    return MultipleRegressionResult(
        coef_valence=float(beta[1]),
        coef_arousal=float(beta[2]),
        intercept=float(beta[0]),
        r_squared=r_squared,
        f_valence=f_stats[0],
        f_arousal=f_stats[1],
    )


def parse_ratings_csv(text: str) -> List[RatingRecord]:
    """Parse the ratings CSV: participant_id,stimulus_id,rated_valence,rated_arousal."""
    import csv
    import io

    reader = csv.DictReader(io.StringIO(text))
    expected = {"participant_id", "stimulus_id", "rated_valence", "rated_arousal"}
    if reader.fieldnames is None or set(reader.fieldnames) != expected:
        raise AnalysisError(f"ratings CSV must have header columns {sorted(expected)}")
    return [
        RatingRecord(
            participant_id=row["participant_id"],
            stimulus_id=row["stimulus_id"],
            rated_valence=int(row["rated_valence"]),
            rated_arousal=int(row["rated_arousal"]),
        )
        for row in reader
    ]
