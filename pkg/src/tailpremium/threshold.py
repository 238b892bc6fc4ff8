"""Data-driven choice of the number of top order statistics.

The selection rule scores each candidate k by the weighted dispersion of
the censoring-corrected tail-index path over the half-window ending at k
and keeps the k with the smallest score: a stable stretch of the path
signals that the power-law regime has been reached without drifting into
the bulk of the distribution.  Candidates whose window leaves the
finite-variance regime, or where censoring erases the path, are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DomainError, ValidationError
from .samples import SortedCensoredSample

_MIN_SAMPLE = 10

# Candidate ceiling grows like 2 * n**(1/3): slow enough to keep every
# candidate threshold in the far tail, fast enough that the window below
# has room to average out path noise.
_CANDIDATE_SCALE = 2.0

# Admissibility bound on the corrected index.  At or above 1/2 the
# estimated loss leaves the finite-variance regime and the premium factor
# gamma/(1 - rho*gamma) turns hypersensitive for every distortion
# parameter >= 1, so such stretches of the path are never trusted.
_INDEX_CAP = 0.5


@dataclass(frozen=True)
class ThresholdChoice:
    """Selected number of top order statistics and its diagnostics.

    ``retention`` is the order statistic sitting just below the selected
    top segment; ``objective_curve`` holds one ``(k, score)`` pair per
    evaluated candidate, in increasing k order.
    """

    k_star: int
    retention: float
    objective_curve: Tuple[Tuple[int, float], ...]


def _lower_median(values: np.ndarray) -> float:
    """Median that never averages: the order statistic at ceil(m/2)."""
    m = values.size
    position = (m - 1) // 2
    return float(np.partition(values, position)[position])


def tail_index_path(
    sample: SortedCensoredSample, k_max: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Censoring-corrected tail index for every k in 1..k_max.

    Returns ``(gamma1, p_hat)`` arrays indexed by ``k - 1``.  Where the
    top-k flags are all zero the corrected index is undefined and the
    entry is NaN.
    """
    n = sample.n
    if not 1 <= k_max < n:
        raise ValidationError(
            f"k_max must satisfy 1 <= k_max < n, got k_max={k_max} with n={n}"
        )
    z_top = sample.z_sorted[n - k_max - 1 :][::-1]
    if z_top[-1] <= 0.0:
        raise DomainError(
            "threshold selection needs strictly positive order statistics "
            "over the whole candidate range"
        )
    log_top = np.log(z_top)
    counts = np.arange(1, k_max + 1, dtype=np.float64)
    # hill[k-1] = mean of log(z_(n-i+1)) over i <= k, minus log(z_(n-k))
    hill = np.cumsum(log_top[:k_max]) / counts - log_top[1:]
    delta_top = sample.delta_concomitant[n - k_max :][::-1].astype(np.float64)
    p_hat = np.cumsum(delta_top) / counts
    with np.errstate(divide="ignore", invalid="ignore"):
        gamma1 = np.where(p_hat > 0.0, hill / np.where(p_hat > 0.0, p_hat, 1.0), np.nan)
    return gamma1, p_hat


def _window_score(
    gamma1: np.ndarray, weights: np.ndarray, k: int
) -> float:
    """Weighted dispersion of the path over the half-window ending at k."""
    lo = (k + 1) // 2
    values = gamma1[lo - 1 : k]
    med = _lower_median(values)
    return float(np.dot(weights[lo - 1 : k], np.abs(values - med))) / k


def reiss_thomas_k(sample: SortedCensoredSample, beta: float = 0.3) -> ThresholdChoice:
    """Pick the number of top order statistics by path-stability scoring.

    Each candidate ``k`` is scored by the weighted dispersion of the
    corrected tail-index path over the half-window ``ceil(k/2)..k``:

    ``(1/k) * sum_i i**beta * |gamma1(i) - median{gamma1(ceil(k/2)..k)}|``

    A candidate is admissible only when the path is defined (at least one
    uncensored record in the top ``i``) and stays below 1/2 across its
    whole window; the window slides with ``k``, so an erratic start of the
    path blocks small candidates without contaminating larger ones.  The
    smallest score over the admissible candidates in ``2..ceiling`` wins,
    with ``ceiling ~ 2 * n**(1/3)``; ties go to the smallest ``k``.
    Medians of even-length windows take the lower of the two central
    values, so tail-index estimates are never averaged.

    When the whole primary range is blocked — a heavily censored or
    erratic top — the search widens and returns the smallest admissible
    candidate up to ``floor(n/2)``, trading optimality for a defined
    answer on samples whose far tail alone is unusable.

    Raises
    ------
    ValidationError
        If ``n < 10`` or ``beta`` is outside [0, 0.5].
    DomainError
        If fewer than two candidate thresholds are strictly positive, or
        no candidate up to ``floor(n/2)`` has an admissible window.
    """
    n = sample.n
    if n < _MIN_SAMPLE:
        raise ValidationError(
            f"threshold selection needs n >= {_MIN_SAMPLE}, got n={n}"
        )
    if not 0.0 <= beta <= 0.5:
        raise ValidationError(f"beta must lie in [0, 0.5], got {beta!r}")
    # Candidate k needs the k+1 largest order statistics positive, so the
    # threshold (and everything above it) has a logarithm.
    positive = int(np.count_nonzero(sample.z_sorted > 0.0))
    k_limit = min(n // 2, positive - 1)
    if k_limit < 2:
        raise DomainError(
            "threshold selection needs at least 3 strictly positive "
            f"order statistics, got {positive}"
        )
    gamma1, p_hat = tail_index_path(sample, k_limit)
    with np.errstate(invalid="ignore"):
        admissible = (p_hat > 0.0) & np.isfinite(gamma1) & (gamma1 < _INDEX_CAP)
    weights = np.arange(1, k_limit + 1, dtype=np.float64) ** beta
    ceiling = min(k_limit, round(_CANDIDATE_SCALE * n ** (1.0 / 3.0)))

    ks = []
    scores = []
    for k in range(2, ceiling + 1):
        lo = (k + 1) // 2
        if not admissible[lo - 1 : k].all():
            continue
        ks.append(k)
        scores.append(_window_score(gamma1, weights, k))
    if ks:
        best = int(np.argmin(scores))
        k_star = ks[best]
    else:
        k_star = None
        for k in range(ceiling + 1, k_limit + 1):
            lo = (k + 1) // 2
            if admissible[lo - 1 : k].all():
                k_star = k
                ks = [k]
                scores = [_window_score(gamma1, weights, k)]
                break
        if k_star is None:
            raise DomainError(
                "no admissible k: every candidate window up to "
                f"{k_limit} contains an undefined or out-of-range "
                "corrected tail index"
            )
    return ThresholdChoice(
        k_star=k_star,
        retention=float(sample.z_sorted[n - k_star - 1]),
        objective_curve=tuple(zip(ks, scores)),
    )
