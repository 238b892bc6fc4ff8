"""Point estimators for heavy tails under random right censoring.

The chain implemented here: the Hill estimator of the observed sample's
tail index, the fraction of uncensored records among the top order
statistics, their ratio as the tail index of the underlying loss, the
Kaplan-Meier product-limit survival function, a power-law extrapolation of
that survival beyond the data, and finally the proportional hazard premium
of an excess-of-loss layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DomainError
from .samples import (
    EstimationSettings,
    SortedCensoredSample,
    validate_settings,
)

# Above this sample size Kaplan-Meier products are accumulated in log space
# to dodge gradual underflow; below it the plain product is cheaper.  Both
# routes agree to ~1e-15 relative, see the regression tests.
_LOG_PRODUCT_CUTOFF = 10_000


@dataclass(frozen=True)
class TailEstimates:
    """Tail index estimates at a fixed number of upper order statistics.

    ``gamma_hill`` estimates the tail index of the observed (censored)
    values, ``p_hat`` the share of uncensored records among the top ``k``,
    and ``gamma1_hat = gamma_hill / p_hat`` the tail index of the
    underlying loss distribution.
    """

    k: int
    gamma_hill: float
    p_hat: float
    gamma1_hat: float


@dataclass(frozen=True)
class PremiumEstimate:
    """A proportional hazard premium estimate and the inputs that shaped it."""

    value: float
    rho: float
    retention: float
    k: int
    km_at_threshold: float


def _check_k(k: int, n: int) -> None:
    if not 1 <= k < n:
        raise DomainError(f"k must satisfy 1 <= k < n, got k={k} with n={n}")


def _km_product(deltas: np.ndarray, n: int, use_log: Optional[bool] = None) -> float:
    """Kaplan-Meier product over the first ``len(deltas)`` order statistics.

    Computes ``prod_{i=1}^{m} (1 - delta_i / (n - i + 1))`` where ``m`` is
    ``len(deltas)``.  The factors are strictly positive whenever ``m < n``,
    which every public caller guarantees.
    """
    m = deltas.size
    if m == 0:
        return 1.0
    denom = n - np.arange(m, dtype=np.float64)
    factors = 1.0 - deltas / denom
    if use_log is None:
        use_log = n > _LOG_PRODUCT_CUTOFF
    if use_log:
        return float(np.exp(np.sum(np.log(factors))))
    return float(np.prod(factors))


def kaplan_meier_survival(sample: SortedCensoredSample, x: float) -> float:
    """Product-limit estimate of the survival function at ``x``.

    Parameters
    ----------
    sample : SortedCensoredSample
        The censored sample.
    x : float
        Evaluation point.  Must lie strictly below the largest observation;
        the product-limit curve is undefined from there on.

    Returns
    -------
    float
        ``prod_{i: z_(i) <= x} (1 - delta_[i] / (n - i + 1))``, a
        right-continuous step function equal to 1 below the smallest
        observation.

    Raises
    ------
    DomainError
        If ``x >= max(z)``.
    """
    z = sample.z_sorted
    x = float(x)
    if x >= z[-1]:
        raise DomainError(
            "product-limit survival is undefined at or above the largest "
            f"observation ({z[-1]:g}), got x={x:g}"
        )
    m = int(np.searchsorted(z, x, side="right"))
    return _km_product(sample.delta_concomitant[:m], sample.n)


def km_survival_at_threshold(sample: SortedCensoredSample, k: int) -> float:
    """Product-limit survival just below the k-th upper order statistic.

    Equals the Kaplan-Meier product over the lowest ``n - k`` order
    statistics, the anchor value used by the tail extrapolation.
    """
    _check_k(k, sample.n)
    return _km_product(sample.delta_concomitant[: sample.n - k], sample.n)


def hill_estimator(sample: SortedCensoredSample, k: int) -> float:
    """Hill estimate of the observed sample's tail index from the top ``k``.

    Mean of ``log(z_(n-i+1) / z_(n-k))`` over ``i = 1..k``.  Requires the
    k-th upper order statistic to be strictly positive.
    """
    _check_k(k, sample.n)
    z = sample.z_sorted
    threshold = z[sample.n - k - 1]
    if threshold <= 0.0:
        raise DomainError(
            f"the k-th upper order statistic must be > 0, got {threshold:g}"
        )
    top = z[sample.n - k :]
    return float(np.mean(np.log(top) - np.log(threshold)))


def uncensored_proportion(sample: SortedCensoredSample, k: int) -> float:
    """Share of uncensored records among the top ``k`` order statistics."""
    _check_k(k, sample.n)
    return float(np.mean(sample.delta_concomitant[sample.n - k :]))


def censored_hill(sample: SortedCensoredSample, k: int) -> TailEstimates:
    """Censoring-corrected Hill estimate of the loss tail index.

    Divides the Hill estimate of the observed values by the uncensored
    share among the top ``k``; under random right censoring both tails are
    power laws and the ratio undoes the thinning of the observed tail.

    Raises
    ------
    DomainError
        If every one of the top ``k`` records is censored, in which case
        the correction is undefined.
    """
    gamma_hill = hill_estimator(sample, k)
    p_hat = uncensored_proportion(sample, k)
    if p_hat == 0.0:
        raise DomainError(
            f"all of the top k={k} observations are censored; the "
            "censoring-corrected tail index is undefined"
        )
    return TailEstimates(
        k=k,
        gamma_hill=gamma_hill,
        p_hat=p_hat,
        gamma1_hat=gamma_hill / p_hat,
    )


def weissman_tail(sample: SortedCensoredSample, k: int, x: float) -> float:
    """Power-law extrapolation of the loss survival function beyond the data.

    Anchors the product-limit survival at the k-th upper order statistic
    and continues it as ``(x / z_(n-k)) ** (-1 / gamma1)`` with the
    censoring-corrected tail index.

    Parameters
    ----------
    sample : SortedCensoredSample
    k : int
        Number of upper order statistics behind the tail index estimate.
    x : float
        Evaluation point, at or above the k-th upper order statistic.
    """
    estimates = censored_hill(sample, k)
    z_threshold = sample.z_sorted[sample.n - k - 1]
    x = float(x)
    if x < z_threshold:
        raise DomainError(
            "tail extrapolation is only valid at or above the k-th upper "
            f"order statistic ({z_threshold:g}), got x={x:g}"
        )
    if estimates.gamma1_hat <= 0.0:
        raise DomainError(
            "tail index estimate is not positive; the top k observations "
            "are degenerate"
        )
    anchor = km_survival_at_threshold(sample, k)
    return float(
        (x / z_threshold) ** (-1.0 / estimates.gamma1_hat) * anchor
    )


def php_estimate(
    sample: SortedCensoredSample, settings: EstimationSettings
) -> PremiumEstimate:
    """Proportional hazard premium of the layer above the retention.

    Plugs the extrapolated survival into the distorted expectation
    ``integral_R^inf survival(x)^(1/rho) dx``, which has the closed form

    ``rho * gamma1 / (1 - rho * gamma1) * R
    * (R / z_(n-k)) ** (-1 / (rho * gamma1)) * anchor ** (1 / rho)``

    where ``anchor`` is the product-limit survival at the k-th upper order
    statistic.

    Raises
    ------
    ValidationError
        If the settings violate their bounds for this sample size.
    DomainError
        If the censoring correction is undefined, the tail estimate is not
        positive, or ``rho * gamma1 >= 1`` so the premium integral
        diverges.
    """
    settings = validate_settings(settings, sample.n)
    k = settings.k
    rho = settings.rho
    estimates = censored_hill(sample, k)
    gamma1 = estimates.gamma1_hat
    if gamma1 <= 0.0:
        raise DomainError(
            "tail index estimate is not positive; the top k observations "
            "are degenerate"
        )
    if rho * gamma1 >= 1.0:
        raise DomainError(
            "estimated tail is too heavy for a finite premium: "
            f"rho * gamma1 = {rho * gamma1:g} >= 1 "
            f"(gamma1={gamma1:g}, rho={rho:g})"
        )
    z_threshold = sample.z_sorted[sample.n - k - 1]
    if settings.retention_is_threshold:
        retention = float(z_threshold)
    else:
        retention = float(settings.retention)
    anchor = km_survival_at_threshold(sample, k)
    value = (
        rho * gamma1 / (1.0 - rho * gamma1)
        * retention
        * (retention / z_threshold) ** (-1.0 / (rho * gamma1))
        * anchor ** (1.0 / rho)
    )
    return PremiumEstimate(
        value=float(value),
        rho=rho,
        retention=retention,
        k=k,
        km_at_threshold=anchor,
    )
