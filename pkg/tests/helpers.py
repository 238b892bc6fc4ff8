"""Plain-Python reference implementations used as independent oracles.

Everything here is deliberately written with scalar loops, ``math``
functions and explicit sorting -- no numpy, no imports from the package
under test -- so that agreement between these routines and the library is
evidence, not tautology.
"""

import math

INDEX_CAP = 0.5
CANDIDATE_SCALE = 2.0
MIN_SAMPLE = 10


def naive_sorted(z, delta):
    """Stable ascending sort of (z, delta) pairs."""
    pairs = sorted(zip(z, delta), key=lambda pair: pair[0])
    return [p[0] for p in pairs], [p[1] for p in pairs]


def naive_km_at_threshold(z_sorted, delta_sorted, k):
    """Sequential Kaplan-Meier product over the lowest n - k records."""
    n = len(z_sorted)
    product = 1.0
    for i in range(1, n - k + 1):
        product *= 1.0 - delta_sorted[i - 1] / (n - i + 1)
    return product


def naive_km_at(z_sorted, delta_sorted, x):
    """Sequential Kaplan-Meier survival at ``x`` (requires x < max z)."""
    n = len(z_sorted)
    product = 1.0
    for i in range(1, n + 1):
        if z_sorted[i - 1] > x:
            break
        product *= 1.0 - delta_sorted[i - 1] / (n - i + 1)
    return product


def naive_hill(z_sorted, k):
    """Mean log-excess of the top k order statistics."""
    n = len(z_sorted)
    threshold = z_sorted[n - k - 1]
    total = 0.0
    for i in range(1, k + 1):
        total += math.log(z_sorted[n - i]) - math.log(threshold)
    return total / k


def naive_p_hat(delta_sorted, k):
    n = len(delta_sorted)
    return sum(delta_sorted[n - k :]) / k


def naive_gamma1_path(z_sorted, delta_sorted, k_max):
    """Corrected tail index for k = 1..k_max; None where undefined."""
    path = []
    for k in range(1, k_max + 1):
        p_hat = naive_p_hat(delta_sorted, k)
        if p_hat <= 0.0:
            path.append(None)
        else:
            path.append(naive_hill(z_sorted, k) / p_hat)
    return path


def _lower_median(values):
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def _window_score(path, beta, k):
    lo = (k + 1) // 2
    window = path[lo - 1 : k]
    med = _lower_median(window)
    total = 0.0
    for offset, value in enumerate(window):
        i = lo + offset
        total += i**beta * abs(value - med)
    return total / k


def naive_threshold_choice(z_sorted, delta_sorted, beta=0.3):
    """Reference implementation of the k-selection rule.

    Returns ``(k_star, curve)`` with ``curve`` a list of (k, score), or
    raises ValueError mirroring the library's refusals.
    """
    n = len(z_sorted)
    if n < MIN_SAMPLE:
        raise ValueError("sample too small")
    positive = sum(1 for z in z_sorted if z > 0.0)
    k_limit = min(n // 2, positive - 1)
    if k_limit < 2:
        raise ValueError("not enough positive order statistics")
    path = naive_gamma1_path(z_sorted, delta_sorted, k_limit)
    admissible = [
        value is not None and math.isfinite(value) and value < INDEX_CAP
        for value in path
    ]
    ceiling = min(k_limit, round(CANDIDATE_SCALE * n ** (1.0 / 3.0)))
    curve = []
    for k in range(2, ceiling + 1):
        lo = (k + 1) // 2
        if all(admissible[lo - 1 : k]):
            curve.append((k, _window_score(path, beta, k)))
    if curve:
        best = min(curve, key=lambda pair: pair[1])
        return best[0], curve
    for k in range(ceiling + 1, k_limit + 1):
        lo = (k + 1) // 2
        if all(admissible[lo - 1 : k]):
            return k, [(k, _window_score(path, beta, k))]
    raise ValueError("no admissible k")


def naive_uncensored_premium(z_sorted, k, rho):
    """Premium of the layer above z_(n-k) ignoring censoring flags.

    Hill estimate, empirical survival anchor via the sequential product
    (all flags treated as 1), and the closed-form layer integral.
    """
    n = len(z_sorted)
    gamma = naive_hill(z_sorted, k)
    anchor = 1.0
    for i in range(1, n - k + 1):
        anchor *= 1.0 - 1.0 / (n - i + 1)
    retention = z_sorted[n - k - 1]
    return (
        rho * gamma / (1.0 - rho * gamma)
        * retention
        * anchor ** (1.0 / rho)
    )


def naive_aggregate(pairs):
    """Column means, |difference of means| and per-replicate rmse."""
    count = len(pairs)
    mean_true = sum(p[0] for p in pairs) / count
    mean_hat = sum(p[1] for p in pairs) / count
    rmse = math.sqrt(sum((p[1] - p[0]) ** 2 for p in pairs) / count)
    return mean_true, mean_hat, abs(mean_hat - mean_true), rmse
