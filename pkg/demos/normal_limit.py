"""Normal-limit mean and variance across the parameter plane.

Evaluates the closed-form asymptotic mean and variance of the normalized
premium error, and shows the surprising sign structure of the variance:
for mild censoring (large p) the printed formula goes negative, in which
case no confidence interval is available and the library says so.
"""

import numpy as np

from tailpremium import AsymptoticParams, DomainError, asym_mean, asym_variance


def run() -> None:
    print("variance of the normal limit at gamma1 = 0.1, rho = 1:")
    for p in np.linspace(0.1, 0.9, 9):
        sigma2 = asym_variance(0.1, float(p), 1.0)
        note = "  (negative: no confidence interval)" if sigma2 <= 0 else ""
        print(f"  p={p:.1f}  sigma2={sigma2: .7f}{note}")

    print("\nmean with a unit second-order limit (lambda1 = 1, tau1 = -0.25):")
    for rho in (1.0, 1.1, 1.5):
        params = AsymptoticParams(
            gamma1=0.1, p=0.4, rho=rho, tau1=-0.25, lambda1=1.0
        )
        print(f"  rho={rho:.1f}  mu={asym_mean(params):.6f}")

    print("\nsingular configuration (gamma1 + tau1 + rho = 2):")
    try:
        asym_mean(
            AsymptoticParams(gamma1=0.1, p=0.4, rho=1.9, tau1=0.0, lambda1=1.0)
        )
    except DomainError as exc:
        print(f"  refused: {exc}")


if __name__ == "__main__":
    run()
