"""End-to-end premium estimation on a synthetic censored claims file.

Draws one censored Burr portfolio, writes it as a claims CSV, and runs the
full chain twice: once through the library API and once through the CLI,
so the two entry points can be compared line by line.
"""

import tempfile
from pathlib import Path

import numpy as np

from tailpremium import (
    EstimationSettings,
    SortedCensoredSample,
    burr_scheme,
    censored_hill,
    php_estimate,
    reiss_thomas_k,
)
from tailpremium.cli import main


def write_claims(path: Path, z: np.ndarray, delta: np.ndarray) -> None:
    lines = ["z,delta"] + [f"{zi:.12g},{di}" for zi, di in zip(z, delta)]
    path.write_text("\n".join(lines) + "\n")


def run() -> None:
    scheme = burr_scheme(gamma1=0.25, p=0.7, eta=0.25)
    rng = np.random.default_rng(20260815)
    z, delta = scheme.sample_arrays(2000, rng)
    print(
        f"simulated {z.size} claims, {int(delta.sum())} uncensored "
        f"(loss tail index {scheme.loss_model.tail_index}, "
        f"asymptotic uncensored share {scheme.uncensored_share:.2f})"
    )

    sample = SortedCensoredSample.from_unsorted(z, delta)
    choice = reiss_thomas_k(sample)
    estimates = censored_hill(sample, choice.k_star)
    premium = php_estimate(
        sample, EstimationSettings(k=choice.k_star, rho=1.1)
    )
    print(f"selected k = {choice.k_star}, retention = {premium.retention:.4f}")
    print(
        f"gamma_hill = {estimates.gamma_hill:.4f}, p_hat = {estimates.p_hat:.4f}, "
        f"corrected gamma1_hat = {estimates.gamma1_hat:.4f}"
    )
    print(f"premium of the layer above the retention: {premium.value:.6f}")

    with tempfile.TemporaryDirectory() as tmp:
        claims = Path(tmp) / "claims.csv"
        write_claims(claims, z, delta)
        print("\nsame run through the CLI:")
        code = main(["estimate", str(claims), "--rho", "1.1", "--auto-k"])
        print(f"exit code {code}")


if __name__ == "__main__":
    run()
