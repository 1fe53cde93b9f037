"""Linear wave analysis: the good/bad-curvature stability dichotomy.

Every wall-sine wave (k1, k2) obeys a 2x2 system whose discriminant decides
growth.  On the bad-curvature side a wave grows exactly when the temperature
gradient is below 4/(pi^2 (k1^2 + 4 k2^2)); on the good-curvature side no
wave grows at any admissible gradient.
"""

import numpy as np

import plasmalab as pl

GRADIENTS = [0.02, 0.04, 0.081, 0.12]


def main():
    print("per-wave gradient thresholds 4/(pi^2 (k1^2 + 4 k2^2)):")
    for k1 in range(1, 4):
        row = "  ".join(
            f"k=({k1},{k2}): {pl.mode_threshold(pl.ModeIndex(k1, k2)):.5f}"
            for k2 in range(1, 4)
        )
        print("  " + row)
    print(f"  largest threshold: 4/(5 pi^2) = {4 / (5 * np.pi**2):.6f} at k=(1,1)")
    print()

    for gradient in GRADIENTS:
        params = pl.Params(0.01 + gradient, 0.01, 1.0)
        print(f"gradient {gradient:.3f}:")
        for side in (pl.SteadyKind.BAD_CURVATURE, pl.SteadyKind.GOOD_CURVATURE):
            best = pl.dominant_mode(params, side, k_max=8)
            if best is None:
                print(f"  {side.value:>4} side: no growing wave")
            else:
                lam = best.eigenvalues[0]
                print(
                    f"  {side.value:>4} side: fastest wave k=({best.mode.k1},"
                    f"{best.mode.k2}), rate {best.growth_rate:.5f}, "
                    f"frequency {lam.imag:.5f}"
                )
        print()

    gradient = 2 / (5 * np.pi**2)
    params = pl.Params(0.01 + gradient, 0.01, 1.0)
    best = pl.dominant_mode(params, pl.SteadyKind.BAD_CURVATURE, 8)
    print(
        f"at gradient 2/(5 pi^2) the dominant rate is {best.growth_rate:.7f} "
        f"(closed form 2/(5 pi) = {2 / (5 * np.pi):.7f})"
    )


if __name__ == "__main__":
    main()
