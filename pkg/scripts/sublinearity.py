"""Print N_k/k and N_k^2/(2abk) for a few ellipsoids at growing k.

Also reports the first decade checkpoint at which N_k/k drops below a
threshold, which for E(2,3) lies beyond k = 10^4.
"""

import argparse
from fractions import Fraction

from reeb_spectra.ech import EchSpectrum
from reeb_spectra.qlinear import QLinearValue


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", default="1:1,1:2,2:3", help="comma list of a:b")
    parser.add_argument("--kmax", type=int, default=10 ** 5)
    parser.add_argument("--threshold", type=Fraction, default=Fraction(2, 100))
    args = parser.parse_args()

    checkpoints = []
    k = 10
    while k <= args.kmax:
        checkpoints += [k, 3 * k] if 3 * k <= args.kmax else [k]
        k *= 10
    print(f"{'a:b':>6} {'k':>8} {'N_k':>8} {'N_k/k':>10} {'vol ratio':>10}")
    for pair in args.pairs.split(","):
        a, b = (Fraction(x) for x in pair.split(":"))
        spec = EchSpectrum(QLinearValue.rational(a), QLinearValue.rational(b))
        crossed = None
        for k in checkpoints:
            n_k = spec[k].as_rational()
            ratio = n_k / k
            if crossed is None and ratio < args.threshold:
                crossed = k
            vol = n_k * n_k / (2 * a * b * k)
            print(f"{pair:>6} {k:>8} {str(n_k):>8} {float(ratio):>10.5f} {float(vol):>10.5f}")
        print(f"{pair:>6} first checkpoint with N_k/k < {args.threshold}: {crossed}")


if __name__ == "__main__":
    main()
