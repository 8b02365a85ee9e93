"""First ECH gap collision for coprime (p, q), against the action lcm(p, q).

For E(p, q) the first repeated value of N_k is p*q (= q*a = p*b); the script
lists the index where it occurs and checks it is below p*q + p + q.
"""

import argparse
import math

from reeb_spectra.ech import EchSpectrum, first_gap_collision
from reeb_spectra.qlinear import QLinearValue


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max", type=int, default=12)
    args = parser.parse_args()

    print(f"{'p':>3} {'q':>3} {'k':>5} {'N_k':>6} {'pq+p+q':>7}")
    for p in range(1, args.max + 1):
        for q in range(p, args.max + 1):
            if math.gcd(p, q) != 1:
                continue
            a, b = QLinearValue.rational(p), QLinearValue.rational(q)
            bound = p * q + p + q
            k = first_gap_collision(a, b, bound)
            value = EchSpectrum(a, b)[k].as_rational() if k is not None else None
            print(f"{p:>3} {q:>3} {k!s:>5} {value!s:>6} {bound:>7}")


if __name__ == "__main__":
    main()
