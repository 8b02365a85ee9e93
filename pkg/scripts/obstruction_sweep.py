"""Check the singular-count obstruction over all p <= P, valid q and alpha | p."""

import argparse
import math

from reeb_spectra.seifert import singular_count_obstruction


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=50)
    parser.add_argument("--bound", type=int, default=10 ** 4)
    args = parser.parse_args()

    cases = failures = 0
    for p in range(2, args.pmax + 1):
        for q in range(p):
            if math.gcd(p, q) != 1:
                continue
            for alpha in range(2, p + 1):
                if p % alpha == 0:
                    cases += 1
                    if not singular_count_obstruction(p, q, alpha, args.bound):
                        failures += 1
                        print(f"solution found: p={p} q={q} alpha={alpha}")
    print(f"{cases} cases, {failures} with a solution |n2| <= {args.bound}")


if __name__ == "__main__":
    main()
