"""Detection thresholds for the Werner-GHZ family.

Prints, per n, the separability edge lambda_0, the skew-information value at
lambda_0, the detection threshold lambda_n (closed form and bisection), and the
bracket it falls in for n >= 8.

    python scripts/werner_thresholds.py --max-n 16
"""

import argparse

from wyskew.bounds import (
    lambda_bracket_check,
    lambda_threshold,
    lambda_threshold_bisect,
    werner_separability_threshold,
    werner_value_at_separability_threshold,
)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=16)
    args = parser.parse_args()

    print(f"{'n':>3} {'lambda_0':>12} {'I(lambda_0)':>12} {'lambda_n':>12} {'bisection':>12}  bracket")
    for n in range(2, args.max_n + 1):
        lam_n = lambda_threshold(n)
        bracket = ""
        if n >= 8:
            lo, hi, holds = lambda_bracket_check(n)
            bracket = f"({lo:.5f}, {hi:.5f}) {'ok' if holds else 'VIOLATED'}"
        print(
            f"{n:>3} {werner_separability_threshold(n):>12.6g} "
            f"{werner_value_at_separability_threshold(n):>12.6g} {lam_n:>12.10f} "
            f"{lambda_threshold_bisect(n):>12.10f}  {bracket}"
        )


if __name__ == "__main__":
    main()
