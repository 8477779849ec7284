#!/usr/bin/env python3
"""Print the dimension predictions for a few canonical radius schedules.

Each row shows the closed-form value, the series (bisection) value, and the
capped total, for schedules on the flat torus and on Cantor products.
"""

import argparse

from limsupdim import (
    Cantor,
    PowerLawSchedule,
    closed_form_dimension,
    critical_exponent_series,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args()

    cantor_s = Cantor(1 / 3).s
    cases = [
        ("torus^2, r_n = (n^-2, n^-3)", (2.0, 3.0), (1.0, 1.0)),
        ("torus^2, r_n = (n^-1, n^-2)", (1.0, 2.0), (1.0, 1.0)),
        ("interval, l_n = n^-2", (2.0,), (1.0,)),
        ("cantor(1/3)^2, r_n = (n^-1, n^-1)", (1.0, 1.0), (cantor_s, cantor_s)),
        ("anisotropic, r_n = (n^-0.8, n^-1.7, n^-4)", (0.8, 1.7, 4.0), (1.0, 1.0, 1.0)),
    ]
    header = f"{'schedule':44s} {'closed form':>12s} {'series':>12s} {'total(s)':>9s}"
    print(header)
    print("-" * len(header))
    for label, alphas, s in cases:
        sched = PowerLawSchedule(alphas)
        cf = closed_form_dimension(sched, s)
        se = critical_exponent_series(sched, s, args.tol)
        print(f"{label:44s} {cf:12.8f} {se:12.8f} {sum(s):9.4f}")


if __name__ == "__main__":
    main()
