"""Quasi-probability tables: negative entries certify non-classical statistics.

A classical mixture over the four phase-space cells would need all entries
non-negative.  The judgment states fitted from the study data all carry
one negative cell, so no classical model reproduces their statistics.

Run:  python demos/03_wigner_negativity.py
"""

import numpy as np

from relspace import negativity, wigner

FITTED_T_SQUARED = {"q1": 0.7622, "q2": 0.6736, "q3": 0.8993}


def main() -> None:
    for query_id, t2 in FITTED_T_SQUARED.items():
        dist = wigner(t2)
        has_negative, min_entry = negativity(dist)
        print(f"{query_id}: t^2 = {t2}")
        for row in dist.w:
            print("   " + "  ".join(f"{x:8.4f}" for x in row))
        flag = "non-classical" if has_negative else "classical-compatible"
        print(f"   min entry {min_entry:+.4f} -> {flag}\n")

    print("Scanning t^2 over [0, 1]:")
    print("negativity vanishes only at the definite states (0, 1) and the")
    print("balanced state 1/2, where the table touches zero:")
    for t2 in np.linspace(0.0, 1.0, 11):
        has_negative, min_entry = negativity(wigner(float(t2)))
        marker = "negative" if has_negative else "        "
        print(f"  t^2 = {t2:4.2f}   min entry {min_entry:+8.4f}   {marker}")


if __name__ == "__main__":
    main()
