"""Deviation curves on a dense geometric grid, written as CSV.

For each law the relative deviation (power laws) or the ratio |M(x)|/x^alpha
(little-o laws) is tabulated at x = 10^(j/4). Useful for eyeballing how
fast the finite-x behaviour settles.
"""

import argparse
import csv
import math
import sys

from dirichlet_lab.funcs import sieve_mobius, sieve_phi, sieve_sigma_k, sieve_unit
from dirichlet_lab.sums import prefix_sums
from dirichlet_lab.verify import AsymptoticLaw, wintner_law


def grid(limit, per_decade=4):
    xs, j = [], per_decade
    while 10 ** (j / per_decade) <= limit:
        xs.append(int(round(10 ** (j / per_decade))))
        j += 1
    return xs


def main():
    ap = argparse.ArgumentParser(description="dense deviation curves")
    ap.add_argument("--limit", type=int, default=10**6)
    ap.add_argument("--output", default="-")
    args = ap.parse_args()
    N = args.limit
    S = max(10 * N, 10**7)  # series length for the coefficients

    curves = {
        "phi": (wintner_law(sieve_mobius(S), 1), prefix_sums(sieve_phi(N))),
        "sigma_1": (wintner_law(sieve_unit(S), 1), prefix_sums(sieve_sigma_k(1, N))),
        "sigma_1/x^3": (AsymptoticLaw.little_o(3), prefix_sums(sieve_sigma_k(1, N))),
    }
    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    w = csv.writer(out)
    w.writerow(("curve", "x", "measured", "deviation"))
    for name, (law, P) in curves.items():
        for x in grid(N):
            m = P(x)
            if law.kind == "power":
                dev = abs(m / law.predict(x) - 1)
            else:
                dev = abs(m) / x**law.alpha
            w.writerow((name, x, "%.17g" % m, "%.17g" % dev))
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
