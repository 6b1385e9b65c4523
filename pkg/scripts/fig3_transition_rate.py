"""sqrt(N) arg(alpha) against n at gamma = pi, and against gamma at fixed n.

Diagonalization, the eigenvalue-polynomial root and the large-n formula
side by side.
"""
import argparse
from math import pi, sqrt

import numpy as np

from tfgrover import analytic, spectral


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--n-gamma", type=int, default=20, help="n for the gamma sweep")
    ap.add_argument("--plot", help="save a two-panel figure here (needs matplotlib)")
    args = ap.parse_args()

    ns = list(range(8, args.n_max + 1, 2))
    diag, poly, pred = [], [], []
    print(f"{'n':>3} {'diag':>9} {'poly':>9} {'formula':>9}")
    for n in ns:
        s = 2 ** (n / 2)
        beta = analytic.root_solve(n)
        diag.append(s * spectral.analyze(n, pi).arg_alpha)
        poly.append(s * abs(np.angle(beta * beta)))
        pred.append(s * analytic.pred_arg_alpha(n))
        print(f"{n:3d} {diag[-1]:9.5f} {poly[-1]:9.5f} {pred[-1]:9.5f}")
    print(f"limit 4 sqrt(2) = {4 * sqrt(2):.5f}")

    gammas = np.linspace(0.2, pi, 16)
    sweep = [2 ** (args.n_gamma / 2) * spectral.analyze(args.n_gamma, g).arg_alpha for g in gammas]
    print(f"\ngamma sweep at n={args.n_gamma}")
    for g, v in zip(gammas, sweep):
        print(f"{g:6.3f} {v:9.5f}")

    if args.plot:
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(1, 2, figsize=(8, 3))
        ax[0].plot(ns, diag, "o", label="diagonalization")
        ax[0].plot(ns, pred, "-", label="large-n formula")
        ax[0].axhline(4 * sqrt(2), color="gray", lw=0.5)
        ax[0].set_xlabel("n")
        ax[0].set_ylabel("sqrt(N) arg(alpha)")
        ax[0].legend()
        ax[1].plot(gammas, sweep, "o-")
        ax[1].set_xlabel("gamma")
        ax[1].set_ylabel("sqrt(N) arg(alpha)")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
