"""Target and b+ fidelities of the principal pair against n at gamma = pi.

    python3 scripts/fig2_fidelities.py --n-max 30 --plot fig2.png
"""
import argparse
from math import pi

import numpy as np

from tfgrover import analytic, spectral


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n-min", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--plot", help="save a two-panel figure here (needs matplotlib)")
    args = ap.parse_args()

    ns = list(range(args.n_min, args.n_max + 1, 2))
    rows = []
    print(f"{'n':>3} {'1-fid_t':>10} {'formula':>10} {'pre-gauss':>10} {'1-fid_b+':>10} {'2^-n':>10}")
    for n in ns:
        rep = spectral.analyze(n, pi)
        row = (
            n,
            1 - rep.fid_target,
            1 - analytic.pred_fid_target(n),
            1 - analytic.fid_target_from_sum(n),
            1 - rep.fid_bplus,
            2.0**-n,
        )
        rows.append(row)
        print(f"{n:3d} " + " ".join(f"{v:10.3e}" for v in row[1:]))

    sel = [r for r in rows if 12 <= r[0] <= 26]
    if len(sel) > 1:
        slope = np.polyfit([r[0] for r in sel], np.log2([r[4] for r in sel]), 1)[0]
        print(f"log2(1 - fid_b+) slope over n={sel[0][0]}..{sel[-1][0]}: {slope:.3f}")

    if args.plot:
        import matplotlib.pyplot as plt

        data = np.array(rows)
        fig, ax = plt.subplots(1, 2, figsize=(8, 3))
        ax[0].semilogy(data[:, 0], data[:, 1], "o", label="diagonalization")
        ax[0].semilogy(data[:, 0], data[:, 2], "-", label="large-n formula")
        ax[0].set_xlabel("n")
        ax[0].set_ylabel("1 - |<0|w+>|")
        ax[0].legend()
        ax[1].semilogy(data[:, 0], data[:, 4], "o", label="diagonalization")
        ax[1].semilogy(data[:, 0], data[:, 5], "-", label="2^-n")
        ax[1].set_xlabel("n")
        ax[1].set_ylabel("1 - |<b+|w->|")
        ax[1].legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
