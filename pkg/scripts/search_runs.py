"""Full search runs: peak success probability, peak time and query counts.

Compares the scanned peak with the quarter-rotation time of the principal
pair and the average query count with (pi / 2 sqrt 2) 2^(n/2).  With
--check-fullspace the symmetric-subspace curve is replayed in the 2^n
simulator for a random hidden string.
"""
import argparse
from math import pi

import numpy as np

from tfgrover import fullspace, spectral, walk


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--ns", default="12,16,20,24")
    ap.add_argument("--gamma", type=float, default=pi)
    ap.add_argument("--check-fullspace", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'t*':>6} {'t_quarter':>9} {'p*':>7} {'fid_t^2/2':>9} {'queries':>8} {'ratio':>6}")
    for n in map(int, args.ns.split(",")):
        rep = spectral.analyze(n, args.gamma)
        rec = walk.evolve_scan(n, args.gamma)
        q = walk.queries_from_arg(rep.arg_alpha)
        print(
            f"{n:3d} {rec.t_star:6d} {walk.peak_time(rep.arg_alpha):9.1f} {rec.success_prob:7.4f} "
            f"{rep.fid_target**2 / 2:9.4f} {q:8.0f} {q / walk.grover_like_queries(n):6.3f}"
            + (" (truncated)" if rec.truncated else "")
        )
        if args.check_fullspace and n <= 12:
            u = int(rng.integers(2**n))
            t = min(rec.t_star, 200)
            gap = np.abs(fullspace.full_curve(n, u, args.gamma, t) - rec.curve[: t + 1]).max()
            print(f"    full-space replay, u={fullspace.index_to_bits(u, n)}: max gap {gap:.1e}")


if __name__ == "__main__":
    main()
