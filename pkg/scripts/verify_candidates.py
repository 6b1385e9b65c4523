"""Exhaustive run of the two-round solution check on small registers."""
import argparse
import time
from collections import Counter

from tfgrover.verifier import Oracle, classify, ground_truth


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="2,4,6,8")
    args = ap.parse_args()
    for n in map(int, args.ns.split(",")):
        start = time.perf_counter()
        calls = Counter()
        wrong = 0
        for u in range(2**n):
            for s in range(2**n):
                out = classify(s, Oracle(n, u))
                wrong += out.verdict is not ground_truth(s, u, n)
                calls[out.oracle_calls] += 1
        dt = time.perf_counter() - start
        print(f"n={n}: {4**n} pairs, {wrong} wrong, calls histogram {dict(sorted(calls.items()))}, {dt:.2f}s")


if __name__ == "__main__":
    main()
