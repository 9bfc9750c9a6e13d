"""Run every verification group at seeded random admissible points.

    python3 scripts/sweep_random.py --points 20 --N 4 --seed 0
"""

import argparse
import sys
import time

from metahahn.sweeps import random_point, run_group


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--N", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    bad = 0
    for i in range(args.points):
        cfg = random_point(args.seed + i, args.N)
        t = time.perf_counter()
        rep = run_group("all", cfg)
        dt = time.perf_counter() - t
        status = "ok" if rep.passed else "FAIL"
        print(f"{status} alpha={cfg.alpha} beta={cfg.beta} mu={cfg.mu} N={cfg.N} "
              f"checks={len(rep.checks)} [{dt:.2f} s]")
        for c in rep.failures():
            print(f"    {c.module}.{c.operation}: {c.name}: {c.residual}")
        bad += not rep.passed
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
