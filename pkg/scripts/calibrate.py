"""Per-seed objectives of the explicit-only search on synthetic networks.

Usage: python3 scripts/calibrate.py [--seeds 20] [--p 0.9 0.6 0.5]
"""

import argparse
import statistics
import time

from profrank.search import grid_search
from profrank.synth import GenParams, generate_network

SHAPE = dict(n_users=300, n_answers=400, votes_per_answer=(3, 8))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--p", type=float, nargs="+", default=[0.9, 0.6, 0.5])
    parser.add_argument("--jobs", type=int, default=None)
    args = parser.parse_args()
    print(f"shape: {SHAPE}, types exp+,exp-, default stages")
    for p in args.p:
        start = time.perf_counter()
        rows = []
        for seed in range(args.seeds):
            data, _ = generate_network(GenParams(**SHAPE, p_correct=p, seed=seed))
            res = grid_search(data, ["exp+", "exp-"], n_jobs=args.jobs)
            rows.append((seed, len(data.votes), res.best_objective, res.best))
        values = [0.0 if r[2] is None else r[2] for r in rows]
        print(f"\np_correct={p}  ({time.perf_counter() - start:.0f}s)")
        print("seed  votes  objective  d     alpha")
        for seed, votes, obj, best in rows:
            shown = "absent" if obj is None else f"{obj:+.4f}"
            params = "" if best is None else f"{best.d:.2f}  {best.alpha:.2f}"
            print(f"{seed:4d}  {votes:5d}  {shown:>9}  {params}")
        first10 = values[:10]
        print(f"median seeds 0-9 (absent as 0): {statistics.median(first10):+.4f}")
        print(f"median all {len(values)} seeds (absent as 0): {statistics.median(values):+.4f}")
        present = [r[2] for r in rows if r[2] is not None]
        if present:
            print(f"median over present objectives only: {statistics.median(present):+.4f}")


if __name__ == "__main__":
    main()
