"""Per-index candidate counts, timings, and the q = 2 count against the published bound.

    python scripts/run_search.py [--q 2 3 ...] [--out-dir results/]
"""
import argparse
import time
from pathlib import Path

from qfano.search import DIM_A_ABOVE_4, FANO_INDICES, PASSED, SearchConfig, search

Q2_BOUND = 1492


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="*", default=list(range(2, 21)))
    ap.add_argument("--out-dir", type=Path, default=None)
    ap.add_argument("--partitions", type=int, default=4)
    args = ap.parse_args()
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)

    print(f"{'q':>3} {'records':>8} {'flagged':>8} {'seconds':>8}")
    for q in args.q:
        t0 = time.perf_counter()
        recs = search(SearchConfig(q, partitions=args.partitions))
        dt = time.perf_counter() - t0
        flagged = sum(bool(set(r.flags) - PASSED) for r in recs)
        note = "" if q in FANO_INDICES or not recs else "  <- outside expected index set"
        print(f"{q:>3} {len(recs):>8} {flagged:>8} {dt:>8.2f}{note}")
        if q == 2:
            above = sum(DIM_A_ABOVE_4 in r.flags for r in recs)
            print(f"    q = 2: {len(recs)} series vs bound {Q2_BOUND}; {above} with dim|A| > 4")
        if args.out_dir:
            (args.out_dir / f"q{q}.jsonl").write_text("".join(r.to_json() + "\n" for r in recs))


if __name__ == "__main__":
    main()
