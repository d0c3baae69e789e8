"""Laplacian-cospectral tree census for a range of n, printed as a CSV table.

    python scripts/reproduce_census.py --n-min 4 --n-max 14 --out-dir runs/census
"""

import argparse
import logging
import sys
import time
from pathlib import Path

from edgespec.census import MAX_TREE_ORDER, run_census, summaries_to_csv

log = logging.getLogger("reproduce_census")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=None, help="write census_n<N>.jsonl files here")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s", stream=sys.stderr)

    if args.n_max > MAX_TREE_ORDER:
        ap.error(f"--n-max is capped at {MAX_TREE_ORDER}")
    summaries = []
    for n in range(args.n_min, args.n_max + 1):
        t0 = time.perf_counter()
        result = run_census(n, jobs=args.jobs)
        log.info("n=%d  %s  (%.1fs)", n, result.summary.row_text(), time.perf_counter() - t0)
        if args.out_dir is not None:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            result.write_jsonl(args.out_dir / f"census_n{n}.jsonl")
        summaries.append(result.summary)
    sys.stdout.write(summaries_to_csv(summaries))
    return 0


if __name__ == "__main__":
    sys.exit(main())
