"""Rebuild every tree on n vertices from its pair coefficients and report the
coefficient values seen for adjacent and disjoint edge pairs."""

import argparse
import sys
from collections import Counter

from edgespec.census import enumerate_free_trees
from edgespec.graph_core import is_isomorphic
from edgespec.weighted import weighted_reconstruction


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=10)
    args = ap.parse_args(argv)

    print("n,trees,route,adjacent_values,disjoint_values,reconstructed")
    failures = 0
    for n in range(args.n_min, args.n_max + 1):
        seen = {True: Counter(), False: Counter()}
        ok = 0
        trees = list(enumerate_free_trees(n))
        routes = set()
        for t in trees:
            res = weighted_reconstruction(t)
            routes.add(res.route)
            for pc in res.table:
                seen[pc.adjacent][pc.coeff] += 1
            ok += is_isomorphic(res.tree, t)
        failures += len(trees) - ok
        adj = " ".join(str(v) for v in sorted(seen[True]))
        dis = " ".join(str(v) for v in sorted(seen[False]))
        print(f"{n},{len(trees)},{'/'.join(sorted(routes))},{adj},{dis},{ok}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
