"""Moment comparison for the regular Godsil-McKay pair, plus the switching set."""

import argparse
import json
import sys

from edgespec.census import GM_GRAPH6, find_gm_switch, gm_verdict
from edgespec.graph_core import graph6_decode


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=6)
    ap.add_argument("--pair", nargs=2, default=list(GM_GRAPH6), metavar="G6")
    args = ap.parse_args(argv)

    g1, g2 = (graph6_decode(s) for s in args.pair)
    verdict = gm_verdict(g1, g2, args.r_max)
    out = verdict.to_dict()
    switch = find_gm_switch(g1, g2)
    out["switching_set"] = None if switch is None else list(switch)
    print(json.dumps(out, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
