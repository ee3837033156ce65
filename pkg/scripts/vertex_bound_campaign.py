#!/usr/bin/env python3
"""Run a vertex-count bound search and print the JSON report.

Examples:
    python3 scripts/vertex_bound_campaign.py --n 3 --region=-3,6,-3,6 --workers 4
    python3 scripts/vertex_bound_campaign.py --n 3 --tag III --factors 1,3 \
        --preset type-iii-n3

(Use the --region=... form: a bare value starting with "-" is read as a flag.)
"""

import argparse
import json
import sys
import time

from latgon import (
    InvariantFactors,
    REGION_PRESETS,
    SearchRegion,
    check_vertex_bound,
)
from latgon.jsonio import encode_report
from latgon.typeclass import TAG_ORDER


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--tag", choices=TAG_ORDER + ("any",), default="any")
    parser.add_argument("--factors", metavar="D,M", default=None,
                        help="confine vertices to (D,M)-factor lattices")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--region", metavar="XMIN,XMAX,YMIN,YMAX")
    group.add_argument("--preset", choices=sorted(REGION_PRESETS))
    parser.add_argument("--budget", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)
    ns = parser.parse_args()

    region = (REGION_PRESETS[ns.preset] if ns.preset
              else SearchRegion.parse(ns.region))
    factors = None
    if ns.factors:
        d, m = (int(part) for part in ns.factors.split(","))
        factors = InvariantFactors(d, m)

    start = time.monotonic()
    report = check_vertex_bound(ns.n, ns.tag, factors, region,
                                budget=ns.budget, workers=ns.workers)
    elapsed = time.monotonic() - start

    print(json.dumps(encode_report(report), sort_keys=True, indent=2))
    print(f"{report.bound_name}: max {report.max_vertices_found}, "
          f"{len(report.counterexamples)} counterexamples, "
          f"exhaustive={report.exhaustive}, nodes={report.nodes_explored}, "
          f"{elapsed:.1f}s", file=sys.stderr)
    return 0 if report.upheld and report.exhaustive else 1


if __name__ == "__main__":
    sys.exit(main())
