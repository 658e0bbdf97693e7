#!/usr/bin/env python3
"""Tabulate Jennings layer data for catalog groups.

Writes one JSON artifact with, per group: the d_r vector, the lift words,
the graded dimensions, and the socle degree.  With --format md a rough
markdown table goes to stdout instead.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from socle_verify import build_jennings_basis, catalog, catalog_names


def table_for(name):
    group = catalog(name)
    basis = build_jennings_basis(group)
    check = basis.jq_dimension_check()
    return {
        "group": name,
        "order": group.order,
        "p": group.p,
        "layers": basis.layer_summary(),
        "gr_dims": check["gr_dims"],
        "socle_degree": check["socle_degree"],
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--groups", type=str, default=None, help="comma-separated names (default: all)")
    parser.add_argument("--format", choices=("json", "md"), default="json")
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args(argv)

    names = args.groups.split(",") if args.groups else catalog_names()
    tables = [table_for(name) for name in names]

    if args.format == "md":
        print("| group | order | d_r | socle degree |")
        print("|---|---|---|---|")
        for t in tables:
            d = ", ".join(str(layer["d_r"]) for layer in t["layers"])
            print(f"| {t['group']} | {t['order']} | {d} | {t['socle_degree']} |")
        return 0

    text = json.dumps(tables, indent=2)
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
