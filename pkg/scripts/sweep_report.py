#!/usr/bin/env python3
"""Run a catalog sweep and save the full JSON report plus a short summary.

Example:
    python scripts/sweep_report.py --seed 7 --out artifacts/sweep7.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from socle_verify.pipeline import render_json, sweep


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: built-in)")
    parser.add_argument("--groups", type=str, default=None, help="comma-separated catalog names")
    parser.add_argument("--inner", type=int, default=25)
    parser.add_argument("--compose", type=int, default=0)
    parser.add_argument("--subst", type=int, default=25)
    parser.add_argument("--prime-only", action="store_true")
    parser.add_argument("--full-check", action="store_true")
    parser.add_argument("--out", type=Path, default=None, help="where to write the JSON report")
    args = parser.parse_args(argv)

    started = time.monotonic()
    report = sweep(
        seed=args.seed,
        groups=args.groups.split(",") if args.groups else None,
        inner_count=args.inner,
        compose_count=args.compose,
        subst_count=args.subst,
        extension_degree=1 if args.prime_only else 2,
        full_check=args.full_check,
    )
    elapsed = time.monotonic() - started

    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(render_json(report.as_dict()) + "\n")
        print(f"wrote {args.out}")

    print(report.render_text())
    total = sum(len(r.auto_reports) for r in report.reports)
    print(f"{total} automorphisms across {len(report.reports)} runs in {elapsed:.1f}s")
    return 0 if report.verdict else 1


if __name__ == "__main__":
    sys.exit(main())
