"""Command line entry points.

Subcommands:
  run       verify a batch of automorphisms for one group and field
  sweep     run the whole catalog with seeded random automorphisms
  jennings  print the dimension-subgroup layer table for a group
  gl-check  check det^(p-1) against the top-monomial action on GL_m
  catalog   list the built-in groups
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .groupalgebra import dimension_subgroups_definitional
from .jennings import build_jennings_basis
from .pgroup import PcGroup, catalog, catalog_names
from .pipeline import (
    RunConfig,
    RunStageError,
    catalog_table,
    gl_check,
    master_seed,
    prepare,
    render_json,
    run,
    sweep,
)


def _split_field(text: str) -> tuple[int, int, str | None]:
    parts = text.split(",", 2)
    p = int(parts[0])
    n = int(parts[1]) if len(parts) > 1 else 1
    modulus = parts[2].strip() if len(parts) > 2 else None
    return p, n, modulus


def _load_specs(values: list[str]) -> list[str]:
    specs = []
    for value in values:
        if value.startswith("@"):
            for line in Path(value[1:]).read_text().splitlines():
                line = line.split("#", 1)[0].strip()
                if line:
                    specs.append(line)
        else:
            specs.append(value)
    return specs


def _group_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--group",
        default="D8",
        help="catalog group name or path to a presentation file (default D8)",
    )
    parser.add_argument(
        "--presentation",
        metavar="FILE",
        help="file with a 'pcgroup p=.. m=..' power-commutator presentation; overrides --group",
    )


def _group_source(args: argparse.Namespace) -> tuple[str, str | None]:
    """Resolve --group/--presentation to (name, presentation text or None)."""
    if args.presentation:
        return Path(args.presentation).stem, Path(args.presentation).read_text()
    if args.group not in catalog_names() and Path(args.group).exists():
        return Path(args.group).stem, Path(args.group).read_text()
    return args.group, None


def _build_group(args: argparse.Namespace) -> PcGroup:
    name, text = _group_source(args)
    if text is not None:
        return PcGroup.from_presentation_text(text, name=name)
    return catalog(name)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="socle-verify",
        description="Socle-scalar verification for modular group algebras of p-groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="verify automorphisms for one group algebra")
    _group_args(p_run)
    p_run.add_argument(
        "--field",
        metavar="p[,n[,modulus]]",
        help="coefficient field, e.g. '2', '3,2', or '3,2,t^2+1' (default: prime field)",
    )
    p_run.add_argument(
        "--auto",
        action="append",
        default=[],
        metavar="SPEC",
        help="automorphism spec (repeatable); '@file' reads one spec per line",
    )
    p_run.add_argument("--no-stored", action="store_true", help="skip the group's stored automorphisms")
    p_run.add_argument("--full-check", action="store_true", help="also run the slower structural checks")
    p_run.add_argument(
        "--seed",
        type=int,
        default=None,
        help="seed base for random-* specs without an explicit seed=",
    )
    p_run.add_argument("--format", choices=("text", "json"), default="text")

    p_sweep = sub.add_parser("sweep", help="verify the whole catalog")
    p_sweep.add_argument("--seed", type=int, default=None, help=f"master seed (default {master_seed()})")
    p_sweep.add_argument("--groups", help="comma-separated catalog names (default: all)")
    p_sweep.add_argument("--inner", type=int, default=25, help="random inner automorphisms per field")
    p_sweep.add_argument("--compose", type=int, default=0,
                         help="random compositions per field (off by default)")
    p_sweep.add_argument("--subst", type=int, default=25,
                         help="random substitutions per field (elementary abelian groups)")
    p_sweep.add_argument("--prime-only", action="store_true", help="skip the quadratic extension pass")
    p_sweep.add_argument("--full-check", action="store_true")
    p_sweep.add_argument("--format", choices=("text", "json"), default="text")

    p_jen = sub.add_parser("jennings", help="print the layer table for a group")
    _group_args(p_jen)
    p_jen.add_argument(
        "--field",
        metavar="p[,n]",
        help="optional; the table is field independent, the characteristic is checked",
    )
    p_jen.add_argument("--format", choices=("text", "json"), default="text")

    p_gl = sub.add_parser("gl-check", help="check det^(p-1) on the truncated polynomial ring")
    p_gl.add_argument("--p", type=int, required=True)
    p_gl.add_argument("--m", type=int, required=True, help="number of variables")
    p_gl.add_argument("--n", type=int, default=1, help="field extension degree")
    p_gl.add_argument("--modulus", default=None, help="modulus literal, e.g. 't^2+1'")
    p_gl.add_argument("--count", type=int, default=200, help="random invertible matrices to sample")
    p_gl.add_argument("--seed", type=int, default=None)
    p_gl.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("catalog", help="list the built-in groups")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except RunStageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "run":
        name, presentation = _group_source(args)
        p, n, modulus = _split_field(args.field) if args.field else (None, 1, None)
        config = RunConfig(
            group=name,
            presentation=presentation,
            p=p,
            n=n,
            modulus=modulus,
            auto_specs=tuple(_load_specs(args.auto)),
            include_stored=not args.no_stored,
            full_check=args.full_check,
            seed=args.seed,
        )
        algebra, autos = prepare(config)
        report = run(algebra, autos, full_check=args.full_check)
        out = render_json(report.as_dict()) if args.format == "json" else report.render_text() + "\n"
        sys.stdout.write(out)
        return 0 if report.verdict else 1

    if args.command == "sweep":
        groups = [g.strip() for g in args.groups.split(",")] if args.groups else None
        report = sweep(
            seed=args.seed,
            groups=groups,
            inner_count=args.inner,
            compose_count=args.compose,
            subst_count=args.subst,
            extension_degree=1 if args.prime_only else 2,
            full_check=args.full_check,
        )
        out = render_json(report.as_dict()) if args.format == "json" else report.render_text() + "\n"
        sys.stdout.write(out)
        return 0 if report.verdict else 1

    if args.command == "jennings":
        group = _build_group(args)
        if args.field:
            p, n, modulus = _split_field(args.field)
            from .pipeline import build_field

            field = build_field(p, n, modulus)
            if field.p != group.p:
                raise ValueError(
                    f"field characteristic {field.p} does not match the group prime {group.p}"
                )
        basis = build_jennings_basis(group)
        pbw = basis.jq_dimension_check()["pbw_dims"]
        recursive = group.jennings_series_recursive()
        definitional = dimension_subgroups_definitional(group)
        match = definitional[: len(recursive)] == recursive and all(
            sub.is_trivial() for sub in definitional[len(recursive) :]
        )
        data = {
            "group": {"name": group.name or "custom", "order": int(group.order), "p": int(group.p)},
            "layers": basis.layer_summary(),
            "gr_dims": [int(d) for d in basis.filtration.gr_dims],
            "pbw_coefficients": [int(c) for c in pbw],
            "socle_degree": int(basis.filtration.socle_degree),
            "series_definitions_agree": bool(match),
        }
        if args.format == "json":
            sys.stdout.write(render_json(data))
        else:
            lines = [f"group {data['group']['name']} (order {group.order}, p = {group.p})"]
            for layer in data["layers"]:
                lifts = ", ".join(layer["lifts"]) if layer["lifts"] else "-"
                lines.append(f"  r={layer['r']}: d_r={layer['d_r']}  lifts: {lifts}")
            lines.append(f"  graded dimensions: {data['gr_dims']}")
            lines.append(f"  socle degree: {data['socle_degree']}")
            lines.append(f"  recursive = definitional series: {'yes' if match else 'NO'}")
            sys.stdout.write("\n".join(lines) + "\n")
        return 0 if match else 1

    if args.command == "gl-check":
        report = gl_check(
            p=args.p, m=args.m, n=args.n, count=args.count, seed=args.seed, modulus=args.modulus
        )
        if args.format == "json":
            sys.stdout.write(render_json(report))
        else:
            checked = ", ".join(f"{k}={v}" for k, v in report["checked"].items())
            sys.stdout.write(
                f"GL_{args.m} over GF({args.p}^{args.n}): {checked}\n"
                f"verdict: {'PASS' if report['verdict'] else 'FAIL'}\n"
            )
        return 0 if report["verdict"] else 1

    if args.command == "catalog":
        sys.stdout.write(catalog_table() + "\n")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
