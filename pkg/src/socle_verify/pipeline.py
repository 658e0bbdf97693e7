"""End-to-end drivers: single runs, the catalog sweep, and the GL check.

A run builds one group algebra, certifies its filtration and layer
structure, pushes a batch of automorphisms through the socle-scalar
verification, and reports per-automorphism results plus a verdict.  The
sweep repeats that over the whole catalog with stored, random inner,
composed, and (for elementary abelian groups) random substitution
automorphisms over the prime field and a quadratic extension.

All randomness flows from one master seed through a splitmix64 chain
keyed by group name, field degree, and source kind, so reports are
byte-for-byte reproducible.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .automorphisms import (
    AlgebraAutomorphism,
    VerificationReport,
    parse_automorphism_specs,
    random_inner,
    random_substitution,
    verify_theorem,
)
from .ffield import GF, FieldSpec, format_modulus
from .groupalgebra import GroupAlgebra, dimension_subgroups_definitional
from .jennings import build_jennings_basis
from .linalg import FieldOps
from .pgroup import PcGroup, catalog, catalog_description, catalog_names
from .truncsym import TruncatedPolynomialRing

__all__ = [
    "MASTER_SEED",
    "SEED_ENV",
    "RunConfig",
    "RunReport",
    "SweepReport",
    "RunStageError",
    "master_seed",
    "derive_seed",
    "prepare",
    "run",
    "sweep",
    "gl_check",
    "render_json",
]

MASTER_SEED = 0xB50C1E
SEED_ENV = "SOCLE_VERIFY_SEED"
_MASK = (1 << 64) - 1


def master_seed() -> int:
    env = os.environ.get(SEED_ENV)
    return int(env) if env else MASTER_SEED


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive_seed(base: int, *parts: int | str) -> int:
    """Stable 64-bit seed from a base seed and a mixed salt chain."""
    state = _splitmix64(base & _MASK)
    for part in parts:
        if isinstance(part, int):
            v = part & _MASK
        else:
            v = int.from_bytes(hashlib.sha256(str(part).encode()).digest()[:8], "big")
        state = _splitmix64(state ^ v)
    return state


class RunStageError(RuntimeError):
    """Failure wrapped with the pipeline stage it happened in."""

    def __init__(self, stage: str, error: Exception):
        super().__init__(f"[{stage}] {type(error).__name__}: {error}")
        self.stage = stage
        self.error = error


@dataclass
class RunConfig:
    group: str = "D8"
    presentation: str | None = None  # pc presentation text; overrides the name
    p: int | None = None  # field characteristic; defaults to the group prime
    n: int = 1
    modulus: str | None = None  # modulus literal in t, e.g. "t^2+1"
    auto_specs: tuple[str, ...] = ()
    include_stored: bool = True
    full_check: bool = False
    seed: int | None = None  # default seed base for random-* specs without seed=


@dataclass
class RunReport:
    group_name: str
    group_order: int
    p: int
    field: FieldSpec
    layers: list[dict]
    gr_dims: list[int]
    socle_degree: int
    checks: dict[str, bool]
    auto_reports: list[VerificationReport]
    verdict: bool

    def as_dict(self) -> dict:
        return {
            "group": {"name": self.group_name, "order": int(self.group_order), "p": int(self.p)},
            "field": {
                "p": int(self.field.p),
                "n": int(self.field.n),
                "modulus": format_modulus(self.field),
            },
            "jennings": [
                {"r": int(l["r"]), "d_r": int(l["d_r"]), "lifts": list(l["lifts"])}
                for l in self.layers
            ],
            "gr_dims": [int(d) for d in self.gr_dims],
            "socle_degree": int(self.socle_degree),
            "autos": [rep.as_dict() for rep in self.auto_reports],
            "verdict": bool(self.verdict),
            "checks": {k: bool(v) for k, v in self.checks.items()},
        }

    def render_text(self) -> str:
        lines = [
            f"group {self.group_name} (order {self.group_order}, p = {self.p}) "
            f"over GF({self.field.q})"
            + (f" with modulus {format_modulus(self.field)}" if self.field.n > 1 else ""),
            f"  socle degree {self.socle_degree}, graded dimensions {self.gr_dims}",
        ]
        for layer in self.layers:
            lifts = ", ".join(layer["lifts"]) if layer["lifts"] else "-"
            lines.append(f"  layer r={layer['r']}: d_r={layer['d_r']}  lifts: {lifts}")
        for name, ok in self.checks.items():
            lines.append(f"  check {name}: {'ok' if ok else 'FAILED'}")
        for rep in self.auto_reports:
            status = "ok" if rep.equation_holds and rep.lambda_in_power_subgroup else "FAILED"
            lines.append(
                f"  [{status}] lambda = {rep.socle_scalar}, det = {rep.det_total}, "
                f"det^(p-1) = {rep.det_power}  <- {rep.provenance}"
            )
        lines.append(f"verdict: {'PASS' if self.verdict else 'FAIL'}")
        return "\n".join(lines)


@dataclass
class SweepReport:
    seed: int
    reports: list[RunReport]
    verdict: bool

    def as_dict(self) -> dict:
        return {
            "master_seed": int(self.seed),
            "reports": [r.as_dict() for r in self.reports],
            "verdict": bool(self.verdict),
        }

    def render_text(self) -> str:
        lines = [f"sweep with master seed {self.seed}"]
        for rep in self.reports:
            ok = sum(1 for r in rep.auto_reports if r.equation_holds and r.lambda_in_power_subgroup)
            lines.append(
                f"  {'PASS' if rep.verdict else 'FAIL'}  {rep.group_name:10s} "
                f"GF({rep.field.q:3d})  autos {ok}/{len(rep.auto_reports)}  "
                f"socle degree {rep.socle_degree}"
            )
        lines.append(f"verdict: {'PASS' if self.verdict else 'FAIL'}")
        return "\n".join(lines)


def build_field(p: int, n: int = 1, modulus: str | None = None) -> FieldSpec:
    if modulus is None:
        return GF(p, n)
    from .ffield import parse_polynomial_literal

    coeffs = parse_polynomial_literal(modulus, p)
    return GF(p, n, coeffs)


def prepare(config: RunConfig) -> tuple[GroupAlgebra, list[AlgebraAutomorphism]]:
    try:
        if config.presentation is not None:
            group = PcGroup.from_presentation_text(config.presentation, name=config.group or "custom")
        else:
            group = catalog(config.group)
    except Exception as err:
        raise RunStageError("group", err) from err
    try:
        p = config.p if config.p is not None else group.p
        spec = build_field(p, config.n, config.modulus)
        algebra = GroupAlgebra(group, spec)
    except Exception as err:
        raise RunStageError("field", err) from err
    try:
        autos: list[AlgebraAutomorphism] = []
        if config.include_stored:
            for gauto in group.stored_automorphisms():
                autos.append(AlgebraAutomorphism.from_group_automorphism(algebra, gauto))
        base = config.seed if config.seed is not None else master_seed()
        for i, spec_text in enumerate(config.auto_specs):
            autos.extend(
                parse_automorphism_specs(algebra, spec_text, derive_seed(base, "auto", i))
            )
    except Exception as err:
        raise RunStageError("automorphisms", err) from err
    return algebra, autos


def run(algebra: GroupAlgebra, autos: list[AlgebraAutomorphism], full_check: bool = False) -> RunReport:
    group = algebra.group
    try:
        basis = build_jennings_basis(group)
    except Exception as err:
        raise RunStageError("jennings", err) from err

    checks: dict[str, bool] = {}
    try:
        basis.jq_dimension_check()
        checks["graded_dimensions"] = True
        algebra.socle_vector()
        checks["socle_certificate"] = True
        prod = basis.socle_product(algebra)
        checks["socle_product_formula"] = prod == algebra.sum_of_group_elements()
        if not checks["socle_product_formula"]:
            raise RunStageError(
                "socle", ValueError("product of (lift - 1)^(p-1) is not the socle vector")
            )
        if full_check:
            basis.check_normal_form_bijection()
            checks["normal_form_bijection"] = True
            basis.degree_one_generates()
            checks["degree_one_generation"] = True
            recursive = group.jennings_series_recursive()
            definitional = dimension_subgroups_definitional(group)
            trunc = definitional[: len(recursive)]
            checks["series_definitions_agree"] = trunc == recursive and all(
                sub.is_trivial() for sub in definitional[len(recursive) :]
            )
            if not checks["series_definitions_agree"]:
                raise RunStageError(
                    "series", ValueError("recursive and definitional dimension subgroups differ")
                )
    except RunStageError:
        raise
    except Exception as err:
        raise RunStageError("structure", err) from err

    reports = []
    try:
        for auto in autos:
            reports.append(verify_theorem(auto, basis))
    except Exception as err:
        raise RunStageError("verify", err) from err

    verdict = all(
        rep.equation_holds
        and rep.lambda_in_power_subgroup
        and (algebra.field.n > 1 or rep.lambda_is_one)
        for rep in reports
    ) and all(checks.values())
    return RunReport(
        group_name=group.name or "custom",
        group_order=group.order,
        p=group.p,
        field=algebra.field,
        layers=basis.layer_summary(),
        gr_dims=list(algebra.filtration.gr_dims),
        socle_degree=algebra.filtration.socle_degree,
        checks=checks,
        auto_reports=reports,
        verdict=verdict,
    )


def sweep(
    seed: int | None = None,
    groups: list[str] | None = None,
    inner_count: int = 25,
    compose_count: int = 0,
    subst_count: int = 25,
    extension_degree: int = 2,
    full_check: bool = False,
) -> SweepReport:
    """Catalog sweep over GF(p) and GF(p^extension_degree)."""
    seed = master_seed() if seed is None else seed
    names = groups if groups is not None else catalog_names()
    reports = []
    for name in names:
        group = catalog(name)
        degrees = [1] + ([extension_degree] if extension_degree > 1 else [])
        for deg in degrees:
            algebra = GroupAlgebra(group, GF(group.p, deg))
            autos: list[AlgebraAutomorphism] = [
                AlgebraAutomorphism.from_group_automorphism(algebra, ga)
                for ga in group.stored_automorphisms()
            ]
            rng_inner = random.Random(derive_seed(seed, name, deg, "inner"))
            inner = [random_inner(algebra, rng_inner) for _ in range(inner_count)]
            autos.extend(inner)
            rng_comp = random.Random(derive_seed(seed, name, deg, "compose"))
            pool = list(autos)
            for _ in range(compose_count):
                a = pool[rng_comp.randrange(len(pool))]
                b = pool[rng_comp.randrange(len(pool))]
                autos.append(a.compose(b))
            if group.is_elementary_abelian() and subst_count:
                rng_subst = random.Random(derive_seed(seed, name, deg, "subst"))
                autos.extend(random_substitution(algebra, rng_subst) for _ in range(subst_count))
            reports.append(run(algebra, autos, full_check=full_check))
    return SweepReport(seed=seed, reports=reports, verdict=all(r.verdict for r in reports))


def gl_check(
    p: int,
    m: int,
    n: int = 1,
    count: int = 200,
    seed: int | None = None,
    modulus: str | None = None,
) -> dict:
    """det^(p-1) of the top-monomial action, checked across GL_m(GF(p^n)).

    Elementary matrices and single-entry diagonals are enumerated (full
    coverage of a generating set of GL_m); full diagonals and dense
    invertible matrices are sampled.
    """
    seed = master_seed() if seed is None else seed
    spec = build_field(p, n, modulus)
    ring = TruncatedPolynomialRing(spec, m)
    ops = FieldOps(spec)
    rng = random.Random(derive_seed(seed, "gl-check", p, n, m))

    failures: list[dict] = []
    counts = {"elementary": 0, "diagonal": 0, "random_diagonal": 0, "random": 0}

    def check(matrix: np.ndarray, kind: str) -> None:
        lam = ring.top_monomial_scalar(matrix)
        det = spec.element_from_code(ops.det(matrix))
        expected = det ** (p - 1)
        counts[kind] += 1
        if lam != expected or not lam.is_pm1_power():
            failures.append(
                {"kind": kind, "matrix": matrix.tolist(), "lambda": str(lam), "expected": str(expected)}
            )

    unit_codes = [spec.code_of(u) for u in spec.units()]
    sampled_units = unit_codes if len(unit_codes) <= 32 else [
        unit_codes[rng.randrange(len(unit_codes))] for _ in range(32)
    ]
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            for c in sampled_units:
                mat = ops.eye(m)
                mat[i, j] = c
                check(mat, "elementary")
    for i in range(m):
        for c in unit_codes:
            mat = ops.eye(m)
            mat[i, i] = c
            check(mat, "diagonal")
    for _ in range(count // 4):
        mat = ops.eye(m)
        for i in range(m):
            mat[i, i] = unit_codes[rng.randrange(len(unit_codes))]
        check(mat, "random_diagonal")
    made = 0
    while made < count:
        mat = np.array([[rng.randrange(spec.q) for _ in range(m)] for _ in range(m)], dtype=np.int64)
        if ops.det(mat) == 0:
            continue
        check(mat, "random")
        made += 1

    return {
        "field": {"p": int(p), "n": int(n), "modulus": format_modulus(spec)},
        "m": int(m),
        "seed": int(seed),
        "checked": {k: int(v) for k, v in counts.items()},
        "failures": failures,
        "verdict": not failures,
    }


def render_json(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def catalog_table() -> str:
    lines = []
    for name in catalog_names():
        group = catalog(name)
        lines.append(f"{name:10s} order {group.order:4d}  p={group.p}  {catalog_description(name)}")
    return "\n".join(lines)
