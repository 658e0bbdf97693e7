"""End-to-end checks of the pipeline API and the command line.

The JSON layout is a stability contract: key order is asserted literally
because downstream tooling diffs raw output.
"""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from socle_verify.cli import main
from socle_verify.pipeline import (
    RunConfig,
    RunStageError,
    gl_check,
    prepare,
    run,
    sweep,
)

RUN_KEYS = ["group", "field", "jennings", "gr_dims", "socle_degree", "autos", "verdict", "checks"]
AUTO_KEYS = [
    "provenance",
    "lambda",
    "det_blocks",
    "det_total",
    "det_pow",
    "equation_holds",
    "in_subgroup",
    "lambda_is_one",
]


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_run_json_schema(capsys):
    code, out = run_cli(
        capsys,
        ["run", "--group", "C4", "--field", "2", "--auto", "group-auto: g1 -> g1^3", "--format", "json"],
    )
    assert code == 0
    data = json.loads(out, object_pairs_hook=lambda pairs: pairs)

    def keys(pairs):
        return [k for k, _ in pairs]

    top = dict(data)
    assert keys(data) == RUN_KEYS
    assert keys(top["group"]) == ["name", "order", "p"]
    assert keys(top["field"]) == ["p", "n", "modulus"]
    for entry in top["jennings"]:
        assert keys(entry) == ["r", "d_r", "lifts"]
    for auto in top["autos"]:
        assert keys(auto) == AUTO_KEYS
    plain = json.loads(out)
    assert plain["verdict"] is True
    assert plain["group"]["order"] == 4
    assert plain["gr_dims"] == [1, 1, 1, 1]


def test_run_text_format(capsys):
    code, out = run_cli(capsys, ["run", "--group", "D8", "--field", "2"])
    assert code == 0
    assert "verdict" in out.lower()
    assert "D8" in out


def test_run_is_deterministic(capsys):
    argv = ["run", "--group", "Q8", "--field", "2", "--auto", "random-inner count=3", "--seed", "5", "--format", "json"]
    _, first = run_cli(capsys, argv)
    _, second = run_cli(capsys, argv)
    assert first == second
    _, third = run_cli(capsys, argv[:-3] + ["7", "--format", "json"])
    assert first != third


def test_run_reads_specs_from_file(capsys, tmp_path):
    spec_file = tmp_path / "autos.txt"
    spec_file.write_text(
        "# stored=off, two sources\n"
        "group-auto: g1 -> g1 g3, g2 -> g2\n"
        "random-inner seed=9 count=2\n"
    )
    code, out = run_cli(
        capsys,
        ["run", "--group", "D8", "--field", "2", "--no-stored", "--auto", f"@{spec_file}", "--format", "json"],
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["autos"]) == 3
    assert data["verdict"] is True


def test_run_accepts_presentation_path(capsys, tmp_path, group):
    pres = tmp_path / "c4c2.pc"
    pres.write_text(group("C4xC2").presentation_text())
    code, out = run_cli(capsys, ["run", "--group", str(pres), "--field", "2", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["group"]["order"] == 8
    # same via --presentation
    code, out2 = run_cli(capsys, ["run", "--presentation", str(pres), "--field", "2", "--format", "json"])
    assert code == 0
    assert json.loads(out2)["group"]["order"] == 8


def test_run_extension_field_modulus_pinned(capsys):
    code, out = run_cli(
        capsys,
        ["run", "--group", "C3xC3", "--field", "3,2", "--auto", "subst: x1 -> (t)*x1, x2 -> x2", "--format", "json"],
    )
    assert code == 0
    data = json.loads(out)
    assert data["field"] == {"p": 3, "n": 2, "modulus": "t^2+1"}
    spec_auto = [a for a in data["autos"] if a["provenance"].startswith("subst")]
    assert spec_auto and spec_auto[0]["lambda"] == "2"


def test_error_exit_codes(capsys):
    assert main(["run", "--group", "NOPE", "--field", "2"]) != 0
    capsys.readouterr()
    assert main(["run", "--group", "D8", "--field", "3"]) != 0
    capsys.readouterr()
    assert main(["run", "--group", "D8", "--field", "2", "--auto", "bogus: x"]) != 0
    capsys.readouterr()
    assert main(["run", "--group", "D8", "--field", "4"]) != 0
    capsys.readouterr()


def test_jennings_subcommand(capsys):
    code, out = run_cli(capsys, ["jennings", "--group", "M16", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    rows = {entry["r"]: entry["d_r"] for entry in data["layers"]}
    assert rows == {1: 2, 2: 1, 3: 0, 4: 1}
    assert data["gr_dims"] == data["pbw_coefficients"]
    assert data["socle_degree"] == 8
    assert data["series_definitions_agree"] is True
    code, out = run_cli(capsys, ["jennings", "--group", "M16", "--field", "2"])
    assert code == 0
    assert main(["jennings", "--group", "M16", "--field", "3"]) != 0
    capsys.readouterr()


def test_gl_check_subcommand(capsys):
    code, out = run_cli(
        capsys,
        ["gl-check", "--p", "3", "--m", "2", "--count", "20", "--seed", "4", "--format", "json"],
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is True
    assert data["failures"] == []
    assert data["checked"]["random"] == 20
    assert data["checked"]["elementary"] > 0
    assert data["checked"]["diagonal"] > 0


def test_catalog_subcommand(capsys):
    code, out = run_cli(capsys, ["catalog"])
    assert code == 0
    for name in ("D8", "Q8", "Heis125", "ES27", "C5xC5xC5"):
        assert name in out


def test_sweep_subset_cli(capsys):
    argv = [
        "sweep", "--groups", "C2,C3", "--inner", "2", "--subst", "2",
        "--seed", "3", "--prime-only", "--format", "json",
    ]
    code, first = run_cli(capsys, argv)
    assert code == 0
    data = json.loads(first)
    assert data["verdict"] is True
    assert data["master_seed"] == 3
    assert [r["group"]["name"] for r in data["reports"]] == ["C2", "C3"]
    _, second = run_cli(capsys, argv)
    assert first == second


def test_pipeline_prepare_counts():
    config = RunConfig(
        group="C3xC3",
        p=3,
        n=2,
        auto_specs=("random-subst seed=1 count=4", "random-inner seed=2 count=3"),
        include_stored=False,
    )
    algebra, autos = prepare(config)
    assert algebra.field.q == 9
    assert len(autos) == 7
    report = run(algebra, autos)
    assert report.verdict


def test_pipeline_seed_fallback_changes_output():
    base = dict(group="D8", p=2, auto_specs=("random-inner",), include_stored=False)
    _, a = prepare(RunConfig(seed=1, **base))
    _, b = prepare(RunConfig(seed=1, **base))
    _, c = prepare(RunConfig(seed=2, **base))
    import numpy as np

    assert np.array_equal(a[0].matrix, b[0].matrix)
    assert not np.array_equal(a[0].matrix, c[0].matrix)


def test_pipeline_stage_errors():
    with pytest.raises(RunStageError):
        prepare(RunConfig(group="NOPE", p=2))
    with pytest.raises(RunStageError):
        prepare(RunConfig(group="D8", p=5))


def test_sweep_api_small():
    report = sweep(seed=1, groups=["C2xC2"], inner_count=2, subst_count=2)
    assert report.verdict
    # one run over GF(2), one over GF(4)
    assert len(report.reports) == 2
    qs = sorted(r.field.q for r in report.reports)
    assert qs == [2, 4]
    text = report.render_text()
    assert "PASS" in text


def test_gl_check_api():
    out = gl_check(p=2, m=3, count=25, seed=9)
    assert out["verdict"] and out["field"]["p"] == 2 and out["m"] == 3
    out9 = gl_check(p=3, m=2, n=2, count=10, seed=9)
    assert out9["verdict"] and out9["field"]["n"] == 2


def test_cli_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "socle_verify.cli", "catalog"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "D8" in proc.stdout
