import json

import numpy as np
import pytest

from liecoh import algebra as la
from liecoh.claims import RunConfig, build_claims, run_suite
from liecoh.cli import ConfigError, export_space, load_config, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_group_subset(capsys):
    code, out = run_cli(capsys, "verify", "--group", "heisenberg")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("PASS")]
    assert len(lines) == 5
    assert all("heisenberg." in l for l in lines)


def test_verify_json_schema(capsys):
    code, out = run_cli(capsys, "verify", "--group", "splitting", "--json")
    assert code == 0
    rows = [json.loads(l) for l in out.splitlines()]
    assert all(r["schema_version"] == 1 for r in rows)
    reports, summaries = [r for r in rows if r["type"] == "report"], \
        [r for r in rows if r["type"] == "summary"]
    assert len(summaries) == 1
    assert summaries[0]["failed"] == 0
    assert "timestamp" in summaries[0]
    ids = [r["claim_id"] for r in reports]
    assert ids == sorted(ids)
    assert all({"status", "computed", "expected", "provenance", "residual",
                "tolerance", "runtime_ms"} <= set(r) for r in reports)


def test_config_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\nunknown = 1\n")
    code = main(["verify", "--config", str(bad)])
    assert code == 2


def test_malformed_config_rejected(tmp_path):
    broken = tmp_path / "broken.ini"
    broken.write_text("not an ini file at all [[[")
    with pytest.raises(ConfigError):
        load_config(str(broken))


def test_config_parsing(tmp_path):
    cfg_file = tmp_path / "ok.ini"
    cfg_file.write_text("[run]\nseed = 99\ngroups = tables, jacobi\n"
                        "[tolerances]\nalgebraic = 1e-10\n")
    cfg = load_config(str(cfg_file))
    assert cfg.seed == 99
    assert cfg.groups == ("tables", "jacobi")
    assert cfg.tol_algebraic == 1e-10


def test_impossible_tolerance_fails_claims(tmp_path):
    cfg = RunConfig(groups=("jacobi",), tol_algebraic=0.0)
    result = run_suite(cfg, jobs=1)
    assert result.summary["failed"] > 0
    assert result.exit_code == 1


def test_env_config(tmp_path, monkeypatch):
    cfg_file = tmp_path / "env.ini"
    cfg_file.write_text("[run]\nseed = 123\n")
    monkeypatch.setenv("LIECOH_CONFIG", str(cfg_file))
    assert load_config(None).seed == 123


def test_catalog_listing(capsys):
    code, out = run_cli(capsys, "catalog")
    assert code == 0
    assert "N(6,1)" in out and "Spin(9)/Spin(7)" in out


def test_catalog_json_fields(capsys):
    code, out = run_cli(capsys, "catalog", "--json")
    data = json.loads(out)
    byid = {r["id"]: r for r in data["spaces"]}
    assert byid["N(6,1)"]["m_dim"] == 14
    assert byid["Spin(9)/Spin(7)"]["dim"] == 36
    assert len(byid) >= 16


def test_export_roundtrip(capsys, tmp_path):
    path = tmp_path / "space.json"
    code = main(["export", "N(2,1)", "--out", str(path)])
    assert code == 0
    payload = json.loads(path.read_text())
    alg = la.from_json_dict(payload["algebra"])
    from liecoh.spaces import catalog_entry

    assert np.array_equal(alg.c, catalog_entry("N(2,1)").algebra.c)
    assert payload["schema_version"] == 1


def test_export_unknown_id(capsys):
    assert main(["export", "Nope"]) == 2


def test_registry_ids_unique():
    ids = [c[0] for c in build_claims()]
    assert len(ids) == len(set(ids))
