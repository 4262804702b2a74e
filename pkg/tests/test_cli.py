import csv
import io
import json
import math

import pytest

from dirac_matel.cli import RunConfig, cmd_shift, load_config, main

SMALL_CONFIG = """\
[physics]
Z = 1

[state]
n_r = 0
kappa = -1
m = 1/2

[truncation]
N_max = 1
K_max = 1
p_nodes = 4

[regularization]
lambda = 10
hook = {hook}

[output]
format = {fmt}
path = {path}
"""


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_gaunt(capsys):
    code, out, _ = run(["gaunt", "--l", "0", "0", "0", "--m", "0", "0", "0"], capsys)
    assert code == 0
    assert float(rows(out)[0]["value"]) == 2.0
    code, out, _ = run(["gaunt", "--l", "0", "0", "0", "--m", "0", "0", "0", "--kind", "sph"], capsys)
    assert float(rows(out)[0]["value"]) == pytest.approx(1 / math.sqrt(4 * math.pi))
    code, out, _ = run(["gaunt", "--l", "1", "0", "0", "--m", "0", "0", "0"], capsys)
    assert rows(out)[0]["vanishing_reason"] == "parity"


def test_gaunt_invalid(capsys):
    code, out, err = run(["gaunt", "--l", "1", "1", "1", "--m", "2", "0", "0"], capsys)
    assert code == 2 and out == ""
    assert err.startswith("error:") and err.count("\n") == 1


def test_hyp(capsys):
    code, out, _ = run(["hyp", "--2f1", "1", "1", "2", "-1"], capsys)
    assert code == 0
    assert float(rows(out)[0]["re"]) == pytest.approx(0.6931471806, rel=1e-10)
    code, out, _ = run(["hyp", "--1f1", "1", "2", "1", "--format", "json"], capsys)
    rec = json.loads(out)["records"][0]
    assert rec["re"] == pytest.approx(math.e - 1, rel=1e-14)
    code, out, _ = run(["hyp", "--1f1", "1+1j", "2", "0.5-2j"], capsys)
    assert code == 0 and float(rows(out)[0]["im"]) != 0.0


def test_hyp_errors(capsys):
    code, _, err = run(["hyp", "--2f1", "0.5", "0.3", "1.7", "2"], capsys)
    assert code == 2 and "BranchCutError" in err
    code, _, _ = run(["hyp", "--1f1", "1", "x", "1"], capsys)
    assert code == 2


def test_quadruple(capsys):
    code, out, _ = run(["quadruple", "--s1", "0", "-1", "1/2", "--s2", "0", "-1", "0.5", "--k", "1e-6"], capsys)
    assert code == 0
    r = rows(out)[0]
    assert list(r) == ["k", "t0", "t1", "t2", "t3", "combined"]
    assert float(r["t0"]) == pytest.approx(1.0, abs=1e-7)


def test_radial(tmp_path, capsys):
    path = tmp_path / "r.csv"
    code, out, _ = run(["radial", "--s1", "0", "-1", "1/2", "--s2-free", "0.004", "-1", "1/2",
                        "--l", "0", "--k", "0.001", "0.01", "--component", "gf", "-o", str(path)], capsys)
    assert code == 0 and out == ""
    r = rows(path.read_text())
    assert [float(x["k"]) for x in r] == [0.001, 0.01]
    assert all(math.isfinite(float(x["value"])) for x in r)


def test_radial_free_free_is_numerical_failure(capsys):
    code, _, err = run(["radial", "--s1-free", "0.1", "-1", "1/2", "--s2-free", "0.2", "-1", "1/2",
                        "--l", "0", "--k", "0.1"], capsys)
    assert code == 2 and err.startswith("error:")


def test_bad_state(capsys):
    code, _, _ = run(["quadruple", "--s1", "0", "1", "1/2", "--s2", "0", "-1", "1/2", "--k", "0.1"], capsys)
    assert code == 2


def write_config(tmp_path, hook="zero", fmt="csv", path="-", extra=""):
    cfg = tmp_path / "run.ini"
    cfg.write_text(SMALL_CONFIG.format(hook=hook, fmt=fmt, path=path) + extra)
    return cfg


def test_shift_self_hook(tmp_path, capsys):
    cfg = write_config(tmp_path, hook="self")
    code, out, _ = run(["shift", "--config", str(cfg)], capsys)
    assert code == 0
    r = rows(out)
    total = [x for x in r if x["s2_label"] == "TOTAL"][0]
    assert float(total["dm_subtracted"]) == 0.0
    assert r[-1]["s2_label"] == "TAIL_ESTIMATE"
    assert len(r) == 3 + 2 * 4 + 2


def test_shift_json_and_determinism(tmp_path, capsys):
    out_path = tmp_path / "o.json"
    cfg = write_config(tmp_path, fmt="json", path=str(out_path))
    assert main(["shift", "--config", str(cfg)]) == 0
    first = out_path.read_bytes()
    obj = json.loads(first)
    assert set(obj) >= {"config", "records", "total"}
    assert obj["config"]["lam"] == 10.0 and "path" not in obj["config"]
    assert len(obj["records"]) == 11
    assert all(set(r) >= {"raw_error", "regularized_error"} for r in obj["records"])
    assert main(["shift", "--config", str(cfg)]) == 0
    assert out_path.read_bytes() == first
    # CSV override of the same run gives the same total
    run_cfg = load_config(str(cfg))
    run_cfg.out_format = "csv"
    code, text = cmd_shift(run_cfg)
    total = [x for x in rows(text) if x["s2_label"] == "TOTAL"][0]
    assert float(total["dm_subtracted"]) == obj["total"]


def test_shift_subcritical_config(tmp_path, capsys):
    out_path = tmp_path / "never.csv"
    cfg = write_config(tmp_path, path=str(out_path))
    cfg.write_text(cfg.read_text().replace("Z = 1", "Z = 140"))
    code, out, err = run(["shift", "--config", str(cfg)], capsys)
    assert code == 2
    assert not out_path.exists()
    assert "SubcriticalError" in err


@pytest.mark.parametrize("extra,match", [
    ("\n[bogus]\nx = 1\n", "unknown section"),
    ("\n[grid]\nstep = 1\n", "unknown key"),
    ("\n[grid]\nrefine = many\n", "refine"),
    ("\n[tolerance]\ntail_budget = -1\n", "tail_budget"),
])
def test_shift_malformed_config(tmp_path, capsys, extra, match):
    cfg = write_config(tmp_path, extra=extra)
    code, _, err = run(["shift", "--config", str(cfg)], capsys)
    assert code == 2 and match in err


def test_shift_missing_config(tmp_path, capsys):
    code, _, err = run(["shift", "--config", str(tmp_path / "nope.ini")], capsys)
    assert code == 2 and "cannot read config" in err


def test_run_config_defaults():
    cfg = RunConfig()
    s1, trunc = cfg.validate()
    assert (trunc.N_max, trunc.K_max, trunc.p_nodes) == (2, 3, 64)
    assert s1.n_r == 0 and s1.kappa == -1
    assert RunConfig(lam=math.inf).as_dict()["lam"] == "inf"
