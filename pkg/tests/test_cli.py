import json
import math

import numpy as np
import pytest

from cubicdirac import cli
from cubicdirac.report import DiagnosticsReport


def run(tmp_path, *args, name="out"):
    prefix = str(tmp_path / name)
    code = cli.main(list(args) + ["--out-prefix", prefix, "--quiet"])
    return code, prefix


def load(prefix, cmd):
    with open(f"{prefix}_{cmd}.json") as fh:
        return json.load(fh)


def entries(data):
    return {e["name"]: e for e in data["entries"]}


@pytest.fixture(scope="module")
def solved(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("solve")
    code, prefix = run(tmp, "solve", "--mass", "1", "--omega", "0", "--spin", "1")
    return code, prefix


def test_solve_outputs(solved):
    code, prefix = solved
    assert code == 0
    data = load(prefix, "solve")
    assert data["all_passed"]
    meta = data["meta"]
    assert meta["command"] == "solve" and len(meta["config_hash"]) == 64
    assert meta["outputs"] == [f"{prefix}_profile.csv", f"{prefix}_solve.json"]
    with open(f"{prefix}_profile.csv") as fh:
        assert fh.readline().strip() == "r,u,v"
    prof = cli.read_profile_csv(f"{prefix}_profile.csv")
    assert prof.r.size > 1000 and np.all(prof.v > 0)
    assert entries(data)["c_star"]["value"] == pytest.approx(7.897008435292033, abs=1e-8)


def test_csv_round_trips_exactly(solved, tmp_path):
    _, prefix = solved
    prof = cli.read_profile_csv(f"{prefix}_profile.csv")
    path = tmp_path / "again.csv"
    cli.write_profile_csv(str(path), prof)
    assert path.read_bytes() == open(f"{prefix}_profile.csv", "rb").read()


def test_solve_is_deterministic(solved, tmp_path):
    _, prefix = solved
    code, again = run(tmp_path, "solve", "--mass", "1", "--omega", "0", "--spin", "1")
    assert code == 0
    assert open(f"{again}_profile.csv", "rb").read() == open(f"{prefix}_profile.csv", "rb").read()
    a, b = load(prefix, "solve"), load(again, "solve")
    for d in (a, b):
        d["meta"].pop("elapsed_s")
        d["meta"].pop("outputs")
        d["meta"]["config"].pop("out_prefix")
    assert a["entries"] == b["entries"]
    assert a["meta"]["config"] == b["meta"]["config"]


def test_zero_index_is_an_error(tmp_path, capsys):
    code, _ = run(tmp_path, "solve", "--spin", "0")
    assert code == 1
    assert "S != 0" in capsys.readouterr().err


def test_unwritable_path(tmp_path):
    code = cli.main(["bubble", "--spin", "1", "--out-prefix", str(tmp_path / "no" / "such" / "x"),
                     "--quiet"])
    assert code == 1


def test_bubble_energies(tmp_path):
    code, prefix = run(tmp_path, "bubble", "--spin", "1,2,3")
    assert code == 0
    e = entries(load(prefix, "bubble"))
    for S, k in ((1, 3), (2, 5), (3, 7)):
        assert e[f"energy[S={S}]"]["value"] == pytest.approx(k * math.pi, rel=1e-8)


def test_bubble_zero_index(tmp_path):
    code, prefix = run(tmp_path, "bubble", "--spin", "0")
    assert code == 0
    e = entries(load(prefix, "bubble"))
    assert e["energy[S=0]"]["value"] == pytest.approx(math.pi, rel=1e-8)
    assert e["M[S=0]"]["kind"] == "skipped"
    assert e["M[S=0]"]["note"] == "skipped: not square integrable"


def test_bubble_scaling(tmp_path):
    code, prefix = run(tmp_path, "bubble", "--spin", "1", "--delta", "2")
    assert code == 0
    e = entries(load(prefix, "bubble"))
    for key in ("quartic_scaling", "dirac_form_scaling", "l2_scaling"):
        assert e[f"{key}[S=1,delta=2]"]["passed"]


def test_dual_gap(tmp_path):
    code, prefix = run(tmp_path, "dual-gap", "--mass", "1", "--omega", "0.5", "--spin", "1")
    assert code == 0
    e = entries(load(prefix, "dual-gap"))
    assert e["margin"]["value"] > 0 and e["branch"]["value"] == "plain"


def test_decay(tmp_path):
    code, prefix = run(tmp_path, "decay", "--mass", "1", "--omega", "0.9", "--spin", "1")
    assert code == 0
    e = entries(load(prefix, "decay"))
    assert e["rate_vs_bound"]["target"] == pytest.approx(math.sqrt(0.1) / 2)
    assert e["rate_vs_bound"]["passed"]


def test_greens(tmp_path):
    code, prefix = run(tmp_path, "greens")
    assert code == 0
    assert load(prefix, "greens")["all_passed"]


def test_config_file(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[params]\nS = [1, 2]\n")
    code, prefix = run(tmp_path, "bubble", "--config", str(cfg))
    assert code == 0
    assert load(prefix, "bubble")["meta"]["config"]["S"] == [1, 2]


def test_single_spin_required(tmp_path):
    code, _ = run(tmp_path, "solve", "--spin", "1,2")
    assert code == 1


def test_failing_entry_gives_exit_two(tmp_path, monkeypatch):
    def failing(cfg, out):
        rep = DiagnosticsReport()
        rep.upper("x", 2.0, 1.0)
        return rep

    monkeypatch.setitem(cli.COMMANDS, "greens", failing)
    code, _ = run(tmp_path, "greens")
    assert code == 2
