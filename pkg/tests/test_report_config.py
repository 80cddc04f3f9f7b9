import json
import math

import pytest
from hypothesis import given, strategies as st

from cubicdirac.config import GridConfig, RunConfig, build_config, load_toml
from cubicdirac.report import DiagnosticsReport, Timer

finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(finite, finite, st.floats(0, 1e3))
def test_close_semantics(value, target, tol):
    rep = DiagnosticsReport()
    e = rep.close("x", value, target, tol)
    assert e.passed == (abs(value - target) <= tol)
    assert e.tolerance == tol and e.asserted


@given(finite, finite)
def test_bound_semantics(value, bound):
    rep = DiagnosticsReport()
    assert rep.upper("a", value, bound).passed == (value <= bound)
    assert rep.upper("b", value, bound, strict=True).passed == (value < bound)
    assert rep.lower("c", value, bound).passed == (value >= bound)
    assert rep.lower("d", value, bound, strict=True).passed == (value > bound)


def test_relative_and_nonfinite():
    rep = DiagnosticsReport()
    assert rep.close("r", 1.0 + 1e-9, 1.0, 1e-8, relative=True).passed
    assert not rep.close("n", math.nan, 1.0, 1.0).passed
    assert not rep.upper("i", math.inf, 1.0).passed
    assert not rep.all_passed
    assert [e.name for e in rep.failures()] == ["n", "i"]


def test_info_and_skipped_do_not_count():
    rep = DiagnosticsReport()
    rep.info("a", 3)
    rep.skipped("b", "skipped: not square integrable")
    rep.upper("c", 1.0, 2.0)
    assert rep.all_passed
    assert rep["b"].value is None and rep["b"].note.startswith("skipped")


def test_json_round_trip():
    rep = DiagnosticsReport("t")
    x = 0.1 + 0.2
    rep.close("x", x, 0.3, 1e-15)
    rep.info("vec", [1.5, 2.5])
    rep.meta["k"] = 1
    data = json.loads(rep.to_json())
    assert data["entries"][0]["value"] == x
    assert data["meta"] == {"k": 1}
    assert set(data) == {"title", "all_passed", "entries", "meta"}


def test_extend_prefix_and_summary():
    a, b = DiagnosticsReport(), DiagnosticsReport()
    b.upper("y", 1.0, 0.5)
    a.extend(b, prefix="sub.")
    assert a["sub.y"].passed is False
    assert a.summary_lines()[0].startswith("FAIL sub.y")


def test_timer():
    with Timer() as t:
        sum(range(1000))
    assert t.elapsed >= 0


def test_grid_config_validation():
    with pytest.raises(ValueError):
        GridConfig(100, 10.0)
    with pytest.raises(ValueError):
        GridConfig(64, 0.0)


def test_defaults():
    cfg = build_config()
    assert (cfg.m, cfg.omega, cfg.S) == (1.0, 0.0, (1,))
    assert (cfg.grid.n, cfg.grid.L) == (512, 60.0)
    assert (cfg.dual_grid.n, cfg.dual_grid.L) == (512, 12.0)
    assert cfg.eps == (0.05, 0.1, 0.2)


def test_file_then_flags(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text('[params]\nm = 2.0\nomega = 0.3\nS = -2\n\n[shooting]\ndr = 0.01\n'
                    '[grid]\nn = 256\nL = 30.0\n\n[dual]\neps = [0.1, 0.2]\n\n'
                    '[output]\nprefix = "x"\n')
    data = load_toml(str(path))
    cfg = build_config(data, {"omega": 0.0, "spin": None, "rmax": 25.0, "tol": 1e-9})
    assert (cfg.m, cfg.omega, cfg.S) == (2.0, 0.0, (-2,))
    assert cfg.shooting.dr == 0.01 and cfg.shooting.R == 25.0 and cfg.shooting.rtol == 1e-9
    assert (cfg.grid.n, cfg.grid.L) == (256, 30.0)
    assert cfg.eps == (0.1, 0.2) and cfg.out_prefix == "x"


def test_unknown_keys():
    with pytest.raises(ValueError):
        build_config({"nonsense": {}})
    with pytest.raises(ValueError):
        build_config({"shooting": {"nonsense": 1}})


def test_spin_list_and_digest():
    a = build_config(None, {"spin": "1,2,3"})
    assert a.S == (1, 2, 3)
    assert a.digest() == build_config(None, {"spin": "1,2,3"}).digest()
    assert a.digest() != build_config(None, {"spin": "1,2"}).digest()
    assert isinstance(RunConfig().to_dict()["shooting"], dict)
