import json

import pytest

from lscopula.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_IO, EXIT_OK, run

W2 = {"family": "weibull", "shape": 2}
EXP = {"family": "exponential"}


def _run(tmp_path, command, config, *extra):
    cfg = tmp_path / f"{command}-config.json"
    cfg.write_text(json.dumps(config), encoding="utf-8")
    out = tmp_path / "out"
    out.mkdir(exist_ok=True)
    code = run([command, "--config", str(cfg), "--out", str(out), *extra])
    path = out / f"{command}.json"
    return code, (json.loads(path.read_text()) if path.exists() else None)


def test_identical_systems(tmp_path):
    sys_ = {"baseline": W2, "scales": [1, 2]}
    code, rep = _run(tmp_path, "check-order", {"x": sys_, "y": sys_})
    assert code == EXIT_OK and rep["exit_code"] == 0 and rep["status"] == "ok"
    assert {v["status"] for v in rep["result"]["verdicts"].values()} == {"holds_with_equality"}


def test_asserted_relation_fails(tmp_path):
    x = {"baseline": EXP, "scales": [2.0]}
    y = {"baseline": EXP, "scales": [1.0]}
    code, rep = _run(tmp_path, "check-order", {"x": x, "y": y, "relations": ["ST"]})
    assert code == EXIT_FAIL and rep["result"]["verdicts"]["ST"]["witness"]


def test_negative_scale_names_field(tmp_path, capsys):
    bad = {"baseline": EXP, "scales": [1.0, -0.5]}
    code, rep = _run(tmp_path, "check-order", {"x": bad, "y": bad})
    assert code == EXIT_CONFIG and rep is None
    assert "$.x.scales[1]" in capsys.readouterr().err


def test_unknown_field(tmp_path, capsys):
    sys_ = {"baseline": EXP, "scales": [1.0]}
    code, _ = _run(tmp_path, "check-order", {"x": sys_, "y": sys_, "colour": "red"})
    assert code == EXIT_CONFIG
    assert "colour" in capsys.readouterr().err


def test_constructor_error_is_config_error(tmp_path):
    sys_ = {"baseline": EXP, "scales": [1.0, 1.0], "dependence": {"family": "gumbel", "theta": 0.5}}
    code, _ = _run(tmp_path, "check-order", {"x": sys_, "y": sys_})
    assert code == EXIT_CONFIG


def test_io_errors(tmp_path):
    assert run(["catalog", "--config", str(tmp_path / "missing.json")]) == EXIT_IO
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run(["catalog", "--out", str(blocker / "sub")]) == EXIT_IO


def test_csv_curves(tmp_path):
    sys_ = {"baseline": W2, "scales": [1, 2]}
    code, _ = _run(tmp_path, "check-order", {"x": sys_, "y": sys_, "csv": True})
    assert code == EXIT_OK
    raw = (tmp_path / "out" / "check-order-curves.csv").read_bytes()
    assert raw.startswith(b"t,sf_x,sf_y,hazard_x,hazard_y\r\n")


def test_catalog(tmp_path):
    out = tmp_path / "out"
    out.mkdir()
    assert run(["catalog", "--out", str(out)]) == EXIT_OK
    rep = json.loads((out / "catalog.json").read_text())
    assert len(rep["result"]["entries"]) == 18


def test_check_theorem(tmp_path):
    cfg = {"theorem": "T6", "F": {"family": "weibull", "shape": 0.5}, "lam": [1, 1], "sigma": [1, 0.5], "xi": [2, 0.4], "cone": "Dplus", "sub_case": "i"}
    code, rep = _run(tmp_path, "check-theorem", cfg)
    assert code == EXIT_OK and rep["result"]["overall"] == "Verified"


def test_simulate(tmp_path):
    system = {"baseline": EXP, "scales": [1, 1], "dependence": {"family": "clayton", "theta": 1}}
    code, rep = _run(tmp_path, "simulate", {"system": system, "count": 5000})
    assert code == EXIT_OK and rep["result"]["ks"]["statistic"] < rep["result"]["ks"]["critical"]


def test_suite_determinism_and_seed_override(tmp_path):
    cfg = {"theorems": ["T5", "T7"], "trials": 4}
    _, a = _run(tmp_path, "suite", cfg, "--jobs", "1")
    _, b = _run(tmp_path, "suite", cfg, "--jobs", "2")
    assert a["content_sha256"] == b["content_sha256"]
    assert {k: v for k, v in a.items() if k != "metadata"} == {k: v for k, v in b.items() if k != "metadata"}
    _, c = _run(tmp_path, "suite", cfg, "--seed", "5")
    assert c["seed"] == 5 and c["content_sha256"] != a["content_sha256"]


@pytest.mark.parametrize("seed", ["-1", str(2**64)])
def test_seed_range(seed):
    with pytest.raises(SystemExit):
        run(["catalog", "--seed", seed])
