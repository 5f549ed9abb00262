import json

import pytest

from superyangian.cli import (
    EXIT_CONFIG, EXIT_FAIL, EXIT_OK, ConfigError, load_config, main,
)


def test_cartan_output(capsys):
    assert main(["cartan", "--m", "2", "--n", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "a_{i,j}" in out and "b_{i,j}" in out


def test_defaults(monkeypatch):
    monkeypatch.delenv("YF_SEED", raising=False)
    cfg = load_config(None, {}, "verify-ev")
    assert (cfg.m, cfg.n, cfg.seed, cfg.depth, cfg.zero_mode_len, cfg.samples, cfg.sign) == (2, 3, 1, 2, 2, 3, "auto")
    assert cfg.groups == ("minimalistic", "evaluation", "yangian")


def test_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("YF_SEED", "7")
    assert load_config(None, {}, "verify-ev").seed == 7
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"seed": 9, "depth": 1}))
    cfg = load_config(path, {"depth": 2}, "verify-ev")
    assert cfg.seed == 9 and cfg.depth == 2
    assert load_config(path, {}, "verify-coproduct").depth == 1


@pytest.mark.parametrize("values", [{"m": 2, "n": 2}, {"depth": 9}, {"bogus": 1}, {"seed": "x"}, {"weights": [1, 2]}])
def test_bad_config_rejected(tmp_path, values):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(values))
    with pytest.raises(ConfigError):
        load_config(path, {}, "verify-ev")


def test_exit_codes(tmp_path, capsys):
    assert main(["verify-ev", "--m", "2", "--n", "2"]) == EXIT_CONFIG
    assert main(["verify-ev", "--depth", "9"]) == EXIT_CONFIG
    assert main(["nonsense"]) == EXIT_CONFIG
    small = ["--depth", "1", "--zero-mode-len", "1", "--samples", "1", "--groups", "minimalistic", "--relations", "2.5"]
    assert main(["verify-ev", *small]) == EXIT_OK
    assert main(["verify-ev", *small, "--sign", "proof"]) == EXIT_FAIL
    capsys.readouterr()


def test_report_files(tmp_path, capsys):
    args = ["verify-ev", "--depth", "1", "--zero-mode-len", "1", "--samples", "1", "--groups", "minimalistic",
            "--relations", "2.5,2.2", "--no-enforce-level"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main([*args, "--out", str(a)]) == EXIT_FAIL
    assert main([*args, "--out", str(b)]) == EXIT_FAIL
    assert a.read_bytes() == b.read_bytes()
    obj = json.loads(a.read_text())
    s = obj["summary"]
    assert s["pass"] + s["fail"] == s["total"] == len(obj["records"])
    bad = [r for r in obj["records"] if r["status"] == "fail"]
    assert {r["rid"] for r in bad} == {"2.5+", "2.5-"}
    assert all(r["instance"] and r["witness"] and r["residual"] for r in bad)
    capsys.readouterr()
    assert main(["report", str(a)]) == EXIT_FAIL
    out = capsys.readouterr().out
    assert "FAIL 2.5+" in out and f"total {s['total']}" in out
    assert main(["report", str(tmp_path / "missing.json")]) == EXIT_CONFIG


def test_verify_lie(capsys):
    assert main(["verify-lie", "--m", "3", "--n", "2"]) == EXIT_OK
    assert "fail 0" in capsys.readouterr().out


def test_yangian_factor_flag(capsys):
    assert main(["verify-ev", "--yangian-max-factors", "x"]) == EXIT_CONFIG
    assert load_config(None, {"yangian_max_factors": None}, "verify-ev").yangian_max_factors is None
    assert load_config(None, {}, "verify-ev").yangian_max_factors == 1
