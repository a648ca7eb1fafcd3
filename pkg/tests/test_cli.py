from __future__ import annotations

import json

import pytest

from aisemiring.cli import run


def test_catalog_list(capsys):
    assert run(["catalog", "--list"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 8 and lines[0].startswith("S7")


@pytest.mark.parametrize("argv,code", [
    (["check", "--semiring", "S7", "--statement", "x <= x^2"], 0),
    (["check", "--semiring", "D2", "--statement", "x <= y"], 1),
    (["check", "--semiring", "nowhere", "--statement", "x <= y"], 2),
    (["check", "--semiring", "S7", "--statement", "x <="], 2),
    (["oracle", "--which", "s53", "--statement", "x*y <= x^2 + y"], 0),
    (["oracle", "--which", "d2", "--statement", "x <= x*y"], 1),
    (["oracle", "--which", "zero:S53", "--statement", "x*y <= x^2 + y"], 0),
    (["oracle", "--which", "nope", "--statement", "x <= y"], 2),
    (["free", "--target", "x1*x2 + x1*x3", "--pattern", "x^2"], 0),
    (["free", "--target", "a*b", "--pattern", "x*y"], 1),
    (["--budget", "3", "free", "--target", "x1*x2*x3 + x1*x4", "--pattern", "x*y + y*z"], 2),
    (["family", "u", "2", "1"], 0),
    (["family", "u", "2"], 2),
])
def test_exit_codes(argv, code):
    assert run(argv) == code


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_json_report_for_verify(tmp_path):
    out = tmp_path / "r.json"
    assert run(["--json", str(out), "verify", "--suite", "corollary37"]) == 0
    data = json.loads(out.read_text())
    assert data["ok"] and sum(data["counts"].values()) == len(data["cases"])


def test_bound_overrides(capsys):
    assert run(["verify", "--suite", "prop32", "--bound", "prop32_m=4",
                "--bound", "prop32_n_max=2"]) == 0
    assert "free: 5" in capsys.readouterr().out
    assert run(["verify", "--suite", "prop32", "--bound", "nonsense=1"]) == 2


def test_derive_and_replay(tmp_path, capsys):
    trace = tmp_path / "t.json"
    assert run(["derive", "--rule", "x^3 = x^2", "--rule", "x <= x^2", "--goal", "x <= x^3",
                "--export", str(trace)]) == 0
    assert "check_trace: valid" in capsys.readouterr().out
    assert run(["check-trace", str(trace), "--rule", "x^3 = x^2", "--rule", "x <= x^2"]) == 0
    assert run(["check-trace", str(trace), "--rule", "x*y <= x^2 + y"]) == 1


def test_enumerate_with_cache(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    assert run(["enumerate", "--order", "3", "--out", str(path)]) == 0
    assert run(["enumerate", "--order", "3", "--out", str(path), "--additive", "chain"]) == 0
    out = capsys.readouterr().out
    assert "61 isomorphism classes (computed)" in out and "(verified)" in out


def test_crossvalidate(capsys):
    assert run(["--seed", "1", "crossvalidate", "--which", "s7", "--max-vars", "2",
                "--samples", "50"]) == 0
    assert "0 disagreement" in capsys.readouterr().out
