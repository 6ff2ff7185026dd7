"""CLI behavior: round-trips, exit codes, formats, determinism."""

from __future__ import annotations

import json

import pytest

from sumsetlab import gen_random_s_convex, read_set
from sumsetlab.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_roundtrip(self, tmp_path, capsys):
        path = str(tmp_path / "a.set")
        code, _, err = _run(capsys, "--out", path, "gen", "rsc:n=8,s=2,seed=7,gap=4")
        assert code == 0
        assert "convexity_order" in err
        assert read_set(path) == gen_random_s_convex(8, 2, 7, 4)

    def test_reports_order(self, tmp_path, capsys):
        path = str(tmp_path / "sq.set")
        code, _, err = _run(capsys, "--out", path, "gen", "power:n=5,m=2")
        assert code == 0
        assert "N=5" in err and "convexity_order=1" in err
        with open(path) as fh:
            assert fh.read() == "1\n4\n9\n16\n25\n"

    def test_gap_family(self, tmp_path, capsys):
        path = str(tmp_path / "g.set")
        code, _, _ = _run(capsys, "--out", path, "gen", "gap:dims=3,steps=1,base=1")
        assert code == 0
        with open(path) as fh:
            assert fh.read() == "1\n2\n3\n"

    def test_bad_family_exits_2(self, capsys):
        code, _, err = _run(capsys, "gen", "power:n=5")
        assert code == 2
        assert "error:" in err


class TestEnergy:
    def test_pair_energy_of_interval(self, tmp_path, capsys):
        path = str(tmp_path / "i3.set")
        with open(path, "w") as fh:
            fh.write("1\n2\n3\n")
        code, out, _ = _run(capsys, "energy", "--k", "2", "--set", path)
        assert code == 0
        payload = json.loads(out)
        assert payload["T"] == "19"
        assert payload["k"] == "2"
        assert payload["inputs"][0]["file"] == path
        assert len(payload["inputs"][0]["sha256"]) == 64

    def test_family_input(self, capsys):
        code, out, _ = _run(capsys, "energy", "--k", "2", "--family", "interval:n=3")
        assert code == 0
        assert json.loads(out)["T"] == "19"

    def test_budget_exceeded_exits_2(self, capsys):
        code, _, err = _run(
            capsys,
            "--mem",
            "5000",
            "energy",
            "--k",
            "5",
            "--family",
            "power:n=64,m=3",
        )
        assert code == 2
        assert "exceeds budget" in err

    def test_env_var_overrides_mem(self, capsys, monkeypatch):
        monkeypatch.setenv("SUMSETLAB_MEM", "5000")
        code, _, err = _run(
            capsys, "--mem", str(2**32), "energy", "--k", "5",
            "--family", "power:n=64,m=3",
        )
        assert code == 2
        assert "exceeds budget" in err


class TestSpectrum:
    def test_json(self, capsys):
        code, out, _ = _run(capsys, "spectrum", "--k", "2", "--family", "interval:n=3")
        assert code == 0
        payload = json.loads(out)
        assert payload["classes"] == [
            {"j": "0", "size": "2"},
            {"j": "1", "size": "3"},
        ]
        assert payload["T"] == "19"

    def test_csv(self, capsys):
        code, out, _ = _run(
            capsys, "--format", "csv", "spectrum", "--k", "2",
            "--family", "interval:n=3",
        )
        assert code == 0
        assert out.splitlines() == ["j,r_lo,r_hi,size", "0,1,2,2", "1,2,4,3"]


class TestSumsetDoubling:
    def test_sumset_sizes(self, capsys):
        code, out, _ = _run(
            capsys, "sumset", "--k", "2", "--signs", "+-", "--family", "interval:n=9"
        )
        assert code == 0
        assert json.loads(out)["size"] == "17"

    def test_doubling(self, capsys):
        code, out, _ = _run(
            capsys, "doubling", "--pattern", "++-", "--family", "interval:n=10"
        )
        assert code == 0
        report = json.loads(out)["reports"][0]
        assert report["size"] == "28"
        assert report["K"] == "14/5"

    def test_analyze(self, capsys):
        code, out, _ = _run(capsys, "analyze", "--family", "power:n=8,m=2")
        assert code == 0
        report = json.loads(out)["reports"][0]
        assert report["convexity_order"] == "1"
        assert report["popular"]["bound_holds"] is True


class TestLucky:
    def test_census_csv(self, capsys):
        code, out, _ = _run(
            capsys, "--format", "csv", "lucky", "--r", "4",
            "--family", "rsc:n=32,s=1,seed=3,gap=2",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x,r_x,pairs_found,lower_bound,occupied_cells"
        for line in lines[1:]:
            x, r_x, pairs, lower, cells = line.split(",")
            assert int(pairs) >= int(lower)
            assert 4 <= int(r_x) < 8


class TestFit:
    def test_cubic(self, capsys):
        code, out, _ = _run(capsys, "fit", "8:512", "16:4096", "32:32768")
        assert code == 0
        assert abs(json.loads(out)["slope"] - 3.0) < 1e-9

    def test_bad_point(self, capsys):
        code, _, err = _run(capsys, "fit", "8:512", "x:4")
        assert code == 2


class TestVerify:
    def test_passing_bound_exits_0(self, capsys):
        code, out, _ = _run(
            capsys, "verify", "--bound", "KG_energy", "--family", "power:m=2",
            "--grid", "16,32,64",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        assert payload["flags"]["slope_within_bound"] is True

    def test_failing_bound_exits_1(self, capsys):
        code, out, _ = _run(
            capsys, "verify", "--bound", "KG_energy", "--family", "interval",
            "--grid", "16,32,64",
        )
        assert code == 1
        assert json.loads(out)["passed"] is False

    def test_heuristic_tail(self, capsys):
        code, out, _ = _run(
            capsys, "verify", "--bound", "eq13_tail", "--family", "power:m=3",
            "--grid", "8,16",
        )
        assert code == 0
        assert json.loads(out)["heuristic"] is True

    def test_unknown_bound_exits_2(self, capsys):
        code, _, err = _run(
            capsys, "verify", "--bound", "nope", "--family", "interval",
            "--grid", "8,16",
        )
        assert code == 2


class TestDeterminism:
    def test_identical_reports(self, capsys):
        argv = (
            "verify", "--bound", "KG_energy",
            "--family", "rsc:s=1,seed=11,gap=4", "--grid", "16,32,64",
        )
        _, first, _ = _run(capsys, *argv)
        _, second, _ = _run(capsys, *argv)
        assert first == second and first

    def test_timing_only_when_requested(self, capsys):
        base = ("energy", "--k", "2", "--family", "interval:n=4")
        _, plain, _ = _run(capsys, *base)
        assert "timing_ms" not in plain
        _, timed, _ = _run(capsys, "--timings", *base)
        assert "timing_ms" in timed

    def test_backend_info(self, capsys):
        code, out, _ = _run(capsys, "--backend-info")
        assert code == 0
        assert "convolution backend:" in out


def test_no_command_prints_help(capsys):
    code, out, _ = _run(capsys)
    assert code == 2
    assert "usage:" in out
