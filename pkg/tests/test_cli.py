"""CLI surface: subcommands, exit codes, JSON shapes, determinism."""

import json
import subprocess
import sys

import pytest

from fanspec import canonical_form, complete_graph, from_graph6, to_graph6, turan_graph
from fanspec.cli import build_parser, fmt12, main, parse_construct_spec


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "fanspec.cli", *args],
        capture_output=True,
        text=True,
        input=stdin,
    )
    return proc.returncode, proc.stdout, proc.stderr


class TestConstruct:
    def test_turan(self):
        code, out, _ = run_cli(["construct", "turan", "--n", "5", "--p", "2"])
        assert code == 0
        assert from_graph6(out.strip()) == turan_graph(5, 2)

    def test_fan_and_ch(self):
        code, out, _ = run_cli(["construct", "fan", "--k", "2", "--r", "3"])
        assert code == 0 and from_graph6(out.strip()).edge_count == 6
        code, out, _ = run_cli(["construct", "ch", "--k", "4"])
        assert code == 0 and from_graph6(out.strip()).edge_count == 10

    def test_split_and_multipartite(self):
        code, out, _ = run_cli(["construct", "split", "--n", "6", "--k", "2"])
        assert code == 0 and from_graph6(out.strip()).edge_count == 9
        code, out, _ = run_cli(["construct", "multipartite", "--sizes", "2,2"])
        assert code == 0 and from_graph6(out.strip()).edge_count == 4

    def test_too_large_for_graph6(self):
        code, _, err = run_cli(["construct", "extremal", "--n", "100", "--k", "2", "--r", "3"])
        assert code == 2
        assert "62" in err


class TestLambda:
    def test_regular_multipartite(self):
        code, out, _ = run_cli(["lambda", "--construct", "multipartite:3,3,3"])
        assert code == 0
        d = json.loads(out)
        assert d["lambda"] == 6.0
        assert d["residual"] <= 1e-10
        assert "iterations" in d

    def test_vector_flag(self):
        code, out, _ = run_cli(["lambda", "--g6", "D?{", "--vector"])
        d = json.loads(out)
        assert d["vector"] == [0.5, 0.5, 0.5, 0.5, 1.0]

    def test_stdin_batch(self):
        g6s = "\n".join([to_graph6(complete_graph(3)), to_graph6(complete_graph(4))])
        code, out, _ = run_cli(["lambda"], stdin=g6s + "\n")
        lines = out.strip().splitlines()
        assert [json.loads(ln)["lambda"] for ln in lines] == [2.0, 3.0]

    def test_exit_3_on_budget(self):
        code, _, err = run_cli(
            ["lambda", "--construct", "extremal:30,2,3", "--tol", "1e-15",
             "--max-iters", "2"]
        )
        assert code == 3
        assert "residual" in err

    def test_sweep_csv(self):
        code, out, _ = run_cli(
            ["lambda", "--construct", "extremal:{n},2,3", "--sweep", "n=50:25:100"]
        )
        lines = out.strip().splitlines()
        assert lines[0] == "n,lambda,residual,iterations"
        assert len(lines) == 4
        assert lines[1].split(",")[0] == "50"

    def test_qlambda(self):
        code, out, _ = run_cli(["qlambda", "--construct", "multipartite:1,1,1,1"])
        d = json.loads(out)
        assert d["lambda"] == pytest.approx(6.0, abs=1e-9)


class TestCheck:
    def test_free_graph_exit_0(self):
        code, out, _ = run_cli(["check", "--k", "1", "--r", "3", "--g6", "D?{"])
        assert code == 0
        assert json.loads(out) == {"contains": False}

    def test_containing_graph_exit_1_with_witness(self):
        k5 = to_graph6(complete_graph(5))
        code, out, _ = run_cli(["check", "--k", "2", "--r", "3", "--witness", "--g6", k5])
        assert code == 1
        d = json.loads(out)
        assert d["contains"] and d["witness"]["center"] == 0
        assert len(d["witness"]["cliques"]) == 2

    def test_file_batch(self, tmp_path):
        path = tmp_path / "graphs.g6"
        path.write_text("D?{\n" + to_graph6(complete_graph(5)) + "\n")
        code, out, _ = run_cli(["check", "--k", "1", "--r", "3", "--file", str(path)])
        assert code == 1
        lines = [json.loads(ln) for ln in out.strip().splitlines()]
        assert [d["contains"] for d in lines] == [False, True]

    def test_bad_graph6_exit_2(self):
        code, _, err = run_cli(["check", "--k", "1", "--r", "3", "--g6", "D?"])
        assert code == 2


class TestTurannum:
    def test_json(self):
        code, out, _ = run_cli(["turannum", "--n", "200", "--k", "2", "--r", "3"])
        assert json.loads(out) == {"value": 10001, "applicable": True, "threshold": 200}

    def test_raw(self):
        code, out, _ = run_cli(["turannum", "--n", "12", "--k", "3", "--r", "3", "--raw"])
        assert out.strip() == "42"


class TestCharpoly:
    def test_value(self):
        code, out, _ = run_cli(["charpoly", "--sizes", "2,2", "--x", "3"])
        assert json.loads(out)["value"] == 45

    def test_single_part_flagged(self):
        code, out, _ = run_cli(["charpoly", "--sizes", "4", "--x", "2"])
        d = json.loads(out)
        assert d["single_part"] is True and d["value"] == 16


class TestReports:
    def test_brute_json_and_out_file(self, tmp_path):
        out_path = tmp_path / "report.json"
        code, _, _ = run_cli(
            ["brute", "--n", "5", "--k", "2", "--r", "3", "--mode", "edges",
             "--no-timing", "--out", str(out_path)]
        )
        assert code == 0
        d = json.loads(out_path.read_text())
        assert d["best_value"] == 7
        assert d["wall_seconds"] is None
        assert set(d) == {
            "n", "k", "r", "mode", "best_value", "formula_value", "applicable",
            "matches_formula", "witnesses", "graphs_examined", "free_count",
            "wall_seconds",
        }

    def test_brute_timing_present_by_default(self):
        code, out, _ = run_cli(["brute", "--n", "4", "--k", "1", "--r", "3"])
        assert isinstance(json.loads(out)["wall_seconds"], float)

    def test_brutef(self):
        code, out, _ = run_cli(
            ["brutef", "--beta", "2", "--delta", "2", "--nmax", "6", "--no-timing"]
        )
        assert json.loads(out)["value"] == 6

    def test_family_and_verify(self):
        code, out, _ = run_cli(
            ["family", "--n", "20", "--k", "2", "--r", "3", "--no-timing"]
        )
        d = json.loads(out)
        assert d["winner"]["edges"] == 101 and d["matches_formula"] is True
        code, out, _ = run_cli(
            ["verify", "--n", "20", "--k", "2", "--r", "3", "--no-timing"]
        )
        d = json.loads(out)
        assert d["agrees"] is True and d["brute_force_agrees"] is None

    def test_jobs_byte_identical(self):
        args = ["brute", "--n", "6", "--k", "1", "--r", "3", "--no-timing"]
        _, out1, _ = run_cli(args + ["--jobs", "1"])
        _, out8, _ = run_cli(args + ["--jobs", "8"])
        assert out1 == out8


class TestHelpAndErrors:
    def test_help_lists_every_documented_flag(self):
        parser = build_parser()
        helps = {
            "lambda": ["--construct", "--g6", "--file", "--tol", "--max-iters",
                       "--vector", "--sweep", "--out"],
            "qlambda": ["--construct", "--tol", "--max-iters"],
            "check": ["--k", "--r", "--witness", "--g6", "--file"],
            "turannum": ["--n", "--k", "--r", "--raw"],
            "charpoly": ["--sizes", "--x", "--raw"],
            "brute": ["--n", "--k", "--r", "--mode", "--jobs", "--out",
                      "--resume", "--checkpoint", "--no-timing"],
            "brutef": ["--beta", "--delta", "--nmax", "--jobs"],
            "family": ["--n", "--k", "--r", "--imbalance", "--jobs"],
            "verify": ["--n", "--k", "--r", "--imbalance", "--jobs"],
        }
        sub_actions = next(
            a for a in parser._actions if getattr(a, "choices", None)
        )
        for cmd, flags in helps.items():
            text = sub_actions.choices[cmd].format_help()
            for flag in flags:
                assert flag in text, (cmd, flag)

    def test_missing_required_is_exit_2(self):
        code, _, _ = run_cli(["turannum", "--n", "5"])
        assert code == 2

    def test_two_sources_rejected(self):
        code, _, err = run_cli(
            ["lambda", "--construct", "fan:2,3", "--g6", "A_"]
        )
        assert code == 2
        assert "one graph source" in err

    def test_construct_spec_parser(self):
        assert parse_construct_spec("turan:5,2") == turan_graph(5, 2)
        with pytest.raises(ValueError):
            parse_construct_spec("nope:1")
        with pytest.raises(ValueError):
            parse_construct_spec("turan:a,b")

    def test_fmt12(self):
        assert fmt12(6.0) == "6.00000000000"
        assert fmt12(2.4494897427831783).startswith("2.44948974278")

    def test_main_inprocess(self, capsys):
        assert main(["turannum", "--n", "6", "--k", "1", "--r", "3", "--raw"]) == 0
        assert capsys.readouterr().out.strip() == "9"
