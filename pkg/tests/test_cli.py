"""CLI subcommands: reports, solvers, rendering, exit codes, determinism."""

import csv
import io
import json
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

from coopetition.cli import main
from coopetition.demo import coopetitive_game_dict, finite_game_dict
from coopetition.games import Orientation
from coopetition.geometry import PointCloud, pareto_filter


@pytest.fixture()
def finite_path(tmp_path):
    path = tmp_path / "finite.json"
    path.write_text(json.dumps(finite_game_dict()))
    return str(path)


@pytest.fixture()
def coop_path(tmp_path):
    data = coopetitive_game_dict()
    data["analysis"] = {"grid_n": 17}
    path = tmp_path / "coop.json"
    path.write_text(json.dumps(data))
    return str(path)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestAnalyze:
    def test_finite_report_lists_nash(self, finite_path):
        code, out, _ = run("analyze", finite_path, "--grid", "65")
        assert code == 0
        assert "(E,L)" in out and "(N,L)" in out
        assert "conservative bi-value" in out

    def test_zero_game_reports_all_cells(self, tmp_path):
        data = finite_game_dict()
        data["payoff1"] = [[0, 0], [0, 0]]
        data["payoff2"] = [[0, 0], [0, 0]]
        path = tmp_path / "zero.json"
        path.write_text(json.dumps(data))
        code, out, _ = run("analyze", str(path), "--grid", "33")
        assert code == 0
        for cell in ("(E,H)", "(E,L)", "(N,H)", "(N,L)"):
            assert cell in out

    def test_coopetitive_report(self, coop_path):
        code, out, _ = run("analyze", coop_path)
        assert code == 0
        assert "proper-coopetitive" in out
        assert "win-win: True" in out

    def test_corrupted_file_exits_2_without_partial_output(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{broken")
        code, out, err = run("analyze", str(path))
        assert code == 2
        assert out == ""
        assert "error" in err

    def test_forced_mixed_on_3x3_exits_3(self, tmp_path):
        data = finite_game_dict()
        data["payoff1"] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
        data["payoff2"] = [[2, 1, 0], [0, 2, 1], [1, 0, 2]]
        del data["row_labels"], data["col_labels"]
        path = tmp_path / "rps.json"
        path.write_text(json.dumps(data))
        code, _, err = run("analyze", str(path), "--mixed")
        assert code == 3
        assert "unsupported" in err
        # Without the flag the finite sections still print.
        code, out, _ = run("analyze", str(path))
        assert code == 0
        assert "skipped" in out

    def test_deterministic_output(self, coop_path):
        a = run("analyze", coop_path)
        b = run("analyze", coop_path)
        assert a == b


class TestSolve:
    def test_tu_paper_flags(self, coop_path):
        code, out, _ = run(
            "solve", coop_path, "--solution", "tu",
            "--threat", "0,1", "--utopia", "-5,-1", "--grid", "33",
        )
        assert code == 0
        assert "payoff: (-3.571428571, -0.4285714286)" in out

    def test_ks_degenerate_exits_4(self, finite_path):
        code, _, err = run(
            "solve", finite_path, "--solution", "ks",
            "--threat", "1,1", "--utopia", "1,1", "--grid", "33",
        )
        assert code == 4
        assert "DegenerateProblem" in err

    def test_win_win_reports_margin(self, coop_path):
        code, out, _ = run("solve", coop_path, "--solution", "win-win", "--grid", "33")
        assert code == 0
        assert "is win-win: true" in out
        assert "margin" in out

    def test_win_win_needs_coopetitive(self, finite_path):
        code, _, err = run("solve", finite_path, "--solution", "win-win", "--grid", "33")
        assert code == 3

    def test_win_win_without_initial_z_exits_3(self, tmp_path):
        data = coopetitive_game_dict()
        del data["initial_z"]
        data["analysis"] = {"grid_n": 17}
        path = tmp_path / "noz.json"
        path.write_text(json.dumps(data))
        code, _, err = run("solve", str(path), "--solution", "win-win")
        assert code == 3

    def test_nash_bargaining_defaults(self, finite_path):
        code, out, _ = run(
            "solve", finite_path, "--solution", "nash-bargaining", "--grid", "129"
        )
        assert code == 0
        assert "threat a: (0, 3)" in out

    def test_compromise_kinds(self, finite_path):
        for kind in ("compromise:pareto", "compromise:conservative_pareto"):
            code, out, _ = run("solve", finite_path, "--solution", kind, "--grid", "129")
            assert code == 0, kind
            assert f"solution: {kind}" in out

    def test_proper_coopetitive(self, coop_path):
        code, out, _ = run("solve", coop_path, "--solution", "proper-coopetitive")
        assert code == 0
        assert "payoff: (-1, -1)" in out
        assert "preimage: (0, 0, 1)" in out

    def test_same_half_plane_exits_4(self, coop_path):
        code, _, err = run(
            "solve", coop_path, "--solution", "tu",
            "--threat", "0,1", "--utopia", "0,0", "--grid", "17",
        )
        assert code == 4
        assert "SameHalfPlane" in err


class TestRender:
    def test_finite_csv_is_cell_scatter(self, finite_path, tmp_path):
        out_csv = tmp_path / "f.csv"
        code, _, _ = run("render", finite_path, "--out-csv", str(out_csv))
        assert code == 0
        rows = list(csv.DictReader(out_csv.open()))
        cloud = [r for r in rows if r["tag"] == "cloud"]
        assert len(cloud) == 4
        assert {r["tag"] for r in rows} >= {"cloud", "pareto", "nash", "tu"}

    def test_csv_row_accounting(self, coop_path, tmp_path):
        out_csv = tmp_path / "c.csv"
        code, _, _ = run("render", coop_path, "--out-csv", str(out_csv), "--grid", "9")
        assert code == 0
        rows = list(csv.DictReader(out_csv.open()))
        cloud = sum(1 for r in rows if r["tag"] == "cloud")
        assert cloud == 9**3
        markers = sum(1 for r in rows if r["tag"] != "cloud")
        assert len(rows) == cloud + markers

    def test_csv_roundtrip_refilters_to_same_boundary(self, coop_path, tmp_path):
        out_csv = tmp_path / "c.csv"
        run("render", coop_path, "--out-csv", str(out_csv), "--grid", "9")
        rows = list(csv.DictReader(out_csv.open()))
        cloud_rows = [r for r in rows if r["tag"] == "cloud"]
        payoffs = np.array([[float(r["p1"]), float(r["p2"])] for r in cloud_rows])
        pre = np.array([[float(r["x"]), float(r["y"]), float(r["z"])] for r in cloud_rows])
        boundary = pareto_filter(
            PointCloud(payoffs, pre, 1.0 / 8), Orientation.LOSS, "minimal"
        )
        expected = sorted(
            (float(r["p1"]), float(r["p2"])) for r in rows if r["tag"] == "pareto"
        )
        assert sorted(map(tuple, boundary.payoffs)) == expected

    def test_svg_contents(self, coop_path, tmp_path):
        out_svg = tmp_path / "c.svg"
        code, _, _ = run("render", coop_path, "--out-svg", str(out_svg), "--grid", "9")
        assert code == 0
        svg = out_svg.read_text()
        assert svg.startswith("<svg")
        assert "<path" in svg  # boundary polyline
        assert "proper-coopetitive" in svg
        assert "tu line" in svg
        assert "better = down-left" in svg

    def test_byte_identical_reruns(self, coop_path, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run("render", coop_path, "--out-csv", str(a), "--grid", "9")
        run("render", coop_path, "--out-csv", str(b), "--grid", "9")
        assert a.read_bytes() == b.read_bytes()

    def test_io_failure_exits_5(self, coop_path, tmp_path):
        code, _, err = run(
            "render", coop_path, "--out-csv", str(tmp_path / "missing" / "c.csv"),
            "--grid", "9",
        )
        assert code == 5
        assert "I/O" in err

    def test_needs_an_output(self, coop_path):
        code, _, err = run("render", coop_path)
        assert code == 2


class TestPaperDemo:
    def test_writes_all_artifacts(self, tmp_path):
        out_dir = tmp_path / "demo"
        code, out, _ = run("paper-demo", "--out-dir", str(out_dir))
        assert code == 0
        assert "ok: enlarge the pie" in out
        names = {p.name for p in out_dir.iterdir()}
        assert "report.txt" in names
        assert "paper-finite.json" in names
        assert "paper-coopetitive.json" in names
        for stem in (
            "payoff_space",
            "bargaining_solutions",
            "tu_solutions",
            "coopetitive_space",
            "coopetitive_solutions",
        ):
            assert f"{stem}.csv" in names
            assert f"{stem}.svg" in names

    def test_emitted_game_files_load(self, tmp_path):
        out_dir = tmp_path / "demo"
        run("paper-demo", "--out-dir", str(out_dir))
        code, out, _ = run("analyze", str(out_dir / "paper-finite.json"), "--grid", "33")
        assert code == 0
        assert "(N,L)" in out


class TestEnvGrid:
    def test_env_override(self, coop_path, tmp_path, monkeypatch):
        data = json.loads(open(coop_path).read())
        del data["analysis"]
        path = tmp_path / "noanalysis.json"
        path.write_text(json.dumps(data))
        monkeypatch.setenv("COOPETITION_GRID", "9")
        out_csv = tmp_path / "env.csv"
        code, _, _ = run("render", str(path), "--out-csv", str(out_csv))
        assert code == 0
        rows = list(csv.DictReader(out_csv.open()))
        assert sum(1 for r in rows if r["tag"] == "cloud") == 9**3
