import json
import math
import subprocess
import sys

import numpy as np
import pytest

from htype.algebra import load_algebra
from htype.cli import main
from htype.connect import validate_result_dict


@pytest.fixture
def heisenberg_file(tmp_path):
    path = tmp_path / "h1.json"
    assert main(["build", "--r", "1", "--m", "2", "--out", str(path)]) == 0
    return str(path)


def parse_csv(text):
    lines = [l for l in text.strip().splitlines() if l]
    header = lines[0].split(",")
    rows = [l.split(",") for l in lines[1:]]
    return header, rows


class TestBuild:
    def test_writes_verified_file(self, tmp_path):
        out = tmp_path / "alg.json"
        assert main(["build", "--r", "3", "--m", "4", "--out", str(out)]) == 0
        alg = load_algebra(out)
        assert (alg.r, alg.m) == (3, 4)

    def test_invalid_dimension_exit_2(self, tmp_path, capsys):
        out = tmp_path / "alg.json"
        rc = main(["build", "--r", "1", "--m", "3", "--out", str(out)])
        assert rc == 2
        err = capsys.readouterr().err
        assert "d(1)=2" in err
        assert not out.exists()


class TestGeodesic:
    def test_straight_line_rows(self, heisenberg_file, capsys):
        rc = main(
            [
                "geodesic",
                "--alg",
                heisenberg_file,
                "--xdot0",
                "1,0",
                "--theta",
                "0",
                "--samples",
                "5",
            ]
        )
        assert rc == 0
        header, rows = parse_csv(capsys.readouterr().out)
        assert header == ["t", "x_1", "x_2", "z_1", "speed"]
        assert len(rows) == 5
        for row in rows:
            t = float(row[0])
            assert float(row[1]) == pytest.approx(t)
            assert float(row[2]) == 0.0
            assert float(row[3]) == 0.0
            assert float(row[4]) == 1.0

    def test_two_samples_hit_endpoints(self, heisenberg_file, capsys):
        rc = main(
            [
                "geodesic",
                "--alg",
                heisenberg_file,
                "--xdot0",
                "1,1",
                "--theta",
                "0.5",
                "--samples",
                "2",
            ]
        )
        assert rc == 0
        _, rows = parse_csv(capsys.readouterr().out)
        assert [float(r[0]) for r in rows] == [0.0, 1.0]

    def test_full_turn_returns_to_axis(self, heisenberg_file, capsys):
        rc = main(
            [
                "geodesic",
                "--alg",
                heisenberg_file,
                "--xdot0",
                "1,0",
                "--theta",
                repr(2.0 * math.pi),
                "--samples",
                "3",
            ]
        )
        assert rc == 0
        _, rows = parse_csv(capsys.readouterr().out)
        final = rows[-1]
        assert abs(float(final[1])) <= 1e-12
        assert abs(float(final[2])) <= 1e-12

    def test_json_format_echoes_spec(self, heisenberg_file, capsys):
        rc = main(
            [
                "geodesic",
                "--alg",
                heisenberg_file,
                "--xdot0",
                "1,0",
                "--theta",
                "1",
                "--samples",
                "3",
                "--format",
                "json",
            ]
        )
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        assert data["spec"]["xdot0"] == [1.0, 0.0]
        assert data["spec"]["theta"] == [1.0]
        assert len(data["samples"]) == 3

    def test_dimension_mismatch_exit_2(self, heisenberg_file, capsys):
        rc = main(
            [
                "geodesic",
                "--alg",
                heisenberg_file,
                "--xdot0",
                "1,0,0",
                "--theta",
                "0",
            ]
        )
        assert rc == 2

    def test_bad_samples_exit_2(self, heisenberg_file):
        rc = main(
            [
                "geodesic",
                "--alg",
                heisenberg_file,
                "--xdot0",
                "1,0",
                "--theta",
                "0",
                "--samples",
                "1",
            ]
        )
        assert rc == 2


class TestConnect:
    def test_vertical_target(self, heisenberg_file, capsys):
        rc = main(["connect", "--alg", heisenberg_file, "--x", "0,0", "--z", "1"])
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        validate_result_dict(data)
        assert data["class"] == "vertical"
        assert data["in_cut_locus"] is True
        assert data["distance"] == pytest.approx(math.sqrt(4.0 * math.pi))

    def test_horizontal_target(self, heisenberg_file, capsys):
        rc = main(["connect", "--alg", heisenberg_file, "--x", "1,0", "--z", "0"])
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        validate_result_dict(data)
        assert data["class"] == "horizontal"
        assert len(data["geodesics"]) == 1
        assert data["geodesics"][0]["length"] == 1.0

    def test_generic_target_minimizer_flagged(self, heisenberg_file, capsys):
        rc = main(
            [
                "connect",
                "--alg",
                heisenberg_file,
                "--x",
                "0.4,0",
                "--z",
                "1.2",
                "--alpha-cap",
                repr(8.0 * math.pi),
            ]
        )
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        validate_result_dict(data)
        assert data["class"] == "generic"
        assert len(data["geodesics"]) >= 2  # large 4|z|/|x|^2: several roots
        lengths = [g["length"] for g in data["geodesics"]]
        flags = [g["is_minimizer"] for g in data["geodesics"]]
        assert flags[int(np.argmin(lengths))]


class TestFigures:
    def test_nu_contains_anchor_point(self, tmp_path, capsys):
        out = tmp_path / "nu.csv"
        rc = main(["figures", "--which", "nu", "--max", "30", "--points", "200",
                   "--out", str(out)])
        assert rc == 0
        header, rows = parse_csv(out.read_text())
        assert header == ["alpha", "nu"]
        hits = [
            r for r in rows if abs(float(r[0]) - 2.0 * math.pi) < 1e-12
        ]
        assert len(hits) == 1
        assert abs(float(hits[0][1]) - math.pi) <= 1e-12

    def test_sinc_equals_one_only_at_zero(self, tmp_path):
        out = tmp_path / "sinc.csv"
        rc = main(["figures", "--which", "sinc", "--max", "10", "--points", "500",
                   "--out", str(out)])
        assert rc == 0
        _, rows = parse_csv(out.read_text())
        assert float(rows[0][0]) == 0.0 and float(rows[0][1]) == 1.0
        assert all(float(r[1]) < 1.0 for r in rows[1:])

    def test_mu_blank_cells_exactly_at_poles(self, tmp_path):
        out = tmp_path / "mu.csv"
        points = 1601  # grid step pi/100: hits 2*n*pi exactly-ish
        rc = main(
            ["figures", "--which", "mu", "--max", repr(16.0 * math.pi),
             "--points", str(points), "--out", str(out)]
        )
        assert rc == 0
        _, rows = parse_csv(out.read_text())
        assert len(rows) == points
        for r in rows:
            a = float(r[0])
            near_pole = any(
                abs(a - 2.0 * math.pi * n) <= 1e-9 for n in range(1, 9)
            )
            assert (r[1] == "") == near_pole

    def test_mu_strictly_increasing_before_first_pole(self, tmp_path):
        out = tmp_path / "mu.csv"
        rc = main(["figures", "--which", "mu", "--max", repr(16.0 * math.pi),
                   "--points", "1000", "--out", str(out)])
        assert rc == 0
        _, rows = parse_csv(out.read_text())
        vals = [
            float(r[1])
            for r in rows
            if r[1] != "" and 0.0 < float(r[0]) < 2.0 * math.pi
        ]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert main(["figures", "--which", "nu", "--points", "333",
                         "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bad_figure_args(self, tmp_path):
        out = tmp_path / "x.csv"
        assert main(["figures", "--which", "nu", "--max", "-1",
                     "--out", str(out)]) == 2
        assert main(["figures", "--which", "nu", "--points", "1",
                     "--out", str(out)]) == 2


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "htype", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "figures" in proc.stdout

    def test_unknown_subcommand_exits_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "htype", "frobnicate"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
