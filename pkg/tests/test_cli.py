import json
import subprocess
import sys

import pytest

from cechstrat.cli import main


@pytest.fixture
def two_points_file(tmp_path):
    f = tmp_path / "two_points.json"
    f.write_text(json.dumps({"dim": 1, "points": [[0.0], [1.0]]}))
    return str(f)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEnumerate:
    def test_reports_counts_and_writes_files(self, capsys, tmp_path):
        dot = tmp_path / "hasse.dot"
        blob = tmp_path / "universe.json"
        code, out, _ = run_cli(
            capsys, "enumerate", "--max-vertices", "3",
            "--dot", str(dot), "--json", str(blob),
        )
        assert code == 0
        assert "classes: 8" in out
        assert "cover_edges: 8" in out
        text = dot.read_text()
        assert text.startswith("digraph") and text.count("->") == 8
        data = json.loads(blob.read_text())
        assert data["n_max"] == 3 and len(data["classes"]) == 8
        assert len(data["relation"]) == 8

    def test_cap_violation_is_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "enumerate", "--max-vertices", "7")
        assert code == 2
        assert "cap" in err


class TestCech:
    def test_two_points_small_radius(self, capsys, two_points_file):
        code, out, _ = run_cli(
            capsys, "cech", "--points", two_points_file, "--radius", "0.4"
        )
        assert code == 0
        data = json.loads(out)
        assert data["n_vertices"] == 2
        assert data["simplices"] == [[0], [1]]

    def test_edge_at_critical_radius(self, capsys, two_points_file):
        code, out, _ = run_cli(
            capsys, "cech", "--points", two_points_file, "--radius", "0.5"
        )
        assert json.loads(out)["simplices"] == [[0], [1], [0, 1]]

    def test_malformed_json_is_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run_cli(capsys, "cech", "--points", str(bad), "--radius", "0.4")
        assert code == 2
        assert "malformed JSON" in err

    def test_invalid_config_is_exit_2(self, capsys, tmp_path):
        dupe = tmp_path / "dupe.json"
        dupe.write_text(json.dumps({"dim": 1, "points": [[0.0], [0.0]]}))
        code, _, err = run_cli(capsys, "cech", "--points", str(dupe), "--radius", "0.4")
        assert code == 2
        assert "dedupe" in err


class TestFiltration:
    def test_round_trip(self, capsys, two_points_file):
        code, out, _ = run_cli(capsys, "filtration", "--points", two_points_file)
        assert code == 0
        data = json.loads(out)
        assert data["critical_radii"] == [0.0, 0.5]
        assert len(data["complexes"]) == 2


class TestDominates:
    def test_witness(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text(json.dumps({"n_vertices": 2, "simplices": [[0], [1]]}))
        b.write_text(json.dumps({"n_vertices": 2, "simplices": [[0], [1], [0, 1]]}))
        code, out, _ = run_cli(capsys, "dominates", "--a", str(a), "--b", str(b))
        assert code == 0
        data = json.loads(out)
        assert sorted(data["vertex_map"]) == [0, 1]

    def test_none(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text(json.dumps({"n_vertices": 2, "simplices": [[0], [1], [0, 1]]}))
        b.write_text(json.dumps({"n_vertices": 2, "simplices": [[0], [1]]}))
        code, out, _ = run_cli(capsys, "dominates", "--a", str(a), "--b", str(b))
        assert code == 0
        assert out.strip() == "none"


class TestStratum:
    def test_boundary_pair(self, capsys, two_points_file):
        code, out, _ = run_cli(
            capsys, "stratum", "--points", two_points_file, "--radius", "0.5"
        )
        assert code == 0
        data = json.loads(out)
        assert data["degenerate"] is True
        assert data["degenerate_subsets"] == [[0, 1]]
        assert data["case"] == "boundary"
        assert data["safe_radius"] == pytest.approx(0.25)


class TestTrack:
    def test_zigzag_output(self, capsys, tmp_path):
        path_file = tmp_path / "path.json"
        path_file.write_text(
            json.dumps(
                {
                    "dim": 1,
                    "breakpoints": [0.0, 1.0],
                    "tracks": [[[0.0], [0.0]], [[1.0], [1.0]]],
                    "radius": [0.0, 1.0],
                }
            )
        )
        out_file = tmp_path / "zigzag.json"
        code, _, _ = run_cli(
            capsys, "track", "--path", str(path_file),
            "--resolution", "0.01", "--out", str(out_file), "--as-filtration",
        )
        assert code == 0
        data = json.loads(out_file.read_text())
        assert len(data["times"]) == 1
        assert data["times"][0] == pytest.approx(0.5, abs=1e-5)
        assert len(data["interval_classes"]) == 2
        assert data["filtration"] is not None
        assert len(data["filtration"]["classes"]) == 2


class TestFrontierDemo:
    def test_violated_verdict(self, capsys):
        code, out, _ = run_cli(capsys, "frontier-demo", "--samples", "800", "--seed", "3")
        assert code == 0
        data = json.loads(out)
        assert data["verdict"] == "violated"
        assert "boundary" in data["witnesses"] and "interior" in data["witnesses"]

    def test_refined_satisfied(self, capsys):
        code, out, _ = run_cli(
            capsys, "frontier-demo", "--samples", "800", "--seed", "3", "--refined"
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "satisfied-at-budget"


class TestDeterminism:
    def test_byte_identical_reruns(self, capsys, two_points_file):
        _, out1, _ = run_cli(capsys, "filtration", "--points", two_points_file)
        _, out2, _ = run_cli(capsys, "filtration", "--points", two_points_file)
        assert out1 == out2
        _, out3, _ = run_cli(capsys, "frontier-demo", "--samples", "300", "--seed", "9")
        _, out4, _ = run_cli(capsys, "frontier-demo", "--samples", "300", "--seed", "9")
        assert out3 == out4

    def test_emitted_json_reparses(self, capsys, two_points_file):
        _, out, _ = run_cli(capsys, "filtration", "--points", two_points_file)
        from cechstrat import Filtration

        restored = Filtration.from_json_dict(json.loads(out))
        assert restored.critical_radii == (0.0, 0.5)


class TestSubprocessEntry:
    def test_module_invocation(self, two_points_file):
        proc = subprocess.run(
            [sys.executable, "-m", "cechstrat", "cech",
             "--points", two_points_file, "--radius", "0.4"],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["n_vertices"] == 2

    def test_env_seed_mirror(self, two_points_file):
        import os

        env = dict(os.environ, CECHSTRAT_SEED="7")
        proc = subprocess.run(
            [sys.executable, "-m", "cechstrat", "frontier-demo", "--samples", "200"],
            capture_output=True, text=True, timeout=300, env=env,
        )
        assert proc.returncode in (0, 3)
        assert json.loads(proc.stdout)["params"]["seed"] == 7
