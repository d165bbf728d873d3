"""Command-line interface: subcommands, config precedence, exit codes."""

import json
import subprocess
import sys

import pytest

from pathcomplex.cli import main
from pathcomplex.complexes import deserialize_complex
from pathcomplex.graphs import encode_graph6, parse_graph6


@pytest.fixture()
def files(tmp_path):
    paths = {}
    paths["p4"] = tmp_path / "p4.edges"
    paths["p4"].write_text("n 4\n0 1\n1 2\n2 3\n")
    paths["fig2"] = tmp_path / "fig2.edges"
    paths["fig2"].write_text("n 4\n0 1\n0 2\n1 2\n2 3\n")
    paths["fig3b"] = tmp_path / "fig3b.edges"
    paths["fig3b"].write_text("n 4\n0 1\n0 2\n1 3\n2 3\n")
    paths["c4"] = tmp_path / "c4.g6"
    paths["c4"].write_text("Cl\n")
    paths["c6"] = tmp_path / "c6.edges"
    paths["c6"].write_text("n 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n")
    paths["kk"] = tmp_path / "kk.edges"
    paths["kk"].write_text("n 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
    paths["tree"] = tmp_path / "tree.edges"
    paths["tree"].write_text("n 4\n0 1\n0 2\n0 3\n")
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLift:
    def test_path_counts(self, capsys, files):
        code, out, _ = run(capsys, "lift", files["p4"], "--kind", "path",
                           "--max-dim", "3")
        assert code == 0
        assert out.strip() == "4 3 2 1"

    def test_simplex_counts(self, capsys, files):
        code, out, _ = run(capsys, "lift", files["fig2"], "--kind", "simplex",
                           "--max-dim", "2")
        assert code == 0
        assert out.strip() == "4 4 1"

    def test_cell_counts(self, capsys, files):
        code, out, _ = run(capsys, "lift", files["c4"], "--kind", "cell",
                           "--max-ring", "4")
        assert code == 0
        assert out.strip() == "4 4 1"

    def test_writes_loadable_serialization(self, capsys, files, tmp_path):
        out_file = tmp_path / "c.pcx"
        code, _, _ = run(capsys, "lift", files["p4"], "--max-dim", "2",
                         "--out", out_file)
        assert code == 0
        c = deserialize_complex(out_file.read_text())
        assert c.counts() == [4, 3, 2]

    def test_parse_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.edges"
        bad.write_text("n 2\n0 0\n")
        code, _, err = run(capsys, "lift", bad)
        assert code == 2
        assert "self-loop" in err

    def test_member_cap_exit_code(self, capsys, files):
        code, _, err = run(capsys, "lift", files["c6"], "--max-dim", "4",
                           "--member-cap", "3")
        assert code == 3
        assert "cap" in err


class TestTest:
    def test_wl1_misses_the_classic_pair(self, capsys, files):
        code, out, _ = run(capsys, "test", files["c6"], files["kk"],
                           "--method", "wl1")
        assert code == 0
        assert out.startswith("NOT-DISTINGUISHED")

    def test_path_refinement_separates_it(self, capsys, files):
        code, out, _ = run(capsys, "test", files["c6"], files["kk"],
                           "--method", "pwl", "--max-dim", "2")
        assert code == 0
        assert out.startswith("DISTINGUISHED")

    def test_graph_against_itself(self, capsys, files):
        for method in ("wl1", "pwl", "swl", "cwl", "pcn"):
            code, out, _ = run(capsys, "test", files["c6"], files["c6"],
                               "--method", method, "--seeds", "0,1")
            assert code == 0
            assert out.startswith("NOT-DISTINGUISHED"), method

    def test_histogram_dump(self, capsys, files):
        code, out, _ = run(capsys, "test", files["c6"], files["kk"],
                           "--method", "pwl", "--max-dim", "2", "--histograms")
        assert code == 0
        assert "histogram-a" in out

    def test_json_output(self, capsys, files):
        code, out, _ = run(capsys, "test", files["c6"], files["kk"],
                           "--method", "pwl", "--max-dim", "2",
                           "--output-format", "json")
        assert code == 0
        assert json.loads(out)["verdict"] == "DISTINGUISHED"


class TestFamilies:
    def test_square_listing(self, capsys, files):
        code, out, _ = run(capsys, "families", files["fig3b"], "--max-ring", "4")
        assert code == 0
        assert "ring 0-1-3-2" in out
        assert "F3: (0,1,3,2) (0,2,3,1) (1,0,2,3) (2,0,1,3)" in out
        assert "F2: (0,1,3) (0,2,3) (1,0,2) (1,3,2)" in out
        assert "F1: (0,1) (0,2) (1,3) (2,3)" in out
        assert "F0: (0) (1) (2) (3)" in out

    def test_triangle(self, capsys, tmp_path):
        tri = tmp_path / "k3.edges"
        tri.write_text("n 3\n0 1\n1 2\n0 2\n")
        code, out, _ = run(capsys, "families", tri, "--max-ring", "3")
        assert code == 0
        assert out.count("F2:") == 1
        assert len(out.splitlines()) == 4  # ring header + three family lines

    def test_acyclic(self, capsys, files):
        code, out, _ = run(capsys, "families", files["tree"])
        assert code == 0
        assert out.strip() == "no rings"


class TestBench:
    def test_smallest_family_cell_is_zero(self, capsys, srg_specs, tmp_path):
        spec = srg_specs["SR(16,6,2,2)"]
        manifest = tmp_path / "m.txt"
        manifest.write_text(
            f"{spec.name} {spec.path} {spec.n} {spec.k} {spec.lam} {spec.mu}\n"
        )
        prefix = tmp_path / "out"
        code, out, _ = run(capsys, "bench", manifest, "--methods", "pcn",
                           "--max-dim", "3", "--layers", "4",
                           "--out-prefix", prefix)
        assert code == 0
        doc = json.loads((tmp_path / "out.json").read_text())
        assert doc["reports"][0]["aggregate"]["mean"] == 0.0
        assert (tmp_path / "out.csv").read_text().startswith("family,")

    def test_empty_manifest_warns_and_succeeds(self, capsys, tmp_path):
        manifest = tmp_path / "m.txt"
        manifest.write_text("# nothing here\n")
        code, out, err = run(capsys, "bench", manifest)
        assert code == 0
        assert "empty manifest" in err

    def test_missing_family_isolated(self, capsys, srg_specs, tmp_path):
        spec = srg_specs["SR(16,6,2,2)"]
        manifest = tmp_path / "m.txt"
        manifest.write_text(
            "GHOST /nonexistent.g6 5 2 0 1\n"
            f"{spec.name} {spec.path} {spec.n} {spec.k} {spec.lam} {spec.mu}\n"
        )
        code, out, err = run(capsys, "bench", manifest, "--methods", "wl1")
        assert code == 0
        assert "GHOST" in err
        assert "SR(16,6,2,2)" in out


class TestTimeLift:
    def test_runs_and_reports(self, capsys, files):
        code, out, _ = run(capsys, "time-lift", files["c6"], "--repeats", "3",
                           "--max-dim", "3")
        assert code == 0
        assert "mean" in out and "member counts" in out


class TestConfig:
    def test_unknown_key_fatal(self, capsys, files, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("banana = 7\n")
        code, _, err = run(capsys, "lift", files["p4"], "--config", cfg)
        assert code == 1
        assert "banana" in err

    def test_file_then_flag_precedence(self, capsys, files, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("# comment\nmember-cap = 3\n")
        code, _, _ = run(capsys, "lift", files["p4"], "--config", cfg,
                         "--member-cap", "100000")
        assert code == 0  # flag overrides the tiny cap from the file
        code, _, _ = run(capsys, "lift", files["c6"], "--config", cfg)
        assert code == 3  # file cap applies without the flag

    def test_bad_flag_usage_error(self, capsys, files):
        code, _, err = run(capsys, "lift", files["p4"], "--kind", "banana")
        assert code == 1

    def test_seed_ranges(self, capsys, files):
        code, _, _ = run(capsys, "test", files["c6"], files["c6"],
                         "--method", "pcn", "--seeds", "0..3,7")
        assert code == 0

    def test_missing_input_file(self, capsys):
        code, _, err = run(capsys, "lift", "/does/not/exist.g6")
        assert code == 2


class TestHelp:
    def test_every_config_key_has_a_flag(self, capsys):
        for sub in ("lift", "test", "bench", "families", "time-lift"):
            with pytest.raises(SystemExit):
                main([sub, "--help"])
            out = capsys.readouterr().out
            for flag in ("--config", "--boundary-mode", "--member-cap",
                         "--hidden-dim", "--embed-dim", "--epsilon",
                         "--seeds", "--threads", "--output-format"):
                assert flag in out, (sub, flag)


class TestDeterminism:
    def test_repeated_runs_identical(self, capsys, files):
        _, out1, _ = run(capsys, "test", files["c6"], files["kk"],
                         "--method", "pwl", "--max-dim", "2", "--histograms")
        _, out2, _ = run(capsys, "test", files["c6"], files["kk"],
                         "--method", "pwl", "--max-dim", "2", "--histograms")
        assert out1 == out2


def test_installed_entry_point(tmp_path):
    p4 = tmp_path / "p4.edges"
    p4.write_text("n 4\n0 1\n1 2\n2 3\n")
    proc = subprocess.run(
        [sys.executable, "-m", "pathcomplex.cli", str(p4), "--max-dim", "3"],
        capture_output=True, text=True,
    )
    # module invocation without a subcommand is a usage error, exit 1
    assert proc.returncode == 1
    proc = subprocess.run(
        [sys.executable, "-m", "pathcomplex.cli", "lift", str(p4),
         "--max-dim", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "4 3 2 1"
