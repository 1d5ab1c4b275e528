"""End-to-end tests for the command-line interface."""

from __future__ import annotations

import json

import pytest

from degreelab.cli import main
from degreelab.concentration import (
    balanced_concentration,
    concentration_point,
    predicted_interval_sparse,
)
from degreelab.graphs import parse_edge_list
from degreelab.harness import ExperimentConfig, run_experiment


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNuCommand:
    def test_point_value(self, capsys):
        code, out, _ = run_cli(capsys, "nu", "--n", "1000000", "--k", "1000000")
        assert code == 0
        assert float(out) == pytest.approx(concentration_point(10**6, 10**6))

    def test_balanced_flag(self, capsys):
        code, out, _ = run_cli(capsys, "nu", "--hat", "--n", "100000")
        assert code == 0
        assert float(out) == pytest.approx(balanced_concentration(10**5))

    def test_interval_json(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "nu", "--interval", "--n", "100000", "--m", "50000", "--eps", "0.3333",
        )
        assert code == 0
        payload = json.loads(out)
        interval = predicted_interval_sparse(10**5, 5 * 10**4, 0.3333)
        assert payload == {
            "lo": interval.lo,
            "hi": interval.hi,
            "delta_star": interval.delta_star,
        }

    def test_needs_k_without_mode_flags(self, capsys):
        with pytest.raises(SystemExit):
            main(["nu", "--n", "10"])


class TestSampleCommands:
    def test_bins_loads(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample", "bins", "--n", "6", "--k", "9", "--seed", "4"
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["loads"]) == 6
        assert sum(payload["loads"]) == 9

    def test_bins_max(self, capsys):
        _, out_loads, _ = run_cli(
            capsys, "sample", "bins", "--n", "6", "--k", "9", "--seed", "4"
        )
        _, out_max, _ = run_cli(
            capsys,
            "sample", "bins", "--n", "6", "--k", "9", "--seed", "4", "--emit", "max",
        )
        assert json.loads(out_max)["max_load"] == max(json.loads(out_loads)["loads"])

    def test_forest_edge_list(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample", "forest", "--n", "12", "--t", "2", "--seed", "5"
        )
        assert code == 0
        graph = parse_edge_list(out)
        assert graph.size == 10
        assert out.splitlines()[0] == "12 10"

    def test_forest_pruefer_and_degrees_agree(self, capsys):
        _, out_seq, _ = run_cli(
            capsys,
            "sample", "forest", "--n", "8", "--t", "2", "--seed", "6",
            "--emit", "pruefer",
        )
        _, out_deg, _ = run_cli(
            capsys,
            "sample", "forest", "--n", "8", "--t", "2", "--seed", "6",
            "--emit", "degrees",
        )
        sequence = json.loads(out_seq)["sequence"]
        degrees = json.loads(out_deg)["degrees"]
        for v in range(1, 9):
            expected = sequence.count(v) + (1 if v > 2 else 0)
            assert degrees[v - 1] == expected

    def test_gnm_with_report(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sample", "gnm", "--n", "30", "--m", "15", "--seed", "7", "--report",
        )
        assert code == 0
        lines = out.splitlines()
        n_header, m_header = map(int, lines[0].split())
        assert (n_header, m_header) == (30, 15)
        report = json.loads(lines[1 + m_header])
        assert report["accepted"] is True
        assert report["attempts"] >= 1

    def test_noncomplex_sampling(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample", "noncomplex", "--n", "40", "--m", "20", "--seed", "8"
        )
        assert code == 0
        graph = parse_edge_list(out)
        assert graph.size == 20

    def test_complex_part(self, capsys, tmp_path):
        core_path = tmp_path / "core.txt"
        core_path.write_text("3 3\n1 2\n1 3\n2 3\n")
        code, out, _ = run_cli(
            capsys,
            "sample", "complex-part", "--core", str(core_path),
            "--q", "12", "--seed", "9",
        )
        assert code == 0
        graph = parse_edge_list(out)
        assert graph.size == 12  # 3 core edges + 9 forest edges
        assert {(1, 2), (1, 3), (2, 3)} <= set(graph.edges)


class TestDecomposeCommand:
    def test_json_keys_and_values(self, capsys, tmp_path):
        # Bowtie with a pendant plus a disjoint edge and an isolated vertex.
        path = tmp_path / "graph.txt"
        path.write_text(
            "9 8\n1 2\n1 3\n2 3\n1 4\n1 5\n4 5\n2 6\n7 8\n"
        )
        code, out, _ = run_cli(capsys, "decompose", "--in", str(path))
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {
            "core_vertices",
            "qL_vertices",
            "qS_vertices",
            "u_vertices",
            "max_degree",
            "isolated_vertices",
            "isolated_edges",
        }
        assert payload["core_vertices"] == [1, 2, 3, 4, 5]
        assert payload["qL_vertices"] == [1, 2, 3, 4, 5, 6]
        assert payload["qS_vertices"] == []
        assert payload["u_vertices"] == [7, 8, 9]
        assert payload["max_degree"] == 4
        assert payload["isolated_vertices"] == 1
        assert payload["isolated_edges"] == 1


class TestEnumerateCommand:
    def test_vacuous_sweep_reports_header_and_note(self, capsys):
        code, out, err = run_cli(capsys, "enumerate", "dense-ratio", "--n", "7", "--planar")
        assert code == 0
        assert out.splitlines()[0] == "m,k,l,d,count_src,count_dst,bound,holds"
        assert "vacuously" in err


class TestExperimentCommand:
    def test_run_writes_output_and_is_deterministic(self, capsys, tmp_path):
        config = {
            "experiment": "bins_concentration",
            "n": 50,
            "trials": 5,
            "seed": 99,
            "eps": 1.0,
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(config))
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        code_a, stdout_a, _ = run_cli(
            capsys,
            "experiment", "run", "--config", str(cfg_path),
            "--out", str(out_a), "--format", "csv",
        )
        code_b, stdout_b, _ = run_cli(
            capsys,
            "experiment", "run", "--config", str(cfg_path),
            "--out", str(out_b), "--format", "csv", "--jobs", "2",
        )
        assert code_a == code_b == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        assert stdout_a == stdout_b
        summary = json.loads(stdout_a)
        assert summary["trials"] == 5

    def test_exit_code_reflects_thresholds(self, capsys, tmp_path):
        base = {
            "experiment": "bins_concentration",
            "n": 60,
            "trials": 6,
            "seed": 3,
            "eps": 0.8,
        }
        rate = run_experiment(ExperimentConfig.from_dict(base)).summary["hit_rate"]

        passing = dict(base, min_hit_rate=max(rate - 0.01, 0.0))
        failing = dict(base, min_hit_rate=min(rate + 0.01, 1.0))
        if rate == 1.0:
            failing = dict(base, eps=0.01, min_hit_rate=1.0)
            strict_rate = run_experiment(
                ExperimentConfig.from_dict(dict(base, eps=0.01))
            ).summary["hit_rate"]
            assert strict_rate < 1.0

        for payload, expected in ((passing, 0), (failing, 1)):
            cfg_path = tmp_path / "cfg.json"
            cfg_path.write_text(json.dumps(payload))
            code, _, _ = run_cli(capsys, "experiment", "run", "--config", str(cfg_path))
            assert code == expected
