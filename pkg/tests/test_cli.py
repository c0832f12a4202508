import json
from fractions import Fraction

import pytest

from inducibility.cli import main
from inducibility.graphs import Graph, is_isomorphic, parse_graph6, to_graph6


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0, out
    doc = json.loads(out)
    assert doc["version"] == "0.1.0"
    assert "elapsed_ms" not in doc
    return doc


class TestClassify:
    def test_p3(self, capsys):
        doc = run_json(capsys, "classify", "Bg")
        out = doc["outputs"]
        assert out["detectable"] == [0, 2]
        assert out["obscure"] == [1]
        assert out["brightness"]["exact"] == "1/3"
        assert out["minimal_taming_number"] == 1

    def test_k3_taming(self, capsys):
        doc = run_json(capsys, "classify", "Bw")
        assert doc["outputs"]["minimal_taming_number"] == 0

    def test_parse_error_exit_2(self, capsys):
        code, _ = run_cli(capsys, "classify", "!!")
        assert code == 2

    def test_stdin_dash(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("Bg\n"))
        doc = run_json(capsys, "classify", "-")
        assert doc["inputs"]["graph"] == "Bg"


class TestInd:
    def test_exact(self, capsys):
        doc = run_json(capsys, "ind", "Bg", "--n", "4", "--exact")
        assert doc["outputs"]["value"] == "1/1"
        assert is_isomorphic(parse_graph6(doc["outputs"]["witness"]), Graph.cycle(4))

    def test_k3(self, capsys):
        doc = run_json(capsys, "ind", "Bw", "--n", "5", "--exact")
        assert doc["outputs"]["value"] == "1/1"

    def test_exact_size_limit_exit_3(self, capsys):
        code, _ = run_cli(capsys, "ind", "Bg", "--n", "12", "--exact")
        assert code == 3

    def test_search_checkpoint(self, capsys, tmp_path):
        cp = tmp_path / "cp.json"
        doc = run_json(
            capsys,
            "ind",
            "Bg",
            "--n",
            "5",
            "--search",
            "--iters",
            "300",
            "--seed",
            "4",
            "--checkpoint",
            str(cp),
        )
        assert doc["outputs"]["mode"] == "lower_bound"
        assert cp.exists()


class TestOtherCommands:
    def test_density(self, capsys):
        doc = run_json(capsys, "density", "Bg", to_graph6(Graph.complete_bipartite(3, 3)))
        assert doc["outputs"]["density"] == "9/10"

    def test_density_mc(self, capsys):
        doc = run_json(
            capsys, "density", "Bg", to_graph6(Graph.complete(5)), "--mc", "200",
            "--seed", "3",
        )
        assert "mc" in doc["outputs"]

    def test_tame(self, capsys):
        doc = run_json(capsys, "tame", to_graph6(Graph.path(4)))
        assert doc["outputs"]["minimal_taming_number"] == 3

    def test_tame_closure(self, capsys):
        doc = run_json(capsys, "tame", to_graph6(Graph.path(4)), "--set", "1")
        assert doc["outputs"]["v0"] == [1, 2, 3]

    def test_bounds_phi(self, capsys):
        doc = run_json(capsys, "bounds", "phi", "--s", "1")
        assert abs(doc["outputs"]["value"] - 0.367879441171) < 1e-9

    def test_bounds_select(self, capsys):
        doc = run_json(capsys, "bounds", "select", to_graph6(Graph.star(10)))
        assert doc["outputs"]["regime"] in {
            "high_degree_s",
            "high_degree_st",
            "uniform_low_degree",
            "non_uniform",
            "sparse_core",
            "dense_external",
            "complement_first",
        }

    def test_proba_binom(self, capsys):
        doc = run_json(capsys, "proba", "binom", "--k", "4", "--p", "1/3", "--s", "2")
        assert doc["outputs"]["value"] == "8/27"

    def test_proba_lambda(self, capsys):
        doc = run_json(capsys, "proba", "lambda", "--y", "0", "--z", "0")
        assert doc["outputs"]["lambda"] == 0.5

    def test_construct_split(self, capsys):
        doc = run_json(
            capsys, "construct", "split", "--k", "3", "--r", "1", "--n", "300",
            "--sigma", str(1 / 3),
        )
        assert Fraction(doc["outputs"]["achieved"]) == Fraction(1990000, 4455100)

    def test_simulate(self, capsys):
        doc = run_json(
            capsys,
            "simulate-coloring",
            to_graph6(Graph.from_edges(5, [(0, 1), (1, 2)])),
            to_graph6(Graph.from_edges(4, [(0, 1), (1, 2)])),
            "--trials",
            "500",
            "--seed",
            "2",
        )
        assert doc["outputs"]["violations"]["match_outside_signatures"] == 0

    def test_verify_appendix(self, capsys):
        code, out = run_cli(capsys, "verify", "appendix")
        assert code == 0
        doc = json.loads(out)
        assert doc["outputs"]["failed"] == 0

    def test_bounds_gap(self, capsys):
        doc = run_json(
            capsys, "bounds", "gap", to_graph6(Graph.star(20)), "--eps", "0.5",
            "--c", "1.0",
        )
        assert doc["outputs"]["s"] == 1 and doc["outputs"]["S"] == [0]

    def test_bounds_uniform_and_high_degree(self, capsys):
        doc = run_json(
            capsys, "bounds", "uniform", "--tau", "1", "--beta", "0.5",
            "--eps", "0.03125",
        )
        assert doc["outputs"]["f"] == 4
        doc = run_json(capsys, "bounds", "high-degree", "--s", "1", "--t", "1")
        assert abs(doc["outputs"]["value"] - 0.135335283237) < 1e-9

    def test_bounds_solve_eps(self, capsys):
        doc = run_json(capsys, "bounds", "solve-eps", "--c", "1.0")
        assert 0 < doc["outputs"]["eps"] < 1

    def test_construct_split_plus_edge_and_blowup(self, capsys):
        doc = run_json(capsys, "construct", "split-plus-edge", "--k", "4", "--n", "8")
        assert Fraction(doc["outputs"]["achieved"]) == Fraction(36, 70)
        doc = run_json(
            capsys, "construct", "blowup", to_graph6(Graph.star(3)), "--v0", "0",
            "--n", "16",
        )
        assert parse_graph6(doc["outputs"]["graph"]).n == 16

    def test_proba_hypergeom_and_multi(self, capsys):
        doc = run_json(
            capsys, "proba", "hypergeom", "--population", "4", "--successes", "2",
            "--sample", "2", "--hits", "1",
        )
        assert doc["outputs"]["value"] == "2/3"
        doc = run_json(
            capsys, "proba", "multi", "--population", "6", "--sample", "3",
            "--parts", "2,2", "--s", "1",
        )
        assert doc["outputs"]["value"] == "2/5"

    def test_blowup_invalid_taming_set_exit_3(self, capsys):
        code, _ = run_cli(
            capsys, "construct", "blowup", to_graph6(Graph.path(4)), "--v0", "1,2",
            "--n", "8",
        )
        assert code == 3

    def test_timing_flag(self, capsys):
        code, out = run_cli(capsys, "--timing", "bounds", "phi", "--s", "1")
        assert code == 0
        assert "elapsed_ms" in json.loads(out)


class TestDeterminism:
    COMMANDS = [
        ("classify", "Bg"),
        ("brightness", "Bg", "--mc", "2000", "--seed", "1"),
        ("density", "Bg", "DQc", "--mc", "1000", "--seed", "5"),
        ("ind", "Bg", "--n", "5", "--search", "--iters", "150", "--seed", "2"),
        ("construct", "gnp", "--k", "4", "--n", "10", "--seed", "8"),
        ("simulate-coloring", "DQc", "Cl", "--trials", "400", "--seed", "6"),
        ("bounds", "alpha"),
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
    def test_byte_identical_across_runs_and_threads(self, capsys, monkeypatch, argv):
        monkeypatch.setenv("INDUCIBILITY_THREADS", "1")
        _, first = run_cli(capsys, *argv)
        _, second = run_cli(capsys, *argv)
        monkeypatch.setenv("INDUCIBILITY_THREADS", "8")
        _, third = run_cli(capsys, *argv)
        assert first == second == third
