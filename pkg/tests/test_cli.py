"""Tests for configs, specifier resolution, commands and the entry point."""

import json
import tempfile
from pathlib import Path

import numpy as np
import pytest

from pyfraxis.cli.commands import CUTS_HEADER, FINALS_HEADER, cmd_expressibility, cmd_maxcut, cmd_optimize
from pyfraxis.cli.config import (
    ExpressibilityConfig,
    MaxCutConfig,
    OptimizeConfig,
    build_config,
    load_config_file,
    resolve_ansatz,
    resolve_graph,
    resolve_hamiltonian,
    resolve_labels,
)
from pyfraxis.cli.main import EXIT_OK, EXIT_USAGE, main
from pyfraxis.data import RunStorage
from pyfraxis.data.formats import save_graph, save_pauli_sum
from pyfraxis.errors import ConfigError
from pyfraxis.models.circuit import circuit_a
from pyfraxis.models.hamiltonian import Graph, PauliSum


class TestBuildConfig:
    """Test layering of file values and CLI overrides."""

    def test_defaults(self) -> None:
        """Test that an empty layer gives the dataclass defaults."""
        config = build_config(OptimizeConfig, {}, {})
        assert config == OptimizeConfig()

    def test_override_beats_file(self) -> None:
        """Test that non-None overrides replace file values."""
        config = build_config(
            OptimizeConfig,
            {"method": "rotosolve", "trials": 4},
            {"method": "rotoselect", "trials": None, "command": "optimize"},
        )
        assert config.method == "rotoselect"
        assert config.trials == 4

    def test_unknown_file_key(self) -> None:
        """Test that unknown keys in a config file are errors."""
        with pytest.raises(ConfigError, match="Unknown config keys"):
            build_config(OptimizeConfig, {"methd": "rotosolve"}, {})

    @pytest.mark.parametrize(
        ("cls", "values"),
        [
            (OptimizeConfig, {"method": "adam"}),
            (OptimizeConfig, {"trials": -1}),
            (OptimizeConfig, {"shots": 0}),
            (ExpressibilityConfig, {"bin_width": 0.0}),
            (ExpressibilityConfig, {"sampler": "uniform"}),
            (MaxCutConfig, {"method": "theta-fraxis"}),
            (MaxCutConfig, {"form": "ising"}),
        ],
    )
    def test_validation(self, cls: type, values: dict) -> None:
        """Test that invalid values raise ConfigError."""
        with pytest.raises(ConfigError):
            build_config(cls, values, {})


class TestLoadConfigFile:
    """Test YAML config files."""

    def test_mapping(self) -> None:
        """Test that a mapping is returned as-is."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "run.yaml"
            path.write_text("method: rotosolve\nsweeps: 3\n", encoding="utf-8")
            assert load_config_file(path) == {"method": "rotosolve", "sweeps": 3}

    def test_empty_file(self) -> None:
        """Test that an empty file gives no values."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "run.yaml"
            path.write_text("", encoding="utf-8")
            assert load_config_file(path) == {}

    def test_not_a_mapping(self) -> None:
        """Test that a top-level list is rejected."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "run.yaml"
            path.write_text("- 1\n- 2\n", encoding="utf-8")
            with pytest.raises(ConfigError, match="mapping"):
                load_config_file(path)

    def test_missing_file(self) -> None:
        """Test that a missing file raises ConfigError."""
        with pytest.raises(ConfigError):
            load_config_file("/nonexistent/pyfraxis/run.yaml")


class TestResolvers:
    """Test builtin specifiers."""

    def test_heisenberg_options(self) -> None:
        """Test option parsing for the Heisenberg chain."""
        m = resolve_hamiltonian("heisenberg:n=3,J=0.5,periodic")
        assert m.n_qubits == 3
        assert len(m) == 3 * 3 + 3
        assert m.coefficient("XXI") == pytest.approx(0.5)

    def test_builtin_models(self) -> None:
        """Test the two-qubit and toy models."""
        assert resolve_hamiltonian("two-qubit-model").coefficient("ZI") == pytest.approx(0.01)
        assert resolve_hamiltonian("toy").n_qubits == 1

    @pytest.mark.parametrize("spec", ["ising", "heisenberg:n=1", "heisenberg:k=2", "heisenberg:n=two"])
    def test_bad_hamiltonians(self, spec: str) -> None:
        """Test unknown names, invalid sizes and unknown options."""
        with pytest.raises(ConfigError):
            resolve_hamiltonian(spec)

    def test_hamiltonian_file(self) -> None:
        """Test file: specifiers."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "h.txt"
            save_pauli_sum(PauliSum.from_terms(2, [(1.0, "ZZ")]), path)
            assert resolve_hamiltonian(f"file:{path}").coefficient("ZZ") == 1.0

    def test_ansatz_layers(self) -> None:
        """Test layered ansatz specifiers."""
        c = resolve_ansatz("circuit-a:L=2")
        assert c.n_qubits == 5
        assert c.n_params == circuit_a(2).n_params
        assert resolve_ansatz("two-qubit").n_params == 4
        assert resolve_ansatz("relax:n=3").n_qubits == 3

    @pytest.mark.parametrize("spec", ["hardware-efficient", "circuit-a:L=0", "circuit-a:L=1,depth=2"])
    def test_bad_ansatz(self, spec: str) -> None:
        """Test unknown ansatz names and options."""
        with pytest.raises(ConfigError):
            resolve_ansatz(spec)

    def test_graphs_and_labels(self) -> None:
        """Test graph and labelling resolution."""
        assert resolve_graph("petersen").n_vertices == 10
        assert len(resolve_labels(MaxCutConfig())) == 10
        with pytest.raises(ConfigError):
            resolve_graph("k5")
        with pytest.raises(ConfigError, match="--labels"):
            resolve_labels(MaxCutConfig(graph="file:ring.txt", form="relax"))


class TestCommands:
    """Test command implementations on small instances."""

    def test_optimize_toy(self) -> None:
        """Test that pi-Fraxis solves the toy model and converges."""
        config = OptimizeConfig(hamiltonian="toy", ansatz="single", trials=3, sweeps=5, seed=2)
        record = cmd_optimize(config, threads=1)

        assert record.summary["final_energy"]["max"] == pytest.approx(-np.sqrt(3))
        assert record.summary["ground_energy"] == pytest.approx(-np.sqrt(3))
        assert record.summary["evaluations"] == record.summary["expected_evaluations"]
        finals = record.table("finals")
        assert finals is not None
        assert finals.header == FINALS_HEADER
        assert finals.column("status") == ["converged"] * 3
        assert [t.name for t in record.tables[:3]] == [
            "trajectory_000",
            "trajectory_001",
            "trajectory_002",
        ]

        by_sweep = record.summary["mean_energy_by_sweep"]
        initial = [float(v) for v in finals.column("initial_energy")]
        assert len(by_sweep) == 1 + max(int(v) for v in finals.column("sweeps"))
        assert by_sweep[0] == pytest.approx(np.mean(initial))
        assert by_sweep[-1] == pytest.approx(-np.sqrt(3))

    def test_optimize_is_reproducible(self) -> None:
        """Test that the same seed gives the same finals regardless of threads."""
        config = OptimizeConfig(method="rotoselect", trials=4, sweeps=3, seed=11)
        one = cmd_optimize(config, threads=1).summary["final_energies"]
        many = cmd_optimize(config, threads=4).summary["final_energies"]
        assert one == many

    def test_optimize_size_mismatch(self) -> None:
        """Test that Hamiltonian and ansatz sizes must agree."""
        with pytest.raises(ConfigError, match="qubits"):
            cmd_optimize(OptimizeConfig(hamiltonian="toy", ansatz="two-qubit"))

    def test_optimize_stores_run(self) -> None:
        """Test that a named run is written to storage."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = RunStorage(temp_dir)
            config = OptimizeConfig(hamiltonian="toy", ansatz="single", trials=1, sweeps=1, output="toy")
            cmd_optimize(config, storage, threads=1)

            loaded = storage.load_run("toy")
            assert loaded.command == "optimize"
            assert loaded.config["hamiltonian"] == "toy"

    def test_expressibility(self) -> None:
        """Test the histogram table and report summary."""
        config = ExpressibilityConfig(ansatz="single", sampler="rotosolve", samples=2000, bin_width=0.1)
        record = cmd_expressibility(config, threads=1)

        histogram = record.table("histogram")
        assert histogram is not None
        assert len(histogram.rows) == 10
        assert sum(int(c) for c in histogram.column("count")) == 2000
        assert record.summary["kl_divergence"] > 0.0
        assert record.summary["n_qubits"] == 1

    def test_maxcut_relax(self) -> None:
        """Test the relaxation workflow on the Petersen graph."""
        config = MaxCutConfig(form="relax", trials=2, sweeps=2, seed=5)
        record = cmd_maxcut(config, threads=1)

        cuts = record.table("cuts")
        assert cuts is not None
        assert cuts.header == CUTS_HEADER
        assert len(cuts.rows) == 2 * 3
        by_sweep = record.summary["mean_expected_cut_by_sweep"]
        assert by_sweep[-1] >= by_sweep[0] - 1e-9
        assert record.summary["optimal_cut"] == 12
        assert all(0 <= c <= 12 for c in record.summary["rounded_cuts"])
        assert record.summary["n_qubits"] == 4

    def test_maxcut_qubo_on_file_graph(self) -> None:
        """Test the QUBO workflow on a small graph read from a file."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "square.txt"
            save_graph(Graph.ring(4), path)
            config = MaxCutConfig(graph=f"file:{path}", trials=2, sweeps=2)
            record = cmd_maxcut(config, threads=1)

        assert record.summary["optimal_cut"] == 4
        assert record.summary["n_qubits"] == 4
        assert all(0 <= c <= 4 for c in record.summary["rounded_cuts"])


class TestMain:
    """Test the command-line entry point."""

    def test_optimize_prints_summary(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test exit code 0 and a JSON summary on stdout."""
        code = main(["optimize", "--ham", "toy", "--ansatz", "single", "--sweeps", "2", "--threads", "1"])
        assert code == EXIT_OK
        summary = json.loads(capsys.readouterr().out)
        assert summary["method"] == "pi-fraxis"

    def test_output_and_data_dir(self) -> None:
        """Test that --output stores the run under --data-dir."""
        with tempfile.TemporaryDirectory() as temp_dir:
            code = main(
                [
                    "expressibility",
                    "--samples", "500",
                    "--output", "expr",
                    "--data-dir", temp_dir,
                    "--threads", "1",
                ]
            )
            assert code == EXIT_OK
            assert RunStorage(temp_dir).list_runs() == ["expr"]

    def test_config_file(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that --config values are applied and flags override them."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "run.yaml"
            path.write_text("hamiltonian: toy\nansatz: single\nmethod: rotosolve\n", encoding="utf-8")
            code = main(["optimize", "--config", str(path), "--method", "rotoselect", "--sweeps", "1"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["method"] == "rotoselect"

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["train"],
            ["optimize", "--trials", "many"],
            ["optimize", "--method", "adam"],
            ["maxcut", "--graph", "file:/nonexistent/pyfraxis/g.txt"],
        ],
    )
    def test_usage_errors(self, argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
        """Test that bad arguments exit with code 2."""
        assert main(argv) == EXIT_USAGE
        assert "pyfraxis: error" in capsys.readouterr().err
