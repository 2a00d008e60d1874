"""Long statistical runs of the benchmark experiments.

Deselect with ``pytest -m "not slow"``.
"""

import numpy as np
import pytest

from pyfraxis.analysis.expressibility import expressibility
from pyfraxis.cli.commands import cmd_maxcut, cmd_optimize
from pyfraxis.cli.config import MaxCutConfig, OptimizeConfig
from pyfraxis.models.circuit import circuit_a, single_qubit_ansatz
from pyfraxis.models.hamiltonian import ground_energy, heisenberg_1d

pytestmark = pytest.mark.slow

HEISENBERG = "heisenberg:n=5,J=1,h=1,periodic"


class TestTwoQubitModel:
    """Test optimizer trials on the two-qubit model."""

    def test_pi_fraxis_reaches_ground_energy(self) -> None:
        """Test that most seeded pi-Fraxis trials end at -0.3."""
        config = OptimizeConfig(
            hamiltonian="two-qubit-model", ansatz="two-qubit", method="pi-fraxis", trials=50, sweeps=100
        )
        summary = cmd_optimize(config).summary

        finals = np.array(summary["final_energies"])
        assert summary["ground_energy"] == pytest.approx(-0.3, abs=1e-12)
        assert np.mean(np.abs(finals + 0.3) < 1e-3) >= 0.9
        assert summary["evaluations"] == summary["expected_evaluations"]

    def test_pi_fraxis_leads_rotosolve(self) -> None:
        """Test that the mean pi-Fraxis trajectory stays at or below Rotosolve's."""
        by_sweep = {
            method: cmd_optimize(
                OptimizeConfig(method=method, trials=50, sweeps=100, seed=0)
            ).summary["mean_energy_by_sweep"]
            for method in ("pi-fraxis", "rotosolve")
        }
        fraxis, rotosolve = by_sweep["pi-fraxis"], by_sweep["rotosolve"]

        # index k holds the mean energy after k sweeps
        for k in (1, 11):
            assert fraxis[k] <= rotosolve[k]
        assert fraxis[-1] < -0.299
        assert rotosolve[-1] < -0.299


class TestHeisenbergChain:
    """Test the five-site periodic Heisenberg chain on circuit A."""

    def test_fraxis_beats_rotosolve_and_improves_with_depth(self) -> None:
        """Test depth and method ordering of mean final energies over 20 trials."""
        exact, _ = ground_energy(heisenberg_1d(5, 1.0, 1.0, periodic=True))

        def mean_final(method: str, layers: int) -> float:
            config = OptimizeConfig(
                hamiltonian=HEISENBERG, ansatz=f"circuit-a:L={layers}", method=method, trials=20
            )
            summary = cmd_optimize(config).summary
            assert summary["ground_energy"] == pytest.approx(exact, abs=1e-10)
            return summary["final_energy"]["mean"]

        fraxis = [mean_final("pi-fraxis", layers) for layers in (1, 2, 3)]
        rotosolve = mean_final("rotosolve", 3)

        assert fraxis[2] < rotosolve
        assert fraxis[0] > fraxis[1] > fraxis[2]
        assert min(fraxis) >= exact - 1e-9


class TestExpressibility:
    """Test KL divergences against known values."""

    def test_single_qubit_ry(self) -> None:
        """Test the arcsine fidelity distribution of one R_y gate."""
        report, _ = expressibility(
            single_qubit_ansatz(), "rotosolve", samples=100_000, seed=0, bin_width=0.001
        )
        assert report.kl_divergence == pytest.approx(0.22, abs=0.03)
        assert report.kl_divergence == pytest.approx(np.log(4 / np.pi), abs=0.02)

    def test_single_qubit_fraxis(self) -> None:
        """Test that one free-axis pi rotation is close to Haar."""
        report, _ = expressibility(single_qubit_ansatz(), "fraxis-parameter", samples=100_000, seed=0)
        assert report.kl_divergence < 0.05

    @pytest.mark.parametrize("layers", [1, 2, 3])
    def test_circuit_a_ordering(self, layers: int) -> None:
        """Test that free axes are more expressive than fixed or selected axes."""
        kl = {
            sampler: expressibility(
                circuit_a(layers), sampler, samples=100_000, seed=layers, bin_width=0.001
            )[0].kl_divergence
            for sampler in ("fraxis-parameter", "rotoselect", "rotosolve")
        }
        assert kl["fraxis-parameter"] < kl["rotoselect"]
        assert kl["fraxis-parameter"] < kl["rotosolve"]


class TestPetersenMaxCut:
    """Test MaxCut workflows on the Petersen graph."""

    def test_qubo(self) -> None:
        """Test that the mean expected cut reaches 11 within three sweeps."""
        summary = cmd_maxcut(MaxCutConfig(form="qubo", trials=20, sweeps=10)).summary

        by_sweep = summary["mean_expected_cut_by_sweep"]
        assert summary["optimal_cut"] == 12
        assert by_sweep[3] >= 11
        # every local optimum of a 3-regular graph cuts at least 2/3 of its edges
        assert by_sweep[-1] >= 10 - 1e-6
        assert max(summary["rounded_cuts"]) >= 11

    def test_relax(self) -> None:
        """Test that the relaxed objective reaches the optimal cut value on average."""
        summary = cmd_maxcut(MaxCutConfig(form="relax", trials=20, sweeps=10)).summary

        by_sweep = summary["mean_expected_cut_by_sweep"]
        assert summary["optimal_cut"] == 12
        assert np.mean(summary["final_expected_cuts"]) >= 12
        assert by_sweep[-1] > by_sweep[0]
