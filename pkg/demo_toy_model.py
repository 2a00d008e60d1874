#!/usr/bin/env python3
"""Demonstration of free-axis updates on the toy and two-qubit models."""

import numpy as np

from pyfraxis.cli.commands import cmd_optimize
from pyfraxis.cli.config import OptimizeConfig, toy_model
from pyfraxis.data import RunStorage
from pyfraxis.models.circuit import single_qubit_ansatz
from pyfraxis.optimizers.evaluation import ExactEvaluator
from pyfraxis.optimizers.updates import pi_fraxis_update, rotosolve_update


def main() -> None:
    """Demonstrate one gate update, a full optimization and run storage."""
    print("🚀 Pyfraxis Toy Model Demo")
    print("=" * 40)

    # One gate R_n(theta) on |0>, measured against X + Y + Z
    print("\n🧭 Single gate against M = X + Y + Z")
    circuit = single_qubit_ansatz()
    hamiltonian = toy_model()

    rotosolve = rotosolve_update(circuit, hamiltonian, 0)
    print(f"   Rotosolve (R_y only):  E = {rotosolve.energy:+.6f} in {rotosolve.evaluations} evaluations")

    evaluator = ExactEvaluator()
    fraxis = pi_fraxis_update(circuit, hamiltonian, 0, evaluator)
    axis = fraxis.axis.as_array()
    print(f"   pi-Fraxis (free axis): E = {fraxis.energy:+.6f} in {evaluator.evaluations} evaluations")
    print(f"   Chosen axis: ({axis[0]:+.4f}, {axis[1]:+.4f}, {axis[2]:+.4f})")
    print(f"   Ground energy -sqrt(3) = {-np.sqrt(3):+.6f}")

    # Seeded trials on the two-qubit model, stored as a run
    print("\n🔁 Ten pi-Fraxis trials on the two-qubit model...")
    storage = RunStorage()
    config = OptimizeConfig(trials=10, sweeps=25, seed=0, output="demo-two-qubit")
    record = cmd_optimize(config, storage)
    stats = record.summary["final_energy"]
    print(f"   Ground energy: {record.summary['ground_energy']:+.6f}")
    print(f"   Final energies: mean {stats['mean']:+.6f}, best {stats['min']:+.6f}")
    print(f"   Evaluations: {record.summary['evaluations']}")

    print("\n💾 Stored files:")
    for path in sorted(storage.run_path(record.name).iterdir()):
        print(f"   {path.name}")

    print(f"\n📚 All runs: {storage.list_runs()}")
    print(f"\n✅ Demo complete! Browse the run with 'pyfraxis browse --data-dir {storage.data_dir}'")


if __name__ == "__main__":
    main()
