"""Simulation models: states, Hamiltonians, circuits and stored runs."""
