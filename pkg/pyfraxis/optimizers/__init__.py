"""Sequential single-gate optimizers."""
