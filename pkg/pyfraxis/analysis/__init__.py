"""Expressibility and MaxCut analysis."""
