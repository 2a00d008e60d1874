"""Command-line interface for pyfraxis."""
