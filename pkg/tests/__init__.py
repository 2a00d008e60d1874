"""Test package for pyfraxis."""
