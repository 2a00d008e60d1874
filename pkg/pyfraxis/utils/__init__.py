"""Seeding, logging and concurrency helpers."""
