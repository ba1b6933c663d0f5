"""Errors, configuration and JSON codec helpers."""
