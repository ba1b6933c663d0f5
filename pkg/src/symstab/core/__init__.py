"""Exact arithmetic engines: torsion lattices, coverings, ruled surfaces, elementary transformations."""
