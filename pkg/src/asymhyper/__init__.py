"""Asymmetric k-uniform hypergraphs: constructions, automorphism search and verification."""

__version__ = "0.1.0"
