"""Generalised Paley graphs, cyclotomic schemes and their automorphism groups."""

__version__ = "0.1.0"
