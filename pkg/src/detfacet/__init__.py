"""Determinantal facet ideals: closedness, Groebner bases, invariants, primality."""

__version__ = "0.1.0"
