"""Poisson algebras of first-degree harmonics and the projective geometry
they induce: dualities, altitude concurrence, and degree-5 Lie identities."""

__version__ = "0.1.0"
