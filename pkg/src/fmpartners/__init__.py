"""Fourier-Mukai partners of elliptic ruled surfaces P(O_E + L), L of order m."""

__version__ = "0.1.0"
