"""Exact verification of torsion-finiteness criteria over Lubin-Tate extensions."""

__version__ = "0.1.0"
