"""Hamiltonian cycle systems with prescribed full automorphism groups."""

__version__ = "0.1.0"
