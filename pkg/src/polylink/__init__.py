"""Combinatorial pipeline from A-trails on 4-valent polytopes to Hamiltonian
structures on simple polytopes, GF(2) vector-colorings with their quotient
complexes, and combinatorial link models with triviality classification."""

from . import atrails, catalog, covers, embedded_graph, hamiltonian, links
from .errors import PolylinkError

__all__ = ["atrails", "catalog", "covers", "embedded_graph", "hamiltonian",
           "links", "PolylinkError"]

__version__ = "0.1.0"
