"""Exact solvers and reductions for weighted graph-separation problems."""

from .graph import INF, Digraph, Graph, InputError
from .kernels import BACKEND

__all__ = ["INF", "Graph", "Digraph", "InputError", "BACKEND"]
__version__ = "0.1.0"
