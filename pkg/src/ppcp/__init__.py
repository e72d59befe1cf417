"""Shelter placement under single-vertex fire scenarios (Min PpCP)."""

from .graph import INF, DisconnectedGraphError, GraphError, WeightedGraph, format_length

__version__ = "0.1.0"

__all__ = ["INF", "DisconnectedGraphError", "GraphError", "WeightedGraph", "format_length", "__version__"]
