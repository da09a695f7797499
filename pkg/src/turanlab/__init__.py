"""Verified workbench for induced Turan-type extremal problems in
biclique-free host graphs: exact small-case solvers, certified searches,
constructive embedding pipelines, and reproducible CLI reports.
"""

__version__ = "0.1.0"

from .errors import TuranLabError
from .graphs import (Bipartition, Graph, PatternSpec, bits, graph_from_graph6,
                     graph_to_graph6, mask_of, two_colour)
from .witness import Witness, validate_witness

__all__ = [
    "Bipartition",
    "Graph",
    "PatternSpec",
    "TuranLabError",
    "Witness",
    "bits",
    "graph_from_graph6",
    "graph_to_graph6",
    "mask_of",
    "two_colour",
    "validate_witness",
    "__version__",
]
