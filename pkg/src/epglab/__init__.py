"""Single-bend grid path intersection graphs (B1-EPG): models, search, certificates."""

from .errors import (
    BadParameter,
    CatalogMissing,
    DegeneratePath,
    EpglabError,
    GraphTooLarge,
    NotAClique,
    NotBlockGraph,
    NotCactus,
    OutOfBounds,
    ParseError,
    RangeError,
)
from .graph import Graph, format_graph, parse_graph
from .grid import (
    EpgRepresentation,
    GridEdge,
    GridPath,
    GridPoint,
    classify_clique,
    find_pies,
    format_representation,
    intersection_graph,
    is_helly,
    parse_representation,
)
from .search import BudgetExceeded, ExhaustedAtBound, Found, SearchBudget, enumerate_reps, search_b1

__version__ = "0.1.0"

__all__ = [
    "BadParameter",
    "BudgetExceeded",
    "CatalogMissing",
    "DegeneratePath",
    "EpgRepresentation",
    "EpglabError",
    "ExhaustedAtBound",
    "Found",
    "Graph",
    "GraphTooLarge",
    "GridEdge",
    "GridPath",
    "GridPoint",
    "NotAClique",
    "NotBlockGraph",
    "NotCactus",
    "OutOfBounds",
    "ParseError",
    "RangeError",
    "SearchBudget",
    "classify_clique",
    "enumerate_reps",
    "find_pies",
    "format_graph",
    "format_representation",
    "intersection_graph",
    "is_helly",
    "parse_graph",
    "parse_representation",
    "search_b1",
]
