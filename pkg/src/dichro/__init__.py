"""Dicolouring toolkit for oriented triangle-free graphs."""

__version__ = "0.1.0"

from .graphs import (  # noqa: E402
    BudgetExceeded,
    Digraph,
    UndirectedGraph,
    acyclic_number,
    is_triangle_free,
    underlying_graph,
)
from .solver import (  # noqa: E402
    Dicolouring,
    Verdict,
    dichromatic_number,
    is_k_dicolourable,
    is_k_dicritical,
    verify_dicolouring,
)
from .formats import decode_digraph6, decode_graph6, encode_digraph6, encode_graph6  # noqa: E402

__all__ = [
    "BudgetExceeded",
    "Digraph",
    "Dicolouring",
    "UndirectedGraph",
    "Verdict",
    "acyclic_number",
    "decode_digraph6",
    "decode_graph6",
    "dichromatic_number",
    "encode_digraph6",
    "encode_graph6",
    "is_k_dicolourable",
    "is_k_dicritical",
    "is_triangle_free",
    "underlying_graph",
    "verify_dicolouring",
]
