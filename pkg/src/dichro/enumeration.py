"""Isomorph-free generation of triangle-free graphs by vertex addition.

Every graph on k vertices is extended by a new vertex joined to an independent
set; children are deduplicated through their canonical graph6 string.  When a
minimum degree ``delta`` is requested for order ``n``, a graph on ``k``
vertices can only be an induced subgraph of a target if all its degrees are at
least ``delta - (n - k)``, and a maximum degree bound prunes directly since
degrees never decrease.
"""

from __future__ import annotations

from typing import Iterator

from .canon import canonical_form
from .formats import decode_graph6, encode_graph6
from .graphs import UndirectedGraph, bits, popcount

MAX_INTERNAL_N = 12


class UnsupportedOrder(ValueError):
    pass


def _independent_extensions(adj: tuple[int, ...], n: int, required: int, forbidden: int, min_size: int) -> Iterator[int]:
    """Independent sets S containing ``required``, avoiding ``forbidden``, |S| >= min_size."""
    if required & forbidden:
        return
    # required vertices must be pairwise non-adjacent
    for v in bits(required):
        if adj[v] & required:
            return
    blocked = forbidden
    for v in bits(required):
        blocked |= adj[v]
    free = [v for v in range(n) if not (required >> v & 1) and not (blocked >> v & 1)]
    base = popcount(required)

    def rec(i: int, chosen: int, size: int, blocked: int):
        if size + (len(free) - i) < min_size:
            return
        if i == len(free):
            yield chosen
            return
        v = free[i]
        yield from rec(i + 1, chosen, size, blocked)
        if not blocked >> v & 1:
            yield from rec(i + 1, chosen | 1 << v, size + 1, blocked | adj[v])

    yield from rec(0, required, base, blocked)


def _children(g: UndirectedGraph, target_n: int, min_deg: int, max_deg: int | None) -> Iterator[UndirectedGraph]:
    n = g.n
    k = n + 1  # order of the child
    slack = target_n - k
    need = min_deg - slack  # every degree in the child must reach this
    required = 0
    forbidden = 0
    for v in range(n):
        d = popcount(g.adj[v])
        if d < need:
            if d + 1 < need:
                return
            required |= 1 << v
        if max_deg is not None and d >= max_deg:
            forbidden |= 1 << v
    lo = max(need, 0)
    for s in _independent_extensions(g.adj, n, required, forbidden, lo):
        if max_deg is not None and popcount(s) > max_deg:
            continue
        adj = list(g.adj)
        for v in bits(s):
            adj[v] |= 1 << n
        adj.append(s)
        yield UndirectedGraph(k, tuple(adj))


def triangle_free_levels(n: int, min_deg: int = 0, max_deg: int | None = None) -> list[list[str]]:
    """Canonical graph6 strings of the graphs kept at each order 1..n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [[encode_graph6(UndirectedGraph.empty(0))]]
    first = UndirectedGraph.empty(1)
    levels = [[encode_graph6(first)]] if min_deg - (n - 1) <= 0 else [[]]
    current = [first] if levels[0] else []
    for _ in range(2, n + 1):
        found: dict[str, UndirectedGraph] = {}
        for g in current:
            for child in _children(g, n, min_deg, max_deg):
                canon = canonical_form(child)
                key = encode_graph6(canon)
                if key not in found:
                    found[key] = canon
        keys = sorted(found)
        levels.append(keys)
        current = [found[k] for k in keys]
    return levels


def enumerate_triangle_free(n: int, min_deg: int = 0, max_deg: int | None = None) -> Iterator[UndirectedGraph]:
    """One canonical representative per isomorphism class of triangle-free graphs
    on n vertices with degrees in [min_deg, max_deg], in graph6 order.

    Internal generation is limited to n <= MAX_INTERNAL_N; ingest larger orders
    from graph6 files instead.
    """
    if n > MAX_INTERNAL_N:
        raise UnsupportedOrder(f"internal enumeration supports n <= {MAX_INTERNAL_N}; read graph6 input instead")
    for key in triangle_free_levels(n, min_deg, max_deg)[-1]:
        g = decode_graph6(key)
        if min(g.degrees(), default=min_deg) >= min_deg:
            yield g
