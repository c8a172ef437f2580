"""Vertex orders, backedge graphs and directed linear forests."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .graphs import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Digraph,
    UndirectedGraph,
    bits,
    independence_number,
    is_acyclic,
    popcount,
)
from .constructions import linear_forest_orientation
from .solver import chromatic_number

MAX_ORDER_ENUMERATION = 9


class SizeLimitError(ValueError):
    pass


def _positions(order: Sequence[int], n: int) -> list[int]:
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the vertices")
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def backedge_graph(d: Digraph, order: Sequence[int]) -> UndirectedGraph:
    """Undirected graph of the arcs (v, u) with u placed before v."""
    pos = _positions(order, d.n)
    adj = [0] * d.n
    for v in range(d.n):
        for u in bits(d.out[v]):
            if pos[u] < pos[v]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return UndirectedGraph(d.n, tuple(adj))


def backedge_degrees(d: Digraph, order: Sequence[int]) -> list[int]:
    """Per-vertex number of backward arcs (arcs counted, so a digon contributes one)."""
    pos = _positions(order, d.n)
    deg = [0] * d.n
    for v in range(d.n):
        for u in bits(d.out[v]):
            if pos[u] < pos[v]:
                deg[u] += 1
                deg[v] += 1
    return deg


def dichromatic_via_orders(d: Digraph) -> tuple[int, list[int]]:
    """Minimum over all vertex orders of the chromatic number of the backedge graph.

    Enumerates all n! orders, so n is capped at MAX_ORDER_ENUMERATION.  Stops
    early once the trivial floor is reached (1, or 2 when d has a directed cycle,
    since then every backedge graph has an edge).
    """
    n = d.n
    if n > MAX_ORDER_ENUMERATION:
        raise SizeLimitError(f"order enumeration is limited to n <= {MAX_ORDER_ENUMERATION}")
    if n == 0:
        return 0, []
    floor = 1 if is_acyclic(d) else 2
    arcs = d.arcs()
    cache: dict[int, int] = {}
    best, best_order = n + 1, list(range(n))
    for order in permutations(range(n)):
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        key = 0
        for idx, (v, u) in enumerate(arcs):
            if pos[u] < pos[v]:
                key |= 1 << idx
        value = cache.get(key)
        if value is None:
            edges = [arcs[i] for i in bits(key)]
            value = chromatic_number(UndirectedGraph.from_edges(n, edges))[0]
            cache[key] = value
        if value < best:
            best, best_order = value, list(order)
            if best <= floor:
                break
    return best, best_order


def halve_degree_order(d: Digraph) -> list[int]:
    """Order whose backedge degree at every vertex is at most half its degree (rounded down).

    Local search: while some vertex has too many backward arcs, it has more than
    half of its arcs to later vertices pointing back at it, or more than half of
    its arcs to earlier vertices pointing back from it; moving it to the end
    (resp. the front) strictly lowers the total number of backward arcs.
    Violating vertices are handled lowest index first.
    """
    n = d.n
    order = list(range(n))
    out, inn = d.out, d.inn
    full = (1 << n) - 1
    while True:
        prefix = [0] * (n + 1)
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
            prefix[i + 1] = prefix[i] | 1 << v
        moved = False
        for v in range(n):
            before = prefix[pos[v]]
            after = full & ~prefix[pos[v] + 1]
            # backward arcs at v: into v from later vertices, out of v to earlier ones
            back_after = popcount(inn[v] & after)
            back_before = popcount(out[v] & before)
            arcs_after = back_after + popcount(out[v] & after)
            arcs_before = back_before + popcount(inn[v] & before)
            degree = arcs_after + arcs_before
            if back_after + back_before <= degree // 2:
                continue
            order.remove(v)
            if 2 * back_after > arcs_after:
                order.append(v)
            else:
                order.insert(0, v)
            moved = True
            break
        if not moved:
            return order


# -- directed linear forests ---------------------------------------------------


@dataclass(frozen=True)
class LinearForest:
    arcs: tuple[tuple[int, int], ...]

    def is_valid_in(self, d: Digraph) -> bool:
        outdeg: dict[int, int] = {}
        indeg: dict[int, int] = {}
        for u, v in self.arcs:
            if not d.has_arc(u, v):
                return False
            outdeg[u] = outdeg.get(u, 0) + 1
            indeg[v] = indeg.get(v, 0) + 1
        if any(c > 1 for c in outdeg.values()) or any(c > 1 for c in indeg.values()):
            return False
        sub = Digraph.from_arcs(d.n, self.arcs)
        return is_acyclic(sub)

    def paths(self, n: int) -> list[list[int]]:
        succ = dict(self.arcs)
        has_pred = {v for _, v in self.arcs}
        result = []
        for s in range(n):
            if s in has_pred:
                continue
            path = [s]
            while path[-1] in succ:
                path.append(succ[path[-1]])
            result.append(path)
        return result


def max_directed_linear_forest(
    d: Digraph, budget: int = DEFAULT_BUDGET, target: int | None = None
) -> tuple[int, LinearForest]:
    """Maximum number of arcs in a directed linear forest of d, with a witness.

    Branch and bound choosing each vertex's successor in turn.  A spanning linear
    forest with p paths has n - p arcs, so the bound counts remaining vertices
    that could still receive a successor.  With ``target`` set, the search stops
    as soon as a forest with that many arcs is found.
    """
    n = d.n
    out = d.out
    succ = [-1] * n
    other_end = list(range(n))  # path endpoint partner, valid at path ends
    has_pred = 0
    best = 0
    best_arcs: list[tuple[int, int]] = []
    nodes = 0

    # greedy start: walk vertices, attach to any free target
    def greedy() -> list[tuple[int, int]]:
        ends = list(range(n))
        pred = 0
        chosen = []
        for u in range(n):
            for w in bits(out[u] & ~pred):
                if ends[u] != w:
                    chosen.append((u, w))
                    pred |= 1 << w
                    a, b = ends[u], ends[w]
                    ends[a], ends[b] = b, a
                    break
        return chosen

    best_arcs = greedy()
    best = len(best_arcs)
    if target is not None and best >= target:
        return best, LinearForest(tuple(best_arcs))

    class Found(Exception):
        pass

    def search(u: int, count: int):
        nonlocal best, best_arcs, has_pred, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        if u == n:
            if count > best:
                best = count
                best_arcs = [(v, succ[v]) for v in range(n) if succ[v] >= 0]
                if target is not None and best >= target:
                    raise Found
            return
        free_targets = popcount(((1 << n) - 1) & ~has_pred)
        remaining = 0
        for v in range(u, n):
            if out[v] & ~has_pred:
                remaining += 1
        if count + min(remaining, free_targets) <= best:
            return
        for w in bits(out[u] & ~has_pred):
            if other_end[u] == w:
                continue  # closing a cycle
            a, b = other_end[u], other_end[w]
            succ[u] = w
            has_pred |= 1 << w
            other_end[a], other_end[b] = b, a
            search(u + 1, count + 1)
            other_end[a], other_end[b] = u, w
            has_pred &= ~(1 << w)
            succ[u] = -1
        search(u + 1, count)

    try:
        search(0, 0)
    except Found:
        pass
    return best, LinearForest(tuple(sorted(best_arcs)))


def min_orientation_linear_forest(g: UndirectedGraph, budget: int = DEFAULT_BUDGET) -> tuple[int, Digraph]:
    """n - alpha(g) together with an orientation attaining it: a maximum
    independent set is made of sources, the remaining edges go low to high."""
    alpha, independent = independence_number(g, budget)
    return g.n - alpha, linear_forest_orientation(g, independent)
