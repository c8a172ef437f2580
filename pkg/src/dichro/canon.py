"""Canonical labelling of small undirected graphs.

Individualisation-refinement: refine the vertex partition to an equitable one,
individualise each vertex of the first smallest non-singleton cell in turn,
and keep the discrete leaf whose relabelled adjacency is lexicographically
largest.  Leaves with equal relabelled graphs yield automorphisms, which prune
children lying in the same orbit as an already explored child (using the
automorphisms found so far that fix the current prefix pointwise).

Everything depends only on the graph's structure, never on the input labels,
so isomorphic inputs give identical canonical forms.
"""

from __future__ import annotations

from .formats import encode_graph6
from .graphs import UndirectedGraph, bits, popcount


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple(popcount(adj[v] & m) for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new_cells.append(cell)
                continue
            changed = True
            for key in keys:
                new_cells.append([v for v in cell if sig[v] == key])
        cells = new_cells
        if not changed:
            return cells


def _individualise(cells: list[list[int]], index: int, v: int) -> list[list[int]]:
    cell = cells[index]
    rest = [u for u in cell if u != v]
    return cells[:index] + [[v], rest] + cells[index + 1:]


def _certificate(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        r = 0
        for w in bits(adj[v]):
            r |= 1 << pos[w]
        rows.append(r)
    return tuple(rows)


def _orbit_roots(n: int, generators: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_labelling(g: UndirectedGraph, colours: list[int] | None = None) -> tuple[list[int], list[list[int]]]:
    """Return ``(order, automorphisms)``: canonical vertex ``i`` is ``order[i]``.

    ``colours`` (optional) gives an initial vertex colouring that isomorphisms
    must respect.
    """
    n = g.n
    adj = g.adj
    if n == 0:
        return [], []
    if colours is None:
        start = [list(range(n))]
    else:
        start = [[v for v in range(n) if colours[v] == c] for c in sorted(set(colours))]
    root = _refine(adj, start)
    best_cert: tuple[int, ...] | None = None
    best_order: list[int] = []
    seen: dict[tuple[int, ...], list[int]] = {}
    autos: list[list[int]] = []

    def leaf(cells: list[list[int]]):
        nonlocal best_cert, best_order
        order = [c[0] for c in cells]
        cert = _certificate(adj, order)
        prior = seen.get(cert)
        if prior is not None:
            # prior[i] and order[i] play the same role: map order[i] -> prior[i]
            perm = [0] * n
            for a, b in zip(order, prior):
                perm[a] = b
            autos.append(perm)
            return
        seen[cert] = order
        if best_cert is None or cert > best_cert:
            best_cert, best_order = cert, order

    def search(cells: list[list[int]], prefix: list[int]):
        if len(cells) == n:
            leaf(cells)
            return
        index = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        explored: list[int] = []
        for v in sorted(cells[index]):
            if explored:
                stab = [a for a in autos if all(a[p] == p for p in prefix)]
                if stab:
                    roots = _orbit_roots(n, stab)
                    if any(roots[v] == roots[w] for w in explored):
                        continue
            explored.append(v)
            search(_refine(adj, _individualise(cells, index, v)), prefix + [v])

    search(root, [])
    return best_order, autos


def canonical_form(g: UndirectedGraph) -> UndirectedGraph:
    order, _ = canonical_labelling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_graph6(g: UndirectedGraph) -> str:
    return encode_graph6(canonical_form(g))


def automorphisms(g: UndirectedGraph) -> list[list[int]]:
    """Every automorphism of g (as vertex maps), by adjacency-preserving backtracking."""
    n = g.n
    adj = g.adj
    degree = [popcount(r) for r in adj]
    result: list[list[int]] = []
    image = [-1] * n

    def extend(v: int, used: int):
        if v == n:
            result.append(image[:])
            return
        for w in range(n):
            if used >> w & 1 or degree[w] != degree[v]:
                continue
            if all((adj[v] >> u & 1) == (adj[w] >> image[u] & 1) for u in range(v)):
                image[v] = w
                extend(v + 1, used | 1 << w)
        image[v] = -1

    extend(0, 0)
    return result


def are_isomorphic(g: UndirectedGraph, h: UndirectedGraph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
