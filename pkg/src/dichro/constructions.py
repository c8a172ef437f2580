"""Deterministic and seeded random generators.

Backward-blowup numbering: copy ``i`` (1-based) of base vertex ``v`` in an
m-blowup is vertex ``v * m + (i - 1)``.  Certificates refer to this numbering,
so it must not change.

Random generators use numpy's ``Generator`` with the PCG64 bit generator,
seeded through ``numpy.random.SeedSequence``.  Per-trial streams are derived
with ``SeedSequence.spawn`` so experiments can be split across workers.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .graphs import (
    DEFAULT_BUDGET,
    Digraph,
    UndirectedGraph,
    bits,
    independence_number,
    is_acyclic,
    is_triangle_free,
    orient,
    topological_order,
    underlying_graph,
)
from .solver import chromatic_number


def blowup_index(v: int, i: int, m: int) -> int:
    """Flattened index of copy ``i`` (1-based) of base vertex ``v``."""
    if not 1 <= i <= m:
        raise ValueError("copy index must lie in 1..m")
    return v * m + (i - 1)


def blowup_pack(v: int, m: int) -> list[int]:
    return [v * m + i for i in range(m)]


def backward_blowup(d: Digraph, m: int) -> Digraph:
    """m-backward-blowup: forward arcs (u,i)->(v,i) and backward arcs (v,i)->(u,j), i != j,
    for every arc u->v of d."""
    if m < 1:
        raise ValueError("blowup factor must be at least 1")
    if not d.oriented:
        raise ValueError("backward blowup expects an oriented graph")
    arcs = []
    for u, v in d.arcs():
        for i in range(m):
            arcs.append((u * m + i, v * m + i))
            for j in range(m):
                if i != j:
                    arcs.append((v * m + i, u * m + j))
    return Digraph.from_arcs(d.n * m, arcs)


def forward_arcs(d: Digraph, m: int) -> list[tuple[int, int]]:
    return [(u * m + i, v * m + i) for u, v in d.arcs() for i in range(m)]


def directed_cycle(length: int) -> Digraph:
    if length < 3:
        raise ValueError("a directed cycle needs at least 3 vertices")
    return Digraph.from_arcs(length, [(i, (i + 1) % length) for i in range(length)])


def directed_path(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, i + 1) for i in range(n - 1)])


def transitive_tournament(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def longest_path_arcs(d: Digraph) -> int:
    """Number of arcs on a longest directed path of an acyclic digraph."""
    order = topological_order(d)
    length = [0] * d.n
    for v in order:
        for w in bits(d.out[v]):
            length[w] = max(length[w], length[v] + 1)
    return max(length, default=0)


def _cycle_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def acyclic_c5_no_p4() -> tuple[Digraph, Digraph]:
    """The acyclic orientations of C5 with no directed path on 4 arcs, one per
    isomorphism class, found by enumerating all 32 orientations.

    Returned longest-path-first: arc-direction runs (3, 2) then (2, 1, 1, 1).
    """
    c5 = _cycle_graph(5)
    edges = c5.edges()
    seen: set[tuple] = set()
    found: list[Digraph] = []
    rotations = [[(v + r) % 5 for v in range(5)] for r in range(5)]
    symmetries = rotations + [[(r - v) % 5 for v in range(5)] for r in range(5)]
    for mask in range(1 << len(edges)):
        d = orient(c5, mask, edges)
        if not is_acyclic(d) or longest_path_arcs(d) >= 4:
            continue
        key = min(tuple(sorted((p[u], p[v]) for u, v in d.arcs())) for p in symmetries)
        if key in seen:
            continue
        seen.add(key)
        found.append(d)
    if len(found) != 2:
        raise AssertionError(f"expected two orientation classes, found {len(found)}")
    found.sort(key=longest_path_arcs, reverse=True)
    return found[0], found[1]


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q**0.5) + 1))


def paley_tournament(q: int) -> Digraph:
    """Tournament on Z_q with arc i->j iff i-j is a nonzero square mod q."""
    if not _is_prime(q) or q % 4 != 3:
        raise ValueError("Paley tournament needs a prime q with q = 3 (mod 4)")
    squares = {(x * x) % q for x in range(1, q)}
    return Digraph.from_arcs(q, [(i, j) for i in range(q) for j in range(q) if i != j and (i - j) % q in squares])


def mycielskian(g: UndirectedGraph) -> UndirectedGraph:
    """Vertices 0..n-1 originals, n..2n-1 shadows, 2n the apex."""
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + v, 2 * n) for v in range(n))
    return UndirectedGraph.from_edges(2 * n + 1, edges)


def cycle_graph(n: int) -> UndirectedGraph:
    return _cycle_graph(n)


def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def grotzsch() -> UndirectedGraph:
    return mycielskian(_cycle_graph(5))


def d25() -> Digraph:
    return backward_blowup(directed_cycle(5), 5)


def linear_forest_orientation(g: UndirectedGraph, independent: frozenset[int]) -> Digraph:
    """Orient g so every vertex of ``independent`` is a source; other edges go low to high."""
    arcs = []
    for u, v in g.edges():
        if v in independent:
            arcs.append((v, u))
        else:
            arcs.append((u, v))
    return Digraph.from_arcs(g.n, arcs)


def non_dicolourable_blowup(g: UndirectedGraph, k: int, budget: int | None = None) -> Digraph:
    """Backward-blowup of the source-independent-set orientation of g with
    factor k(n - alpha(g)) + 1; not k-dicolourable whenever chi(g) > k."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    budget = DEFAULT_BUDGET if budget is None else budget
    chi, _ = chromatic_number(g, budget)
    if chi <= k:
        raise ValueError(f"chromatic number {chi} does not exceed k={k}")
    alpha, independent = independence_number(g, budget)
    base = linear_forest_orientation(g, independent)
    return backward_blowup(base, k * (g.n - alpha) + 1)


# -- random models -----------------------------------------------------------


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def spawn_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)


def random_gnp(n: int, p: float, seed) -> UndirectedGraph:
    """G(n, p): pairs (i, j), i < j, in lexicographic order each kept when a uniform draw is below p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = make_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    draws = rng.random(len(pairs))
    return UndirectedGraph.from_edges(n, [e for e, x in zip(pairs, draws) if x < p])


def random_orientation(g: UndirectedGraph, seed) -> Digraph:
    """Each edge (in ``g.edges()`` order) reversed with probability 1/2."""
    rng = make_rng(seed)
    edges = g.edges()
    flips = rng.integers(0, 2, size=len(edges))
    mask = 0
    for i, f in enumerate(flips):
        if f:
            mask |= 1 << i
    return orient(g, mask, edges)


def random_tournament(n: int, seed) -> Digraph:
    return random_orientation(complete_graph(n), seed)


def random_oriented_graph(n: int, seed) -> Digraph:
    """Each pair independently absent, i->j or j->i with probability 1/3."""
    rng = make_rng(seed)
    arcs = []
    draws = rng.integers(0, 3, size=n * (n - 1) // 2)
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[idx] == 1:
                arcs.append((i, j))
            elif draws[idx] == 2:
                arcs.append((j, i))
            idx += 1
    return Digraph.from_arcs(n, arcs)


def random_triangle_free_gnp(n: int, p: float, seed, max_tries: int = 10_000) -> UndirectedGraph:
    """G(n, p) conditioned on being triangle-free, by rejection."""
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    for _ in range(max_tries):
        g = random_gnp(n, p, root.spawn(1)[0])
        if is_triangle_free(g):
            return g
    raise RuntimeError("no triangle-free sample within max_tries")


def all_orientations(g: UndirectedGraph):
    edges = g.edges()
    for mask in range(1 << len(edges)):
        yield orient(g, mask, edges)


def all_oriented_graphs(n: int):
    """Every labelled oriented graph on n vertices (3^(n choose 2) of them)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in product(range(3), repeat=len(pairs)):
        arcs = [(i, j) if c == 1 else (j, i) for (i, j), c in zip(pairs, choice) if c]
        yield Digraph.from_arcs(n, arcs)


def underlying(d: Digraph) -> UndirectedGraph:
    return underlying_graph(d)
