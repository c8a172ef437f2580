"""Graph and digraph representations plus the structural predicates shared by
every other module.

Adjacency is stored as one Python ``int`` bit row per vertex, so vertex sets are
plain integer bitmasks internally.  Public functions accept any iterable of
vertex indices for a vertex set and return ``frozenset`` witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """Raised when a search hits its node budget before deciding."""

    def __init__(self, nodes: int, message: str = "node budget exceeded"):
        super().__init__(f"{message} after {nodes} nodes")
        self.nodes = nodes


# -- bitmask helpers -------------------------------------------------------


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def transpose_rows(rows: tuple[int, ...] | list[int], n: int) -> list[int]:
    """Column bitmasks of an n x n bit matrix given by its rows."""
    if n == 0:
        return []
    # row strings are written most significant bit first, so column v sits at index n-1-v
    strs = [format(r, f"0{n}b") for r in reversed(rows)]
    return [int("".join(col), 2) for col in reversed(list(zip(*strs)))]


# -- types -----------------------------------------------------------------


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple graph on vertices ``0..n-1``; ``adj[v]`` is the neighbour bitmask of v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
        cols = transpose_rows(self.adj, self.n)
        for v, (row, col) in enumerate(zip(self.adj, cols)):
            if row != col:
                u = ((row ^ col) & -(row ^ col)).bit_length() - 1
                raise ValueError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> UndirectedGraph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> UndirectedGraph:
        return cls(n, (0,) * n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def induced(self, vertices: Iterable[int]) -> UndirectedGraph:
        """Subgraph induced by ``vertices``, relabelled in increasing order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return UndirectedGraph.from_edges(len(keep), edges)

    def relabel(self, perm: list[int]) -> UndirectedGraph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return UndirectedGraph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def remove_edge(self, u: int, v: int) -> UndirectedGraph:
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return UndirectedGraph(self.n, tuple(adj))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class Digraph:
    """Loopless digraph on ``0..n-1``; ``out[v]`` is the out-neighbour bitmask of v.

    ``oriented`` is true when no pair of vertices carries arcs in both
    directions.  Building with ``require_oriented=True`` rejects digons.
    """

    n: int
    out: tuple[int, ...]
    inn: tuple[int, ...] = field(init=False, repr=False, compare=False)
    require_oriented: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.out) != self.n:
            raise ValueError("out-adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.out):
            if row & ~full:
                raise ValueError(f"vertex {v} has an out-neighbour out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
        object.__setattr__(self, "inn", tuple(transpose_rows(self.out, self.n)))
        if self.require_oriented and not self.oriented:
            raise ValueError("digraph has a digon but an oriented graph was required")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], require_oriented: bool = False) -> Digraph:
        out = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            out[u] |= 1 << v
        return cls(n, tuple(out), require_oriented=require_oriented)

    @property
    def oriented(self) -> bool:
        return all(not (self.out[v] & self.inn[v]) for v in range(self.n))

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    @property
    def m(self) -> int:
        return sum(popcount(r) for r in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def remove_vertex(self, v: int) -> Digraph:
        """Delete ``v`` and close the gap (vertices above v shift down by one)."""
        keep = [u for u in range(self.n) if u != v]
        return self.induced(keep)

    def remove_arc(self, u: int, v: int) -> Digraph:
        out = list(self.out)
        out[u] &= ~(1 << v)
        return Digraph(self.n, tuple(out))

    def add_vertices(self, count: int) -> Digraph:
        return Digraph(self.n + count, self.out + (0,) * count)

    def induced(self, vertices: Iterable[int]) -> Digraph:
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        arcs = [(index[u], index[v]) for u, v in self.arcs() if u in index and v in index]
        return Digraph.from_arcs(len(keep), arcs)

    def relabel(self, perm: list[int]) -> Digraph:
        return Digraph.from_arcs(self.n, [(perm[u], perm[v]) for u, v in self.arcs()])

    def reverse(self) -> Digraph:
        return Digraph(self.n, self.inn)


# -- operations ------------------------------------------------------------


def underlying_graph(d: Digraph) -> UndirectedGraph:
    return UndirectedGraph(d.n, tuple(o | i for o, i in zip(d.out, d.inn)))


def orient(g: UndirectedGraph, mask: int, edges: list[tuple[int, int]] | None = None) -> Digraph:
    """Orientation of ``g``: edge number i (in ``g.edges()`` order) is reversed iff bit i of mask is set."""
    if edges is None:
        edges = g.edges()
    out = [0] * g.n
    for i, (u, v) in enumerate(edges):
        if mask >> i & 1:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v
    return Digraph(g.n, tuple(out))


def is_triangle_free(g: UndirectedGraph) -> bool:
    adj = g.adj
    for u in range(g.n):
        higher = adj[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            if adj[u] & adj[v]:
                return False
    return True


def has_cycle_in(out: tuple[int, ...] | list[int], mask: int) -> bool:
    """True iff the digraph given by ``out`` restricted to ``mask`` has a directed cycle.

    Repeatedly strips vertices with no out-neighbour inside the remaining set.
    """
    remaining = mask
    while remaining:
        sinks = 0
        for v in bits(remaining):
            if not out[v] & remaining:
                sinks |= 1 << v
        if not sinks:
            return True
        remaining &= ~sinks
    return False


def is_acyclic_induced(d: Digraph, s: Iterable[int] | int) -> bool:
    mask = to_mask(s)
    if mask >> d.n:
        raise ValueError("vertex set out of range")
    return not has_cycle_in(d.out, mask)


def is_acyclic(d: Digraph) -> bool:
    return not has_cycle_in(d.out, (1 << d.n) - 1)


def topological_order(d: Digraph, s: Iterable[int] | int | None = None) -> list[int]:
    mask = (1 << d.n) - 1 if s is None else to_mask(s)
    order: list[int] = []
    remaining = mask
    while remaining:
        sources = [v for v in bits(remaining) if not d.inn[v] & remaining]
        if not sources:
            raise ValueError("vertex set induces a directed cycle")
        for v in sources:
            remaining &= ~(1 << v)
        order.extend(sources)
    return order


def _shortest_cycle(out, inn, mask: int) -> list[int] | None:
    """A shortest directed cycle inside ``mask`` (as a vertex list), or None."""
    best: list[int] | None = None
    for s in bits(mask):
        # BFS layers from s, stopping once a layer reaches an in-neighbour of s.
        target = inn[s] & mask
        if not target:
            continue
        parent = {s: -1}
        seen = 1 << s
        frontier = [s]
        found = -1
        depth = 0
        while frontier and found < 0:
            depth += 1
            if best is not None and depth >= len(best):
                break
            nxt = []
            for u in frontier:
                for w in bits(out[u] & mask & ~seen):
                    seen |= 1 << w
                    parent[w] = u
                    nxt.append(w)
                    if target >> w & 1:
                        found = w
                        break
                if found >= 0:
                    break
            frontier = nxt
        if found >= 0:
            cycle = [found]
            while parent[cycle[-1]] != -1:
                cycle.append(parent[cycle[-1]])
            cycle.reverse()
            if best is None or len(cycle) < len(best):
                best = cycle
                if len(best) == 2:
                    return best
    return best


def _strip_trivial(out, inn, mask: int) -> int:
    """Drop vertices with no in- or no out-neighbour in ``mask`` until stable."""
    while True:
        drop = 0
        for v in bits(mask):
            if not out[v] & mask or not inn[v] & mask:
                drop |= 1 << v
        if not drop:
            return mask
        mask &= ~drop


def _greedy_fvs(out, inn, mask: int) -> int:
    fvs = 0
    mask = _strip_trivial(out, inn, mask)
    while mask:
        v = max(bits(mask), key=lambda u: (popcount(out[u] & mask) * popcount(inn[u] & mask), -u))
        fvs |= 1 << v
        mask = _strip_trivial(out, inn, mask & ~(1 << v))
    return fvs


def _cycle_packing_bound(out, inn, mask: int) -> int:
    """Number of vertex-disjoint cycles found greedily (shortest first)."""
    count = 0
    while True:
        mask = _strip_trivial(out, inn, mask)
        if not mask:
            return count
        cycle = _shortest_cycle(out, inn, mask)
        if cycle is None:
            return count
        count += 1
        for v in cycle:
            mask &= ~(1 << v)


def min_feedback_vertex_set(d: Digraph, budget: int = DEFAULT_BUDGET) -> frozenset[int]:
    """Exact minimum feedback vertex set by cycle branching.

    Each node picks a shortest cycle among undecided vertices and branches on
    which of its vertices is deleted; earlier choices become protected in later
    branches so that no deletion set is explored twice.
    """
    out, inn = d.out, d.inn
    best = _greedy_fvs(out, inn, (1 << d.n) - 1)
    best_size = popcount(best)
    nodes = 0

    def search(mask: int, protected: int, deleted: int, size: int):
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        mask = _strip_trivial(out, inn, mask)
        if not mask:
            if size < best_size:
                best, best_size = deleted, size
            return
        if size + _cycle_packing_bound(out, inn, mask) >= best_size:
            return
        cycle = _shortest_cycle(out, inn, mask)
        if cycle is None:
            if size < best_size:
                best, best_size = deleted, size
            return
        if all(protected >> v & 1 for v in cycle):
            return
        guard = protected
        for v in cycle:
            if guard >> v & 1:
                continue
            search(mask & ~(1 << v), guard, deleted | 1 << v, size + 1)
            guard |= 1 << v
            if size + 1 >= best_size:
                break

    search((1 << d.n) - 1, 0, 0, 0)
    return frozenset(bits(best))


def acyclic_number(d: Digraph, budget: int = DEFAULT_BUDGET) -> tuple[int, frozenset[int]]:
    """Maximum size of an acyclic vertex set, with a witness set.

    Computed as the complement of a minimum feedback vertex set.  Practical up
    to roughly 45 vertices for sparse inputs; tournaments get expensive sooner.
    """
    fvs = min_feedback_vertex_set(d, budget)
    witness = frozenset(v for v in range(d.n) if v not in fvs)
    return len(witness), witness


def _max_clique(adj: list[int], candidates: int, budget: int) -> int:
    """Maximum clique inside ``candidates`` by greedy-colouring branch and bound."""
    best = 0
    best_size = 0
    nodes = 0

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        order: list[tuple[int, int]] = []
        colour = 0
        uncoloured = cand
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~adj[v] & ~low
                uncoloured &= ~low
                order.append((v, colour))
        return order

    def expand(clique: int, size: int, cand: int):
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        if not cand:
            if size > best_size:
                best, best_size = clique, size
            return
        order = colour_bound(cand)
        for v, c in reversed(order):
            if size + c <= best_size:
                return
            expand(clique | 1 << v, size + 1, cand & adj[v])
            cand &= ~(1 << v)
        if size > best_size:
            best, best_size = clique, size

    expand(0, 0, candidates)
    return best


def independence_number(g: UndirectedGraph, budget: int = DEFAULT_BUDGET) -> tuple[int, frozenset[int]]:
    full = (1 << g.n) - 1
    comp = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    witness = _max_clique(comp, full, budget)
    return popcount(witness), frozenset(bits(witness))


def max_clique(g: UndirectedGraph, budget: int = DEFAULT_BUDGET) -> frozenset[int]:
    return frozenset(bits(_max_clique(list(g.adj), (1 << g.n) - 1, budget)))


# -- arboricity -------------------------------------------------------------


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x


def arboricity_at_most(g: UndirectedGraph, k: int) -> tuple[bool, list[list[tuple[int, int]]] | None]:
    """Decide whether the edges of ``g`` split into at most ``k`` forests.

    Exact backtracking over edge-to-forest assignments with union-find per
    forest (no path compression, so assignments undo in O(1)).  Returns the
    forests when the answer is yes.  The whole-graph density only serves to
    refute early: a forest on n vertices has at most n-1 edges.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    edges = g.edges()
    if not edges:
        return True, [[] for _ in range(k)]
    if k == 0:
        return False, None
    n = g.n
    # vertices that carry edges; isolated vertices never help a forest
    active = popcount(to_mask(v for e in edges for v in e))
    if len(edges) > k * (active - 1):
        return False, None

    # order edges so that each new edge touches the explored part (BFS by vertex)
    order = sorted(edges, key=lambda e: (max(e), min(e)))
    parents = [list(range(n)) for _ in range(k)]
    ranks = [[0] * n for _ in range(k)]
    assign: list[int] = [-1] * len(order)
    forest_edges = [0] * k

    def search(i: int) -> bool:
        if i == len(order):
            return True
        if len(order) - i > sum(active - 1 - forest_edges[f] for f in range(k)):
            return False
        u, v = order[i]
        # symmetry: forests that are still empty are interchangeable
        tried_empty = False
        for f in range(k):
            if forest_edges[f] == 0:
                if tried_empty:
                    continue
                tried_empty = True
            par, rk = parents[f], ranks[f]
            ru, rv = _find(par, u), _find(par, v)
            if ru == rv:
                continue
            if rk[ru] < rk[rv]:
                ru, rv = rv, ru
            par[rv] = ru
            bumped = rk[ru] == rk[rv]
            if bumped:
                rk[ru] += 1
            forest_edges[f] += 1
            assign[i] = f
            if search(i + 1):
                return True
            forest_edges[f] -= 1
            if bumped:
                rk[ru] -= 1
            par[rv] = rv
        return False

    if not search(0):
        return False, None
    forests: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for e, f in zip(order, assign):
        forests[f].append(e)
    return True, forests


def is_forest(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))
    for u, v in edges:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_connected(g: UndirectedGraph, mask: int | None = None) -> bool:
    if mask is None:
        mask = (1 << g.n) - 1
    if not mask:
        return True
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def is_biconnected(g: UndirectedGraph) -> bool:
    """2-connectivity: connected, at least 3 vertices, no cut vertex."""
    if g.n < 3:
        return False
    full = (1 << g.n) - 1
    if not is_connected(g, full):
        return False
    return all(is_connected(g, full & ~(1 << v)) for v in range(g.n))


def degree_profile(x: UndirectedGraph | Digraph) -> list[tuple[int, int, int]]:
    """Per-vertex ``(total, in, out)``; for undirected graphs in and out equal the degree."""
    if isinstance(x, Digraph):
        return [
            (popcount(x.inn[v]) + popcount(x.out[v]), popcount(x.inn[v]), popcount(x.out[v]))
            for v in range(x.n)
        ]
    return [(d, d, d) for d in x.degrees()]


def subsets(n: int, size: int) -> Iterator[int]:
    for combo in combinations(range(n), size):
        yield to_mask(combo)
