"""Exact k-dicolourability, dichromatic number, dicriticality and proper
colouring of undirected graphs.

The dicolouring search keeps, for every coloured vertex, the set of vertices it
reaches (and is reached from) inside its own colour class.  Putting an
uncoloured vertex ``u`` into class ``c`` closes a directed cycle exactly when
some out-neighbour of ``u`` in ``c`` reaches an in-neighbour of ``u`` in ``c``,
so each test costs O(deg u) bitmask operations.  After every decision the
search propagates: a vertex with no admissible class fails the branch, a vertex
with exactly one is coloured immediately.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .graphs import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Digraph,
    UndirectedGraph,
    bits,
    has_cycle_in,
    is_acyclic,
    max_clique,
    popcount,
)


@dataclass(frozen=True)
class Dicolouring:
    """Colour (in ``1..k``) of every vertex, indexed by vertex."""

    assignment: tuple[int, ...]
    k: int

    def __post_init__(self):
        if any(not 1 <= c <= self.k for c in self.assignment):
            raise ValueError("colours must lie in 1..k")

    def classes(self) -> list[frozenset[int]]:
        return [frozenset(v for v, c in enumerate(self.assignment) if c == i) for i in range(1, self.k + 1)]


class Verdict(str, Enum):
    DICOLOURABLE = "dicolourable"
    NOT_DICOLOURABLE = "not-dicolourable"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "max_depth": self.max_depth, "seconds": round(self.seconds, 3)}


@dataclass
class SolveOutcome:
    verdict: Verdict
    certificate: Dicolouring | None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def dicolourable(self) -> bool:
        return self.verdict is Verdict.DICOLOURABLE


def _assignment_list(d: Digraph, c) -> list[int]:
    if isinstance(c, Dicolouring):
        values = list(c.assignment)
    elif isinstance(c, Mapping):
        missing = [v for v in range(d.n) if v not in c]
        if missing:
            raise ValueError(f"colouring is partial: vertices {missing[:5]} have no colour")
        values = [c[v] for v in range(d.n)]
    else:
        values = list(c)
    if len(values) != d.n or any(x is None for x in values):
        raise ValueError("colouring is partial or has the wrong length")
    return values


def verify_dicolouring(d: Digraph, c: Dicolouring | Sequence[int] | Mapping[int, int]) -> bool:
    """True iff every colour class of ``c`` induces an acyclic subdigraph of ``d``."""
    values = _assignment_list(d, c)
    classes: dict[int, int] = {}
    for v, colour in enumerate(values):
        classes[colour] = classes.get(colour, 0) | 1 << v
    return not any(has_cycle_in(d.out, mask) for mask in classes.values())


def _static_rank(d: Digraph) -> list[int]:
    """Rank of each vertex in a degeneracy order, highest core first."""
    n = d.n
    adj = [d.out[v] | d.inn[v] for v in range(n)]
    remaining = (1 << n) - 1
    removal = []
    while remaining:
        v = min(bits(remaining), key=lambda u: (popcount(adj[u] & remaining), -u))
        removal.append(v)
        remaining &= ~(1 << v)
    rank = [0] * n
    for r, v in enumerate(reversed(removal)):
        rank[v] = r
    return rank


def _dicolour_search(d: Digraph, k: int, budget: int, stats: SearchStats) -> list[int] | None:
    n = d.n
    out, inn = d.out, d.inn
    rank = _static_rank(d)
    colour = [0] * n
    cls = [0] * (k + 1)
    desc = [0] * n
    anc = [0] * n

    def reach_out(u: int, members: int) -> int:
        r = 0
        for w in bits(out[u] & members):
            r |= desc[w] | 1 << w
        return r

    def admissible(u: int, c: int) -> bool:
        members = cls[c]
        back = inn[u] & members
        if not back:
            return True
        fwd = out[u] & members
        if not fwd:
            return True
        for w in bits(fwd):
            if (desc[w] | 1 << w) & back:
                return False
        return True

    def place(u: int, c: int):
        members = cls[c]
        down = reach_out(u, members)
        up = 0
        for w in bits(inn[u] & members):
            up |= anc[w] | 1 << w
        ub = 1 << u
        for a in bits(up):
            desc[a] |= down | ub
        for x in bits(down):
            anc[x] |= up | ub
        desc[u] = down
        anc[u] = up
        cls[c] = members | ub
        colour[u] = c

    def used_colours() -> int:
        return sum(1 for c in range(1, k + 1) if cls[c])

    def propagate() -> int | None:
        """Colour forced vertices; return a branching vertex, -1 if done, None on conflict."""
        while True:
            used = used_colours()
            forced = False
            best, best_key, best_opts = -1, None, None
            for u in range(n):
                if colour[u]:
                    continue
                opts = [c for c in range(1, used + 1) if admissible(u, c)]
                if used < k:
                    opts.append(used + 1)
                if not opts:
                    return None
                if len(opts) == 1:
                    place(u, opts[0])
                    forced = True
                    used = used_colours()
                    continue
                key = (len(opts), -rank[u])
                if best_key is None or key < best_key:
                    best, best_key, best_opts = u, key, opts
            if not forced:
                return best

    def search(depth: int) -> bool:
        stats.nodes += 1
        if depth > stats.max_depth:
            stats.max_depth = depth
        if stats.nodes > budget:
            raise BudgetExceeded(stats.nodes)
        u = propagate()
        if u is None:
            return False
        if u == -1:
            return True
        used = used_colours()
        opts = [c for c in range(1, used + 1) if admissible(u, c)]
        if used < k:
            opts.append(used + 1)
        saved = (colour[:], cls[:], desc[:], anc[:])
        for c in opts:
            place(u, c)
            if search(depth + 1):
                return True
            colour[:], cls[:], desc[:], anc[:] = saved[0], saved[1], saved[2], saved[3]
        return False

    if n == 0:
        return []
    if search(0):
        return colour
    return None


def is_k_dicolourable(d: Digraph, k: int, budget: int = DEFAULT_BUDGET) -> SolveOutcome:
    """Decide k-dicolourability.  Budget is counted in search-tree nodes."""
    if k < 1:
        raise ValueError("k must be at least 1")
    stats = SearchStats()
    start = time.perf_counter()
    try:
        if k == 1 or d.n <= k:
            result = [1] * d.n if is_acyclic(d) else None
            if result is None and d.n <= k:
                result = list(range(1, d.n + 1))
            stats.nodes = 1
        else:
            result = _dicolour_search(d, k, budget, stats)
    except BudgetExceeded:
        stats.seconds = time.perf_counter() - start
        return SolveOutcome(Verdict.BUDGET_EXCEEDED, None, stats)
    stats.seconds = time.perf_counter() - start
    if result is None:
        return SolveOutcome(Verdict.NOT_DICOLOURABLE, None, stats)
    cert = Dicolouring(tuple(result), k)
    assert verify_dicolouring(d, cert), "solver produced an invalid dicolouring"
    return SolveOutcome(Verdict.DICOLOURABLE, cert, stats)


@dataclass
class DichromaticResult:
    value: int
    certificate: Dicolouring
    refusal: SolveOutcome | None
    """Exhaustive outcome for ``value - 1`` colours (None when value is 1)."""


def dichromatic_number(d: Digraph, budget: int = DEFAULT_BUDGET) -> DichromaticResult:
    if d.n == 0:
        return DichromaticResult(0, Dicolouring((), 1), None)
    previous: SolveOutcome | None = None
    for k in range(1, d.n + 1):
        outcome = is_k_dicolourable(d, k, budget)
        if outcome.verdict is Verdict.BUDGET_EXCEEDED:
            raise BudgetExceeded(outcome.stats.nodes)
        if outcome.dicolourable:
            return DichromaticResult(k, outcome.certificate, previous)
        previous = outcome
    raise AssertionError("every digraph is n-dicolourable")


@dataclass
class DicriticalReport:
    k: int
    colourable_with_k: bool
    refused_with_k_minus_1: bool
    vertex_failures: list[int]
    arc_failures: list[tuple[int, int]]
    vertex_certificates: dict[int, Dicolouring] = field(default_factory=dict, repr=False)
    arc_certificates: dict[tuple[int, int], Dicolouring] = field(default_factory=dict, repr=False)
    k_certificate: Dicolouring | None = field(default=None, repr=False)
    refusal_stats: SearchStats | None = None

    @property
    def dichromatic_ok(self) -> bool:
        return self.colourable_with_k and self.refused_with_k_minus_1

    @property
    def vertex_critical(self) -> bool:
        return self.dichromatic_ok and not self.vertex_failures

    @property
    def arc_critical(self) -> bool:
        return self.dichromatic_ok and not self.arc_failures

    @property
    def is_dicritical(self) -> bool:
        return self.vertex_critical and self.arc_critical


def is_k_dicritical(d: Digraph, k: int, budget: int = DEFAULT_BUDGET) -> DicriticalReport:
    """Check that d is k-dichromatic and every vertex and arc deletion is (k-1)-dicolourable.

    Vertex and arc deletions are reported separately.  Raises BudgetExceeded if
    any single decision runs out of budget.
    """
    if k < 1:
        raise ValueError("k must be at least 1")

    def decide(target: Digraph, colours: int) -> SolveOutcome:
        if colours == 0:
            return SolveOutcome(
                Verdict.DICOLOURABLE if target.n == 0 else Verdict.NOT_DICOLOURABLE,
                Dicolouring((), 1) if target.n == 0 else None,
            )
        outcome = is_k_dicolourable(target, colours, budget)
        if outcome.verdict is Verdict.BUDGET_EXCEEDED:
            raise BudgetExceeded(outcome.stats.nodes)
        return outcome

    with_k = decide(d, k)
    without = decide(d, k - 1)
    report = DicriticalReport(
        k=k,
        colourable_with_k=with_k.dicolourable,
        refused_with_k_minus_1=not without.dicolourable,
        vertex_failures=[],
        arc_failures=[],
        k_certificate=with_k.certificate,
        refusal_stats=without.stats,
    )
    for v in range(d.n):
        outcome = decide(d.remove_vertex(v), k - 1)
        if outcome.dicolourable:
            report.vertex_certificates[v] = outcome.certificate
        else:
            report.vertex_failures.append(v)
    for a in d.arcs():
        outcome = decide(d.remove_arc(*a), k - 1)
        if outcome.dicolourable:
            report.arc_certificates[a] = outcome.certificate
        else:
            report.arc_failures.append(a)
    return report


# -- proper colouring ------------------------------------------------------


def is_proper_colouring(g: UndirectedGraph, colouring: Sequence[int]) -> bool:
    if len(colouring) != g.n:
        return False
    return all(colouring[u] != colouring[v] for u, v in g.edges())


def _k_colour(adj: Sequence[int], n: int, k: int, budget: int, counter: list[int]) -> list[int] | None:
    """DSatur-style backtracking; colours are opened in index order."""
    colour = [0] * n
    forbidden = [0] * n  # bitmask over colours 1..k, bit c set if a neighbour uses c

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colour[v]:
                continue
            sat = popcount(forbidden[v])
            cand = (sat, popcount(adj[v]), -v)
            if key is None or cand > key:
                best, key = v, cand
        return best

    def search(used: int) -> bool:
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded(counter[0])
        v = pick()
        if v < 0:
            return True
        limit = min(used + 1, k)
        for c in range(1, limit + 1):
            if forbidden[v] >> c & 1:
                continue
            colour[v] = c
            touched = []
            for w in bits(adj[v]):
                if not colour[w] and not forbidden[w] >> c & 1:
                    forbidden[w] |= 1 << c
                    touched.append(w)
            if search(max(used, c)):
                return True
            for w in touched:
                forbidden[w] &= ~(1 << c)
            colour[v] = 0
        return False

    return colour if search(0) else None


def chromatic_number(g: UndirectedGraph, budget: int = DEFAULT_BUDGET) -> tuple[int, list[int]]:
    """Exact chromatic number with a proper colouring (colours ``1..chi``)."""
    if g.n == 0:
        return 0, []
    if g.m == 0:
        return 1, [1] * g.n
    bip = _two_colour(g)
    if bip is not None:
        return 2, bip
    counter = [0]
    lower = max(3, len(max_clique(g, budget)))
    for k in range(lower, g.n + 1):
        colouring = _k_colour(g.adj, g.n, k, budget, counter)
        if colouring is not None:
            return k, colouring
    raise AssertionError("every graph is n-colourable")


def _two_colour(g: UndirectedGraph) -> list[int] | None:
    colour = [0] * g.n
    for s in range(g.n):
        if colour[s]:
            continue
        colour[s] = 1
        stack = [s]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if not colour[w]:
                    colour[w] = 3 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
    return colour
