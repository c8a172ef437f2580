"""Sparse acyclic sets, random orientations and the probabilistic constants.

Exhaustive checks over all 2^n vertex subsets are vectorised with numpy: the
edge count of every subset comes from a highest-bit recurrence, acyclicity
from a sink-removal recurrence processed level by level (by subset size).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constructions import make_rng, random_orientation, random_triangle_free_gnp
from .graphs import (
    DEFAULT_BUDGET,
    Digraph,
    UndirectedGraph,
    acyclic_number,
    has_cycle_in,
    orient,
    popcount,
    to_mask,
    underlying_graph,
)
from .solver import chromatic_number, dichromatic_number

EXHAUSTIVE_LIMIT = 18


def sparsity_bound(n: int) -> float:
    """d = 2 log2(n) + 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2 * math.log2(n) + 1


@dataclass(frozen=True)
class SparsityParams:
    n: int
    c0: float = 0.513
    c1: float = 3.43
    c2: float = 3.1
    eps: float = 1e-4

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if min(self.c0, self.c1, self.c2, self.eps) <= 0:
            raise ValueError("constants must be positive")
        if not 0 < self.p < 1:
            raise ValueError("edge probability c0/sqrt(n) must lie in (0, 1)")

    @property
    def d(self) -> float:
        return sparsity_bound(self.n)

    @property
    def p(self) -> float:
        return self.c0 / math.sqrt(self.n)

    @property
    def k(self) -> float:
        return self.c1 * self.d / self.p + 1


def is_d_sparse(g: UndirectedGraph, x, d: float) -> bool:
    """True iff G[X] has average degree at most d."""
    mask = to_mask(x)
    size = popcount(mask)
    if size == 0:
        raise ValueError("X must be nonempty")
    twice_edges = sum(popcount(g.adj[v] & mask) for v in range(g.n) if mask >> v & 1)
    return twice_edges <= d * size


# -- exhaustive subset tables -------------------------------------------------------


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int8)
    for v in range(n):
        lo, hi = 1 << v, 1 << (v + 1)
        pc[lo:hi] = pc[: hi - lo] + 1
    return pc


def _bitcount(a: np.ndarray) -> np.ndarray:
    a = a - ((a >> 1) & 0x55555555)
    a = (a & 0x33333333) + ((a >> 2) & 0x33333333)
    a = (a + (a >> 4)) & 0x0F0F0F0F
    return (a * 0x01010101 & 0xFFFFFFFF) >> 24


def subset_edge_counts(g: UndirectedGraph) -> np.ndarray:
    """e(G[S]) for every subset S, indexed by bitmask."""
    n = g.n
    e = np.zeros(1 << n, dtype=np.int32)
    idx = np.arange(1 << n, dtype=np.int64)
    for v in range(n):
        lo, hi = 1 << v, 1 << (v + 1)
        s = idx[lo:hi]
        e[lo:hi] = e[: hi - lo] + _bitcount(s & g.adj[v])
    return e


def subset_acyclic(d: Digraph) -> np.ndarray:
    """Boolean table: S induces an acyclic subdigraph of d."""
    n = d.n
    size = 1 << n
    acyclic = np.zeros(size, dtype=bool)
    acyclic[0] = True
    pc = _popcounts(n)
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(n + 2))
    for level in range(1, n + 1):
        s = order[bounds[level]:bounds[level + 1]]
        ok = np.zeros(len(s), dtype=bool)
        for v in range(n):
            bit = 1 << v
            has = (s & bit) != 0
            sink = (s & d.out[v]) == 0
            cand = has & sink
            if cand.any():
                ok[cand] |= acyclic[s[cand] ^ bit]
        acyclic[s] = ok
    return acyclic


@dataclass
class DsparseReport:
    success: bool
    orientation: Digraph | None
    trials: int
    d: float
    verification: str  # exhaustive | sampled
    max_acyclic_density: float
    violating_set: frozenset[int] | None = None
    samples: int | None = None

    def as_dict(self) -> dict:
        return {
            "success": self.success,
            "arcs": self.orientation.arcs() if self.orientation else None,
            "trials": self.trials,
            "d": self.d,
            "verification": self.verification,
            "max_acyclic_density": self.max_acyclic_density,
            "violating_set": sorted(self.violating_set) if self.violating_set else None,
            "samples": self.samples,
        }


def densest_acyclic_set(d: Digraph) -> tuple[float, frozenset[int]]:
    """Largest average degree (in the underlying graph) of an acyclic set, exhaustively."""
    if d.n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive subset scan limited to n <= {EXHAUSTIVE_LIMIT}")
    if d.n == 0:
        return 0.0, frozenset()
    g = underlying_graph(d)
    acyclic = subset_acyclic(d)
    edges = subset_edge_counts(g)
    sizes = _popcounts(d.n).astype(np.float64)
    sizes[0] = 1.0
    density = np.where(acyclic, 2.0 * edges / sizes, -1.0)
    density[0] = -1.0
    best = int(np.argmax(density))
    return float(density[best]), frozenset(v for v in range(d.n) if best >> v & 1)


def _sampled_density(d: Digraph, rng: np.random.Generator, samples: int) -> tuple[float, frozenset[int]]:
    """Densest acyclic set among maximal acyclic sets grown along random vertex orders."""
    g = underlying_graph(d)
    best, best_set = 0.0, frozenset()
    for _ in range(samples):
        mask = 0
        for v in rng.permutation(d.n):
            if not has_cycle_in(d.out, mask | 1 << int(v)):
                mask |= 1 << int(v)
        size = popcount(mask)
        dens = sum(popcount(g.adj[v] & mask) for v in range(d.n) if mask >> v & 1) / size
        if dens > best:
            best, best_set = dens, frozenset(v for v in range(d.n) if mask >> v & 1)
    return best, best_set


def find_dsparse_orientation(g: UndirectedGraph, trials: int = 100, seed: int = 0, samples: int = 2000) -> DsparseReport:
    """Uniform random orientations of g until every acyclic set is d-sparse.

    With n <= 18 each candidate is verified over all subsets; above that only
    maximal acyclic sets grown from random orders are checked, and the report
    says so.
    """
    n = g.n
    d = sparsity_bound(max(n, 1))
    seeds = np.random.SeedSequence(seed).spawn(trials)
    worst_density, worst_set = 0.0, None
    exhaustive = n <= EXHAUSTIVE_LIMIT
    for t, ss in enumerate(seeds, 1):
        cand = random_orientation(g, ss)
        if exhaustive:
            dens, witness = densest_acyclic_set(cand)
        else:
            dens, witness = _sampled_density(cand, make_rng(ss.spawn(1)[0]), samples)
        if dens <= d:
            return DsparseReport(
                True, cand, t, d, "exhaustive" if exhaustive else "sampled", max(dens, 0.0),
                samples=None if exhaustive else samples,
            )
        if worst_set is None or dens > worst_density:
            worst_density, worst_set = dens, witness
    return DsparseReport(
        False, None, trials, d, "exhaustive" if exhaustive else "sampled", worst_density, worst_set,
        samples=None if exhaustive else samples,
    )


# -- analytic bounds ----------------------------------------------------------------


def rate_function(x: float, p: float) -> float:
    """Lambda*(x) = x ln(x/p) + (1-x) ln((1-x)/(1-p))."""
    if not 0 < x < 1 or not 0 < p < 1:
        raise ValueError("x and p must lie in (0, 1)")
    return x * math.log(x / p) + (1 - x) * math.log((1 - x) / (1 - p))


def binomial_tail_bound(n: int, p: float, k: int) -> float:
    """exp(-n Lambda*(k/n)), an upper bound on P[Bin(n, p) <= k].

    The bound is only meaningful for k <= np; above the mean the lower tail is
    close to 1 while this expression keeps decreasing.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    return math.exp(-n * rate_function(k / n, p))


def binomial_cdf(n: int, p: float, k: int) -> float:
    """Exact P[Bin(n, p) <= k] by summation."""
    return math.fsum(math.comb(n, i) * p**i * (1 - p) ** (n - i) for i in range(k + 1))


def chernoff_bound(mean: float, delta: float) -> float:
    """(e^-delta / (1-delta)^(1-delta))^mean, bounding P[X < (1-delta) E[X]]."""
    if mean <= 0:
        raise ValueError("mean must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    return math.exp(mean * (-delta - (1 - delta) * math.log(1 - delta)))


@dataclass
class LLLReport:
    c0: float
    c1: float
    c2: float
    eps: float
    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float

    @property
    def margin1(self) -> float:
        return self.lhs1 - self.rhs1

    @property
    def margin2(self) -> float:
        return self.lhs2 - self.rhs2

    @property
    def first_holds(self) -> bool:
        return self.margin1 > 0

    @property
    def second_holds(self) -> bool:
        return self.margin2 > 0

    @property
    def holds(self) -> bool:
        return self.first_holds and self.second_holds

    def as_dict(self) -> dict:
        return {
            "c0": self.c0,
            "c1": self.c1,
            "c2": self.c2,
            "eps": self.eps,
            "inequality1": {"lhs": self.lhs1, "rhs": self.rhs1, "margin": self.margin1, "holds": self.first_holds},
            "inequality2": {"lhs": self.lhs2, "rhs": self.rhs2, "margin": self.margin2, "holds": self.second_holds},
            "holds": self.holds,
        }


def verify_lll_constants(c0: float, c1: float, c2: float, eps: float) -> LLLReport:
    """Evaluate c1 (c1 - 1 - ln c1) > 1 + c2 and c2 > (1 + eps) (c0 c1)^2."""
    if min(c0, c1, c2) <= 0 or eps < 0:
        raise ValueError("constants must be positive")
    lhs1 = c1 * (c1 - 1 - math.log(c1))
    rhs1 = 1 + c2
    rhs2 = (1 + eps) * (c0 * c1) ** 2
    return LLLReport(c0, c1, c2, eps, lhs1, rhs1, c2, rhs2)


# -- colouring ratio and the acyclic-number demonstration ------------------------


@dataclass
class ChiBoundReport:
    n: int
    chromatic: int
    max_dichromatic: int
    bound: int
    holds: bool
    exhaustive: bool
    orientations_checked: int
    witness: Digraph | None


def chi_bound_check(g: UndirectedGraph, samples: int = 200, seed: int = 0, budget: int = DEFAULT_BUDGET) -> ChiBoundReport:
    """Check chi(G) <= 2 * maxdichi(G) * (1 + floor(log2 n)), where maxdichi is the
    largest dichromatic number over orientations of G (exhaustive for n <= 6)."""
    n = g.n
    chi = chromatic_number(g, budget)[0]
    edges = g.edges()
    exhaustive = n <= 6
    best, witness = (1 if n else 0), None
    count = 0
    if exhaustive:
        masks = range(1 << len(edges))
    else:
        rng = make_rng(seed)
        masks = (int(rng.integers(0, 1 << len(edges))) if edges else 0 for _ in range(samples))
    for mask in masks:
        d = orient(g, mask, edges)
        count += 1
        value = dichromatic_number(d, budget).value
        if value > best or witness is None:
            best, witness = max(best, value), d
    bound = 2 * best * (1 + int(math.floor(math.log2(n)))) if n else 0
    return ChiBoundReport(n, chi, best, bound, chi <= bound, exhaustive, count, witness)


@dataclass
class DemoRow:
    n: int
    p: float
    acyclic_number: int
    threshold_ln: float
    threshold_log2: float
    edges: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "edges": self.edges,
            "acyclic_number": self.acyclic_number,
            "threshold_ln": self.threshold_ln,
            "threshold_log2": self.threshold_log2,
        }


@dataclass
class DemoReport:
    rows: list[DemoRow] = field(default_factory=list)
    note: str = (
        "desk-scale demonstration only: the asymptotic upper bound needs n far beyond reach, "
        "so no comparison here is evidence for or against it"
    )

    def as_dict(self) -> dict:
        return {"note": self.note, "rows": [r.as_dict() for r in self.rows]}


def acyclic_number_demo(ns=(10, 20, 30, 40), seed: int = 0, c0: float = 0.513, budget: int = DEFAULT_BUDGET) -> DemoReport:
    """Acyclic number of a random orientation of a triangle-free G(n, c0/sqrt(n))
    sample, next to (107/8) sqrt(n) log n with both natural and binary logs."""
    report = DemoReport()
    streams = np.random.SeedSequence(seed).spawn(len(ns))
    for n, ss in zip(ns, streams):
        p = min(c0 / math.sqrt(n), 1.0)
        gs, os_ = ss.spawn(2)
        g = random_triangle_free_gnp(n, p, gs)
        d = random_orientation(g, os_)
        a = acyclic_number(d, budget)[0]
        coef = 107 / 8 * math.sqrt(n)
        report.rows.append(DemoRow(n, p, a, coef * math.log(n), coef * math.log2(n), g.m))
    return report
