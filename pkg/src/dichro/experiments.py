"""Seeded batch experiments shared by the CLI and the acceptance suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constructions import complete_graph, make_rng, random_tournament, random_triangle_free_gnp
from .graphs import Digraph, acyclic_number, orient
from .sparse import find_dsparse_orientation


@dataclass
class TournamentScan:
    n: int
    exhaustive: bool
    tournaments: int
    min_acyclic_number: int
    witness: Digraph | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "exhaustive": self.exhaustive,
            "tournaments": self.tournaments,
            "min_acyclic_number": self.min_acyclic_number,
            "witness_arcs": self.witness.arcs() if self.witness else None,
        }


def tournament_scan(n: int, samples: int | None = None, seed: int = 0) -> TournamentScan:
    """Smallest acyclic number over all labelled tournaments on n vertices, or
    over ``samples`` uniform random ones."""
    best, witness, count = n + 1, None, 0
    if samples is None:
        k = complete_graph(n)
        edges = k.edges()
        digraphs = (orient(k, mask, edges) for mask in range(1 << len(edges)))
    else:
        seeds = np.random.SeedSequence(seed).spawn(samples)
        digraphs = (random_tournament(n, s) for s in seeds)
    for d in digraphs:
        count += 1
        a = acyclic_number(d)[0]
        if a < best:
            best, witness = a, d
    return TournamentScan(n, samples is None, count, best if count else 0, witness)


@dataclass
class DsparseBatch:
    graphs: int = 0
    successes: int = 0
    trials: list[int] = field(default_factory=list)
    orders: list[int] = field(default_factory=list)
    max_density_ratio: float = 0.0

    @property
    def mean_trials(self) -> float:
        return sum(self.trials) / len(self.trials) if self.trials else math.nan

    def as_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "successes": self.successes,
            "mean_trials": self.mean_trials,
            "max_trials": max(self.trials, default=0),
            "max_density_over_d": self.max_density_ratio,
        }


def dsparse_batch(count: int = 100, n_lo: int = 14, n_hi: int = 18, p: float = 0.25, seed: int = 0) -> DsparseBatch:
    """Run find_dsparse_orientation on ``count`` random triangle-free graphs."""
    batch = DsparseBatch()
    root = np.random.SeedSequence(seed)
    rng = make_rng(root.spawn(1)[0])
    streams = root.spawn(count)
    for ss in streams:
        n = int(rng.integers(n_lo, n_hi + 1))
        gseed, oseed = ss.generate_state(2)
        g = random_triangle_free_gnp(n, p, int(gseed))
        rep = find_dsparse_orientation(g, trials=50, seed=int(oseed))
        batch.graphs += 1
        batch.orders.append(n)
        if rep.success:
            batch.successes += 1
            batch.trials.append(rep.trials)
            batch.max_density_ratio = max(batch.max_density_ratio, rep.max_acyclic_density / rep.d)
    return batch

