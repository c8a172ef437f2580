"""Computer-assisted part: small-digraph facts, (X, Y, Z) decompositions and
the resumable sweep over triangle-free graphs.

A decomposition (X, Y, Z) of a triangle-free graph G certifies that every
orientation of G is 2-dicolourable when X and Y are independent, no edge joins
X to Z, and every orientation of G[Z] becomes acyclic after deleting nothing,
one vertex, or the two ends of one edge.  Colour Y and the deleted part of Z
with colour 1, everything else with colour 2.  X is built as a pivot u plus
every vertex whose neighbourhood lies inside N(u), which is independent in a
triangle-free graph, so the acyclicity of X holds for every orientation.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .canon import automorphisms, canonical_form
from .constructions import complete_bipartite, cycle_graph
from .enumeration import enumerate_triangle_free, triangle_free_levels
from .formats import decode_graph6, encode_graph6
from .graphs import (
    Digraph,
    UndirectedGraph,
    acyclic_number,
    arboricity_at_most,
    bits,
    has_cycle_in,
    is_biconnected,
    is_forest,
    is_triangle_free,
    orient,
    popcount,
    underlying_graph,
)
from .solver import Dicolouring, dichromatic_number

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE_EDGES = 22


# -- small-digraph facts ---------------------------------------------------------


def _acyclic_after(out, full: int, removed: int) -> bool:
    return not has_cycle_in(out, full & ~removed)


def small_deletion_witness(d: Digraph) -> frozenset[int] | None:
    """One vertex, or the two ends of one arc, whose deletion leaves d acyclic."""
    full = (1 << d.n) - 1
    for v in range(d.n):
        if _acyclic_after(d.out, full, 1 << v):
            return frozenset([v])
    for u, v in d.arcs():
        if _acyclic_after(d.out, full, 1 << u | 1 << v):
            return frozenset([u, v])
    return None


def adjacent_pair_witness(d: Digraph) -> tuple[int, int] | None:
    full = (1 << d.n) - 1
    for u, v in d.arcs():
        if _acyclic_after(d.out, full, 1 << u | 1 << v):
            return (u, v)
    return None


def _two_disjoint_c4() -> UndirectedGraph:
    return UndirectedGraph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])


def _cube() -> UndirectedGraph:
    return UndirectedGraph.from_edges(8, [(a, a ^ (1 << i)) for a in range(8) for i in range(3) if a < a ^ (1 << i)])


def _cube_two_diagonals() -> UndirectedGraph:
    cube = _cube()
    return UndirectedGraph.from_edges(8, cube.edges() + [(0, 7), (1, 6)])


def _k44_minus_edge() -> UndirectedGraph:
    return complete_bipartite(4, 4).remove_edge(0, 4)


def _k44_2244_3333() -> UndirectedGraph:
    # side A: 0, 1 see all of B; 2 sees {4, 5}; 3 sees {6, 7}
    edges = [(a, b) for a in (0, 1) for b in range(4, 8)] + [(2, 4), (2, 5), (3, 6), (3, 7)]
    return UndirectedGraph.from_edges(8, edges)


EXCEPTION_BUILDERS = {
    "two-disjoint-C4": _two_disjoint_c4,
    "cube": _cube,
    "cube-plus-two-diagonals": _cube_two_diagonals,
    "K44": lambda: complete_bipartite(4, 4),
    "K44-minus-edge": _k44_minus_edge,
    "K44-subgraph-2244-3333": _k44_2244_3333,
}

_catalog_cache: dict[str, str] | None = None


def exception_catalog() -> dict[str, str]:
    """Exception name -> canonical graph6 of its underlying graph."""
    global _catalog_cache
    if _catalog_cache is None:
        _catalog_cache = {name: encode_graph6(canonical_form(build())) for name, build in EXCEPTION_BUILDERS.items()}
    return _catalog_cache


def exception_tag(g: UndirectedGraph) -> str | None:
    if g.n != 8:
        return None
    key = encode_graph6(canonical_form(g))
    for name, canon in exception_catalog().items():
        if canon == key:
            return name
    return None


class CatalogViolation(AssertionError):
    """A digraph that neither has a certifying pair nor belongs to the exception list."""


@dataclass(frozen=True)
class OrderEightResult:
    # witness is () for the arcless digraph, which is acyclic with nothing deleted
    witness: tuple[int, ...] | None
    exception: str | None


def classify_order_eight(d: Digraph) -> OrderEightResult:
    """Either an arc uv with d - {u, v} acyclic, or the exception name of d's underlying graph."""
    if d.n != 8:
        raise ValueError("classification applies to digraphs on 8 vertices")
    g = underlying_graph(d)
    if not d.oriented or not is_triangle_free(g):
        raise ValueError("expected an oriented triangle-free graph")
    if d.m == 0:
        return OrderEightResult((), None)
    pair = adjacent_pair_witness(d)
    if pair is not None:
        return OrderEightResult(pair, None)
    tag = exception_tag(g)
    if tag is None:
        raise CatalogViolation(f"no certifying arc and not an exception: {encode_graph6(g)}")
    return OrderEightResult(None, tag)


def has_forest_pair(g: UndirectedGraph) -> bool:
    """Some edge uv such that g - {u, v} is a forest (so every orientation is fine)."""
    for u, v in g.edges():
        keep = [w for w in range(g.n) if w != u and w != v]
        sub = g.induced(keep)
        if is_forest(sub.n, sub.edges()):
            return True
    return False


def _edge_maps(g: UndirectedGraph, autos: list[list[int]]) -> list[list[tuple[int, bool]]]:
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    maps = []
    for a in autos:
        row = []
        for u, v in edges:
            x, y = a[u], a[v]
            row.append((index[(min(x, y), max(x, y))], x > y))
        maps.append(row)
    return maps


def _apply(mask: int, emap: list[tuple[int, bool]]) -> int:
    image = 0
    for i, (j, flip) in enumerate(emap):
        if bool(mask >> i & 1) != flip:
            image |= 1 << j
    return image


def orbit_count(g: UndirectedGraph, masks: Iterable[int]) -> int:
    """Number of classes of the given orientation masks under automorphisms of g."""
    maps = _edge_maps(g, automorphisms(g))
    seen: set[int] = set()
    count = 0
    for mask in masks:
        if mask in seen:
            continue
        count += 1
        for emap in maps:
            seen.add(_apply(mask, emap))
    return count


@dataclass
class ExceptionCensus:
    graphs: int
    survivors: int
    exceptional_labelled: int
    exceptional_up_to_isomorphism: int
    by_exception: dict[str, dict[str, int]]
    survivor_ids: list[str]
    unmatched: list[str]


def exception_census() -> ExceptionCensus:
    """Enumerate triangle-free graphs on 8 vertices with minimum degree 2, keep those
    without a forest-leaving edge, then test every orientation of the survivors."""
    graphs = list(enumerate_triangle_free(8, 2))
    survivors = [g for g in graphs if not has_forest_pair(g)]
    labelled = 0
    classes = 0
    by_exception: dict[str, dict[str, int]] = {}
    unmatched: list[str] = []
    for g in survivors:
        edges = g.edges()
        full = (1 << g.n) - 1
        pair_masks = [full & ~(1 << u | 1 << v) for u, v in edges]
        bad = []
        for mask in range(1 << len(edges)):
            d = orient(g, mask, edges)
            if not any(not has_cycle_in(d.out, pm) for pm in pair_masks):
                bad.append(mask)
        if not bad:
            continue
        tag = exception_tag(g)
        key = encode_graph6(g)
        if tag is None:
            unmatched.append(key)
            continue
        orbits = orbit_count(g, bad)
        labelled += len(bad)
        classes += orbits
        by_exception[tag] = {"labelled": len(bad), "up_to_isomorphism": orbits}
    return ExceptionCensus(
        graphs=len(graphs),
        survivors=len(survivors),
        exceptional_labelled=labelled,
        exceptional_up_to_isomorphism=classes,
        by_exception=by_exception,
        survivor_ids=[encode_graph6(g) for g in survivors],
        unmatched=unmatched,
    )


def oriented_triangle_free_digraphs(n: int, min_deg: int = 0) -> Iterator[tuple[UndirectedGraph, Digraph]]:
    """Every orientation of every triangle-free graph on n vertices (isomorph
    rejection on underlying graphs only)."""
    for g in enumerate_triangle_free(n, min_deg):
        edges = g.edges()
        for mask in range(1 << len(edges)):
            yield g, orient(g, mask, edges)


def verify_small_deletion(n_max: int = 7) -> dict[int, int]:
    """Check small_deletion_witness on every oriented triangle-free digraph with n <= n_max
    and all in- and out-degrees at least 1.  Returns the number checked per n."""
    checked: dict[int, int] = {}
    for n in range(1, n_max + 1):
        count = 0
        for g, d in oriented_triangle_free_digraphs(n, 2):
            if any(not d.out[v] or not d.inn[v] for v in range(n)):
                continue
            count += 1
            if small_deletion_witness(d) is None:
                raise CatalogViolation(f"no witness for {encode_graph6(g)} orientation {d.arcs()}")
        checked[n] = count
    return checked


# -- decompositions ---------------------------------------------------------------


def two_core(g: UndirectedGraph, mask: int) -> int:
    """Vertices of ``mask`` left after repeatedly deleting those of degree <= 1 inside it."""
    while True:
        drop = 0
        for v in bits(mask):
            if popcount(g.adj[v] & mask) <= 1:
                drop |= 1 << v
        if not drop:
            return mask
        mask &= ~drop


def _all_orientations_have_witness(h: UndirectedGraph) -> bool:
    edges = h.edges()
    if len(edges) > MAX_EXHAUSTIVE_EDGES:
        return False
    for mask in range(1 << len(edges)):
        if small_deletion_witness(orient(h, mask, edges)) is None:
            return False
    return True


def certify_z(g: UndirectedGraph, z: int) -> str | None:
    """How condition (iv) holds for every orientation of G[Z], or None.

    Cycles of G[Z] live in its 2-core, so the argument only looks at the core:
    at most 7 vertices (small-digraph fact), an edge whose removal leaves a
    forest, 8 vertices outside the exception catalogue, or an exhaustive check
    of all orientations of the core.
    """
    core = two_core(g, z)
    size = popcount(core)
    if size <= 7:
        return "core<=7"
    h = g.induced(bits(core))
    if has_forest_pair(h):
        return "forest-pair"
    if size == 8 and exception_tag(h) is None:
        return "core=8-not-exception"
    if _all_orientations_have_witness(h):
        return "exhaustive"
    return None


@dataclass(frozen=True)
class Decomposition:
    """(X, Y, Z) partition with the way condition (iv) was discharged.

    X is independent by construction, which makes it acyclic under every
    orientation; ``colouring_for`` builds the 2-dicolouring of a concrete
    orientation.
    """

    x: frozenset[int]
    y: frozenset[int]
    z: frozenset[int]
    pivot: int
    method: str
    core: frozenset[int] = field(default_factory=frozenset)

    def validate(self, g: UndirectedGraph) -> bool:
        xm = sum(1 << v for v in self.x)
        ym = sum(1 << v for v in self.y)
        zm = sum(1 << v for v in self.z)
        if xm & ym or xm & zm or ym & zm or xm | ym | zm != (1 << g.n) - 1:
            return False
        if any(g.adj[v] & xm for v in self.x):
            return False
        if any(g.adj[v] & ym for v in self.y):
            return False
        if any(g.adj[v] & zm for v in self.x):
            return False
        return is_triangle_free(g)

    def z_colouring(self, d: Digraph) -> dict[int, int]:
        """2-dicolouring of d[Z] whose colour-1 class is empty, one vertex or one arc."""
        zs = sorted(self.z)
        sub = d.induced(zs)
        full = (1 << sub.n) - 1
        if not has_cycle_in(sub.out, full):
            ones: frozenset[int] = frozenset()
        else:
            w = small_deletion_witness(sub)
            if w is None:
                raise CatalogViolation("orientation of Z without a vertex/arc witness")
            ones = frozenset(zs[i] for i in w)
        return {v: 1 if v in ones else 2 for v in zs}

    def colouring_for(self, d: Digraph) -> Dicolouring:
        colour = [0] * d.n
        for v in self.y:
            colour[v] = 1
        for v in self.x:
            colour[v] = 2
        colour_z = self.z_colouring(d)
        for v, c in colour_z.items():
            colour[v] = c
        return Dicolouring(tuple(colour), 2)

    def as_dict(self) -> dict:
        return {
            "x": sorted(self.x),
            "y": sorted(self.y),
            "z": sorted(self.z),
            "core": sorted(self.core),
            "pivot": self.pivot,
            "method": self.method,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Decomposition:
        return cls(
            frozenset(data["x"]),
            frozenset(data["y"]),
            frozenset(data["z"]),
            data["pivot"],
            data["method"],
            frozenset(data.get("core", [])),
        )


def pivot_candidates(g: UndirectedGraph) -> list[tuple[int, int, int]]:
    """(pivot, X mask, Y mask) for every vertex, best |X| + |Y| first, ties by pivot index."""
    full = (1 << g.n) - 1
    cands = []
    for u in range(g.n):
        nu = g.adj[u]
        x = 1 << u
        for w in range(g.n):
            if w != u and not g.adj[w] & ~nu and not nu >> w & 1:
                x |= 1 << w
        cands.append((u, x, nu & full))
    cands.sort(key=lambda c: (-(popcount(c[1]) + popcount(c[2])), c[0]))
    return cands


def cut_decomposition_search(g: UndirectedGraph, first_only: bool = False) -> Decomposition | None:
    """Decomposition certifying that every orientation of g is 2-dicolourable.

    Pivots are tried by decreasing |X| + |Y|; ``first_only`` restricts the
    search to the best pivot, as in the reported sweep.
    """
    if not is_triangle_free(g):
        raise ValueError("decompositions are defined for triangle-free graphs")
    full = (1 << g.n) - 1
    if g.n == 0:
        return Decomposition(frozenset(), frozenset(), frozenset(), -1, "empty")
    for u, x, y in pivot_candidates(g):
        z = full & ~x & ~y
        method = certify_z(g, z)
        if method is not None:
            return Decomposition(frozenset(bits(x)), frozenset(bits(y)), frozenset(bits(z)), u, method, frozenset(bits(two_core(g, z))))
        if first_only:
            return None
    return None


# -- sweep ------------------------------------------------------------------------


@dataclass
class PipelineRecord:
    id: str
    n: int
    filters: dict[str, bool]
    verdict: str  # decomposed | exception | unresolved | filtered
    z_size: int | None = None
    decomposition: dict | None = None
    seconds: float | None = None

    @property
    def survivor(self) -> bool:
        return all(self.filters.values())

    def to_json(self) -> str:
        data = asdict(self)
        if data["seconds"] is None:
            del data["seconds"]
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> PipelineRecord:
        return cls(**json.loads(line))


RELEVANCE_FILTERS = ("min_degree", "biconnected", "arboricity")


def check_filters(g: UndirectedGraph) -> dict[str, bool]:
    degrees = g.degrees()
    return {
        "min_degree": min(degrees, default=0) >= 4,
        "max_degree": max(degrees, default=0) <= g.n - 9,
        "biconnected": is_biconnected(g),
        "arboricity": not arboricity_at_most(g, 2)[0],
    }


def process_instance(g6: str, timing: bool = False) -> PipelineRecord:
    start = time.perf_counter()
    g = decode_graph6(g6)
    canon = encode_graph6(canonical_form(g))
    if not is_triangle_free(g):
        raise ValueError(f"instance {g6} is not triangle-free")
    filters = check_filters(g)
    record = PipelineRecord(canon, g.n, filters, "filtered")
    if all(filters[name] for name in RELEVANCE_FILTERS):
        # z_size is |Z| for the best pivot, the quantity the buckets count;
        # the certified decomposition may come from a later pivot
        _, bx, by = pivot_candidates(g)[0]
        z = ((1 << g.n) - 1) & ~bx & ~by
        record.z_size = popcount(z)
        dec = cut_decomposition_search(g)
        if dec is not None:
            assert dec.validate(g)
            record.verdict = "decomposed"
            record.decomposition = dec.as_dict()
        else:
            core = g.induced(bits(two_core(g, z)))
            record.verdict = "exception" if exception_tag(core) else "unresolved"
    if timing:
        record.seconds = round(time.perf_counter() - start, 4)
    return record


def z_bucket(z_size: int | None) -> str:
    if z_size is None:
        return "none"
    if z_size <= 7:
        return "z<=7"
    if z_size == 8:
        return "z=8"
    return "z>8"


@dataclass
class SweepSummary:
    total: int = 0
    by_verdict: dict[str, int] = field(default_factory=dict)
    survivors: int = 0
    survivor_buckets: dict[str, int] = field(default_factory=dict)
    relevant: int = 0
    relevant_buckets: dict[str, int] = field(default_factory=dict)
    per_n: dict[int, dict[str, int]] = field(default_factory=dict)
    unresolved: list[str] = field(default_factory=list)

    def add(self, r: PipelineRecord):
        self.total += 1
        self.by_verdict[r.verdict] = self.by_verdict.get(r.verdict, 0) + 1
        row = self.per_n.setdefault(r.n, {})
        row["total"] = row.get("total", 0) + 1
        if r.verdict != "filtered":
            self.relevant += 1
            b = z_bucket(r.z_size)
            self.relevant_buckets[b] = self.relevant_buckets.get(b, 0) + 1
            row["relevant"] = row.get("relevant", 0) + 1
        if r.survivor:
            self.survivors += 1
            b = z_bucket(r.z_size)
            self.survivor_buckets[b] = self.survivor_buckets.get(b, 0) + 1
            row["survivors"] = row.get("survivors", 0) + 1
        if r.verdict in ("unresolved", "exception"):
            self.unresolved.append(r.id)

    def as_dict(self) -> dict:
        data = asdict(self)
        data["per_n"] = {str(k): v for k, v in sorted(self.per_n.items())}
        data["unresolved"] = sorted(self.unresolved)
        for key in ("by_verdict", "survivor_buckets", "relevant_buckets"):
            data[key] = dict(sorted(data[key].items()))
        return data


def internal_source(n_max: int, n_min: int = 1) -> Iterator[str]:
    """Canonical graph6 of every triangle-free graph with minimum degree >= 4, n_min <= n <= n_max."""
    for n in range(max(n_min, 1), n_max + 1):
        if n < 8:
            continue  # a triangle-free graph with minimum degree 4 has at least 8 vertices
        yield from triangle_free_levels(n, 4)[-1]


def graph6_source(path: str | os.PathLike) -> Iterator[str]:
    with open(path, encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                yield line


def load_checkpoint(path: str | os.PathLike | None) -> dict[str, PipelineRecord]:
    done: dict[str, PipelineRecord] = {}
    if path is None or not Path(path).exists():
        return done
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = PipelineRecord.from_json(line)
            except (json.JSONDecodeError, TypeError):
                log.warning("ignoring truncated checkpoint line")
                continue
            done[rec.id] = rec
    return done


def _drop_partial_tail(path: str | os.PathLike):
    """Cut an unterminated last line (an interrupted write) so appends start clean."""
    p = Path(path)
    if not p.exists():
        return
    data = p.read_bytes()
    if data and not data.endswith(b"\n"):
        with open(p, "r+b") as fh:
            fh.truncate(data.rfind(b"\n") + 1)


def _worker(args: tuple[str, bool]) -> PipelineRecord:
    return process_instance(*args)


def sweep(
    source: Iterable[str],
    checkpoint: str | os.PathLike | None = None,
    workers: int = 1,
    timing: bool = False,
    on_record=None,
) -> tuple[SweepSummary, list[PipelineRecord]]:
    """Process every graph6 instance of ``source``; resumable through ``checkpoint``.

    Records are returned (and appended to the checkpoint) in source order, so
    the output does not depend on the number of workers.  Instances already in
    the checkpoint are not recomputed.  Duplicate instances (same canonical
    form) are processed once.
    """
    done = load_checkpoint(checkpoint)
    pending: list[str] = []
    order: list[str] = []
    seen: set[str] = set()
    for g6 in source:
        canon = encode_graph6(canonical_form(decode_graph6(g6)))
        if canon in seen:
            continue
        seen.add(canon)
        order.append(canon)
        if canon not in done:
            pending.append(canon)

    if checkpoint is not None:
        _drop_partial_tail(checkpoint)
    fh = open(checkpoint, "a", encoding="utf-8") if checkpoint is not None else None
    try:
        if workers > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = pool.map(_worker, [(g6, timing) for g6 in pending], chunksize=8)
                for rec in results:
                    done[rec.id] = rec
                    if fh:
                        fh.write(rec.to_json() + "\n")
                        fh.flush()
                    if on_record:
                        on_record(rec)
        else:
            for g6 in pending:
                rec = process_instance(g6, timing)
                done[rec.id] = rec
                if fh:
                    fh.write(rec.to_json() + "\n")
                    fh.flush()
                if on_record:
                    on_record(rec)
    finally:
        if fh:
            fh.close()

    summary = SweepSummary()
    records = [done[i] for i in order]
    for rec in records:
        summary.add(rec)
    return summary, records


# -- extremal values for tiny orders ---------------------------------------------


@dataclass
class ExtremalResult:
    n: int
    min_acyclic_number: int
    min_witness: Digraph
    max_dichromatic: int
    max_witness: Digraph
    digraphs_scanned: int


def extremal_scan(n: int) -> ExtremalResult:
    """Minimum acyclic number and maximum dichromatic number over all oriented
    triangle-free graphs of order n (n <= 7)."""
    if n > 7:
        raise ValueError("extremal scan enumerates all orientations; limited to n <= 7")
    if n < 1:
        raise ValueError("n must be positive")
    best_a, wit_a = n + 1, None
    best_t, wit_t = 0, None
    count = 0
    for g, d in oriented_triangle_free_digraphs(n):
        count += 1
        a = acyclic_number(d)[0]
        if a < best_a:
            best_a, wit_a = a, d
        t = dichromatic_number(d).value
        if t > best_t:
            best_t, wit_t = t, d
    return ExtremalResult(n, best_a, wit_a, best_t, wit_t, count)
