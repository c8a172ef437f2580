"""Self-contained certificate documents and their verifier.

A document is one JSON object (one line in a .jsonl stream)::

    {"format": "dichro-certificate", "version": 1, "toolkit": "0.1.0",
     "instance": "<graph6 or digraph6>", "claim": "...", "evidence": {...},
     "seed": null}

The verifier only re-checks positive evidence (colourings, acyclic sets,
decompositions, orders, forests) in polynomial time.  Negative parts, such as
"no 2-dicolouring exists", rest on an exhaustive search and are listed as
unchecked in the report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .formats import FormatError, decode_digraph6, decode_graph6, encode_digraph6, encode_graph6
from .graphs import Digraph, UndirectedGraph, is_acyclic_induced, is_triangle_free
from .orders import LinearForest, backedge_graph
from .pipeline import Decomposition, certify_z
from .solver import DicriticalReport, Dicolouring, SearchStats, is_proper_colouring, verify_dicolouring

FORMAT = "dichro-certificate"
VERSION = 1

CLAIMS = {
    "dicolouring": ("k", "colouring"),
    "not-dicolourable": ("k",),
    "dicritical": ("k", "colouring", "vertex_colourings", "arc_colourings"),
    "acyclic-set": ("set",),
    "order-colouring": ("order", "colouring"),
    "linear-forest": ("arcs",),
    "decomposition": ("x", "y", "z", "method"),
}


class CertificateSchemaError(ValueError):
    """The document is malformed; distinct from evidence that fails to check."""


@dataclass
class CertificateDocument:
    instance: str
    claim: str
    evidence: dict
    seed: int | None = None
    toolkit: str = __version__

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "version": VERSION,
            "toolkit": self.toolkit,
            "instance": self.instance,
            "claim": self.claim,
            "evidence": self.evidence,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> CertificateDocument:
        if not isinstance(data, dict):
            raise CertificateSchemaError("certificate must be an object")
        if data.get("format") != FORMAT or data.get("version") != VERSION:
            raise CertificateSchemaError("unknown certificate format or version")
        for key in ("instance", "claim", "evidence"):
            if key not in data:
                raise CertificateSchemaError(f"missing field {key!r}")
        claim = data["claim"]
        if claim not in CLAIMS:
            raise CertificateSchemaError(f"unknown claim {claim!r}")
        evidence = data["evidence"]
        if not isinstance(evidence, dict):
            raise CertificateSchemaError("evidence must be an object")
        missing = [k for k in CLAIMS[claim] if k not in evidence]
        if missing:
            raise CertificateSchemaError(f"evidence for {claim!r} lacks {missing}")
        if not isinstance(data["instance"], str):
            raise CertificateSchemaError("instance must be a graph6/digraph6 string")
        return cls(data["instance"], claim, evidence, data.get("seed"), data.get("toolkit", "?"))

    @classmethod
    def from_json(cls, line: str) -> CertificateDocument:
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CertificateSchemaError(f"not JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass
class VerificationReport:
    valid: bool
    checked: list[str] = field(default_factory=list)
    unchecked: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


# -- builders -----------------------------------------------------------------------


def _colours(c: Dicolouring | list[int]) -> list[int]:
    return list(c.assignment) if isinstance(c, Dicolouring) else list(c)


def dicolouring_certificate(d: Digraph, c: Dicolouring, seed=None) -> CertificateDocument:
    return CertificateDocument(encode_digraph6(d), "dicolouring", {"k": c.k, "colouring": _colours(c)}, seed)


def refusal_certificate(d: Digraph, k: int, stats: SearchStats | None, seed=None) -> CertificateDocument:
    evidence = {"k": k}
    if stats is not None:
        evidence["nodes"] = stats.nodes
        evidence["max_depth"] = stats.max_depth
    return CertificateDocument(encode_digraph6(d), "not-dicolourable", evidence, seed)


def dicritical_certificate(d: Digraph, report: DicriticalReport, seed=None) -> CertificateDocument:
    if not report.is_dicritical:
        raise ValueError("report does not establish dicriticality")
    evidence = {
        "k": report.k,
        "colouring": _colours(report.k_certificate),
        "refusal_nodes": report.refusal_stats.nodes if report.refusal_stats else None,
        "vertex_colourings": [_colours(report.vertex_certificates[v]) for v in range(d.n)],
        "arc_colourings": [
            {"arc": list(a), "colouring": _colours(report.arc_certificates[a])} for a in d.arcs()
        ],
    }
    return CertificateDocument(encode_digraph6(d), "dicritical", evidence, seed)


def decomposition_certificate(g: UndirectedGraph, dec: Decomposition) -> CertificateDocument:
    return CertificateDocument(encode_graph6(g), "decomposition", dec.as_dict())


# -- verification -------------------------------------------------------------------


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise CertificateSchemaError(f"{what} must be a list of integers")
    return value


def _digraph(doc: CertificateDocument) -> Digraph:
    try:
        return decode_digraph6(doc.instance)
    except FormatError as exc:
        raise CertificateSchemaError(f"bad digraph6 instance: {exc}") from exc


def _graph(doc: CertificateDocument) -> UndirectedGraph:
    try:
        return decode_graph6(doc.instance)
    except FormatError as exc:
        raise CertificateSchemaError(f"bad graph6 instance: {exc}") from exc


def _colouring_ok(d: Digraph, colouring: list[int], k: int) -> bool:
    if len(colouring) != d.n or any(not 1 <= c <= max(k, 1) for c in colouring):
        return False
    return verify_dicolouring(d, colouring)


def check_certificate(doc: CertificateDocument | dict | str) -> VerificationReport:
    """Re-check the evidence of a certificate.  Raises CertificateSchemaError on
    malformed documents; evidence that does not hold gives ``valid=False``."""
    if isinstance(doc, str):
        doc = CertificateDocument.from_json(doc)
    elif isinstance(doc, dict):
        doc = CertificateDocument.from_dict(doc)
    ev = doc.evidence
    rep = VerificationReport(True)

    def require(cond: bool, what: str):
        if cond:
            rep.checked.append(what)
        else:
            rep.valid = False
            rep.failures.append(what)

    claim = doc.claim
    if claim == "dicolouring":
        d = _digraph(doc)
        colouring = _int_list(ev["colouring"], "colouring")
        require(_colouring_ok(d, colouring, ev["k"]), f"{ev['k']}-dicolouring")
    elif claim == "not-dicolourable":
        _digraph(doc)
        rep.unchecked.append(f"no {ev['k']}-dicolouring (exhaustive search)")
    elif claim == "dicritical":
        d = _digraph(doc)
        k = ev["k"]
        require(_colouring_ok(d, _int_list(ev["colouring"], "colouring"), k), f"{k}-dicolouring")
        rep.unchecked.append(f"no {k - 1}-dicolouring (exhaustive search)")
        vc = ev["vertex_colourings"]
        if not isinstance(vc, list):
            raise CertificateSchemaError("vertex_colourings must be a list")
        require(len(vc) == d.n, "one colouring per vertex deletion")
        for v, c in enumerate(vc[: d.n]):
            require(_colouring_ok(d.remove_vertex(v), _int_list(c, "colouring"), k - 1), f"D-{v} is {k - 1}-dicolourable")
        ac = ev["arc_colourings"]
        if not isinstance(ac, list) or not all(isinstance(x, dict) and "arc" in x and "colouring" in x for x in ac):
            raise CertificateSchemaError("arc_colourings must be a list of {arc, colouring}")
        covered = {tuple(x["arc"]) for x in ac}
        require(covered == set(d.arcs()), "one colouring per arc deletion")
        for x in ac:
            u, v = _int_list(x["arc"], "arc")
            ok = d.has_arc(u, v) and _colouring_ok(d.remove_arc(u, v), _int_list(x["colouring"], "colouring"), k - 1)
            require(ok, f"D-{u}{v} is {k - 1}-dicolourable")
    elif claim == "acyclic-set":
        d = _digraph(doc)
        s = _int_list(ev["set"], "set")
        require(all(0 <= v < d.n for v in s) and is_acyclic_induced(d, s), "acyclic set")
        if "size" in ev:
            require(ev["size"] == len(set(s)), "stated size")
        if ev.get("optimal"):
            rep.unchecked.append("maximality (exhaustive search)")
    elif claim == "order-colouring":
        d = _digraph(doc)
        order = _int_list(ev["order"], "order")
        colouring = _int_list(ev["colouring"], "colouring")
        if sorted(order) != list(range(d.n)):
            require(False, "order is a permutation")
        else:
            bg = backedge_graph(d, order)
            require(len(colouring) == d.n and is_proper_colouring(bg, colouring), "proper colouring of the backedge graph")
            require(verify_dicolouring(d, colouring), "colouring is a dicolouring")
    elif claim == "linear-forest":
        d = _digraph(doc)
        arcs = ev["arcs"]
        if not isinstance(arcs, list) or not all(isinstance(a, list) and len(a) == 2 for a in arcs):
            raise CertificateSchemaError("arcs must be a list of pairs")
        forest = LinearForest(tuple(tuple(a) for a in arcs))
        require(forest.is_valid_in(d), "directed linear forest")
        if "size" in ev:
            require(ev["size"] == len(arcs), "stated size")
    elif claim == "decomposition":
        g = _graph(doc)
        try:
            dec = Decomposition.from_dict(ev)
        except (KeyError, TypeError) as exc:
            raise CertificateSchemaError(f"bad decomposition: {exc}") from exc
        require(is_triangle_free(g), "triangle-free")
        require(dec.validate(g), "partition with X, Y independent and no X-Z edge")
        zmask = sum(1 << v for v in dec.z)
        require(dec.validate(g) and certify_z(g, zmask) is not None, "every orientation of G[Z] has a vertex/arc witness")
    return rep


def verify_certificate(doc: CertificateDocument | dict | str) -> bool:
    return check_certificate(doc).valid
