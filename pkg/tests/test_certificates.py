import json

import pytest

from dichro.certificates import (
    CertificateDocument,
    CertificateSchemaError,
    check_certificate,
    decomposition_certificate,
    dicolouring_certificate,
    dicritical_certificate,
    refusal_certificate,
    verify_certificate,
)
from dichro.constructions import complete_bipartite, d25, directed_cycle, paley_tournament
from dichro.formats import encode_digraph6, encode_graph6
from dichro.graphs import UndirectedGraph, acyclic_number
from dichro.orders import backedge_graph, dichromatic_via_orders, max_directed_linear_forest
from dichro.pipeline import cut_decomposition_search
from dichro.solver import chromatic_number, is_k_dicolourable, is_k_dicritical


def _hub_graph() -> UndirectedGraph:
    # 13 vertices: hub 0 with six leaves 1..6 forming the left side of a bipartite graph
    edges = [(0, v) for v in range(1, 7)]
    edges += [(a, b) for a in range(1, 7) for b in range(7, 13) if (a + b) % 3]
    return UndirectedGraph.from_edges(13, edges)


def test_d25_minus_vertex_colouring_document():
    d = d25().remove_vertex(0)
    out = is_k_dicolourable(d, 2)
    doc = dicolouring_certificate(d, out.certificate, seed=1)
    assert verify_certificate(doc)
    line = doc.to_json()
    assert verify_certificate(line) and verify_certificate(json.loads(line))
    assert CertificateDocument.from_json(line) == doc


def test_tampered_colouring_fails():
    d = d25().remove_vertex(0)
    colouring = list(is_k_dicolourable(d, 2).certificate.assignment)
    rejected = 0
    for v in range(d.n):
        flipped = colouring[:]
        flipped[v] = 3 - flipped[v]
        doc = CertificateDocument(encode_digraph6(d), "dicolouring", {"k": 2, "colouring": flipped})
        rep = check_certificate(doc)
        rejected += not rep.valid
    assert rejected > 0
    # a flip that creates a monochromatic directed cycle must be caught
    c3 = directed_cycle(3)
    doc = CertificateDocument(encode_digraph6(c3), "dicolouring", {"k": 2, "colouring": [1, 1, 2]})
    assert verify_certificate(doc)
    doc.evidence["colouring"] = [1, 1, 1]
    assert not verify_certificate(doc)


def test_out_of_range_colour_fails():
    doc = CertificateDocument(encode_digraph6(directed_cycle(3)), "dicolouring", {"k": 2, "colouring": [1, 2, 3]})
    assert not verify_certificate(doc)


def test_schema_errors_are_distinct():
    good = dicolouring_certificate(directed_cycle(3), is_k_dicolourable(directed_cycle(3), 2).certificate).to_dict()
    for broken in (
        "not json",
        json.dumps([1, 2]),
        json.dumps({**good, "format": "other"}),
        json.dumps({**good, "version": 2}),
        json.dumps({**good, "claim": "magic"}),
        json.dumps({**good, "evidence": {"k": 2}}),
        json.dumps({**good, "instance": 5}),
        json.dumps({**good, "instance": "&\x01"}),
        json.dumps({**good, "evidence": {"k": 2, "colouring": "12"}}),
    ):
        with pytest.raises(CertificateSchemaError):
            check_certificate(broken)
    assert not issubclass(CertificateSchemaError, AssertionError)


def test_refusal_reports_unchecked_part():
    out = is_k_dicolourable(d25(), 2)
    doc = refusal_certificate(d25(), 2, out.stats)
    rep = check_certificate(doc)
    assert rep.valid and rep.unchecked and not rep.checked
    assert doc.evidence["nodes"] == out.stats.nodes


def test_dicritical_document_for_c3_and_paley7():
    for d, k in ((directed_cycle(3), 2), (paley_tournament(7), 3)):
        report = is_k_dicritical(d, k)
        doc = dicritical_certificate(d, report)
        rep = check_certificate(doc)
        assert rep.valid and len(rep.unchecked) == 1
        bad = json.loads(doc.to_json())
        bad["evidence"]["arc_colourings"] = bad["evidence"]["arc_colourings"][1:]
        assert not verify_certificate(bad)


def test_dicritical_builder_refuses_non_critical():
    report = is_k_dicritical(d25().add_vertices(1), 3)
    with pytest.raises(ValueError):
        dicritical_certificate(d25().add_vertices(1), report)


def test_decomposition_document_for_hub_graph():
    g = _hub_graph()
    assert g.n <= 14 and max(g.degrees()) >= 6
    dec = cut_decomposition_search(g)
    doc = decomposition_certificate(g, dec)
    assert verify_certificate(doc)
    bad = json.loads(doc.to_json())
    bad["evidence"]["x"] = bad["evidence"]["x"] + bad["evidence"]["y"][:1]
    assert not verify_certificate(bad)
    with pytest.raises(CertificateSchemaError):
        check_certificate({**json.loads(doc.to_json()), "evidence": {"x": [], "y": [], "z": "no", "method": 1}})


def test_decomposition_document_for_k44():
    g = complete_bipartite(4, 4)
    assert verify_certificate(decomposition_certificate(g, cut_decomposition_search(g)))


def test_other_claims():
    p7 = paley_tournament(7)
    value, witness = acyclic_number(p7)
    doc = CertificateDocument(encode_digraph6(p7), "acyclic-set", {"set": sorted(witness), "size": value, "optimal": True})
    rep = check_certificate(doc)
    assert rep.valid and rep.unchecked
    assert not verify_certificate(CertificateDocument(encode_digraph6(p7), "acyclic-set", {"set": list(range(7))}))

    _, order = dichromatic_via_orders(p7)
    _, proper = chromatic_number(backedge_graph(p7, order))
    doc = CertificateDocument(encode_digraph6(p7), "order-colouring", {"order": list(order), "colouring": list(proper)})
    assert verify_certificate(doc)
    doc.evidence["order"] = [0] * 7
    assert not verify_certificate(doc)

    value, forest = max_directed_linear_forest(p7)
    doc = CertificateDocument(encode_digraph6(p7), "linear-forest", {"arcs": [list(a) for a in forest.arcs], "size": value})
    assert verify_certificate(doc)
    doc.evidence["arcs"].append(list(doc.evidence["arcs"][0]))
    assert not verify_certificate(doc)


def test_graph6_instance_for_decomposition_only():
    doc = CertificateDocument(encode_graph6(complete_bipartite(4, 4)), "dicolouring", {"k": 2, "colouring": [1] * 8})
    with pytest.raises(CertificateSchemaError):
        check_certificate(doc)
