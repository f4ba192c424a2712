from __future__ import annotations

from braidfoliation import build_tiling
from braidfoliation.document import to_document
from braidfoliation.graphs import BoundaryAttachment, all_graphs, graph_report, graphs_to_dot
from braidfoliation.tiling import MINUS, PLUS


def test_minus_graphs_of_all_aa_disc(fixture_a):
    gs = all_graphs(fixture_a)
    for delta in (PLUS, MINUS):
        g = gs[(MINUS, delta)]
        assert all(isinstance(n, BoundaryAttachment) for n in g.nodes)
        assert len(g.edges) == sum(1 for x in fixture_a.tiles if x.sign is delta)


def test_no_minus_tiles_means_empty_minus_sign_graphs(fixture_a):
    gs = all_graphs(fixture_a)
    assert not gs[(PLUS, MINUS)].edges
    assert set(gs[(PLUS, MINUS)].nodes) == {v.id for v in fixture_a.vertices}
    assert not gs[(MINUS, MINUS)].edges


def test_plus_graph_is_a_tree_with_three_ends(fixture_a):
    g = all_graphs(fixture_a)[(PLUS, PLUS)]
    (comp,) = g.components()
    assert len(comp[0]) == comp[1] + 1
    assert sorted(n for n, d in g.degree().items() if d == 1) == ["1", "3", "4"]
    report = graph_report(fixture_a)
    assert all(report.structural_checks().values())
    assert report.fact(PLUS, PLUS).trees == (True,)


def test_empty_tiling():
    t = build_tiling({"braid_index": 2, "trivial_discs": 2, "vertices": [], "boundary_points": [], "tiles": []})
    report = graph_report(t)
    assert all(not g.nodes and not g.edges for g in report.graphs.values())
    assert all(report.structural_checks().values())


def test_one_sign_star_is_isolated(fixture_b):
    raw = to_document(fixture_b)
    for x in raw["tiles"]:
        x["sign"] = "+"
    report = graph_report(build_tiling(raw))
    assert not report.no_isolated_interior
    assert any(f.isolated_interior for f in report.facts)


def test_edge_counts_match_a_recount(discs, ab_rich):
    for t in list(discs) + list(ab_rich):
        gs = all_graphs(t)
        for delta in (PLUS, MINUS):
            spanning = [x for x in t.tiles if x.sign is delta and x.kind in ("aa", "ab", "bb")]
            assert len(gs[(PLUS, delta)].edges) == len(spanning)
            assert len(gs[(MINUS, delta)].edges) == len(spanning)
            links = sum(1 for g in (gs[(MINUS, delta)],) for e in g.edges for n in e.ends if isinstance(n, BoundaryAttachment))
            assert links == sum({"aa": 2, "ab": 1, "bb": 0}[x.kind] for x in spanning)


def test_structural_checks_on_corpus(discs, ab_rich):
    for t in list(discs) + list(ab_rich):
        assert all(graph_report(t).structural_checks().values())


def test_dot_text(fixture_a):
    text = graphs_to_dot(fixture_a)
    assert text.count("graph G_") == 4
    assert '"1" -- "2" [label="Tp"];' in text
