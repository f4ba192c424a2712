from __future__ import annotations

import pytest

from braidfoliation import build_tiling, derive_adjacency, euler_and_classification, validate, vertex_star
from braidfoliation.fixtures import load_fixture
from braidfoliation.tiling import (
    MINUS,
    PLUS,
    NonSurfaceError,
    Summary,
    TilingError,
    canonical_form,
    foliation_key,
    parse_expectation,
)
from tests import oracle


def test_three_tile_disc_shape(fixture_a):
    t = fixture_a
    assert t.summary() == Summary(V=4, t=3, n=4)
    assert [v.id for v in sorted(t.vertices, key=lambda v: v.axis_rank)] == ["1", "2", "4", "3"]
    assert all(v.parity is PLUS for v in t.vertices)
    assert {x.id: set(x.vertices) for x in t.tiles} == {"Tp": {"1", "2"}, "Tq": {"3", "2"}, "Tr": {"4", "2"}}
    (cycle,) = t.link_cycles.values()
    start = cycle.index("q+")
    assert cycle[start:] + cycle[:start] == ("q+", "q-", "r-", "r+", "p+", "p-")


def test_pocket_fixture_counts(fixture_b, fixture_c):
    for t, V, tiles, neg in ((fixture_b, 8, 7, 2), (fixture_c, 12, 11, 4)):
        s = t.summary()
        assert (s.V, s.t, s.n) == (V, tiles, 4)
        assert t.count_parity(MINUS) == neg


def test_trivial_disc_document():
    t = build_tiling({"braid_index": 1, "trivial_discs": 1, "vertices": [], "boundary_points": [], "tiles": []})
    assert t.vertex_count == 1 and t.tile_count == 0
    assert validate(t, "discs=1").ok


def test_bb_tile_with_three_vertices_is_rejected():
    raw = {
        "braid_index": 1,
        "vertices": [{"id": c, "axis_rank": i, "parity": "+-+"[i]} for i, c in enumerate("abc")],
        "boundary_points": [],
        "tiles": [{"id": "T", "kind": "bb", "sign": "+", "theta_rank": 0, "vertices": ["a", "b", "c"], "endpoints": []}],
    }
    with pytest.raises(TilingError, match="bb"):
        build_tiling(raw)


def test_duplicate_theta_rank_names_both_tiles(fixture_a):
    from braidfoliation.document import to_document

    raw = to_document(fixture_a)
    raw["tiles"][1]["theta_rank"] = raw["tiles"][0]["theta_rank"]
    with pytest.raises(TilingError) as err:
        build_tiling(raw)
    assert raw["tiles"][0]["id"] in str(err.value) and raw["tiles"][1]["id"] in str(err.value)


def test_gluing_around_centre_vertex(fixture_a):
    edges = derive_adjacency(fixture_a)
    assert not edges.b_edges
    pairs = {frozenset(x for x, _ in e.sides) for e in edges.a_edges if e.vertices == ("2",)}
    assert pairs == {frozenset({"Tq", "Tr"}), frozenset({"Tr", "Tp"}), frozenset({"Tp", "Tq"})}


def test_lone_ab_tile_cannot_glue():
    raw = {
        "braid_index": 1,
        "vertices": [
            {"id": "x", "axis_rank": 0, "parity": "+"},
            {"id": "y", "axis_rank": 1, "parity": "-"},
            {"id": "z", "axis_rank": 2, "parity": "+"},
        ],
        "boundary_points": [{"id": "p", "component": 0, "link_rank": 0}],
        "tiles": [{"id": "T", "kind": "ab", "sign": "+", "theta_rank": 0, "vertices": ["x", "y", "z"], "endpoints": ["p"]}],
    }
    t = build_tiling(raw)
    with pytest.raises(NonSurfaceError):
        derive_adjacency(t)
    assert not validate(t).ok


def test_stars_of_fixture_vertices(fixture_a, fixture_b):
    s = vertex_star(fixture_a, "2")
    assert (s.valence, s.type_string()) == (3, "(a,a,a)")
    s = vertex_star(fixture_a, "1")
    assert (s.valence, s.type_string()) == (1, "(a)")
    s = vertex_star(fixture_b, "v1")
    assert (s.valence, s.type_string(), sorted(s.sign_string())) == (2, "(b,b)", sorted("(+,-)"))


def test_classification_of_fixtures(fixture_a):
    cls = euler_and_classification(fixture_a)
    (comp,) = cls.components
    assert comp.chi == 1 and comp.boundary_components == 1 and comp.is_disc
    torus = load_fixture("torus_checkerboard")
    (comp,) = euler_and_classification(torus).components
    assert comp.chi == 0 and comp.closed
    empty = build_tiling({"braid_index": 3, "trivial_discs": 3, "vertices": [], "boundary_points": [], "tiles": []})
    assert [c.chi for c in euler_and_classification(empty).components] == [1, 1, 1]


def test_validate_fixtures():
    for name in ("disc_three_aa", "disc_two_pockets", "disc_four_pockets"):
        assert validate(load_fixture(name), "discs=1").ok, name
    assert validate(load_fixture("torus_checkerboard")).ok
    assert not validate(load_fixture("disc_three_aa"), "discs=2").ok


def test_one_sign_interior_vertex_fails(fixture_b):
    from braidfoliation.document import to_document

    raw = to_document(fixture_b)
    for x in raw["tiles"]:
        x["sign"] = "+"
    report = validate(build_tiling(raw))
    assert not report["interior_star_signs"].passed
    assert not report["graph_facts"].passed


def test_expectation_syntax():
    assert parse_expectation("discs=3") == 3
    assert parse_expectation(None) is None
    with pytest.raises(ValueError):
        parse_expectation("tori=1")


def test_gluing_agrees_with_oracle(discs, ab_rich):
    for t in list(discs) + list(ab_rich):
        assert oracle.gluing_problems(t, derive_adjacency(t)) == []


def test_sign_check_agrees_with_oracle(ab_rich):
    for t in ab_rich:
        report = validate(t)
        assert report["interior_star_signs"].passed == (oracle.interior_sign_problems(t) == [])


def test_braid_index_identity(discs):
    for t in discs:
        assert t.braid_index == t.count_parity(PLUS) - t.count_parity(MINUS) + t.trivial_discs


def test_keys_ignore_names_and_shift(fixture_c):
    from braidfoliation.document import to_document

    raw = to_document(fixture_c)
    k = len(raw["tiles"])
    for x in raw["tiles"]:
        x["id"] = "X" + x["id"]
        x["theta_rank"] = (x["theta_rank"] + 3) % k
    moved = build_tiling(raw)
    assert canonical_form(moved) == canonical_form(fixture_c)
    assert foliation_key(moved) == foliation_key(fixture_c)
    assert canonical_form(fixture_c) != canonical_form(load_fixture("disc_two_pockets"))
