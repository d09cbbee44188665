from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folia import fixtures
from folia.canon import graphs_equal
from folia.errors import ArgumentError, ParseError, PreconditionError, RewriteBlocked
from folia.graph import (
    MARKED_LEAF,
    NOVIKOV,
    SADDLE,
    STABLE_CIRCLE,
    FoliationGraph,
    Holonomy,
    LeafFamily,
    Node,
    center,
    circle,
    counts,
    saddle,
    sphere,
    surgered,
    torus,
    validate,
)
from folia.surgery import (
    MoveTrace,
    SaddlePairModel,
    create_saddle_pair,
    create_trivial_couple,
    declared_delta,
    eliminate_case_ii,
    eliminate_saddle_pair,
    eliminate_trivial_couple,
    replace_singular_reeb,
    simplify,
)

from helpers import complement_identity, multiset_delta, random_graph, try_create


def test_trivial_couple_on_bumpy_sphere():
    g = fixtures.y_graph(2)
    h, trace = eliminate_trivial_couple(g, "b1", "q")
    assert graphs_equal(h, fixtures.two_center(2))
    (rec,) = trace.records
    assert set(rec.removed) == {"b1", "q", "e1", "e2", "e3"}
    assert rec.added == ("e4",)
    assert dict(rec.before) == {"1": 1, "extremum": 3}
    assert dict(rec.after) == {"extremum": 2}


def test_wrong_arrangement_is_a_precondition_error():
    with pytest.raises(PreconditionError, match="case_35_ii"):
        eliminate_trivial_couple(fixtures.y_graph(2), "a", "q")
    with pytest.raises(PreconditionError):
        eliminate_case_ii(fixtures.y_graph(2), "b1", "q")
    with pytest.raises(PreconditionError):
        eliminate_trivial_couple(fixtures.y_graph(2), "q", "a")


def test_torus_two_case_ii_moves():
    g = fixtures.torus_height()
    g, _ = eliminate_case_ii(g, "p", "q")
    r = g.node("r")
    assert r.selfconnected and all(p.paired for p in r.ports if p.sign == "-")
    g, _ = eliminate_case_ii(g, "s", "r")
    assert counts(g).k + counts(g).l == 0
    (m,) = g.nodes
    assert m.kind == MARKED_LEAF and m.topology == circle()
    (e,) = g.edges
    assert e.is_loop


def _genus_two() -> FoliationGraph:
    leaf = circle()
    return FoliationGraph(
        2,
        nodes=(
            center("p"),
            saddle("q", 1, ["-e1", "+e2", "+e3"]),
            saddle("r", 1, ["-e2", "+e4", "+e5"]),
            saddle("s", 1, ["-e3", "-e4", "+e6"]),
            saddle("u", 1, ["-e5", "-e6", "+e7"]),
            center("w"),
        ),
        edges=tuple(
            LeafFamily(e, a, b, leaf)
            for e, a, b in [("e1", "p", "q"), ("e2", "q", "r"), ("e3", "q", "s"), ("e4", "r", "s"),
                            ("e5", "r", "u"), ("e6", "s", "u"), ("e7", "u", "w")]
        ),
    )


def test_case_ii_blocked_when_sides_stay_connected():
    g = _genus_two()
    assert validate(g).ok
    with pytest.raises(RewriteBlocked) as info:
        eliminate_case_ii(g, "p", "q")
    assert info.value.rule == "transverse-orientation"


def test_trivial_couple_blocked_by_different_outer_labels():
    g = FoliationGraph(
        3,
        nodes=(center("c"), center("x"), saddle("q", 1, ["-e1", "-e2", "+e3"]), Node("C", STABLE_CIRCLE)),
        edges=(LeafFamily("e1", "c", "q", sphere(2)), LeafFamily("e2", "x", "q", sphere(2)),
               LeafFamily("e3", "q", "C", torus())),
    )
    assert validate(g).ok
    with pytest.raises(RewriteBlocked) as info:
        eliminate_trivial_couple(g, "c", "q")
    assert info.value.rule == "outer-labels"


def test_singular_reeb_becomes_solid_torus_picture():
    h, _ = replace_singular_reeb(fixtures.singular_reeb(3, True), "p", "q")
    assert graphs_equal(h, fixtures.reeb_plus_solid_torus(False))
    b = [x for x in h.nodes if x.kind == MARKED_LEAF]
    assert b[0].holonomy is Holonomy.UNILATERAL


def test_singular_reeb_with_open_outer_leaves():
    h, _ = replace_singular_reeb(fixtures.singular_reeb(3, False), "p", "q")
    assert validate(h).ok
    assert sorted(x.kind for x in h.nodes) == [NOVIKOV, NOVIKOV]
    assert not h.edges[0].topology.compact


def test_saddle_pair_elimination():
    h, _ = eliminate_saddle_pair(fixtures.saddle_pair_sphere(3, 1), "q1", "q2")
    assert graphs_equal(h, fixtures.two_center(3))
    with pytest.raises(PreconditionError):
        eliminate_saddle_pair(fixtures.y_graph(3), "q", "q")


def test_created_pair_has_surgered_strong_middle():
    g, trace = create_saddle_pair(fixtures.two_center(4), "e1", 2)
    mid = [e for e in g.edges if e.strong_connection]
    assert len(mid) == 1 and mid[0].topology == surgered(sphere(3), 2)
    assert sorted(x.index for x in g.nodes_of(SADDLE)) == [2, 3]
    assert trace.records[0].added[:2] == ("q1", "q2")


def test_create_saddle_pair_preconditions():
    with pytest.raises(ArgumentError):
        create_saddle_pair(fixtures.two_center(3), "e1", 2)
    with pytest.raises(ArgumentError):
        create_saddle_pair(fixtures.two_center(2), "e1", 1)
    with pytest.raises(RewriteBlocked) as info:
        create_saddle_pair(fixtures.saddle_pair_sphere(3, 1), "e2", 1)
    assert info.value.rule == "strong-connection"
    with pytest.raises(RewriteBlocked) as info:
        create_saddle_pair(fixtures.reeb_plus_solid_torus(), "e1", 1)
    assert info.value.rule == "novikov-boundary"


def test_saddle_pair_model_rejects_bad_index():
    with pytest.raises(ArgumentError):
        SaddlePairModel(0, 1, sphere(2)).check(3)


def test_create_trivial_couple_needs_sphere_leaves():
    with pytest.raises(RewriteBlocked) as info:
        create_trivial_couple(fixtures.linked_circles(), "e1")
    assert info.value.rule == "sphere-family"


@pytest.mark.parametrize("below", [True, False])
def test_trivial_couple_round_trip(below):
    g = fixtures.two_center(3)
    h, trace = create_trivial_couple(g, "e1", below)
    c, q = trace.records[0].added[:2]
    back, _ = eliminate_trivial_couple(h, c, q)
    assert graphs_equal(back, g)


def test_trace_text_round_trip_and_replay():
    g = fixtures.torus_height()
    h, trace = simplify(g, "full")
    text = trace.to_text()
    assert text.splitlines()[0] == "folia-trace/1"
    again = MoveTrace.from_text(text)
    assert again.records == trace.records
    assert again.replay(g) == h


def test_trace_parse_errors():
    with pytest.raises(ParseError):
        MoveTrace.from_text("nope\n")
    with pytest.raises(ParseError) as info:
        MoveTrace.from_text("folia-trace/1\nteleport args=a\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        MoveTrace.from_text("folia-trace/1\neliminate_case_ii args=p,q\n")


def test_simplify_strategies():
    assert len(simplify(fixtures.torus_height(), "trivial-couples")[1]) == 0
    assert len(simplify(fixtures.torus_height(), "saddle-pairs")[1]) == 0
    h, trace = simplify(fixtures.torus_height(), "full")
    assert [r.move for r in trace] == ["eliminate_case_ii", "eliminate_case_ii"]
    h, trace = simplify(fixtures.two_center(3), "full")
    assert len(trace) == 0 and h == fixtures.two_center(3)
    with pytest.raises(ArgumentError):
        simplify(fixtures.two_center(3), "greedy")


def test_simplify_propagates_blocked_rewrite():
    with pytest.raises(RewriteBlocked):
        simplify(_genus_two(), "full")


def _clean(c):
    return {k: v for k, v in c.items() if v}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_moves_change_multiset_by_declared_delta(s):
    rng = np.random.default_rng(s)
    g = random_graph(rng)
    step = try_create(g, rng)
    if step is not None:
        h, trace = step
        (rec,) = trace.records
        assert multiset_delta(g, h) == _clean(declared_delta(g, rec))
        assert complement_identity(g, h, rec) == []
        g = h
    try:
        _, trace = simplify(g, "full")
    except RewriteBlocked:
        return
    for rec in trace:
        h = MoveTrace([rec]).replay(g)
        assert validate(h).ok
        assert multiset_delta(g, h) == _clean(declared_delta(g, rec))
        assert complement_identity(g, h, rec) == []
        g = h


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_saddle_pair_round_trip_property(s):
    rng = np.random.default_rng(s)
    g = random_graph(rng)
    if g.dimension < 3:
        return
    e = sorted(g.edge_map)[rng.integers(len(g.edges))]
    l = int(rng.integers(1, g.dimension - 1))
    try:
        h, trace = create_saddle_pair(g, e, l)
    except RewriteBlocked:
        return
    q1, q2 = trace.records[0].added[:2]
    back, _ = eliminate_saddle_pair(h, q1, q2)
    assert graphs_equal(back, g)
