from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folia import fixtures
from folia.canon import canonical_form, canonicalize, graphs_equal
from folia.errors import TooLarge
from folia.graph import FoliationGraph, LeafFamily, center, sphere, validate

from helpers import brute_isomorphic, random_graph, relabel


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_relabelled_graph_is_equal(s):
    rng = np.random.default_rng(s)
    g = random_graph(rng)
    assert graphs_equal(g, relabel(g, rng))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_graphs_equal_agrees_with_brute_force(s1, s2):
    g1 = random_graph(np.random.default_rng(s1), max_moves=2)
    g2 = random_graph(np.random.default_rng(s2), max_moves=2)
    if max(len(g1.nodes), len(g2.nodes)) > 7:
        return
    assert graphs_equal(g1, g2) == brute_isomorphic(g1, g2)


def test_distinct_catalog_fixtures_are_distinguished():
    graphs = {name: build() for name, build in fixtures.CATALOG.items()}
    names = sorted(graphs)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if len(graphs[a].nodes) <= 7 and len(graphs[b].nodes) <= 7:
                assert graphs_equal(graphs[a], graphs[b]) == brute_isomorphic(graphs[a], graphs[b]), (a, b)


def test_edge_direction_matters():
    g = fixtures.y_graph(2)
    # reverse every family and every port sign: a different (upside down) graph
    flipped = g.with_(
        edges=tuple(replace(e, source=e.target, target=e.source) for e in g.edges),
        nodes=tuple(
            replace(x, ports=tuple(replace(p, sign="+" if p.sign == "-" else "-") for p in x.ports))
            for x in g.nodes
        ),
    )
    assert validate(flipped).ok
    assert not graphs_equal(g, flipped)
    assert not brute_isomorphic(g, flipped)


def test_labels_matter():
    g = fixtures.two_center(3)
    h = g.with_(edges=(LeafFamily("e1", "c1", "c2", sphere(3)),))
    assert not graphs_equal(g, h)


def test_canonicalize_is_idempotent_and_equal():
    rng = np.random.default_rng(7)
    for build in fixtures.CATALOG.values():
        g = build()
        c = canonicalize(g)
        assert graphs_equal(g, c)
        assert canonicalize(c) == c
        assert canonicalize(relabel(g, rng)) == c
        assert canonical_form(c) == canonical_form(g)


def test_too_large_graph_refused():
    n = 70
    nodes = tuple(center(f"c{i}") for i in range(n))
    edges = tuple(LeafFamily(f"e{i}", f"c{2 * i}", f"c{2 * i + 1}", sphere(2)) for i in range(n // 2))
    g = FoliationGraph(3, nodes, edges)
    with pytest.raises(TooLarge):
        graphs_equal(g, g)
