"""Shared oracles and generators for the test suite."""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from folia import fixtures
from folia.errors import ArgumentError, PreconditionError, RewriteBlocked
from folia.graph import FoliationGraph, _index_multiset
from folia.surgery import create_saddle_pair, create_trivial_couple

BASES = (
    lambda: fixtures.two_center(2),
    lambda: fixtures.two_center(3),
    lambda: fixtures.two_center(4),
    lambda: fixtures.two_center(5),
    fixtures.torus_height,
    lambda: fixtures.y_graph(2),
    lambda: fixtures.y_graph(3),
    lambda: fixtures.eells_kuiper(4),
    lambda: fixtures.saddle_pair_sphere(3, 1),
    fixtures.linked_circles,
)


def _node_key(x) -> tuple:
    semi = None if x.semi_holonomy is None else (x.semi_holonomy.minus_trivial, x.semi_holonomy.plus_trivial)
    return (x.kind, x.index, x.selfconnected, semi, str(x.topology), str(x.holonomy))


def brute_isomorphic(g1: FoliationGraph, g2: FoliationGraph) -> bool:
    """Exhaustive isomorphism test over node and edge bijections (small graphs only)."""
    header = lambda g: (g.dimension, g.closed, g.transversely_orientable, g.null_homotopic_transversal)
    if header(g1) != header(g2) or len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return False
    assert len(g1.nodes) <= 8 and len(g1.edges) <= 10
    n1 = [x.id for x in g1.nodes]
    for perm in itertools.permutations([x.id for x in g2.nodes]):
        nmap = dict(zip(n1, perm))
        if any(_node_key(g1.node(a)) != _node_key(g2.node(b)) for a, b in nmap.items()):
            continue
        for emap in _edge_maps(g1, g2, nmap):
            if _ports_match(g1, g2, nmap, emap):
                return True
    return False


def _edge_class(g, e, nmap=None):
    ends = (e.source, e.target) if nmap is None else (nmap[e.source], nmap[e.target])
    if not g.transversely_orientable:
        ends = tuple(sorted(ends))
    return ends + (str(e.topology), e.strong_connection)


def _edge_maps(g1, g2, nmap):
    classes1: dict = {}
    for e in g1.edges:
        classes1.setdefault(_edge_class(g1, e, nmap), []).append(e.id)
    classes2: dict = {}
    for e in g2.edges:
        classes2.setdefault(_edge_class(g2, e), []).append(e.id)
    if {k: len(v) for k, v in classes1.items()} != {k: len(v) for k, v in classes2.items()}:
        return
    keys = sorted(classes1, key=str)
    choices = [list(itertools.permutations(classes2[k])) for k in keys]
    for combo in itertools.product(*choices):
        emap = {}
        for k, targets in zip(keys, combo):
            emap.update(zip(classes1[k], targets))
        yield emap


def _ports_match(g1, g2, nmap, emap) -> bool:
    for x in g1.nodes:
        a = Counter((p.sign, p.paired, emap[p.edge]) for p in x.ports)
        b = Counter((p.sign, p.paired, p.edge) for p in g2.node(nmap[x.id]).ports)
        if a != b:
            return False
    return True


def relabel(g: FoliationGraph, rng: np.random.Generator) -> FoliationGraph:
    """Rename every id at random and shuffle node, edge and port order."""
    from dataclasses import replace

    from folia.graph import Port

    nodes = [x.id for x in g.nodes]
    edges = [e.id for e in g.edges]
    new_names = [f"z{i}" for i in rng.permutation(len(nodes) + len(edges))]
    nmap = dict(zip(nodes, new_names[: len(nodes)]))
    emap = dict(zip(edges, new_names[len(nodes):]))
    new_nodes = []
    for x in g.nodes:
        ports = [Port(p.sign, emap[p.edge], p.paired) for p in x.ports]
        ports = [ports[i] for i in rng.permutation(len(ports))]
        new_nodes.append(replace(x, id=nmap[x.id], ports=tuple(ports)))
    new_edges = [replace(e, id=emap[e.id], source=nmap[e.source], target=nmap[e.target]) for e in g.edges]
    new_nodes = [new_nodes[i] for i in rng.permutation(len(new_nodes))]
    new_edges = [new_edges[i] for i in rng.permutation(len(new_edges))]
    return g.with_(nodes=tuple(new_nodes), edges=tuple(new_edges))


def try_create(g: FoliationGraph, rng: np.random.Generator):
    """One random creation move, or None if the drawn move does not apply."""
    e = sorted(g.edge_map)[rng.integers(len(g.edges))]
    try:
        if rng.random() < 0.5:
            return create_trivial_couple(g, e, below=bool(rng.integers(2)))
        l = int(rng.integers(1, max(g.dimension - 1, 2)))
        return create_saddle_pair(g, e, l)
    except (RewriteBlocked, ArgumentError, PreconditionError):
        return None


def random_graph(rng: np.random.Generator, max_moves: int = 3) -> FoliationGraph:
    g = BASES[rng.integers(len(BASES))]()
    for _ in range(int(rng.integers(0, max_moves + 1))):
        step = try_create(g, rng)
        if step is not None:
            g = step[0]
    return g


def multiset_delta(before: FoliationGraph, after: FoliationGraph) -> Counter:
    d = Counter({str(k): v for k, v in _index_multiset(after).items()})
    d.subtract(Counter({str(k): v for k, v in _index_multiset(before).items()}))
    return Counter({k: v for k, v in d.items() if v})


def complement_identity(before: FoliationGraph, after: FoliationGraph, rec) -> list[str]:
    """Problems with id bookkeeping outside the rewritten region (empty if none)."""
    problems = []
    removed, added = set(rec.removed), set(rec.added)
    ids_before = set(before.node_map) | set(before.edge_map)
    ids_after = set(after.node_map) | set(after.edge_map)
    if added & ids_before:
        problems.append(f"added ids reuse existing ones: {sorted(added & ids_before)}")
    if ids_after != (ids_before - removed) | added:
        problems.append("surviving ids differ from before minus removed plus added")
    for x in before.nodes:
        if x.id in removed or x.id not in after.node_map:
            continue
        y = after.node_map[x.id]
        if (x.kind, x.index, x.topology, x.holonomy) != (y.kind, y.index, y.topology, y.holonomy):
            problems.append(f"node {x.id} changed outside the region")
    for e in before.edges:
        if e.id in removed or e.id not in after.edge_map:
            continue
        f = after.edge_map[e.id]
        if {e.source, e.target} != {f.source, f.target} or e.topology != f.topology:
            problems.append(f"edge {e.id} changed outside the region")
    return problems


# acceptance results, filled by tests/test_acceptance.py and printed by conftest
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
