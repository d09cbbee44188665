"""Canonical labelling and exact isomorphism of foliation graphs.

The graph is viewed as a bipartite incidence structure (graph nodes on one
side, leaf families on the other) and labelled by colour refinement plus
individualization. The search is exhaustive over individualization choices,
so it is exact; it is limited to ``MAX_NODES`` graph nodes.
"""

from __future__ import annotations

from .errors import TooLarge
from .graph import FoliationGraph, LeafFamily, Node, Port, end_ports

MAX_NODES = 64
_SEARCH_BUDGET = 200_000


def _node_attr(node: Node) -> str:
    semi = ""
    if node.semi_holonomy is not None:
        semi = f"{node.semi_holonomy.minus_trivial}/{node.semi_holonomy.plus_trivial}"
    return "|".join(
        str(x)
        for x in ("N", node.kind, node.index, node.selfconnected, semi, node.topology, node.holonomy)
    )


def _edge_attr(e: LeafFamily) -> str:
    return f"E|{e.topology}|{e.strong_connection}"


def _structure(g: FoliationGraph):
    nodes = list(g.nodes)
    edges = list(g.edges)
    index = {n.id: i for i, n in enumerate(nodes)}
    base = len(nodes)
    attrs = [_node_attr(n) for n in nodes] + [_edge_attr(e) for e in edges]
    links = []  # (edge vertex, node vertex, attr)
    for j, e in enumerate(edges):
        slots = end_ports(g, e)
        for role, node_id, slot in (("from", e.source, slots[0]), ("to", e.target, slots[1])):
            node = g.node_map[node_id]
            if e.is_loop:
                port = "" if slot is None else str_port(node.ports[slot])
            else:
                # paired ports may share one incidence of the same family
                port = "".join(sorted(str_port(p) for p in node.ports if p.edge == e.id))
            if not g.transversely_orientable:
                role = "end"
            links.append((base + j, index[node_id], f"{role}{port}"))
    adj: list[list[tuple[str, int]]] = [[] for _ in attrs]
    for u, v, a in links:
        adj[u].append((a, v))
        adj[v].append((a, u))
    header = (g.dimension, g.closed, g.transversely_orientable, g.null_homotopic_transversal)
    return nodes, edges, attrs, links, adj, header


def str_port(p: Port) -> str:
    return f"{p.sign}{'*' if p.paired else ''}"


def _rank(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(colors: list[int], adj) -> list[int]:
    count = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((a, colors[w]) for a, w in adj[v])))
            for v in range(len(colors))
        ]
        new = _rank(sigs)
        new_count = len(set(new))
        if new_count == count:
            return new
        colors, count = new, new_count


def _labelling(g: FoliationGraph):
    if len(g.nodes) > MAX_NODES:
        raise TooLarge(f"exact isomorphism supports at most {MAX_NODES} nodes, got {len(g.nodes)}")
    nodes, edges, attrs, links, adj, header = _structure(g)
    budget = [_SEARCH_BUDGET]

    def certificate(colors):
        return (
            header,
            tuple(a for _, a in sorted(zip(colors, attrs))),
            tuple(sorted((colors[u], colors[v], a) for u, v, a in links)),
        )

    def search(colors):
        budget[0] -= 1
        if budget[0] < 0:
            raise TooLarge("canonical labelling search budget exhausted")
        colors = _refine(colors, adj)
        if len(set(colors)) == len(colors):
            return certificate(colors), colors
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        best = None
        for v, c in enumerate(colors):
            if c != target:
                continue
            trial = [2 * x + 1 for x in colors]
            trial[v] = 2 * c
            result = search(trial)
            if best is None or result[0] < best[0]:
                best = result
        return best

    cert, colors = search(_rank(attrs))
    return cert, colors, nodes, edges


def canonical_form(g: FoliationGraph):
    """Hashable certificate equal for two graphs iff they are isomorphic."""
    return _labelling(g)[0]


def graphs_equal(g1: FoliationGraph, g2: FoliationGraph) -> bool:
    """Isomorphism up to id renaming, preserving kinds, labels, signs and directions."""
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        # still enforce the size bound so oversized input never answers silently
        for g in (g1, g2):
            if len(g.nodes) > MAX_NODES:
                raise TooLarge(f"exact isomorphism supports at most {MAX_NODES} nodes")
        return False
    return canonical_form(g1) == canonical_form(g2)


def canonicalize(g: FoliationGraph) -> FoliationGraph:
    """Rename ids to ``n0..``/``f0..`` in canonical order and sort ports."""
    _, colors, nodes, edges = _labelling(g)
    base = len(nodes)
    node_order = sorted(range(base), key=lambda i: colors[i])
    edge_order = sorted(range(len(edges)), key=lambda j: colors[base + j])
    node_name = {nodes[i].id: f"n{r}" for r, i in enumerate(node_order)}
    edge_name = {edges[j].id: f"f{r}" for r, j in enumerate(edge_order)}
    new_nodes = []
    for i in node_order:
        n = nodes[i]
        ports = tuple(
            sorted(
                (Port(p.sign, edge_name[p.edge], p.paired) for p in n.ports),
                key=lambda p: (p.sign, p.paired, int(p.edge[1:])),
            )
        )
        new_nodes.append(Node(node_name[n.id], n.kind, n.index, n.selfconnected,
                              n.semi_holonomy, ports, n.topology, n.holonomy, n.level))
    new_edges = [
        LeafFamily(edge_name[edges[j].id], node_name[edges[j].source], node_name[edges[j].target],
                   edges[j].topology, edges[j].strong_connection)
        for j in edge_order
    ]
    return g.with_(nodes=tuple(new_nodes), edges=tuple(new_edges))
