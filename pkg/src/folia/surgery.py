"""Elimination and creation surgeries as graph rewrites with a replayable trace."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable

from .arrangements import (
    find_strong_connections,
    find_trivial_couples,
    CASE_35_I,
    CASE_35_II,
    CASE_35_III,
    center_component,
    classify_boundary,
)
from .errors import ArgumentError, ModelInconsistency, PreconditionError, RewriteBlocked
from .graph import (
    CENTER,
    EXTREMUM,
    MINUS,
    NOVIKOV,
    PLUS,
    SADDLE,
    FoliationGraph,
    Holonomy,
    LeafFamily,
    LeafTopology,
    Node,
    Port,
    SemiHolonomy,
    _index_multiset,
    center,
    custom,
    end_ports,
    marked_leaf,
    require_valid,
    surgered,
)

TRIVIAL_SEMI = SemiHolonomy(minus_trivial=True)


@dataclass(frozen=True)
class SaddlePairModel:
    """Parameters of a cancelling saddle pair in its local model."""

    l: int
    epsilon_sign: int  # +1: pair present, -1: pair cancelled
    base_topology: LeafTopology

    def check(self, n: int) -> None:
        if not 1 <= self.l <= n - 2:
            raise ArgumentError(f"pair index l={self.l} outside 1..{n - 2} for n={n}")
        if self.epsilon_sign not in (1, -1):
            raise ArgumentError("epsilon_sign must be +1 or -1")


@dataclass(frozen=True)
class MoveRecord:
    move: str
    args: tuple
    removed: tuple[str, ...]
    added: tuple[str, ...]
    before: tuple[tuple[str, int], ...]
    after: tuple[tuple[str, int], ...]

    def delta(self) -> Counter:
        out = Counter(dict(self.after))
        out.subtract(Counter(dict(self.before)))
        return Counter({k: v for k, v in out.items() if v})

    def to_line(self) -> str:
        def ms(items):
            return ",".join(f"{k}:{v}" for k, v in items) or "-"

        return (
            f"{self.move} args={','.join(map(str, self.args)) or '-'} "
            f"removed={','.join(self.removed) or '-'} added={','.join(self.added) or '-'} "
            f"before={ms(self.before)} after={ms(self.after)}"
        )


@dataclass
class MoveTrace:
    records: list[MoveRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def extend(self, other: MoveTrace) -> MoveTrace:
        self.records.extend(other.records)
        return self

    def replay(self, g: FoliationGraph) -> FoliationGraph:
        """Re-apply every recorded move to ``g``."""
        for rec in self.records:
            g, _ = MOVES[rec.move](g, *rec.args)
        return g

    def to_text(self) -> str:
        lines = ["folia-trace/1"] + [rec.to_line() for rec in self.records]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> MoveTrace:
        from .errors import ParseError

        lines = text.splitlines()
        if not lines or lines[0].strip() != "folia-trace/1":
            raise ParseError("expected header 'folia-trace/1'", 1, 1)
        records = []
        for lineno, raw in enumerate(lines[1:], start=2):
            if not raw.strip():
                continue
            move, *fields = raw.split()
            if move not in MOVES:
                raise ParseError(f"unknown move {move!r}", lineno, 1)
            kv = {}
            for f in fields:
                key, sep, value = f.partition("=")
                if not sep or key not in ("args", "removed", "added", "before", "after"):
                    raise ParseError(f"bad field {f!r}", lineno, raw.index(f) + 1)
                kv[key] = value
            if set(kv) != {"args", "removed", "added", "before", "after"}:
                raise ParseError("missing trace field", lineno, 1)

            def ids(v):
                return () if v == "-" else tuple(v.split(","))

            def ms(v):
                if v == "-":
                    return ()
                items = []
                for part in v.split(","):
                    k, _, c = part.rpartition(":")
                    items.append((k, int(c)))
                return tuple(items)

            args = tuple(int(a) if a.lstrip("-").isdigit() else a for a in ids(kv["args"]))
            records.append(MoveRecord(move, args, ids(kv["removed"]), ids(kv["added"]),
                                      ms(kv["before"]), ms(kv["after"])))
        return cls(records)


def _ms(g: FoliationGraph) -> tuple[tuple[str, int], ...]:
    return tuple(sorted((str(k), v) for k, v in _index_multiset(g).items()))


# ---------------------------------------------------------------------------
# Rewrite plumbing
# ---------------------------------------------------------------------------


def _fresh(g: FoliationGraph, prefix: str, taken: set[str], count: int = 1) -> list[str]:
    used = set(g.node_map) | set(g.edge_map) | taken
    out = []
    i = 1
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in used:
            out.append(name)
            used.add(name)
        i += 1
    taken.update(out)
    return out


def _rename_ports(node: Node, mapping: dict[str, str]) -> Node:
    if not node.ports:
        return node
    ports = tuple(Port(p.sign, mapping.get(p.edge, p.edge), p.paired) for p in node.ports)
    return replace(node, ports=ports)


def _rewrite(
    g: FoliationGraph,
    move: str,
    args: tuple,
    remove_nodes: set[str],
    remove_edges: set[str],
    add_nodes: list[Node],
    add_edges: list[LeafFamily],
    node_updates: dict[str, Node] | None = None,
    edge_updates: dict[str, LeafFamily] | None = None,
) -> tuple[FoliationGraph, MoveTrace]:
    node_updates = node_updates or {}
    edge_updates = edge_updates or {}
    nodes = [node_updates.get(x.id, x) for x in g.nodes if x.id not in remove_nodes] + add_nodes
    edges = [edge_updates.get(e.id, e) for e in g.edges if e.id not in remove_edges] + add_edges
    out = g.with_(nodes=tuple(nodes), edges=tuple(edges))
    require_valid(out)
    rec = MoveRecord(
        move,
        args,
        tuple(sorted(remove_nodes)) + tuple(sorted(remove_edges)),
        tuple(x.id for x in add_nodes) + tuple(e.id for e in add_edges),
        _ms(g),
        _ms(out),
    )
    return out, MoveTrace([rec])


def _arrangement(g: FoliationGraph, p: str, q: str, want: str):
    require_valid(g)
    node_p, node_q = g.node_map.get(p), g.node_map.get(q)
    if node_p is None or node_p.kind != CENTER or node_q is None or node_q.kind != SADDLE:
        raise PreconditionError(f"({p}, {q}) is not a (center, saddle) pair")
    comp = center_component(g, p)
    if comp.boundary_saddle != q:
        raise PreconditionError(f"{q} does not bound the center component of {p}")
    case = classify_boundary(g, comp)
    if case.tag != want:
        raise PreconditionError(f"arrangement at ({p}, {q}) is {case.tag}, not {want}")
    return comp, case


# ---------------------------------------------------------------------------
# Center-saddle eliminations
# ---------------------------------------------------------------------------


def eliminate_trivial_couple(g: FoliationGraph, p: str, q: str) -> tuple[FoliationGraph, MoveTrace]:
    """Remove a dead branch: the couple (p, q) and its sphere component."""
    comp, case = _arrangement(g, p, q, CASE_35_I)
    node_q = g.node(q)
    rest = [pt for pt in node_q.ports if pt.edge != case.entry]
    incoming = next(pt.edge for pt in rest if pt.sign == MINUS)
    outgoing = next(pt.edge for pt in rest if pt.sign == PLUS)
    e_in, e_out = g.edge(incoming), g.edge(outgoing)
    if e_in.topology != e_out.topology:
        raise RewriteBlocked(
            "outer-labels",
            f"families {incoming} ({e_in.topology}) and {outgoing} ({e_out.topology}) cannot be glued",
        )
    remove_nodes = set(comp.members) | {q}
    remove_edges = set(comp.interior_edges) | {incoming, outgoing}
    taken: set[str] = set()
    if incoming == outgoing:
        # both remaining ports on one loop at q: what is left is a single closed leaf family
        (m_id,) = _fresh(g, "m", taken)
        (e_id,) = _fresh(g, "e", taken)
        return _rewrite(
            g, "eliminate_trivial_couple", (p, q), remove_nodes, remove_edges,
            [marked_leaf(m_id, e_in.topology)],
            [LeafFamily(e_id, m_id, m_id, e_in.topology)],
        )
    x, y = e_in.other(q), e_out.other(q)
    (e_id,) = _fresh(g, "e", taken)
    new_edge = LeafFamily(e_id, x, y, e_in.topology)
    mapping = {incoming: e_id, outgoing: e_id}
    updates = {z: _rename_ports(g.node(z), mapping) for z in {x, y}}
    return _rewrite(g, "eliminate_trivial_couple", (p, q), remove_nodes, remove_edges,
                    [], [new_edge], updates)


def eliminate_case_ii(g: FoliationGraph, p: str, q: str) -> tuple[FoliationGraph, MoveTrace]:
    """Replace the annulus between the two separatrix sides by a product of spheres."""
    comp, case = _arrangement(g, p, q, CASE_35_II)
    n = g.dimension
    f1, f2 = g.edge(case.f1), g.edge(case.f2)
    for f in (f1, f2):
        if not f.topology.is_sphere(n - 1):
            raise RewriteBlocked("sphere-sides", f"family {f.id} is {f.topology}, not a sphere")
    if f1.topology != f2.topology:
        raise RewriteBlocked("outer-labels", f"{f1.id} and {f2.id} carry different labels")
    label = f1.topology
    remove_nodes = set(comp.members) | {q}
    remove_edges = set(comp.interior_edges) | {f1.id, f2.id}
    taken: set[str] = set()

    if f1.id == f2.id:
        # the two sides are one loop at q: the annulus closes up into a single leaf family
        (m_id,) = _fresh(g, "m", taken)
        (e_id,) = _fresh(g, "e", taken)
        return _rewrite(g, "eliminate_case_ii", (p, q), remove_nodes, remove_edges,
                        [marked_leaf(m_id, label)], [LeafFamily(e_id, m_id, m_id, label)])

    x, y = f1.other(q), f2.other(q)
    (e_id,) = _fresh(g, "e", taken)
    mapping = {f1.id: e_id, f2.id: e_id}

    if x == y:
        node_x = g.node(x)
        if node_x.kind != SADDLE:
            raise ModelInconsistency("separatrix-sides", f"{x} bounds both sides but is not a saddle")
        ports = tuple(
            Port(pt.sign, e_id, True) if pt.edge in mapping else pt for pt in node_x.ports
        )
        updated = replace(node_x, ports=ports, selfconnected=True)
        new_edge = LeafFamily(e_id, x, x, label)
        return _rewrite(g, "eliminate_case_ii", (p, q), remove_nodes, remove_edges,
                        [], [new_edge], {x: updated})

    # the two sides have the same sign at q, so gluing them needs one side's
    # transverse orientation reversed; possible only if that side is a separate piece
    node_updates: dict[str, Node] = {}
    edge_updates: dict[str, LeafFamily] = {}
    if g.transversely_orientable:
        keep_nodes = [z for z in g.node_map if z not in remove_nodes]
        keep_edges = [e for e in g.edges if e.id not in remove_edges]
        # the endpoint whose side must be reversed so that x -> y is consistent
        z, other = (x, y) if f1.target == x else (y, x)
        side = _reach(z, keep_nodes, keep_edges)
        if other in side:
            raise RewriteBlocked(
                "transverse-orientation",
                f"{x} and {y} stay connected, so the glued family cannot be oriented",
            )
        for e in keep_edges:
            if e.source in side:
                edge_updates[e.id] = replace(e, source=e.target, target=e.source)
        for w in side:
            node_updates[w] = _negate_ports(g.node(w))
    for z in (x, y):
        node_updates[z] = _rename_ports(node_updates.get(z, g.node(z)), mapping)
    new_edge = LeafFamily(e_id, x, y, label)
    return _rewrite(g, "eliminate_case_ii", (p, q), remove_nodes, remove_edges,
                    [], [new_edge], node_updates, edge_updates)


def _negate_ports(node: Node) -> Node:
    if not node.ports:
        return node
    flip = {PLUS: MINUS, MINUS: PLUS}
    return replace(node, ports=tuple(Port(flip[p.sign], p.edge, p.paired) for p in node.ports))


def _reach(start: str, nodes: list[str], edges: list[LeafFamily]) -> set[str]:
    adj: dict[str, list[str]] = {z: [] for z in nodes}
    for e in edges:
        adj[e.source].append(e.target)
        adj[e.target].append(e.source)
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def reeb_interior(n: int) -> LeafTopology:
    """Leaf type inside an opaque Reeb-type component."""
    return custom("plane" if n == 3 else f"R{n - 1}", compact=False)


def replace_singular_reeb(g: FoliationGraph, p: str, q: str) -> tuple[FoliationGraph, MoveTrace]:
    """Swap a singular Reeb component for an opaque Novikov component."""
    comp, case = _arrangement(g, p, q, CASE_35_III)
    n = g.dimension
    node_q = g.node(q)
    outer_ids = sorted({pt.edge for pt in node_q.ports if not pt.paired})
    if len(outer_ids) != 1 or outer_ids[0] in comp.interior_edges:
        raise RewriteBlocked("outer-family", f"{q} needs exactly one family outside the component")
    outer = g.edge(outer_ids[0])
    if outer.is_loop:
        raise RewriteBlocked("outer-family", f"outer family {outer.id} is a loop at {q}")
    y = outer.other(q)
    outward = outer.source == q
    remove_nodes = set(comp.members) | {q}
    remove_edges = set(comp.interior_edges) | {outer.id}
    taken: set[str] = set()
    (nov_id,) = _fresh(g, "N", taken)

    if case.semi_holonomy_trivial:
        # open leaves inside, a compact boundary leaf with one-sided holonomy
        (b_id,) = _fresh(g, "B", taken)
        e_in, e_out = _fresh(g, "e", taken, 2)
        boundary = marked_leaf(b_id, outer.topology, Holonomy.UNILATERAL)
        if outward:
            edges = [LeafFamily(e_in, nov_id, b_id, reeb_interior(n)),
                     LeafFamily(e_out, b_id, y, outer.topology)]
        else:
            edges = [LeafFamily(e_out, y, b_id, outer.topology),
                     LeafFamily(e_in, b_id, nov_id, reeb_interior(n))]
        new_nodes = [Node(nov_id, NOVIKOV), boundary]
    else:
        # non-compact outer leaves already belong to the Novikov component
        (e_out,) = _fresh(g, "e", taken)
        src, dst = (nov_id, y) if outward else (y, nov_id)
        edges = [LeafFamily(e_out, src, dst, outer.topology)]
        new_nodes = [Node(nov_id, NOVIKOV)]
    updates = {y: _rename_ports(g.node(y), {outer.id: e_out})}
    return _rewrite(g, "replace_singular_reeb", (p, q), remove_nodes, remove_edges,
                    new_nodes, edges, updates)


# ---------------------------------------------------------------------------
# Saddle pairs
# ---------------------------------------------------------------------------


def _pair_saddle(node_id: str, index: int, n: int, incoming: str, outgoing: str) -> Node:
    if index == 1:
        return Node(node_id, SADDLE, index=index, selfconnected=True, semi_holonomy=TRIVIAL_SEMI,
                    ports=(Port(MINUS, incoming, True), Port(MINUS, incoming, True),
                           Port(PLUS, outgoing)))
    if index == n - 1:
        return Node(node_id, SADDLE, index=index, selfconnected=True, semi_holonomy=TRIVIAL_SEMI,
                    ports=(Port(MINUS, incoming), Port(PLUS, outgoing, True),
                           Port(PLUS, outgoing, True)))
    return Node(node_id, SADDLE, index=index, ports=(Port(MINUS, incoming), Port(PLUS, outgoing)))


def create_saddle_pair(g: FoliationGraph, e: str, l: int) -> tuple[FoliationGraph, MoveTrace]:
    """Split family ``e`` by a cancelling pair of saddles of indices l and l+1."""
    require_valid(g)
    n = g.dimension
    if not isinstance(l, int) or not 1 <= l <= n - 2:
        raise ArgumentError(f"pair index l={l} outside 1..{n - 2} for n={n}")
    edge = g.edge(e)
    SaddlePairModel(l, 1, edge.topology).check(n)
    a, b = g.node(edge.source), g.node(edge.target)
    if NOVIKOV in (a.kind, b.kind):
        raise RewriteBlocked("novikov-boundary", f"family {e} bounds a Novikov component")
    if not edge.topology.compact:
        raise RewriteBlocked("open-leaf", f"family {e} has non-compact leaves")
    if edge.strong_connection:
        raise RewriteBlocked("strong-connection", f"splitting {e} would break a strong connection")
    taken: set[str] = set()
    q1, q2 = _fresh(g, "q", taken, 2)
    e_a, e_mid, e_b = _fresh(g, "e", taken, 3)
    updates: dict[str, Node] = {}
    if edge.is_loop:
        if a.kind == SADDLE:
            src_slot, dst_slot = end_ports(g, edge)
            if a.ports[src_slot].sign == a.ports[dst_slot].sign and g.transversely_orientable:
                raise RewriteBlocked("paired-loop", f"loop {e} at {a.id} joins two same-sign ports")
            ports = list(a.ports)
            ports[src_slot] = replace(ports[src_slot], edge=e_a)
            ports[dst_slot] = replace(ports[dst_slot], edge=e_b)
            updates[a.id] = replace(a, ports=tuple(ports))
    else:
        updates[a.id] = _rename_ports(a, {e: e_a})
        updates[b.id] = _rename_ports(b, {e: e_b})
    new_nodes = [_pair_saddle(q1, l, n, e_a, e_mid), _pair_saddle(q2, l + 1, n, e_mid, e_b)]
    new_edges = [
        LeafFamily(e_a, edge.source, q1, edge.topology),
        LeafFamily(e_mid, q1, q2, surgered(edge.topology, l), strong_connection=True),
        LeafFamily(e_b, q2, edge.target, edge.topology),
    ]
    return _rewrite(g, "create_saddle_pair", (e, l), set(), {e}, new_nodes, new_edges, updates)


def eliminate_saddle_pair(g: FoliationGraph, q1: str, q2: str) -> tuple[FoliationGraph, MoveTrace]:
    """Cancel two saddles joined by a strong connection."""
    require_valid(g)
    strong = [e for e in g.edges if e.strong_connection and {e.source, e.target} == {q1, q2}]
    if not strong or q1 == q2:
        raise PreconditionError(f"no strong connection between {q1} and {q2}")
    mid = strong[0]
    lo, hi = mid.source, mid.target
    outer_lo = sorted({pt.edge for pt in g.node(lo).ports if pt.edge != mid.id})
    outer_hi = sorted({pt.edge for pt in g.node(hi).ports if pt.edge != mid.id})
    if len(outer_lo) != 1 or len(outer_hi) != 1 or len(g.incident(lo)) + len(g.incident(hi)) > 4:
        raise RewriteBlocked("outer-families", "each saddle of the pair needs exactly one outer family")
    e_a, e_b = g.edge(outer_lo[0]), g.edge(outer_hi[0])
    if e_a.id == e_b.id:
        raise RewriteBlocked("outer-families", f"{lo} and {hi} share their outer family {e_a.id}")
    if e_a.topology != e_b.topology:
        raise RewriteBlocked(
            "outer-labels", f"{e_a.id} ({e_a.topology}) and {e_b.id} ({e_b.topology}) disagree"
        )
    label = e_a.topology
    base = mid.topology.base
    if base is not None and base != label:
        raise RewriteBlocked("surgered-base", f"middle family base {base} differs from outer label {label}")
    a, b = e_a.other(lo), e_b.other(hi)
    taken: set[str] = set()
    (e_id,) = _fresh(g, "e", taken)
    mapping = {e_a.id: e_id, e_b.id: e_id}
    updates = {}
    for z in {a, b}:
        updates[z] = _rename_ports(g.node(z), mapping)
    new_edge = LeafFamily(e_id, a, b, label)
    return _rewrite(g, "eliminate_saddle_pair", (q1, q2), {lo, hi}, {e_a.id, mid.id, e_b.id},
                    [], [new_edge], updates)


def create_trivial_couple(g: FoliationGraph, e: str, below: bool = True) -> tuple[FoliationGraph, MoveTrace]:
    """Insert a dead branch on a sphere family: a new center and saddle.

    With ``below`` the new center is a minimum feeding an index 1 saddle,
    otherwise a maximum fed by an index n-1 saddle.
    """
    require_valid(g)
    n = g.dimension
    edge = g.edge(e)
    if not edge.topology.is_sphere(n - 1):
        raise RewriteBlocked("sphere-family", f"dead branches live on sphere families, {e} is {edge.topology}")
    if edge.strong_connection:
        raise RewriteBlocked("strong-connection", f"splitting {e} would break a strong connection")
    taken: set[str] = set()
    (p_id,) = _fresh(g, "c", taken)
    (q_id,) = _fresh(g, "q", taken)
    e_a, e_b, e_p = _fresh(g, "e", taken, 3)
    leaf = edge.topology
    if below:
        q = Node(q_id, SADDLE, index=1, ports=(Port(MINUS, e_a), Port(MINUS, e_p), Port(PLUS, e_b)))
        spoke = LeafFamily(e_p, p_id, q_id, leaf)
    else:
        q = Node(q_id, SADDLE, index=n - 1, ports=(Port(MINUS, e_a), Port(PLUS, e_p), Port(PLUS, e_b)))
        spoke = LeafFamily(e_p, q_id, p_id, leaf)
    updates: dict[str, Node] = {}
    a = g.node(edge.source)
    if edge.is_loop:
        if a.kind == SADDLE:
            src_slot, dst_slot = end_ports(g, edge)
            if a.ports[src_slot].sign == a.ports[dst_slot].sign and g.transversely_orientable:
                raise RewriteBlocked("paired-loop", f"loop {e} at {a.id} joins two same-sign ports")
            ports = list(a.ports)
            ports[src_slot] = replace(ports[src_slot], edge=e_a)
            ports[dst_slot] = replace(ports[dst_slot], edge=e_b)
            updates[a.id] = replace(a, ports=tuple(ports))
    else:
        updates[a.id] = _rename_ports(a, {e: e_a})
        updates[edge.target] = _rename_ports(g.node(edge.target), {e: e_b})
    new_edges = [
        LeafFamily(e_a, edge.source, q_id, leaf),
        LeafFamily(e_b, q_id, edge.target, leaf),
        spoke,
    ]
    return _rewrite(g, "create_trivial_couple", (e, int(below)), set(), {e},
                    [center(p_id), q], new_edges, updates)


MOVES: dict[str, Callable] = {
    "eliminate_trivial_couple": eliminate_trivial_couple,
    "eliminate_case_ii": eliminate_case_ii,
    "replace_singular_reeb": replace_singular_reeb,
    "create_saddle_pair": create_saddle_pair,
    "eliminate_saddle_pair": eliminate_saddle_pair,
    "create_trivial_couple": lambda g, e, below=1: create_trivial_couple(g, e, bool(below)),
}

# declared change of the index multiset for each move, given the graph before it
def declared_delta(g: FoliationGraph, rec: MoveRecord) -> Counter:
    if rec.move in ("eliminate_trivial_couple", "eliminate_case_ii", "replace_singular_reeb"):
        q = g.node(rec.args[1])
        return Counter({EXTREMUM: -1, str(q.index): -1})
    if rec.move == "create_saddle_pair":
        l = rec.args[1]
        return Counter({str(l): 1, str(l + 1): 1})
    if rec.move == "eliminate_saddle_pair":
        i, j = (g.node(x).index for x in rec.args)
        return Counter({str(i): -1, str(j): -1})
    if rec.move == "create_trivial_couple":
        idx = 1 if rec.args[1] else g.dimension - 1
        return Counter({EXTREMUM: 1, str(idx): 1})
    raise ArgumentError(f"unknown move {rec.move!r}")


STRATEGIES = ("trivial-couples", "saddle-pairs", "full")


def _next_move(g: FoliationGraph, strategy: str):
    if strategy in ("saddle-pairs", "full"):
        pairs = find_strong_connections(g)
        if pairs:
            return eliminate_saddle_pair, pairs[0]
    if strategy in ("trivial-couples", "full"):
        couples = find_trivial_couples(g)
        if couples:
            return eliminate_trivial_couple, couples[0]
    if strategy == "full":
        for node in sorted(g.nodes_of(CENTER), key=lambda x: x.id):
            comp = center_component(g, node.id)
            tag = classify_boundary(g, comp).tag
            if tag == CASE_35_II:
                return eliminate_case_ii, (node.id, comp.boundary_saddle)
            if tag == CASE_35_III:
                return replace_singular_reeb, (node.id, comp.boundary_saddle)
    return None


def simplify(g: FoliationGraph, strategy: str = "full") -> tuple[FoliationGraph, MoveTrace]:
    """Apply eliminations until none applies.

    ``saddle-pairs`` cancels strong connections, ``trivial-couples`` removes
    single-separatrix couples and ``full`` does both, then case-ii and
    singular-Reeb rewrites. Ties are broken by the lowest id. A blocked rewrite
    propagates as :class:`RewriteBlocked`.
    """
    if strategy not in STRATEGIES:
        raise ArgumentError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    require_valid(g)
    trace = MoveTrace()
    while (step := _next_move(g, strategy)) is not None:
        move, args = step
        g, rec = move(g, *args)
        trace.extend(rec)
    return g, trace
