"""Center components, boundary arrangements and removable pairings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ArgumentError, ModelInconsistency
from .graph import (
    CENTER,
    MARKED_LEAF,
    MINUS,
    PLUS,
    SADDLE,
    STABLE_CIRCLE,
    FoliationGraph,
    Holonomy,
    require_valid,
)

NO_BOUNDARY = "no_boundary"
CASE_34 = "case_34"
CASE_35_I = "case_35_i"
CASE_35_II = "case_35_ii"
CASE_35_III = "case_35_iii"


@dataclass(frozen=True)
class CenterComponent:
    """Sphere-leaf neighbourhood of a center, grown until it meets a saddle.

    ``members`` lists the center together with any trivial-holonomy sphere
    leaves crossed on the way; ``frontier`` holds nodes other than saddles
    that stop the growth (tangent boundary, leaves with holonomy).
    """

    center: str
    interior_edges: frozenset[str]
    boundary_saddle: str | None
    members: frozenset[str] = frozenset()
    frontier: frozenset[str] = frozenset()

    @property
    def is_whole_graph(self) -> bool:
        return self.boundary_saddle is None and not self.frontier


@dataclass(frozen=True)
class ArrangementCase:
    tag: str
    saddle: str | None = None
    l: int | None = None
    entry: str | None = None  # interior edge through which the component meets the saddle
    f1: str | None = None
    f2: str | None = None
    semi_holonomy_trivial: bool | None = None

    def __str__(self) -> str:
        if self.tag == CASE_34:
            return f"{self.tag}{{l={self.l}}}"
        if self.tag == CASE_35_II:
            return f"{self.tag}{{f1={self.f1}, f2={self.f2}}}"
        if self.tag == CASE_35_III:
            return f"{self.tag}{{semi_holonomy_trivial={self.semi_holonomy_trivial}}}"
        return self.tag


def _passable(g: FoliationGraph, node_id: str) -> bool:
    node = g.node_map[node_id]
    if node.kind == CENTER:
        return True
    return (
        node.kind == MARKED_LEAF
        and node.holonomy is Holonomy.TRIVIAL
        and node.topology.is_sphere(g.dimension - 1)
    )


def center_component(g: FoliationGraph, p: str) -> CenterComponent:
    """Grow the sphere-leaf component of center ``p`` breadth-first."""
    require_valid(g)
    if g.node(p).kind != CENTER:
        raise ArgumentError(f"{p!r} is not a center")
    leaf_dim = g.dimension - 1
    members = {p}
    interior: set[str] = set()
    saddles: set[str] = set()
    frontier: set[str] = set()
    queue = deque([p])
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            if e.id in interior:
                continue
            if not e.topology.is_sphere(leaf_dim):
                if g.node_map[x].kind == CENTER:
                    raise ModelInconsistency(
                        "center-leaves", f"family {e.id} at center {x} is {e.topology}, not a sphere"
                    )
                continue
            interior.add(e.id)
            y = e.other(x)
            if y in members:
                continue
            kind = g.node_map[y].kind
            if kind == SADDLE:
                saddles.add(y)
            elif _passable(g, y):
                members.add(y)
                queue.append(y)
            else:
                frontier.add(y)
    if len(saddles) > 1:
        raise ModelInconsistency(
            "single-boundary-saddle",
            f"component of {p} is bounded by saddles {sorted(saddles)}; "
            "its boundary meets at most one saddle when there are no saddle-connections",
        )
    return CenterComponent(
        center=p,
        interior_edges=frozenset(interior),
        boundary_saddle=next(iter(saddles), None),
        members=frozenset(members),
        frontier=frozenset(frontier),
    )


def classify_boundary(g: FoliationGraph, comp: CenterComponent) -> ArrangementCase:
    """Decide which arrangement the boundary of ``comp`` realizes.

    The answer depends on the port through which the sphere leaves reach the
    saddle ``q``: through a paired port the saddle closes up on itself
    (singular Reeb component); through the port whose sign is unique both
    separatrices bound the component; through one of two distinct same-sign
    ports a single separatrix does.
    """
    q_id = comp.boundary_saddle
    if q_id is None:
        return ArrangementCase(NO_BOUNDARY)
    n = g.dimension
    q = g.node(q_id)
    l = q.index
    entries = sorted({p.edge for p in q.ports if p.edge in comp.interior_edges})
    if len(entries) != 1:
        raise ModelInconsistency(
            "single-separatrix-entry",
            f"component of {comp.center} reaches {q_id} through {len(entries)} families",
        )
    entry = entries[0]
    if 2 <= l <= n - 2:
        return ArrangementCase(CASE_34, q_id, l=l, entry=entry)

    slots = [i for i, p in enumerate(q.ports) if p.edge == entry]
    ports = [q.ports[i] for i in slots]
    signs = [p.sign for p in q.ports]
    lone = PLUS if signs.count(PLUS) == 1 else MINUS

    if any(p.paired for p in ports):
        return _case_iii(g, q, entry, l)
    if len(ports) != 1:
        raise ModelInconsistency("single-separatrix-entry", f"{entry} meets {q_id} at {len(ports)} ports")
    if ports[0].sign == lone:
        f1, f2 = (p.edge for p in q.ports if p.sign != lone)
        for f in (f1, f2):
            if not g.edge(f).topology.is_sphere(n - 1):
                raise ModelInconsistency(
                    "separatrix-sides-spheres",
                    f"family {f} beyond a separatrix of {q_id} is {g.edge(f).topology}, not a sphere",
                )
        return ArrangementCase(CASE_35_II, q_id, l=l, entry=entry, f1=f1, f2=f2)
    return ArrangementCase(CASE_35_I, q_id, l=l, entry=entry)


def _case_iii(g: FoliationGraph, q, entry: str, l: int) -> ArrangementCase:
    if q.semi_holonomy is None:
        raise ModelInconsistency("semi-holonomy-missing", f"selfconnected saddle {q.id} has no semi-holonomy")
    outer = [p.edge for p in q.ports if not p.paired]
    trivial = q.semi_holonomy.minus_trivial
    for e_id in outer:
        compact = g.edge(e_id).topology.compact
        if trivial != compact:
            want = "compact S^1 x S^(n-2)" if trivial else "open R x S^(n-2)"
            raise ModelInconsistency(
                "semi-holonomy-label",
                f"semi-holonomy at {q.id} is {'trivial' if trivial else 'nontrivial'}, "
                f"so {e_id} should carry {want} leaves, not {g.edge(e_id).topology}",
            )
    return ArrangementCase(CASE_35_III, q.id, l=l, entry=entry, semi_holonomy_trivial=trivial)


def find_trivial_couples(g: FoliationGraph) -> list[tuple[str, str]]:
    """All (center, saddle) pairs whose arrangement has a single separatrix."""
    out = []
    for node in sorted(g.nodes_of(CENTER), key=lambda x: x.id):
        comp = center_component(g, node.id)
        if comp.boundary_saddle is None:
            continue
        if classify_boundary(g, comp).tag == CASE_35_I:
            out.append((node.id, comp.boundary_saddle))
    return out


def find_strong_connections(g: FoliationGraph) -> list[tuple[str, str]]:
    require_valid(g)
    return [(e.source, e.target) for e in sorted(g.edges, key=lambda e: e.id) if e.strong_connection]


def weakly_stable(g: FoliationGraph, component: str) -> bool:
    """True iff every family around the singular component has compact leaves."""
    node = g.node(component)
    if node.kind == SADDLE:
        raise ArgumentError(f"{component} is a saddle; saddles are never stable")
    if node.kind not in (CENTER, STABLE_CIRCLE):
        raise ArgumentError(f"{component} is a {node.kind}, not a singular component")
    return all(e.topology.compact for e in g.incident(component))
