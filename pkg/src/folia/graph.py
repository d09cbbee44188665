"""Decorated leaf-space graphs of codimension-one Morse foliations.

A :class:`FoliationGraph` has one node per singular component, distinguished
leaf or opaque region, and one edge per one-parameter family of mutually
diffeomorphic leaves. Graphs are immutable values; rewrites build new graphs.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ArgumentError, InvalidGraph

CENTER = "center"
SADDLE = "saddle"
STABLE_CIRCLE = "stable_circle"
MARKED_LEAF = "marked_leaf"
NOVIKOV = "novikov"
BOUNDARY = "boundary_tangent"

NODE_KINDS = (CENTER, SADDLE, STABLE_CIRCLE, MARKED_LEAF, NOVIKOV, BOUNDARY)

PLUS = "+"
MINUS = "-"

EXTREMUM = "extremum"
CIRCLE_COMPONENT = "circle-component"


# ---------------------------------------------------------------------------
# Leaf topology labels
# ---------------------------------------------------------------------------

_TOPOLOGY_KINDS = {
    # kind -> number of arguments
    "sphere": 1,
    "circle": 0,
    "torus": 0,
    "product_spheres": 2,
    "glued_product": 1,
    "wedge_quotient": 1,
    "cylinder_S1xS": 1,
    "open_RxS": 1,
    "surgered": 2,
    "custom": None,
}


@dataclass(frozen=True)
class LeafTopology:
    """Symbolic diffeomorphism type of the leaves in a family.

    Equivalent spellings are normalized on construction: ``sphere(1)`` is a
    ``circle`` and ``product_spheres(1,1)`` / ``cylinder_S1xS(1)`` are a
    ``torus``.
    """

    kind: str
    args: tuple = ()
    compact: bool = True

    def __post_init__(self):
        if self.kind not in _TOPOLOGY_KINDS:
            raise ArgumentError(f"unknown leaf topology {self.kind!r}")
        arity = _TOPOLOGY_KINDS[self.kind]
        if arity is not None and len(self.args) != arity:
            raise ArgumentError(f"{self.kind} takes {arity} argument(s)")
        if self.kind == "sphere" and self.args[0] == 1:
            object.__setattr__(self, "kind", "circle")
            object.__setattr__(self, "args", ())
        elif (self.kind == "product_spheres" and self.args == (1, 1)) or (
            self.kind == "cylinder_S1xS" and self.args == (1,)
        ):
            object.__setattr__(self, "kind", "torus")
            object.__setattr__(self, "args", ())
        if self.kind == "open_RxS":
            object.__setattr__(self, "compact", False)
        elif self.kind == "surgered":
            object.__setattr__(self, "compact", self.args[0].compact)
        elif self.kind != "custom":
            object.__setattr__(self, "compact", True)

    @property
    def euler_characteristic(self) -> int | None:
        if self.kind == "sphere":
            return 0 if self.args[0] % 2 else 2
        if self.kind in ("circle", "torus", "cylinder_S1xS"):
            return 0
        if self.kind == "product_spheres":
            a, b = (0 if m % 2 else 2 for m in self.args)
            return a * b
        return None

    def is_sphere(self, dim: int) -> bool:
        if dim == 1:
            return self.kind == "circle"
        return self.kind == "sphere" and self.args[0] == dim

    @property
    def base(self) -> LeafTopology | None:
        return self.args[0] if self.kind == "surgered" else None

    def __str__(self) -> str:
        if self.kind == "custom":
            name = self.args[0]
            return f"custom({name})" if self.compact else f"custom({name},open)"
        if not self.args:
            return self.kind
        return f"{self.kind}({','.join(str(a) for a in self.args)})"


def sphere(m: int) -> LeafTopology:
    return LeafTopology("sphere", (m,))


def circle() -> LeafTopology:
    return LeafTopology("circle")


def torus() -> LeafTopology:
    return LeafTopology("torus")


def open_rxs(m: int) -> LeafTopology:
    return LeafTopology("open_RxS", (m,))


def surgered(base: LeafTopology, l: int) -> LeafTopology:
    return LeafTopology("surgered", (base, l))


def custom(name: str, compact: bool = True) -> LeafTopology:
    return LeafTopology("custom", (name,), compact)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_^]*|-?\d+|[(),])")


def parse_topology(text: str) -> LeafTopology:
    """Parse the textual form produced by ``str(LeafTopology)``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ArgumentError(f"bad topology label {text!r} at offset {pos}")
        tokens.append(m.group(1))
        pos = m.end()

    def expr(i: int) -> tuple[LeafTopology, int]:
        kind = tokens[i]
        if kind not in _TOPOLOGY_KINDS:
            raise ArgumentError(f"unknown leaf topology {kind!r} in {text!r}")
        i += 1
        args: list = []
        if i < len(tokens) and tokens[i] == "(":
            i += 1
            while True:
                tok = tokens[i]
                if kind == "custom":
                    args.append(tok)
                    i += 1
                elif tok in _TOPOLOGY_KINDS:
                    sub, i = expr(i)
                    args.append(sub)
                else:
                    try:
                        args.append(int(tok))
                    except ValueError:
                        raise ArgumentError(f"bad argument {tok!r} in {text!r}") from None
                    i += 1
                if tokens[i] == ")":
                    i += 1
                    break
                if tokens[i] != ",":
                    raise ArgumentError(f"expected ',' in {text!r}")
                i += 1
        if kind == "custom":
            if len(args) == 2 and args[1] == "open":
                return LeafTopology("custom", (args[0],), False), i
            if len(args) != 1:
                raise ArgumentError(f"custom takes a name and optional 'open': {text!r}")
        return LeafTopology(kind, tuple(args)), i

    try:
        topo, end = expr(0)
    except IndexError:
        raise ArgumentError(f"truncated topology label {text!r}") from None
    if end != len(tokens):
        raise ArgumentError(f"trailing input in topology label {text!r}")
    return topo


# ---------------------------------------------------------------------------
# Nodes and edges
# ---------------------------------------------------------------------------


class Holonomy(str, enum.Enum):
    TRIVIAL = "trivial"
    Z2 = "z2"  # g^2 = e, g != e
    UNILATERAL = "unilateral"
    INFINITE = "infinite"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SemiHolonomy:
    """Triviality of the one-sided holonomy maps around a selfconnected saddle."""

    minus_trivial: bool
    plus_trivial: bool | None = None


@dataclass(frozen=True)
class Port:
    sign: str
    edge: str
    paired: bool = False

    def __str__(self) -> str:
        return f"{self.sign}{self.edge}{'*' if self.paired else ''}"


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    index: int | None = None
    selfconnected: bool = False
    semi_holonomy: SemiHolonomy | None = None
    ports: tuple[Port, ...] = ()
    topology: LeafTopology | None = None
    holonomy: Holonomy | None = None
    # sweep value for ingested graphs; not part of the graph's identity
    level: float | None = field(default=None, compare=False)

    @property
    def is_singular(self) -> bool:
        return self.kind in (CENTER, SADDLE, STABLE_CIRCLE)


@dataclass(frozen=True)
class LeafFamily:
    id: str
    source: str
    target: str
    topology: LeafTopology
    strong_connection: bool = False

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def other(self, node_id: str) -> str:
        return self.target if node_id == self.source else self.source


def center(node_id: str, level: float | None = None) -> Node:
    return Node(node_id, CENTER, level=level)


def saddle(
    node_id: str,
    index: int,
    ports: Iterable[Port | str],
    selfconnected: bool = False,
    semi_holonomy: SemiHolonomy | None = None,
    level: float | None = None,
) -> Node:
    """Build a saddle node; ports may be given in ``"+e1"`` / ``"-e2*"`` form."""
    return Node(
        node_id,
        SADDLE,
        index=index,
        selfconnected=selfconnected,
        semi_holonomy=semi_holonomy,
        ports=tuple(p if isinstance(p, Port) else parse_port(p) for p in ports),
        level=level,
    )


def marked_leaf(node_id: str, topology: LeafTopology, holonomy=Holonomy.TRIVIAL) -> Node:
    return Node(node_id, MARKED_LEAF, topology=topology, holonomy=Holonomy(holonomy))


def parse_port(text: str) -> Port:
    text = text.strip()
    if len(text) < 2 or text[0] not in (PLUS, MINUS):
        raise ArgumentError(f"bad port {text!r}: expected +edge or -edge")
    paired = text.endswith("*")
    edge = text[1:-1] if paired else text[1:]
    if not edge:
        raise ArgumentError(f"bad port {text!r}: empty edge id")
    return Port(text[0], edge, paired)


@dataclass(frozen=True)
class FoliationGraph:
    dimension: int
    nodes: tuple[Node, ...] = ()
    edges: tuple[LeafFamily, ...] = ()
    closed: bool = True
    transversely_orientable: bool = True
    null_homotopic_transversal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))

    @cached_property
    def node_map(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def edge_map(self) -> dict[str, LeafFamily]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> dict[str, list[str]]:
        inc: dict[str, list[str]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            for end in (e.source, e.target):
                inc.setdefault(end, []).append(e.id)
        return inc

    def node(self, node_id: str) -> Node:
        try:
            return self.node_map[node_id]
        except KeyError:
            raise ArgumentError(f"no node {node_id!r}") from None

    def edge(self, edge_id: str) -> LeafFamily:
        try:
            return self.edge_map[edge_id]
        except KeyError:
            raise ArgumentError(f"no edge {edge_id!r}") from None

    def incident(self, node_id: str) -> list[LeafFamily]:
        """Edges at a node, a loop listed twice."""
        return [self.edge_map[e] for e in self._incidence.get(node_id, [])]

    def degree(self, node_id: str) -> int:
        return len(self._incidence.get(node_id, []))

    def neighbors(self, node_id: str) -> list[str]:
        return [e.other(node_id) for e in self.incident(node_id)]

    def nodes_of(self, kind: str) -> list[Node]:
        return [n for n in self.nodes if n.kind == kind]

    @property
    def k(self) -> int:
        return sum(1 for n in self.nodes if n.kind == CENTER)

    @property
    def l(self) -> int:
        return sum(1 for n in self.nodes if n.kind == SADDLE)

    def with_(self, **changes) -> FoliationGraph:
        return replace(self, **changes)


def end_ports(g: FoliationGraph, edge: LeafFamily) -> tuple[int | None, int | None]:
    """Port slots (indices into ``ports``) holding the source and target ends.

    For a loop at a saddle the source end takes the ``+`` port when the two
    signs differ, otherwise the first listed port.
    """
    def slots(node_id: str) -> list[int]:
        node = g.node_map.get(node_id)
        if node is None or node.kind != SADDLE:
            return []
        return [i for i, p in enumerate(node.ports) if p.edge == edge.id]

    if edge.is_loop:
        s = slots(edge.source)
        if len(s) != 2:
            return (s[0] if s else None, None)
        ports = g.node_map[edge.source].ports
        if ports[s[0]].sign == MINUS and ports[s[1]].sign == PLUS:
            return s[1], s[0]
        return s[0], s[1]
    src = slots(edge.source)
    tgt = slots(edge.target)
    return (src[0] if src else None, tgt[0] if tgt else None)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Violation:
    subject: str
    rule: str
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.severity}: {self.subject}: [{self.rule}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    warnings: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return bool(self.violations)

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def __str__(self) -> str:
        lines = [str(v) for v in self.violations + self.warnings]
        return "\n".join(lines) if lines else "ok"


def validate(g: FoliationGraph) -> ValidationReport:
    """Check every structural invariant; violations are returned, never raised."""
    out: list[Violation] = []
    warn: list[Violation] = []

    def bad(subject, rule, message):
        out.append(Violation(subject, rule, message))

    n = g.dimension
    if n < 2:
        bad("<graph>", "dimension", f"dimension {n} < 2")

    seen: set[str] = set()
    for node in g.nodes:
        if node.id in seen:
            bad(node.id, "duplicate-id", "node id used twice")
        seen.add(node.id)
        if node.kind not in NODE_KINDS:
            bad(node.id, "node-kind", f"unknown kind {node.kind!r}")
    seen_e: set[str] = set()
    for e in g.edges:
        if e.id in seen_e:
            bad(e.id, "duplicate-id", "edge id used twice")
        seen_e.add(e.id)
        for end in (e.source, e.target):
            if end not in g.node_map:
                bad(e.id, "dangling-endpoint", f"endpoint {end!r} is not a node")

    for e in g.edges:
        if e.strong_connection:
            a, b = g.node_map.get(e.source), g.node_map.get(e.target)
            if not (
                a and b and a.kind == SADDLE and b.kind == SADDLE
                and a.index is not None and b.index is not None
                and abs(a.index - b.index) == 1
            ):
                bad(e.id, "strong-connection", "strong connection must join saddles of consecutive indices")
        if not e.topology.compact and e.topology.kind != "open_RxS":
            ends = [g.node_map.get(x) for x in (e.source, e.target)]
            if not any(x is not None and x.kind == NOVIKOV for x in ends):
                bad(e.id, "open-leaf", "non-compact family outside a Novikov component")

    for node in g.nodes:
        deg = g.degree(node.id)
        if node.kind in (CENTER, STABLE_CIRCLE, BOUNDARY) and deg != 1:
            bad(node.id, "degree", f"{node.kind} must bound exactly one leaf family, has {deg}")
        if node.kind == NOVIKOV and deg < 1:
            bad(node.id, "degree", "novikov component without boundary leaf family")
        if node.kind == BOUNDARY and g.closed:
            bad(node.id, "boundary-closed", "closed manifold cannot have tangent boundary leaves")
        if node.kind == MARKED_LEAF:
            _check_marked(g, node, deg, bad, warn)
        elif node.topology is not None or node.holonomy is not None:
            bad(node.id, "node-fields", "topology/holonomy only apply to marked leaves")
        if node.kind == SADDLE:
            _check_saddle(g, node, bad)
        elif node.ports or node.index is not None or node.selfconnected or node.semi_holonomy:
            bad(node.id, "node-fields", "index/ports/selfconnection only apply to saddles")

    if g.nodes and not out and not _connected(g):
        bad("<graph>", "connected", "leaf-space graph must be connected")

    return ValidationReport(tuple(sorted(out)), tuple(sorted(warn)))


def _check_marked(g, node, deg, bad, warn):
    if node.topology is None or node.holonomy is None:
        bad(node.id, "node-fields", "marked leaf needs topology and holonomy")
        return
    if node.holonomy is Holonomy.Z2:
        if g.transversely_orientable:
            bad(node.id, "z2-orientable", "z2 holonomy forces a non-transversely-orientable foliation")
        if deg != 1:
            bad(node.id, "degree", "one-sided (z2) leaf must bound exactly one family")
    elif deg != 2:
        bad(node.id, "degree", f"two-sided leaf must bound two families, has {deg}")
    if node.holonomy is Holonomy.UNILATERAL:
        nov = {x for x in g.neighbors(node.id) if g.node_map.get(x) and g.node_map[x].kind == NOVIKOV}
        if len(nov) != 1:
            warn.append(Violation(node.id, "unilateral-novikov",
                                  "unilateral leaf not adjacent to exactly one Novikov component "
                                  "(unresolved boundary)", "warning"))


def _check_saddle(g: FoliationGraph, node: Node, bad) -> None:
    n = g.dimension
    l = node.index
    if l is None or not 1 <= l <= n - 1:
        bad(node.id, "saddle-index", f"index {l} outside 1..{n - 1}")
        return
    extreme = l in (1, n - 1)
    want = 3 if extreme else 2
    if len(node.ports) != want:
        bad(node.id, "port-count", f"index {l} saddle in dimension {n} needs {want} ports, has {len(node.ports)}")
        return
    signs = sorted(p.sign for p in node.ports)
    if extreme:
        ok = signs in (sorted("+--"), sorted("++-"))
    else:
        ok = signs == sorted("+-")
    if not ok:
        bad(node.id, "port-signs", f"port signs {''.join(signs)} invalid for index {l}")

    paired = [p for p in node.ports if p.paired]
    if node.selfconnected:
        if not extreme:
            bad(node.id, "selfconnected-index", "only index 1 or n-1 saddles can be selfconnected")
        if len(paired) != 2 or paired[0].sign != paired[1].sign:
            bad(node.id, "pairing", "selfconnected saddle needs two same-sign paired ports")
    elif paired:
        bad(node.id, "pairing", "paired ports on a saddle that is not selfconnected")
    if node.semi_holonomy is not None and not node.selfconnected:
        bad(node.id, "semi-holonomy", "semi-holonomy recorded on a saddle that is not selfconnected")

    inc = Counter(e.id for e in g.incident(node.id))
    refs = Counter(p.edge for p in node.ports)
    for edge_id, count in sorted(refs.items()):
        have = inc.get(edge_id, 0)
        shared = count == 2 and have == 1 and all(p.paired for p in node.ports if p.edge == edge_id)
        if have != count and not shared:
            bad(node.id, "port-edge", f"port references edge {edge_id!r} not incident {count} time(s)")
    for edge_id, count in sorted(inc.items()):
        if refs.get(edge_id, 0) < count:
            bad(node.id, "port-coverage", f"incident edge {edge_id!r} lacks a port")

    if g.transversely_orientable:
        for p in node.ports:
            e = g.edge_map.get(p.edge)
            if e is None:
                continue
            if e.is_loop:
                loop_ports = [q for q in node.ports if q.edge == e.id]
                if len(loop_ports) == 2 and not (
                    {q.sign for q in loop_ports} == {PLUS, MINUS} or all(q.paired for q in loop_ports)
                ):
                    bad(node.id, "port-direction", f"loop {e.id} needs opposite signs or a pairing")
            elif (p.sign == PLUS) != (e.source == node.id):
                bad(node.id, "port-direction",
                    f"port {p} disagrees with transverse direction of {e.id}")


def _connected(g: FoliationGraph) -> bool:
    start = g.nodes[0].id
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(g.nodes)


def require_valid(g: FoliationGraph) -> None:
    report = validate(g)
    if not report.ok:
        raise InvalidGraph(report)


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Counts:
    k: int
    l: int
    stable_circles: int
    novikov: int

    def __iter__(self) -> Iterator[int]:
        return iter((self.k, self.l, self.stable_circles, self.novikov))


def counts(g: FoliationGraph) -> Counts:
    require_valid(g)
    c = Counter(n.kind for n in g.nodes)
    return Counts(c[CENTER], c[SADDLE], c[STABLE_CIRCLE], c[NOVIKOV])


def index_multiset(g: FoliationGraph) -> Counter:
    """Multiset of singular-node indices (``"extremum"`` for centers)."""
    require_valid(g)
    return _index_multiset(g)


def _index_multiset(g: FoliationGraph) -> Counter:
    out: Counter = Counter()
    for node in g.nodes:
        if node.kind == CENTER:
            out[EXTREMUM] += 1
        elif node.kind == SADDLE:
            out[node.index] += 1
        elif node.kind == STABLE_CIRCLE:
            out[CIRCLE_COMPONENT] += 1
    return out


def first_betti(g: FoliationGraph) -> int:
    """Cycle rank of the underlying multigraph."""
    comps = _component_count(g)
    return len(g.edges) - len(g.nodes) + comps


def _component_count(g: FoliationGraph) -> int:
    parent = {n.id: n.id for n in g.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        a, b = find(e.source), find(e.target)
        if a != b:
            parent[a] = b
    return len({find(x) for x in parent})
