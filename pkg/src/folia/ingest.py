"""Leaf-space graphs from Morse functions sampled on triangulated surfaces.

Vertices are compared by rank: field value first, vertex index second, so
equal samples never produce flat regions. The Reeb graph is built by one
upward sweep; level-set components are tracked through the mesh edges they
cross.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ArgumentError, DegenerateSaddle, MeshError
from .graph import MINUS, PLUS, SADDLE, FoliationGraph, LeafFamily, Node, Port, center, circle

MINIMUM = "minimum"
MAXIMUM = "maximum"


@dataclass(frozen=True)
class CriticalPoint:
    vertex: int
    kind: str
    value: float
    multiplicity: int = 0  # saddles only

    def __str__(self) -> str:
        if self.kind == SADDLE:
            return f"saddle(v{self.vertex}, m={self.multiplicity}, f={self.value:g})"
        return f"{self.kind}(v{self.vertex}, f={self.value:g})"


@dataclass(eq=False)
class ScalarMesh:
    """Closed triangulated surface with one scalar sample per vertex."""

    vertices: np.ndarray
    triangles: np.ndarray
    field: np.ndarray
    _checked: bool = field(default=False, init=False, repr=False)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        self.field = np.asarray(self.field, dtype=float).reshape(-1)
        if len(self.field) != len(self.vertices):
            raise MeshError(f"{len(self.field)} field values for {len(self.vertices)} vertices")
        if len(self.triangles) and (self.triangles.min() < 0 or self.triangles.max() >= len(self.vertices)):
            raise MeshError("triangle references a vertex out of range")
        if not np.all(np.isfinite(self.field)):
            raise MeshError("field contains non-finite values")

    def with_field(self, values) -> ScalarMesh:
        return ScalarMesh(self.vertices, self.triangles, values)

    # -- combinatorics -----------------------------------------------------

    @cached_property
    def edges(self) -> np.ndarray:
        """Unique undirected edges, each row sorted, rows sorted."""
        t = self.triangles
        e = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        e.sort(axis=1)
        return np.unique(e, axis=0)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(int(a), int(b)): i for i, (a, b) in enumerate(self.edges)}

    @cached_property
    def edge_triangles(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(len(self.edges))]
        idx = self.edge_index
        for ti, (a, b, c) in enumerate(self.triangles.tolist()):
            for u, v in ((a, b), (b, c), (c, a)):
                out[idx[(u, v) if u < v else (v, u)]].append(ti)
        return out

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    @cached_property
    def rank(self) -> np.ndarray:
        """Position of each vertex in the (value, index) order."""
        order = np.lexsort((np.arange(len(self.field)), self.field))
        rank = np.empty(len(order), dtype=np.int64)
        rank[order] = np.arange(len(order))
        return rank

    @cached_property
    def links(self) -> list[list[int]]:
        """Cyclically ordered link of every vertex."""
        self.check()
        return self._links

    def check(self) -> None:
        """Raise :class:`MeshError` unless this is a closed connected orientable surface."""
        if self._checked:
            return
        if len(self.triangles) == 0:
            raise MeshError("mesh has no triangles")
        for ti, tri in enumerate(self.triangles.tolist()):
            if len(set(tri)) != 3:
                raise MeshError(f"triangle {ti} is degenerate")
        for i, tris in enumerate(self.edge_triangles):
            if len(tris) != 2:
                a, b = self.edges[i]
                raise MeshError(f"edge ({a}, {b}) lies in {len(tris)} triangles, expected 2")
        used = np.zeros(len(self.vertices), dtype=bool)
        used[self.triangles.ravel()] = True
        if not used.all():
            raise MeshError(f"vertex {int(np.argmin(used))} belongs to no triangle")
        self._links = [self._vertex_link(v) for v in range(len(self.vertices))]
        self._check_orientable()
        self._check_connected()
        self._checked = True

    @cached_property
    def _star(self) -> list[list[int]]:
        star: list[list[int]] = [[] for _ in range(len(self.vertices))]
        for ti, tri in enumerate(self.triangles.tolist()):
            for v in tri:
                star[v].append(ti)
        return star

    def _vertex_link(self, v: int) -> list[int]:
        nxt: dict[int, list[int]] = {}
        for ti in self._star[v]:
            a, b, c = self.triangles[ti].tolist()
            i = (a, b, c).index(v)
            u, w = (a, b, c)[(i + 1) % 3], (a, b, c)[(i + 2) % 3]
            nxt.setdefault(u, []).append(w)
            nxt.setdefault(w, []).append(u)
        if any(len(x) != 2 for x in nxt.values()):
            raise MeshError(f"link of vertex {v} is not a cycle")
        start = min(nxt)
        cycle = [start]
        prev, cur = None, start
        while True:
            a, b = nxt[cur]
            step = a if a != prev else b
            if step == start:
                break
            cycle.append(step)
            prev, cur = cur, step
            if len(cycle) > len(nxt):
                break
        if len(cycle) != len(nxt):
            raise MeshError(f"link of vertex {v} is not a single cycle")
        return cycle

    def _check_orientable(self) -> None:
        # propagate an orientation across shared edges
        tris = self.triangles.tolist()
        orient = [0] * len(tris)
        for seed in range(len(tris)):
            if orient[seed]:
                continue
            orient[seed] = 1
            queue = deque([seed])
            while queue:
                t = queue.popleft()
                a, b, c = tris[t]
                if orient[t] < 0:
                    a, b, c = a, c, b
                for u, w in ((a, b), (b, c), (c, a)):
                    key = (u, w) if u < w else (w, u)
                    for s in self.edge_triangles[self.edge_index[key]]:
                        if s == t:
                            continue
                        # s must traverse the shared edge as (w, u)
                        x, y, z = tris[s]
                        forward = (x, y) == (w, u) or (y, z) == (w, u) or (z, x) == (w, u)
                        want = 1 if forward else -1
                        if orient[s] == 0:
                            orient[s] = want
                            queue.append(s)
                        elif orient[s] != want:
                            raise MeshError(f"mesh is not orientable (around edge {key})")

    def _check_connected(self) -> None:
        seen = np.zeros(len(self.vertices), dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self._links[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if not seen.all():
            raise MeshError(f"mesh is disconnected (vertex {int(np.argmin(seen))} unreachable from 0)")


# ---------------------------------------------------------------------------
# Critical points
# ---------------------------------------------------------------------------


def _sign_changes(mesh: ScalarMesh, v: int) -> int:
    r = mesh.rank
    link = mesh.links[v]
    up = [r[u] > r[v] for u in link]
    return sum(1 for i in range(len(up)) if up[i] != up[i - 1])


def classify_critical(mesh: ScalarMesh, split: bool = False) -> list[CriticalPoint]:
    """Critical vertices sorted by rank, from sign changes around each link."""
    mesh.check()
    out = []
    r = mesh.rank
    for v in np.argsort(r, kind="stable").tolist():
        changes = _sign_changes(mesh, v)
        value = float(mesh.field[v])
        if changes == 0:
            higher = r[mesh.links[v][0]] > r[v]
            out.append(CriticalPoint(v, MINIMUM if higher else MAXIMUM, value))
        elif changes > 2:
            m = (changes - 2) // 2
            if m > 1 and not split:
                raise DegenerateSaddle(v, m)
            out.append(CriticalPoint(v, SADDLE, value, m))
    return out


# ---------------------------------------------------------------------------
# Reeb graph sweep
# ---------------------------------------------------------------------------


def _other_crossed(mesh: ScalarMesh, tri: int, edge: int, level: float) -> int:
    """The second mesh edge of ``tri`` crossed by the level ``rank = level``."""
    r = mesh.rank
    a, b, c = mesh.triangles[tri].tolist()
    for u, w in ((a, b), (b, c), (c, a)):
        key = (u, w) if u < w else (w, u)
        i = mesh.edge_index[key]
        if i != edge and min(r[u], r[w]) < level < max(r[u], r[w]):
            return i
    raise MeshError(f"triangle {tri} is crossed by a single edge")  # unreachable on a surface


def build_reeb(mesh: ScalarMesh, split: bool = False) -> FoliationGraph:
    """Sweep the field upwards and return its Reeb graph as a foliation graph.

    Nodes are named ``v<vertex>`` (with a letter suffix for unfolded
    multi-saddles) and carry the field value as ``level``; edges are named
    ``e1, e2, ...`` in the order their arcs are opened.
    """
    crit = classify_critical(mesh, split=split)
    mesh.check()
    r = mesh.rank
    values = mesh.field
    critical = {c.vertex: c for c in crit}

    label: dict[int, int] = {}  # crossed mesh edge -> open arc
    arc_start: dict[int, str] = {}
    nodes: list[Node] = []
    edges: list[LeafFamily] = []
    ports: dict[str, list[Port]] = {}
    counter = [0]

    def open_arc(start: str) -> int:
        counter[0] += 1
        arc_start[counter[0]] = start
        ports.setdefault(start, []).append(Port(PLUS, f"e{counter[0]}"))
        return counter[0]

    def close_arc(arc: int, end: str) -> None:
        edges.append(LeafFamily(f"e{arc}", arc_start.pop(arc), end, circle()))
        ports.setdefault(end, []).append(Port(MINUS, f"e{arc}"))

    def vertex_edges(v: int):
        lower, upper = [], []
        for w in mesh.links[v]:
            i = mesh.edge_index[(v, w) if v < w else (w, v)]
            (lower if r[w] < r[v] else upper).append(i)
        return lower, upper

    def components_above(v: int, upper: list[int]) -> list[list[int]]:
        level = r[v] + 0.5
        seen: set[int] = set()
        comps = []
        for start in upper:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            queue = deque([start])
            while queue:
                e = queue.popleft()
                for tri in mesh.edge_triangles[e]:
                    f = _other_crossed(mesh, tri, e, level)
                    if f not in seen:
                        seen.add(f)
                        comp.append(f)
                        queue.append(f)
            comps.append(comp)
        return comps

    for v in np.argsort(r, kind="stable").tolist():
        lower, upper = vertex_edges(v)
        down = sorted({label.pop(e) for e in lower})
        name = f"v{v}"
        level = float(values[v])
        cp = critical.get(v)
        if cp is None:
            (arc,) = down
            for e in upper:
                label[e] = arc
            continue
        if cp.kind == MINIMUM:
            nodes.append(center(name, level))
            arc = open_arc(name)
            for e in upper:
                label[e] = arc
            continue
        if cp.kind == MAXIMUM:
            nodes.append(center(name, level))
            (arc,) = down
            close_arc(arc, name)
            continue
        comps = components_above(v, upper)
        d, u, m = len(down), len(comps), cp.multiplicity
        if d + u > m + 2 or (m + 2 - d - u) % 2:
            raise MeshError(f"saddle at vertex {v} joins {d} lower and {u} upper level components")
        inputs, outputs, internal = _unfold(name, d, u, m, level, nodes)
        for arc, node_id in zip(down, inputs):
            close_arc(arc, node_id)
        for comp, node_id in zip(comps, outputs):
            arc = open_arc(node_id)
            for e in comp:
                label[e] = arc
        for a, b in internal:
            arc = open_arc(a)
            close_arc(arc, b)

    if label or arc_start:
        raise MeshError("sweep ended with open level components")  # unreachable on a closed surface
    nodes = [
        Node(x.id, x.kind, x.index, ports=tuple(ports.get(x.id, ())), level=x.level)
        if x.kind == SADDLE else x
        for x in nodes
    ]
    edges.sort(key=lambda e: int(e.id[1:]))
    return FoliationGraph(2, tuple(nodes), tuple(edges))


def _unfold(name: str, d: int, u: int, m: int, level: float, nodes: list[Node]):
    """Index-1 saddles realizing a multiplicity-m saddle with d inputs and u outputs.

    A simple saddle is a single node. Higher multiplicities become a chain at
    one level: merges of the inputs, handle pairs for the missing genus, then
    splits. Returns (input node per down arc, output node per up arc, internal
    arcs).
    """
    if m == 1:
        nodes.append(Node(name, SADDLE, index=1, level=level))
        return [name] * d, [name] * u, []
    names = iter(f"{name}{chr(97 + i)}" for i in range(m))
    inputs: list[str] = []
    outputs: list[str] = []
    internal: list[tuple[str, str]] = []
    cur: str | None = None

    def new() -> str:
        nid = next(names)
        nodes.append(Node(nid, SADDLE, index=1, level=level))
        return nid

    def feed(nid: str) -> None:
        if cur is None:
            inputs.append(nid)
        else:
            internal.append((cur, nid))

    if d >= 2:
        cur = new()
        inputs += [cur, cur]
        for _ in range(d - 2):
            nid = new()
            inputs.append(nid)
            internal.append((cur, nid))
            cur = nid
    for _ in range((m + 2 - d - u) // 2):
        a = new()
        feed(a)
        b = new()
        internal += [(a, b), (a, b)]
        cur = b
    for _ in range(u - 1):
        nid = new()
        feed(nid)
        outputs.append(nid)
        cur = nid
    outputs.append(cur)
    return inputs, outputs, internal


# ---------------------------------------------------------------------------
# Oracles and stability
# ---------------------------------------------------------------------------


def level_component_count(mesh: ScalarMesh, t: float) -> int:
    """Number of components of ``{field = t}`` by direct labelling of crossed triangles."""

    mesh.check()
    f = mesh.field
    if np.any(f == t):
        raise ArgumentError(f"level {t!r} equals a vertex value; perturb it")
    above = f[mesh.edges] > t
    crossed = above[:, 0] != above[:, 1]
    ids = np.flatnonzero(crossed)
    if len(ids) == 0:
        return 0
    local = -np.ones(len(mesh.edges), dtype=np.int64)
    local[ids] = np.arange(len(ids))
    rows, cols = [], []
    for tri in mesh.triangles.tolist():
        hit = []
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            i = mesh.edge_index[(a, b) if a < b else (b, a)]
            if crossed[i]:
                hit.append(local[i])
        if len(hit) == 2:
            rows.append(hit[0])
            cols.append(hit[1])
    adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(ids), len(ids)))
    n, _ = connected_components(adj, directed=False)
    return int(n)


def straddle_count(g: FoliationGraph, t: float) -> int:
    """Edges of an ingested graph whose endpoint levels straddle ``t``."""
    levels = {x.id: x.level for x in g.nodes}
    count = 0
    for e in g.edges:
        a, b = levels[e.source], levels[e.target]
        if a is None or b is None:
            raise ArgumentError("graph nodes carry no levels")
        if min(a, b) < t < max(a, b):
            count += 1
    return count


def stable_test(mesh: ScalarMesh, p: CriticalPoint) -> bool:
    """Steepest-path test: every 2-ring vertex flows into ``p``.

    Maxima are followed forward (steepest ascent), minima backward
    (steepest descent). Saddles are never stable.
    """
    if p.kind == SADDLE:
        return False
    mesh.check()
    r = mesh.rank
    links = mesh.links
    ascend = p.kind == MAXIMUM

    def flow(x: int) -> int:
        while True:
            nbrs = links[x]
            best = max(nbrs, key=lambda w: r[w]) if ascend else min(nbrs, key=lambda w: r[w])
            if (r[best] > r[x]) != ascend or best == x:
                return x
            x = best

    ring1 = set(links[p.vertex])
    ring2 = set(ring1)
    for w in ring1:
        ring2.update(links[w])
    ring2.discard(p.vertex)
    return all(flow(x) == p.vertex for x in sorted(ring2))
