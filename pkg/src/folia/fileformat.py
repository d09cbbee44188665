"""Text formats: the ``.fgr`` graph container, OFF meshes and field files.

A graph file is line oriented::

    folia/1
    header dimension=2 closed=true transversely_orientable=true
    flags has_null_homotopic_transversal=false
    node id=q kind=saddle index=1 selfconnected=false ports=-e1,+e2,+e3
    edge id=e1 from=p to=q topology=circle strong=false

Blank lines and lines starting with ``#`` are ignored. Optional ``begin
mesh`` / ``end mesh`` (OFF text) and ``begin field`` / ``end field`` (one
value per line) sections carry an ingestion input. Every unknown record or
key is rejected with its line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ArgumentError, ParseError
from .graph import (
    MARKED_LEAF,
    NODE_KINDS,
    SADDLE,
    CENTER,
    FoliationGraph,
    Holonomy,
    LeafFamily,
    Node,
    SemiHolonomy,
    parse_port,
    parse_topology,
)
from .ingest import ScalarMesh

FORMAT_VERSION = "folia/1"

_HEADER_KEYS = ("dimension", "closed", "transversely_orientable")
_FLAG_KEYS = ("has_null_homotopic_transversal",)
_EDGE_KEYS = ("id", "from", "to", "topology", "strong")
_NODE_KEYS = {
    SADDLE: ("id", "kind", "index", "selfconnected", "semi_minus", "semi_plus", "ports", "level"),
    MARKED_LEAF: ("id", "kind", "topology", "holonomy"),
    CENTER: ("id", "kind", "level"),
}
_NODE_REQUIRED = {SADDLE: ("index", "ports"), MARKED_LEAF: ("topology", "holonomy")}


@dataclass
class GraphFile:
    graph: FoliationGraph
    mesh: ScalarMesh | None = None


def _b(value: bool) -> str:
    return "true" if value else "false"


def _level(x: float) -> str:
    return repr(float(x))


def serialize(g: FoliationGraph, mesh: ScalarMesh | None = None) -> str:
    lines = [
        FORMAT_VERSION,
        f"header dimension={g.dimension} closed={_b(g.closed)} "
        f"transversely_orientable={_b(g.transversely_orientable)}",
        f"flags has_null_homotopic_transversal={_b(g.null_homotopic_transversal)}",
    ]
    for x in g.nodes:
        parts = [f"node id={x.id} kind={x.kind}"]
        if x.kind == SADDLE:
            parts.append(f"index={x.index} selfconnected={_b(x.selfconnected)}")
            if x.semi_holonomy is not None:
                parts.append(f"semi_minus={_b(x.semi_holonomy.minus_trivial)}")
                if x.semi_holonomy.plus_trivial is not None:
                    parts.append(f"semi_plus={_b(x.semi_holonomy.plus_trivial)}")
            parts.append("ports=" + ",".join(str(p) for p in x.ports))
        if x.kind == MARKED_LEAF:
            parts.append(f"topology={x.topology} holonomy={x.holonomy}")
        if x.level is not None and x.kind in (SADDLE, CENTER):
            parts.append(f"level={_level(x.level)}")
        lines.append(" ".join(parts))
    for e in g.edges:
        lines.append(
            f"edge id={e.id} from={e.source} to={e.target} topology={e.topology} "
            f"strong={_b(e.strong_connection)}"
        )
    if mesh is not None:
        lines.append("begin mesh")
        lines.extend(write_off(mesh).splitlines())
        lines.append("end mesh")
        lines.append("begin field")
        lines.extend(_level(v) for v in mesh.field)
        lines.append("end field")
    return "\n".join(lines) + "\n"


class _Line:
    def __init__(self, text: str, lineno: int, path: str):
        self.text = text
        self.lineno = lineno
        self.path = path

    def error(self, message: str, column: int = 1) -> ParseError:
        return ParseError(message, self.lineno, column, self.path)

    def fields(self, allowed) -> tuple[str, dict[str, tuple[str, int]]]:
        """Split ``record key=value ...``; values keep their column for diagnostics."""
        tokens = []
        pos = 0
        text = self.text
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            end = pos
            while end < len(text) and not text[end].isspace():
                end += 1
            tokens.append((text[pos:end], pos + 1))
            pos = end
        record, _ = tokens[0]
        out: dict[str, tuple[str, int]] = {}
        for tok, col in tokens[1:]:
            key, sep, value = tok.partition("=")
            if not sep or not key:
                raise self.error(f"expected key=value, got {tok!r}", col)
            if key not in allowed:
                raise self.error(f"unknown field {key!r} in {record} record", col)
            if key in out:
                raise self.error(f"duplicate field {key!r}", col)
            if not value:
                raise self.error(f"empty value for {key!r}", col + len(key) + 1)
            out[key] = (value, col + len(key) + 1)
        return record, out

    def boolean(self, item: tuple[str, int]) -> bool:
        value, col = item
        if value not in ("true", "false"):
            raise self.error(f"expected true or false, got {value!r}", col)
        return value == "true"

    def integer(self, item: tuple[str, int]) -> int:
        value, col = item
        try:
            return int(value)
        except ValueError:
            raise self.error(f"expected an integer, got {value!r}", col) from None

    def number(self, item: tuple[str, int]) -> float:
        value, col = item
        try:
            return float(value)
        except ValueError:
            raise self.error(f"expected a number, got {value!r}", col) from None

    def require(self, fields: dict, keys, record: str) -> None:
        for k in keys:
            if k not in fields:
                raise self.error(f"{record} record is missing {k!r}")


def parse(text: str, path: str = "<input>") -> GraphFile:
    raw = text.splitlines()
    lines = []
    section: str | None = None
    blocks: dict[str, list[str]] = {}
    block_start: dict[str, int] = {}
    for i, t in enumerate(raw, start=1):
        stripped = t.strip()
        if section is not None:
            if stripped == f"end {section}":
                section = None
            else:
                blocks[section].append(t)
            continue
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("begin "):
            name = stripped[6:].strip()
            if name not in ("mesh", "field"):
                raise ParseError(f"unknown section {name!r}", i, 7, path)
            if name in blocks:
                raise ParseError(f"duplicate section {name!r}", i, 1, path)
            section = name
            blocks[name] = []
            block_start[name] = i
            continue
        lines.append(_Line(t, i, path))
    if section is not None:
        raise ParseError(f"section {section!r} is not closed", len(raw), 1, path)
    if not lines or lines[0].text.strip() != FORMAT_VERSION:
        where = lines[0] if lines else _Line("", 1, path)
        raise where.error(f"expected format line {FORMAT_VERSION!r}")

    header = None
    flags: dict = {}
    nodes: list[Node] = []
    edges: list[LeafFamily] = []
    for ln in lines[1:]:
        record = ln.text.split()[0]
        if record == "header":
            if header is not None:
                raise ln.error("duplicate header record")
            _, f = ln.fields(_HEADER_KEYS)
            ln.require(f, _HEADER_KEYS, "header")
            dim = ln.integer(f["dimension"])
            if dim < 2:
                raise ln.error(f"dimension must be at least 2, got {dim}", f["dimension"][1])
            header = (dim, ln.boolean(f["closed"]), ln.boolean(f["transversely_orientable"]))
        elif record == "flags":
            if flags:
                raise ln.error("duplicate flags record")
            _, f = ln.fields(_FLAG_KEYS)
            flags = {k: ln.boolean(v) for k, v in f.items()} or {"_": False}
        elif record == "node":
            nodes.append(_parse_node(ln))
        elif record == "edge":
            _, f = ln.fields(_EDGE_KEYS)
            ln.require(f, ("id", "from", "to", "topology"), "edge")
            edges.append(
                LeafFamily(
                    f["id"][0], f["from"][0], f["to"][0],
                    _topology(ln, f["topology"]),
                    ln.boolean(f["strong"]) if "strong" in f else False,
                )
            )
        else:
            raise ln.error(f"unknown record {record!r}")
        if header is None and record != "header":
            raise ln.error("header record must come first")
    if header is None:
        raise lines[0].error("missing header record")
    g = FoliationGraph(
        header[0], tuple(nodes), tuple(edges), closed=header[1],
        transversely_orientable=header[2],
        null_homotopic_transversal=flags.get("has_null_homotopic_transversal", False),
    )
    mesh = None
    if "mesh" in blocks:
        if "field" not in blocks:
            raise ParseError("mesh section without a field section", block_start["mesh"], 1, path)
        verts, tris = read_off("\n".join(blocks["mesh"]), path, block_start["mesh"])
        values = read_field("\n".join(blocks["field"]), path, block_start["field"])
        mesh = ScalarMesh(verts, tris, _match_field(values, len(verts), path, block_start["field"]))
    elif "field" in blocks:
        raise ParseError("field section without a mesh section", block_start["field"], 1, path)
    return GraphFile(g, mesh)


def _topology(ln: _Line, item):
    value, col = item
    try:
        return parse_topology(value)
    except ArgumentError as exc:
        raise ln.error(str(exc), col) from None


def _parse_node(ln: _Line) -> Node:
    # first pass only to read the kind; the strict pass uses the kind's key set
    kind_tok = next((t for t in ln.text.split() if t.startswith("kind=")), None)
    if kind_tok is None:
        raise ln.error("node record is missing 'kind'")
    kind = kind_tok[5:]
    if kind not in NODE_KINDS:
        raise ln.error(f"unknown node kind {kind!r}", ln.text.index(kind_tok) + 6)
    _, f = ln.fields(_NODE_KEYS.get(kind, ("id", "kind")))
    ln.require(f, ("id",) + _NODE_REQUIRED.get(kind, ()), "node")
    level = ln.number(f["level"]) if "level" in f else None
    if kind == SADDLE:
        ports = []
        value, col = f["ports"]
        offset = 0
        for part in value.split(","):
            try:
                ports.append(parse_port(part))
            except ArgumentError as exc:
                raise ln.error(str(exc), col + offset) from None
            offset += len(part) + 1
        semi = None
        if "semi_minus" in f:
            semi = SemiHolonomy(
                ln.boolean(f["semi_minus"]),
                ln.boolean(f["semi_plus"]) if "semi_plus" in f else None,
            )
        elif "semi_plus" in f:
            raise ln.error("semi_plus given without semi_minus", f["semi_plus"][1])
        return Node(
            f["id"][0], SADDLE, index=ln.integer(f["index"]),
            selfconnected=ln.boolean(f["selfconnected"]) if "selfconnected" in f else False,
            semi_holonomy=semi, ports=tuple(ports), level=level,
        )
    if kind == MARKED_LEAF:
        value, col = f["holonomy"]
        try:
            hol = Holonomy(value)
        except ValueError:
            raise ln.error(f"unknown holonomy {value!r}", col) from None
        return Node(f["id"][0], MARKED_LEAF, topology=_topology(ln, f["topology"]), holonomy=hol)
    return Node(f["id"][0], kind, level=level)


def _match_field(values: np.ndarray, n: int, path: str, line: int) -> np.ndarray:
    if len(values) != n:
        raise ParseError(f"field has {len(values)} values for {n} vertices", line, 1, path)
    return values


# ---------------------------------------------------------------------------
# OFF meshes and field files
# ---------------------------------------------------------------------------


def read_off(text: str, path: str = "<input>", first_line: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Parse ASCII OFF with triangular faces."""
    rows = []
    for i, t in enumerate(text.splitlines(), start=first_line + 1):
        s = t.split("#", 1)[0].strip()
        if s:
            rows.append((i, s))
    if not rows or not rows[0][1].startswith("OFF"):
        raise ParseError("expected 'OFF' header", rows[0][0] if rows else first_line + 1, 1, path)
    head = rows[0][1][3:].split()
    body = rows[1:]
    if not head:
        if not body:
            raise ParseError("missing OFF counts", rows[0][0], 1, path)
        head = body[0][1].split()
        count_line = body[0][0]
        body = body[1:]
    else:
        count_line = rows[0][0]
    try:
        nv, nf = int(head[0]), int(head[1])
    except (ValueError, IndexError):
        raise ParseError("bad OFF counts line", count_line, 1, path) from None
    if len(body) < nv + nf:
        raise ParseError(f"OFF declares {nv} vertices and {nf} faces, found {len(body)} rows",
                         count_line, 1, path)
    verts = np.empty((nv, 3))
    for k in range(nv):
        lineno, s = body[k]
        parts = s.split()
        try:
            verts[k] = [float(x) for x in parts[:3]]
        except ValueError:
            raise ParseError("bad vertex coordinates", lineno, 1, path) from None
        if len(parts) < 3:
            raise ParseError("vertex needs 3 coordinates", lineno, 1, path)
    tris = np.empty((nf, 3), dtype=np.int64)
    for k in range(nf):
        lineno, s = body[nv + k]
        parts = s.split()
        try:
            ints = [int(x) for x in parts[:4]]
        except ValueError:
            raise ParseError("bad face indices", lineno, 1, path) from None
        if len(ints) != 4 or ints[0] != 3:
            raise ParseError("only triangular faces are supported", lineno, 1, path)
        if min(ints[1:]) < 0 or max(ints[1:]) >= nv:
            raise ParseError("face references a vertex out of range", lineno, 1, path)
        tris[k] = ints[1:]
    if len(body) > nv + nf:
        raise ParseError("trailing data after faces", body[nv + nf][0], 1, path)
    return verts, tris


def write_off(mesh: ScalarMesh) -> str:
    lines = ["OFF", f"{len(mesh.vertices)} {len(mesh.triangles)} 0"]
    lines += [" ".join(repr(float(c)) for c in v) for v in mesh.vertices]
    lines += ["3 " + " ".join(str(int(i)) for i in t) for t in mesh.triangles]
    return "\n".join(lines) + "\n"


def read_field(text: str, path: str = "<input>", first_line: int = 0) -> np.ndarray:
    values = []
    for i, t in enumerate(text.splitlines(), start=first_line + 1):
        s = t.split("#", 1)[0].strip()
        if not s:
            continue
        try:
            values.append(float(s))
        except ValueError:
            raise ParseError(f"expected one number per line, got {s!r}", i, 1, path) from None
    return np.array(values)


def write_field(values) -> str:
    return "\n".join(_level(v) for v in values) + "\n"


def load_graph(path: str | Path) -> GraphFile:
    p = Path(path)
    return parse(p.read_text(), str(p))


def save_graph(path: str | Path, g: FoliationGraph, mesh: ScalarMesh | None = None) -> None:
    Path(path).write_text(serialize(g, mesh))


def load_mesh(mesh_path: str | Path, field_path: str | Path) -> ScalarMesh:
    mp, fp = Path(mesh_path), Path(field_path)
    verts, tris = read_off(mp.read_text(), str(mp))
    values = read_field(fp.read_text(), str(fp))
    return ScalarMesh(verts, tris, _match_field(values, len(verts), str(fp), 1))
