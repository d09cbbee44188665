"""Command-line front end: ``folia ingest|classify|simplify|export-dot|validate|fixtures``.

Exit codes: 0 success or definitive verdict, 1 I/O or format error, 2 degenerate
Morse data, 3 inconclusive, 4 precondition failed, 5 model inconsistency or
blocked rewrite, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import fixtures as fixture_catalog
from . import meshes
from .errors import (
    ArgumentError,
    DegenerateSaddle,
    InvalidGraph,
    MeshError,
    ModelInconsistency,
    ParseError,
    PreconditionError,
    RewriteBlocked,
)
from .fileformat import load_graph, load_mesh, serialize, write_field, write_off
from .graph import (
    BOUNDARY,
    CENTER,
    MARKED_LEAF,
    NOVIKOV,
    SADDLE,
    STABLE_CIRCLE,
    FoliationGraph,
    counts,
    first_betti,
    require_valid,
    validate,
)
from .ingest import MAXIMUM, MINIMUM, build_reeb, classify_critical
from .surgery import STRATEGIES, create_saddle_pair, simplify
from .theorems import (
    CHECKERS,
    EELLS_KUIPER,
    INCONCLUSIVE,
    PRECONDITION_FAILED,
    SPHERE,
    LeafSpaceShape,
    Verdict,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_DEGENERATE = 2
EXIT_INCONCLUSIVE = 3
EXIT_PRECONDITION = 4
EXIT_INCONSISTENT = 5
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(code: int, message: str) -> int:
    print(f"folia: {message}", file=sys.stderr)
    return code


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_valid(path: str) -> FoliationGraph:
    g = load_graph(path).graph
    require_valid(g)
    return g


# ---------------------------------------------------------------------------
# ingest
# ---------------------------------------------------------------------------


def cmd_ingest(mesh_path: str, field_path: str | None, out_path: str, split: bool = False) -> int:
    try:
        if field_path is None:
            mesh = load_graph(mesh_path).mesh
            if mesh is None:
                return _fail(EXIT_IO, f"{mesh_path}: no mesh section and no field file given")
        else:
            mesh = load_mesh(mesh_path, field_path)
        crit = classify_critical(mesh, split=split)
        g = build_reeb(mesh, split=split)
    except DegenerateSaddle as exc:
        return _fail(EXIT_DEGENERATE, str(exc))
    except (OSError, ParseError, MeshError) as exc:
        return _fail(EXIT_IO, str(exc))
    kinds = [c.kind for c in crit]
    c = counts(g)
    chi = mesh.euler_characteristic
    print(f"critical points: minima={kinds.count(MINIMUM)} saddles={len(kinds) - kinds.count(MINIMUM) - kinds.count(MAXIMUM)} "
          f"maxima={kinds.count(MAXIMUM)}")
    print(f"counts (k,l) = ({c.k},{c.l})  nodes={len(g.nodes)} edges={len(g.edges)} b1={first_betti(g)}")
    try:
        _write(out_path, serialize(g))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    if c.k - c.l != chi:
        print(f"chi={chi} MISMATCH (k-l={c.k - c.l})")
        return EXIT_INCONSISTENT
    print(f"chi={chi} OK")
    return EXIT_OK


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _label(tag: str) -> str:
    return tag.upper().replace("_", "-")


def format_verdict(checker: str, result) -> tuple[str, int]:
    """Render a checker result as report text and pick its exit code."""
    if isinstance(result, LeafSpaceShape):
        ends = f" ({', '.join(result.ends)})" if result.ends else ""
        return f"{_label(result.tag)}{ends}", EXIT_OK
    v: Verdict = result
    d = v.details
    if v.tag == SPHERE and "k0" in d:
        head = f"SPHERE (k={d['k0']},l={d['l0']} → k={d['k']},l={d['l']})"
    elif v.tag == EELLS_KUIPER and "saddle_index" in d:
        head = f"EELLS-KUIPER (n={d['final'].dimension}, saddle index {d['saddle_index']})"
    else:
        head = f"{_label(v.tag)} ({v.reason})" if v.reason else _label(v.tag)
    lines = [head]
    if v.witness:
        lines.append(f"witness: {', '.join(v.witness)}")
    if v.certificate is not None:
        lines.append(f"certificate: {len(v.certificate)} move(s)")
        lines += [f"  {rec.to_line()}" for rec in v.certificate]
    code = {INCONCLUSIVE: EXIT_INCONCLUSIVE, PRECONDITION_FAILED: EXIT_PRECONDITION}.get(v.tag, EXIT_OK)
    return "\n".join(lines), code


def verdict_record(checker: str, text: str, code: int) -> str:
    """Machine-readable one-record summary in the container's key=value style."""
    head = text.splitlines()[0]
    tag = head.split(" ", 1)[0]
    return f"folia/1\nverdict checker={checker} tag={tag} exit={code}\n"


def cmd_classify(graph_path: str, checker: str, record_path: str | None = None) -> int:
    fn = CHECKERS.get(checker)
    if fn is None:
        return _fail(EXIT_USAGE, f"unknown checker {checker!r}; choose from {', '.join(CHECKERS)}")
    try:
        g = _load_valid(graph_path)
    except (OSError, ParseError, InvalidGraph) as exc:
        return _fail(EXIT_IO, str(exc))
    try:
        text, code = format_verdict(checker, fn(g))
    except PreconditionError as exc:
        text, code = f"PRECONDITION-FAILED ({exc})", EXIT_PRECONDITION
    except ModelInconsistency as exc:
        text, code = f"MODEL-INCONSISTENCY [{exc.rule}] {exc.message}", EXIT_INCONSISTENT
    print(text)
    if record_path is not None:
        try:
            _write(record_path, verdict_record(checker, text, code))
        except OSError as exc:
            return _fail(EXIT_IO, str(exc))
    return code


# ---------------------------------------------------------------------------
# simplify, export-dot, validate
# ---------------------------------------------------------------------------


def cmd_simplify(graph_path: str, out_path: str, strategy: str, trace_path: str | None = None) -> int:
    if strategy not in STRATEGIES:
        return _fail(EXIT_USAGE, f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    try:
        g = _load_valid(graph_path)
    except (OSError, ParseError, InvalidGraph) as exc:
        return _fail(EXIT_IO, str(exc))
    try:
        h, trace = simplify(g, strategy)
    except RewriteBlocked as exc:
        return _fail(EXIT_INCONSISTENT, f"blocked by rule {exc.rule}: {exc.message}")
    except ModelInconsistency as exc:
        return _fail(EXIT_INCONSISTENT, str(exc))
    if trace_path is None:
        trace_path = str(Path(out_path).with_suffix(".trace")) if out_path != "-" else None
    try:
        _write(out_path, serialize(h))
        if trace_path is not None:
            _write(trace_path, trace.to_text())
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    c0, c1 = counts(g), counts(h)
    print(f"moves={len(trace)} (k,l): ({c0.k},{c0.l}) -> ({c1.k},{c1.l}) singularities={c1.k + c1.l}")
    for rec in trace:
        print(f"  {rec.move} {','.join(map(str, rec.args))}")
    return EXIT_OK


_DOT_STYLE = {
    CENTER: 'shape=circle, style=filled, fillcolor="#9ecae1"',
    SADDLE: 'shape=diamond, style=filled, fillcolor="#fdae6b"',
    STABLE_CIRCLE: "shape=doublecircle",
    MARKED_LEAF: "shape=box",
    NOVIKOV: 'shape=octagon, style=filled, fillcolor="#d9d9d9"',
    BOUNDARY: "shape=house",
}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: FoliationGraph) -> str:
    """Deterministic DOT rendering: nodes and edges sorted by id."""
    lines = [
        "digraph folia {",
        f"  label={_q(f'n={g.dimension} closed={g.closed} TO={g.transversely_orientable}')};",
        "  rankdir=BT;",
    ]
    for x in sorted(g.nodes, key=lambda x: x.id):
        text = x.id
        if x.kind == SADDLE:
            text += f"\\nindex {x.index}"
        elif x.kind == MARKED_LEAF:
            text += f"\\n{x.topology} [{x.holonomy}]"
        elif x.kind != CENTER:
            text += f"\\n{x.kind}"
        lines.append(f"  {_q(x.id)} [label=\"{text}\", {_DOT_STYLE[x.kind]}];")
    for e in sorted(g.edges, key=lambda e: e.id):
        styles = (["bold"] if e.strong_connection else []) + ([] if e.topology.compact else ["dashed"])
        style = f", style={_q(','.join(styles))}" if styles else ""
        lines.append(f"  {_q(e.source)} -> {_q(e.target)} [label={_q(f'{e.id}: {e.topology}')}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(graph_path: str, out_path: str) -> int:
    try:
        g = load_graph(graph_path).graph
        _write(out_path, to_dot(g))
    except (OSError, ParseError) as exc:
        return _fail(EXIT_IO, str(exc))
    return EXIT_OK


def cmd_validate(graph_path: str) -> int:
    try:
        g = load_graph(graph_path).graph
    except (OSError, ParseError) as exc:
        return _fail(EXIT_IO, str(exc))
    report = validate(g)
    for w in report.warnings:
        print(w)
    if not report.ok:
        print(report)
        return EXIT_IO
    c = counts(g)
    print(f"OK n={g.dimension} k={c.k} l={c.l} stable_circles={c.stable_circles} novikov={c.novikov}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def write_fixtures(out_dir: str | Path, seed: int = 0) -> list[Path]:
    """Write every catalog graph, the reference meshes and their fields."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name: str, text: str) -> None:
        path = out / name
        path.write_text(text)
        written.append(path)

    for name, build in fixture_catalog.CATALOG.items():
        put(f"{name}.fgr", serialize(build()))
    created, _ = create_saddle_pair(fixture_catalog.two_center(3), "e1", 1)
    put("created_pair.fgr", serialize(created))
    rng = np.random.default_rng(seed)
    for name, build in meshes.MESHES.items():
        mesh = build()
        put(f"{name}.off", write_off(mesh))
        put(f"{name}_height.txt", write_field(mesh.field))
        if name != "monkey":
            put(f"{name}_random.txt", write_field(meshes.smooth_random_field(mesh, rng)))
    return written


def cmd_fixtures(out_dir: str, seed: int) -> int:
    try:
        paths = write_fixtures(out_dir, seed)
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    print(f"wrote {len(paths)} files to {out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="folia", description="Decorated leaf-space graphs of Morse foliations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ingest", help="build a Reeb graph from an OFF mesh and a field file")
    s.add_argument("mesh", help="OFF mesh, or a .fgr container with mesh and field sections")
    s.add_argument("field", nargs="?", help="one value per vertex line")
    s.add_argument("-o", "--out", required=True, help="output .fgr ('-' for stdout)")
    s.add_argument("--split", action="store_true", help="unfold degenerate saddles")

    s = sub.add_parser("classify", help="run a checker on a graph")
    s.add_argument("graph")
    s.add_argument("--checker", required=True, help=", ".join(CHECKERS))
    s.add_argument("--record", help="also write a machine-readable verdict record")

    s = sub.add_parser("simplify", help="apply eliminations and write a trace sidecar")
    s.add_argument("graph")
    s.add_argument("-o", "--out", required=True)
    s.add_argument("--strategy", default="full", help=", ".join(STRATEGIES))
    s.add_argument("--trace", help="trace path (default: output with .trace suffix)")

    s = sub.add_parser("export-dot", help="write a Graphviz rendering")
    s.add_argument("graph")
    s.add_argument("-o", "--out", default="-")

    s = sub.add_parser("validate", help="check structural rules")
    s.add_argument("graph")

    s = sub.add_parser("fixtures", help="write the fixture graphs and meshes")
    s.add_argument("out_dir")
    s.add_argument("--seed", type=int, default=0, help="seed for the random fields")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "ingest":
            return cmd_ingest(args.mesh, args.field, args.out, args.split)
        if args.command == "classify":
            return cmd_classify(args.graph, args.checker, args.record)
        if args.command == "simplify":
            return cmd_simplify(args.graph, args.out, args.strategy, args.trace)
        if args.command == "export-dot":
            return cmd_export_dot(args.graph, args.out)
        if args.command == "validate":
            return cmd_validate(args.graph)
        return cmd_fixtures(args.out_dir, args.seed)
    except ArgumentError as exc:
        return _fail(EXIT_USAGE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
