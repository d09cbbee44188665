"""Global checkers: verdicts with certificates, or a named model inconsistency."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arrangements import find_trivial_couples, weakly_stable
from .errors import ModelInconsistency, PreconditionError
from .graph import (
    BOUNDARY,
    CENTER,
    MARKED_LEAF,
    NOVIKOV,
    SADDLE,
    STABLE_CIRCLE,
    FoliationGraph,
    Holonomy,
    require_valid,
)
from .surgery import MoveTrace, eliminate_trivial_couple

SPHERE = "sphere"
EELLS_KUIPER = "eells_kuiper"
FIBRATION = "fibration_over_circle"
ALL_COMPACT = "all_compact"
NOVIKOV_PRESENT = "novikov_present"
UNILATERAL_LEAF = "unilateral_leaf"
INCONCLUSIVE = "inconclusive"
PRECONDITION_FAILED = "precondition_failed"

# endpoint kinds of an interval leaf space
BOUNDARY_LEAF = "boundary_leaf"
STABLE_SINGULARITY = "stable_singularity"
STABLE_CIRCLE_END = "stable_circle"
Z2_LEAF = "z2_leaf"


@dataclass(frozen=True)
class Verdict:
    tag: str
    reason: str = ""
    certificate: MoveTrace | None = None
    witness: tuple[str, ...] = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def definitive(self) -> bool:
        return self.tag not in (INCONCLUSIVE, PRECONDITION_FAILED)


@dataclass(frozen=True)
class LeafSpaceShape:
    tag: str  # circle | interval | orbifold_interval
    ends: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.tag}{{{', '.join(self.ends)}}}" if self.ends else self.tag


def wagneur_stable(n: int, l: int) -> bool:
    """Index-stability predicate: stable iff the index is neither 2 nor n-2."""
    if not 0 <= l <= n:
        raise ValueError(f"index {l} outside 0..{n}")
    return l not in (2, n - 2)


def eells_kuiper_admissible(n: int) -> bool:
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return n in (2, 4, 8, 16)


def _nontrivial_holonomy(g: FoliationGraph) -> list[str]:
    return [x.id for x in g.nodes_of(MARKED_LEAF) if x.holonomy is not Holonomy.TRIVIAL]


# ---------------------------------------------------------------------------
# Sphere and center-saddle decisions
# ---------------------------------------------------------------------------


def reeb_sphere_check(g: FoliationGraph) -> Verdict:
    require_valid(g)
    if not g.closed:
        return Verdict(PRECONDITION_FAILED, "manifold has boundary")
    if not g.transversely_orientable:
        return Verdict(PRECONDITION_FAILED, "foliation is not transversely orientable")
    if g.l:
        return Verdict(PRECONDITION_FAILED, f"{g.l} saddle(s) present")
    singular = [x.id for x in g.nodes if x.kind in (CENTER, STABLE_CIRCLE)]
    if not singular:
        if not g.nodes_of(NOVIKOV) and all(e.topology.compact for e in g.edges) and _single_cycle(g):
            return Verdict(FIBRATION, "nonsingular, all leaves compact, leaf space a circle")
        return Verdict(PRECONDITION_FAILED, "singular set is empty")
    unstable = [x for x in singular if not weakly_stable(g, x)]
    if unstable:
        return Verdict(PRECONDITION_FAILED, f"singular components not weakly stable: {', '.join(unstable)}")
    return Verdict(SPHERE, "every singular component is weakly stable", witness=tuple(singular))


def center_saddle_decision(g: FoliationGraph) -> Verdict:
    """Eliminate trivial couples until none is left, then read the terminal state."""
    require_valid(g)
    n = g.dimension
    if not g.closed:
        return Verdict(PRECONDITION_FAILED, "manifold has boundary")
    if not g.transversely_orientable:
        return Verdict(PRECONDITION_FAILED, "foliation is not transversely orientable")
    if n == 2 and _nontrivial_holonomy(g):
        return Verdict(
            PRECONDITION_FAILED,
            f"holonomy present in dimension 2 at {', '.join(_nontrivial_holonomy(g))}",
        )
    others = [x.id for x in g.nodes if x.kind in (STABLE_CIRCLE, NOVIKOV, BOUNDARY)]
    if others:
        return Verdict(PRECONDITION_FAILED, f"not a Morse foliation with isolated singularities: {', '.join(others)}")
    k0, l0 = g.k, g.l
    if k0 < l0 + 1:
        return Verdict(PRECONDITION_FAILED, f"k={k0} < l+1={l0 + 1}")

    trace = MoveTrace()
    while True:
        couples = find_trivial_couples(g)
        if not couples:
            break
        p, q = couples[0]
        before = g.k + g.l
        g, step = eliminate_trivial_couple(g, p, q)
        assert g.k + g.l == before - 2
        trace.extend(step)
    k, l = g.k, g.l
    details = {"k0": k0, "l0": l0, "k": k, "l": l, "final": g}
    if l == 0:
        if k != 2:
            return Verdict(INCONCLUSIVE, f"no saddles left but {k} centers", trace, details=details)
        return Verdict(SPHERE, f"k={k0},l={l0} -> k={k},l={l}", trace, details=details)
    if l == 1 and k == 2:
        (q,) = g.nodes_of(SADDLE)
        i = q.index
        if n > 2 and i in (1, n - 1):
            return Verdict(
                INCONCLUSIVE,
                f"saddle {q.id} of index {i} is not removable from either center",
                trace, details=details,
            )
        if n % 2:
            raise ModelInconsistency(
                "even-dimension",
                f"a middle-index saddle between two centers forces n even, got n={n}",
            )
        if i != n // 2:
            raise ModelInconsistency("middle-index", f"saddle {q.id} has index {i}, expected n/2={n // 2}")
        if not eells_kuiper_admissible(n):
            raise ModelInconsistency(
                "eells-kuiper-dimension", f"three-point manifolds exist only for n in 2,4,8,16; got n={n}"
            )
        details["saddle_index"] = i
        return Verdict(EELLS_KUIPER, f"n={n}, saddle index {i}", trace, witness=(q.id,), details=details)
    return Verdict(INCONCLUSIVE, f"stuck at k={k}, l={l} with no trivial couple", trace, details=details)


# ---------------------------------------------------------------------------
# Leaf space and transversals
# ---------------------------------------------------------------------------


def _single_cycle(g: FoliationGraph) -> bool:
    if not g.nodes or len(g.edges) != len(g.nodes):
        return False
    if any(g.degree(x.id) != 2 for x in g.nodes):
        return False
    return all(x.kind == MARKED_LEAF for x in g.nodes)


def _end_kind(g: FoliationGraph, node_id: str) -> str:
    node = g.node(node_id)
    if node.kind == BOUNDARY:
        return BOUNDARY_LEAF
    if node.kind == CENTER:
        return STABLE_SINGULARITY
    if node.kind == STABLE_CIRCLE:
        return STABLE_CIRCLE_END
    if node.kind == MARKED_LEAF and node.holonomy is Holonomy.Z2:
        return Z2_LEAF
    raise ModelInconsistency("leaf-space-ends", f"{node_id} ({node.kind}) cannot end a leaf space")


def classify_leaf_space(g: FoliationGraph) -> LeafSpaceShape:
    """Circle or interval (with endpoint kinds) for all-compact foliations."""
    require_valid(g)
    if g.l:
        raise PreconditionError(f"{g.l} saddle(s) present; leaf space is not a 1-manifold")
    if g.nodes_of(NOVIKOV):
        raise PreconditionError("Novikov component present")
    open_edges = [e.id for e in g.edges if not e.topology.compact]
    if open_edges:
        raise PreconditionError(f"non-compact leaves on {', '.join(open_edges)}")
    if _single_cycle(g):
        if not g.closed:
            raise ModelInconsistency("leaf-space-circle", "circle leaf space on a manifold with boundary")
        return LeafSpaceShape("circle")
    ends = sorted(x.id for x in g.nodes if g.degree(x.id) == 1)
    inner = [x for x in g.nodes if g.degree(x.id) != 1]
    if len(ends) != 2 or any(g.degree(x.id) != 2 for x in inner):
        raise ModelInconsistency("leaf-space-path", "all-compact leaf space must be a path or a cycle")
    kinds = tuple(sorted(_end_kind(g, x) for x in ends))
    if not g.transversely_orientable:
        return LeafSpaceShape("orbifold_interval", kinds)
    if Z2_LEAF in kinds:
        raise ModelInconsistency("z2-orientable", "one-sided leaf in a transversely orientable foliation")
    return LeafSpaceShape("interval", kinds)


def _directed_cycle(g: FoliationGraph) -> tuple[str, ...] | None:
    adj: dict[str, list[tuple[str, str]]] = {x.id: [] for x in g.nodes}
    for e in sorted(g.edges, key=lambda e: e.id):
        adj[e.source].append((e.target, e.id))
    colour = {x: 0 for x in adj}
    stack_path: list[str] = []

    def visit(x: str) -> tuple[str, ...] | None:
        colour[x] = 1
        for y, eid in adj[x]:
            if colour[y] == 1:
                stack_path.append(eid)
                return tuple(stack_path)
            if colour[y] == 0:
                stack_path.append(eid)
                found = visit(y)
                if found:
                    return found
                stack_path.pop()
        colour[x] = 2
        return None

    for x in sorted(adj):
        if colour[x] == 0:
            found = visit(x)
            if found:
                # keep only the closed part of the walk
                ends = {e: g.edge(e) for e in found}
                tail = ends[found[-1]].target
                start = next(i for i, e in enumerate(found) if ends[e].source == tail)
                return found[start:]
    return None


def closed_transversal_exists(g: FoliationGraph) -> Verdict:
    """``witness`` is a directed cycle of families or a Novikov node; empty when none exists."""
    require_valid(g)
    if not g.transversely_orientable:
        raise PreconditionError("needs a transversely orientable graph (supply the double cover)")
    nov = sorted(x.id for x in g.nodes_of(NOVIKOV))
    if nov:
        return Verdict("exists", "open leaves of a Novikov component", witness=(nov[0],))
    cycle = _directed_cycle(g)
    if cycle:
        return Verdict("exists", "directed cycle of leaf families", witness=cycle)
    return Verdict("absent", "no directed cycle and no Novikov component")


def transversal_exists(g: FoliationGraph) -> bool:
    return closed_transversal_exists(g).tag == "exists"


def novikov_dichotomy(g: FoliationGraph) -> Verdict:
    require_valid(g)
    if g.dimension != 3:
        return Verdict(PRECONDITION_FAILED, f"dimension {g.dimension} != 3")
    singular = [x.id for x in g.nodes if x.kind in (CENTER, SADDLE, STABLE_CIRCLE)]
    unstable = [x for x in singular if g.node(x).kind == SADDLE or not weakly_stable(g, x)]
    if unstable:
        return Verdict(PRECONDITION_FAILED, f"singular components not stable: {', '.join(unstable)}")
    nov = sorted(x.id for x in g.nodes_of(NOVIKOV))
    open_edges = sorted(e.id for e in g.edges if not e.topology.compact)
    compact = not nov and not open_edges
    present = bool(nov)
    if compact == present:
        raise ModelInconsistency(
            "novikov-exclusive",
            f"open leaves on {', '.join(open_edges)} without a Novikov component",
        )
    if present:
        return Verdict(NOVIKOV_PRESENT, "Novikov component present", witness=tuple(nov))
    return Verdict(ALL_COMPACT, "all leaves compact")


def haefliger_report(g: FoliationGraph) -> Verdict:
    """Check the closed-leaf and unilateral-holonomy consequences of k versus l."""
    require_valid(g)
    if not g.transversely_orientable:
        return Verdict(PRECONDITION_FAILED, "foliation is not transversely orientable")
    if g.dimension < 3:
        return Verdict(PRECONDITION_FAILED, f"dimension {g.dimension} < 3")
    k, l = g.k, g.l
    nov = sorted(x.id for x in g.nodes_of(NOVIKOV))
    open_edges = sorted(e.id for e in g.edges if not e.topology.compact)
    unilateral = sorted(x.id for x in g.nodes_of(MARKED_LEAF) if x.holonomy is Holonomy.UNILATERAL)

    if g.null_homotopic_transversal and not g.nodes_of(CENTER) and not g.nodes_of(SADDLE):
        # singular set made of stable circles (or empty)
        if not unilateral:
            raise ModelInconsistency(
                "unilateral-holonomy-required",
                "a null-homotopic closed transversal forces a leaf with unilateral holonomy",
            )

    if k >= l + 1:
        if nov or open_edges:
            raise ModelInconsistency(
                "closed-leaves",
                f"k={k} >= l+1 forces all leaves closed, but found "
                + ", ".join(nov + open_edges),
            )
        n = g.dimension
        if k >= l + 2 or not g.closed:
            bad = sorted(e.id for e in g.edges if not e.topology.is_sphere(n - 1))
            if bad:
                raise ModelInconsistency(
                    "sphere-leaves",
                    f"k={k}, l={l}{' with boundary' if not g.closed else ''} forces sphere leaves; "
                    f"not spheres: {', '.join(bad)}",
                )
            return Verdict(ALL_COMPACT, f"k={k} >= l+2 or boundary: all leaves spheres")
        return Verdict(ALL_COMPACT, f"k={k} >= l+1: all leaves closed")
    if k == l:
        if not nov and not open_edges:
            return Verdict(ALL_COMPACT, f"k=l={k}: all leaves closed")
        if unilateral:
            return Verdict(UNILATERAL_LEAF, f"k=l={k}: leaf with unilateral holonomy", witness=tuple(unilateral))
        raise ModelInconsistency(
            "closed-or-unilateral",
            f"k=l={k} with open leaves but no leaf with unilateral holonomy",
        )
    if unilateral:
        return Verdict(UNILATERAL_LEAF, f"k={k} < l={l}", witness=tuple(unilateral))
    return Verdict(INCONCLUSIVE, f"k={k} < l={l}: no statement applies")


CHECKERS = {
    "center-saddle": center_saddle_decision,
    "reeb-sphere": reeb_sphere_check,
    "leaf-space": classify_leaf_space,
    "transversal": closed_transversal_exists,
    "novikov": novikov_dichotomy,
    "haefliger": haefliger_report,
}
