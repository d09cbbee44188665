"""Hand-authored leaf-space graphs for the standard example foliations.

Each builder returns a fresh :class:`FoliationGraph`. ``CATALOG`` maps the
fixture file stem (as shipped under ``fixtures/``) to its builder.
"""

from __future__ import annotations

from .graph import (
    BOUNDARY,
    NOVIKOV,
    STABLE_CIRCLE,
    FoliationGraph,
    Holonomy,
    LeafFamily,
    LeafTopology,
    Node,
    SemiHolonomy,
    center,
    circle,
    custom,
    marked_leaf,
    saddle,
    sphere,
    torus,
)

TRIVIAL_SEMI = SemiHolonomy(minus_trivial=True)


def _leaf(n: int) -> LeafTopology:
    return sphere(n - 1)


def two_center(n: int = 2) -> FoliationGraph:
    """Two centers joined by one family of spheres: the round sphere."""
    return FoliationGraph(
        n,
        nodes=(center("c1"), center("c2")),
        edges=(LeafFamily("e1", "c1", "c2", _leaf(n)),),
    )


def torus_height() -> FoliationGraph:
    """Height function on an upright torus: min p, saddles q and r, max s."""
    c = circle()
    return FoliationGraph(
        2,
        nodes=(
            center("p"),
            saddle("q", 1, ["-e1", "+e2", "+e3"]),
            saddle("r", 1, ["-e2", "-e3", "+e4"]),
            center("s"),
        ),
        edges=(
            LeafFamily("e1", "p", "q", c),
            LeafFamily("e2", "q", "r", c),
            LeafFamily("e3", "q", "r", c),
            LeafFamily("e4", "r", "s", c),
        ),
    )


def y_graph(n: int = 2) -> FoliationGraph:
    """One minimum, one saddle, two maxima (a sphere with two bumps)."""
    leaf = _leaf(n)
    return FoliationGraph(
        n,
        nodes=(
            center("a"),
            saddle("q", n - 1, ["-e1", "+e2", "+e3"]),
            center("b1"),
            center("b2"),
        ),
        edges=(
            LeafFamily("e1", "a", "q", leaf),
            LeafFamily("e2", "q", "b1", leaf),
            LeafFamily("e3", "q", "b2", leaf),
        ),
    )


def eells_kuiper(n: int = 4, index: int | None = None) -> FoliationGraph:
    """Two centers around a single saddle of middle index."""
    index = n // 2 if index is None else index
    leaf = _leaf(n)
    return FoliationGraph(
        n,
        nodes=(center("c1"), saddle("q", index, ["-e1", "+e2"]), center("c2")),
        edges=(LeafFamily("e1", "c1", "q", leaf), LeafFamily("e2", "q", "c2", leaf)),
    )


def saddle_pair_sphere(n: int = 3, l: int = 1) -> FoliationGraph:
    """Sphere split into two handlebodies: centers plus saddles of index l and l+1."""
    leaf = _leaf(n)
    q1 = _pair_saddle("q1", l, n, "e1", "e2", lower=True)
    q2 = _pair_saddle("q2", l + 1, n, "e2", "e3", lower=False)
    middle = LeafTopology("product_spheres", (l, n - l - 1))
    return FoliationGraph(
        n,
        nodes=(center("c1"), q1, q2, center("c2")),
        edges=(
            LeafFamily("e1", "c1", "q1", leaf),
            LeafFamily("e2", "q1", "q2", middle, strong_connection=True),
            LeafFamily("e3", "q2", "c2", leaf),
        ),
    )


def _pair_saddle(node_id: str, index: int, n: int, incoming: str, outgoing: str, lower: bool) -> Node:
    # index 1 saddles merge two local branches below, index n-1 split above;
    # in a created pair both branches lie on the same family
    if index == 1 and lower:
        return saddle(node_id, index, [f"-{incoming}*", f"-{incoming}*", f"+{outgoing}"],
                      selfconnected=True, semi_holonomy=TRIVIAL_SEMI)
    if index == n - 1 and not lower:
        return saddle(node_id, index, [f"-{incoming}", f"+{outgoing}*", f"+{outgoing}*"],
                      selfconnected=True, semi_holonomy=TRIVIAL_SEMI)
    return saddle(node_id, index, [f"-{incoming}", f"+{outgoing}"])


def singular_reeb(n: int = 3, semi_trivial: bool = True) -> FoliationGraph:
    """Center whose sphere family closes up on a selfconnected saddle, then a stable circle."""
    outer = torus() if semi_trivial else LeafTopology("open_RxS", (n - 2,))
    far = Node("C", STABLE_CIRCLE if semi_trivial else NOVIKOV)
    return FoliationGraph(
        n,
        nodes=(
            center("p"),
            saddle("q", 1, ["-e1*", "-e1*", "+e2"], selfconnected=True,
                   semi_holonomy=SemiHolonomy(minus_trivial=semi_trivial)),
            far,
        ),
        edges=(LeafFamily("e1", "p", "q", _leaf(n)), LeafFamily("e2", "q", "C", outer)),
    )


def reeb_interior(n: int) -> LeafTopology:
    return custom("plane" if n == 3 else f"R{n - 1}", compact=False)


def reeb_plus_solid_torus(null_homotopic_transversal: bool = True) -> FoliationGraph:
    """Reeb component glued to a solid torus foliated by tori around a singular circle."""
    return FoliationGraph(
        3,
        nodes=(
            Node("N", NOVIKOV),
            marked_leaf("T", torus(), Holonomy.UNILATERAL),
            Node("C", STABLE_CIRCLE),
        ),
        edges=(LeafFamily("e1", "N", "T", reeb_interior(3)), LeafFamily("e2", "T", "C", torus())),
        null_homotopic_transversal=null_homotopic_transversal,
    )


def reeb_plus_solid_torus_without_unilateral() -> FoliationGraph:
    """Negative variant: the Novikov component touches the torus family directly."""
    return FoliationGraph(
        3,
        nodes=(Node("N", NOVIKOV), Node("C", STABLE_CIRCLE)),
        edges=(LeafFamily("e1", "N", "C", torus()),),
        null_homotopic_transversal=True,
    )


def linked_circles() -> FoliationGraph:
    """S^3 as two solid tori, all leaves tori, two linked singular circles."""
    return FoliationGraph(
        3,
        nodes=(Node("C1", STABLE_CIRCLE), Node("C2", STABLE_CIRCLE)),
        edges=(LeafFamily("e1", "C1", "C2", torus()),),
    )


def linked_circles_with_cylinders() -> FoliationGraph:
    """Previous fixture with a slab of cylinders accumulating on two boundary tori."""
    cyl = custom("cylinder", compact=False)
    return FoliationGraph(
        3,
        nodes=(
            Node("C1", STABLE_CIRCLE),
            marked_leaf("Ta", torus(), Holonomy.UNILATERAL),
            Node("N", NOVIKOV),
            marked_leaf("Tb", torus(), Holonomy.UNILATERAL),
            Node("C2", STABLE_CIRCLE),
        ),
        edges=(
            LeafFamily("e1", "C1", "Ta", torus()),
            LeafFamily("e2", "Ta", "N", cyl),
            LeafFamily("e3", "N", "Tb", cyl),
            LeafFamily("e4", "Tb", "C2", torus()),
        ),
    )


def reeb_s3() -> FoliationGraph:
    """Two Reeb components glued along their boundary torus."""
    plane = reeb_interior(3)
    return FoliationGraph(
        3,
        nodes=(Node("N1", NOVIKOV), marked_leaf("T", torus(), Holonomy.UNILATERAL), Node("N2", NOVIKOV)),
        edges=(LeafFamily("e1", "N1", "T", plane), LeafFamily("e2", "T", "N2", plane)),
    )


def no_first_integral_s2() -> FoliationGraph:
    """Three centers and a saddle on S^2 with a leaf of nontrivial holonomy."""
    c = circle()
    return FoliationGraph(
        2,
        nodes=(
            center("p1"),
            marked_leaf("a", c, Holonomy.INFINITE),
            saddle("q", 1, ["-e2", "+e3", "+e4"]),
            center("p2"),
            center("p3"),
        ),
        edges=(
            LeafFamily("e1", "p1", "a", c),
            LeafFamily("e2", "a", "q", c),
            LeafFamily("e3", "q", "p2", c),
            LeafFamily("e4", "q", "p3", c),
        ),
    )


def rp2_three_points() -> FoliationGraph:
    """Projective plane: two centers, a saddle and a one-sided leaf."""
    c = circle()
    return FoliationGraph(
        2,
        nodes=(
            center("p1"),
            center("p2"),
            saddle("q", 1, ["-e1", "-e2", "+e3"]),
            marked_leaf("m", c, Holonomy.Z2),
        ),
        edges=(
            LeafFamily("e1", "p1", "q", c),
            LeafFamily("e2", "p2", "q", c),
            LeafFamily("e3", "q", "m", c),
        ),
        transversely_orientable=False,
    )


def rp2_center() -> FoliationGraph:
    """Projective plane by circles around one center, closing on a one-sided leaf."""
    return FoliationGraph(
        2,
        nodes=(center("p"), marked_leaf("m", circle(), Holonomy.Z2)),
        edges=(LeafFamily("e1", "p", "m", circle()),),
        transversely_orientable=False,
    )


def center_surplus_with_novikov() -> FoliationGraph:
    """Inconsistent: one center and no saddle, yet a Novikov component."""
    return FoliationGraph(
        3,
        nodes=(center("c"), marked_leaf("B", sphere(2), Holonomy.UNILATERAL), Node("N", NOVIKOV)),
        edges=(LeafFamily("e1", "c", "B", sphere(2)), LeafFamily("e2", "B", "N", reeb_interior(3))),
    )


def torus_bundle() -> FoliationGraph:
    """Fibration of a 3-manifold over the circle with torus fibres."""
    return FoliationGraph(
        3,
        nodes=(marked_leaf("m", torus()),),
        edges=(LeafFamily("e1", "m", "m", torus()),),
    )


def nonsingular_torus() -> FoliationGraph:
    """Torus foliated by parallel circles."""
    return FoliationGraph(
        2,
        nodes=(marked_leaf("m", circle()),),
        edges=(LeafFamily("e1", "m", "m", circle()),),
    )


def ball(n: int = 3) -> FoliationGraph:
    """Closed ball foliated by concentric spheres, tangent to its boundary."""
    return FoliationGraph(
        n,
        nodes=(Node("b", BOUNDARY), center("c")),
        edges=(LeafFamily("e1", "b", "c", _leaf(n)),),
        closed=False,
    )


CATALOG = {
    "two_center": lambda: two_center(2),
    "two_center3": lambda: two_center(3),
    "two_center4": lambda: two_center(4),
    "two_center5": lambda: two_center(5),
    "torus": torus_height,
    "bumpy_sphere": lambda: y_graph(2),
    "bumpy3": lambda: y_graph(3),
    "ek4": lambda: eells_kuiper(4),
    "ek5": lambda: eells_kuiper(5, 2),
    "ek6": lambda: eells_kuiper(6, 3),
    "saddle_pair3": lambda: saddle_pair_sphere(3, 1),
    "saddle_pair4": lambda: saddle_pair_sphere(4, 2),
    "singular_reeb3": singular_reeb,
    "reeb_solid_torus": reeb_plus_solid_torus,
    "reeb_solid_torus_no_unilateral": reeb_plus_solid_torus_without_unilateral,
    "linked_circles": linked_circles,
    "linked_circles_cylinders": linked_circles_with_cylinders,
    "reeb_s3": reeb_s3,
    "fig2_s2": no_first_integral_s2,
    "rp2": rp2_three_points,
    "rp2_center": rp2_center,
    "center_surplus_novikov": center_surplus_with_novikov,
    "torus_bundle": torus_bundle,
    "nonsingular_torus": nonsingular_torus,
    "ball2": lambda: ball(2),
    "ball3": ball,
    "ball4": lambda: ball(4),
}
