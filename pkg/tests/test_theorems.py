from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folia import fixtures
from folia.errors import ModelInconsistency, PreconditionError
from folia.graph import SADDLE, FoliationGraph, LeafFamily, SemiHolonomy, center, counts, saddle, sphere
from folia.surgery import create_trivial_couple
from folia.theorems import (
    ALL_COMPACT,
    CHECKERS,
    EELLS_KUIPER,
    FIBRATION,
    INCONCLUSIVE,
    NOVIKOV_PRESENT,
    PRECONDITION_FAILED,
    SPHERE,
    UNILATERAL_LEAF,
    center_saddle_decision,
    classify_leaf_space,
    closed_transversal_exists,
    eells_kuiper_admissible,
    haefliger_report,
    novikov_dichotomy,
    reeb_sphere_check,
    transversal_exists,
    wagneur_stable,
)


def test_wagneur_predicate():
    # stable exactly when the index avoids 2 and n-2
    assert [wagneur_stable(6, l) for l in range(7)] == [True, True, False, True, False, True, True]
    assert not wagneur_stable(4, 2)
    assert wagneur_stable(3, 1) is False  # n - 2 = 1
    with pytest.raises(ValueError):
        wagneur_stable(3, 4)


def test_eells_kuiper_dimensions():
    assert [n for n in range(2, 40) if eells_kuiper_admissible(n)] == [2, 4, 8, 16]


def test_reeb_sphere():
    assert reeb_sphere_check(fixtures.two_center(3)).tag == SPHERE
    assert reeb_sphere_check(fixtures.nonsingular_torus()).tag == FIBRATION
    assert reeb_sphere_check(fixtures.torus_height()).tag == PRECONDITION_FAILED


def test_center_saddle_on_bumpy_sphere():
    v = center_saddle_decision(fixtures.y_graph(2))
    assert v.tag == SPHERE and v.definitive
    assert len(v.certificate) == 1
    assert (v.details["k"], v.details["l"]) == (2, 0)


def test_center_saddle_eells_kuiper_and_rejections():
    v = center_saddle_decision(fixtures.eells_kuiper(4))
    assert v.tag == EELLS_KUIPER and v.details["saddle_index"] == 2
    with pytest.raises(ModelInconsistency) as info:
        center_saddle_decision(fixtures.eells_kuiper(5, 2))
    assert info.value.rule == "even-dimension"
    with pytest.raises(ModelInconsistency) as info:
        center_saddle_decision(fixtures.eells_kuiper(6, 3))
    assert info.value.rule == "eells-kuiper-dimension"
    with pytest.raises(ModelInconsistency) as info:
        center_saddle_decision(fixtures.eells_kuiper(8, 3))
    assert info.value.rule == "middle-index"
    assert center_saddle_decision(fixtures.eells_kuiper(8)).tag == EELLS_KUIPER


def test_center_saddle_preconditions():
    assert center_saddle_decision(fixtures.no_first_integral_s2()).tag == PRECONDITION_FAILED
    assert center_saddle_decision(fixtures.torus_height()).tag == PRECONDITION_FAILED
    assert center_saddle_decision(fixtures.ball(3)).tag == PRECONDITION_FAILED
    assert center_saddle_decision(fixtures.rp2_three_points()).tag == PRECONDITION_FAILED


def test_center_saddle_inconclusive_for_extreme_index_between_two_centers():
    # k = 2, l = 1 with an index n-1 saddle whose upper ports are paired: no trivial couple
    g = FoliationGraph(
        3,
        nodes=(center("c1"),
               saddle("q", 2, ["-e1", "+e2*", "+e2*"], selfconnected=True, semi_holonomy=SemiHolonomy(True)),
               center("c2")),
        edges=(LeafFamily("e1", "c1", "q", sphere(2)), LeafFamily("e2", "q", "c2", sphere(2))),
    )
    v = center_saddle_decision(g)
    assert v.tag == INCONCLUSIVE
    assert not v.definitive
    assert "index 2" in v.reason


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_dead_branches_always_reduce_to_a_sphere(s, n):
    rng = np.random.default_rng(s)
    g = fixtures.two_center(n)
    for _ in range(int(rng.integers(1, 5))):
        e = sorted(g.edge_map)[rng.integers(len(g.edges))]
        g, _ = create_trivial_couple(g, e, bool(rng.integers(2)))
    v = center_saddle_decision(g)
    assert v.tag == SPHERE
    assert len(v.certificate) == counts(g).l
    assert not v.details["final"].nodes_of(SADDLE)


def test_leaf_space_shapes():
    assert str(classify_leaf_space(fixtures.linked_circles())) == "interval{stable_circle, stable_circle}"
    assert classify_leaf_space(fixtures.nonsingular_torus()).tag == "circle"
    assert classify_leaf_space(fixtures.rp2_center()).tag == "orbifold_interval"
    assert classify_leaf_space(fixtures.ball(3)).ends == ("boundary_leaf", "stable_singularity")
    with pytest.raises(PreconditionError):
        classify_leaf_space(fixtures.torus_height())
    with pytest.raises(PreconditionError):
        classify_leaf_space(fixtures.reeb_plus_solid_torus())


def test_transversals():
    v = closed_transversal_exists(fixtures.reeb_plus_solid_torus())
    assert v.tag == "exists" and v.witness
    assert closed_transversal_exists(fixtures.linked_circles()).tag == "absent"
    assert transversal_exists(fixtures.torus_bundle())
    assert not transversal_exists(fixtures.torus_height())
    with pytest.raises(PreconditionError):
        closed_transversal_exists(fixtures.rp2_center())


def test_novikov_dichotomy():
    assert novikov_dichotomy(fixtures.linked_circles()).tag == ALL_COMPACT
    assert novikov_dichotomy(fixtures.reeb_plus_solid_torus()).tag == NOVIKOV_PRESENT
    assert novikov_dichotomy(fixtures.torus_height()).tag == PRECONDITION_FAILED


def test_haefliger():
    assert haefliger_report(fixtures.reeb_plus_solid_torus()).tag == UNILATERAL_LEAF
    with pytest.raises(ModelInconsistency) as info:
        haefliger_report(fixtures.reeb_plus_solid_torus_without_unilateral())
    assert info.value.rule == "unilateral-holonomy-required"
    with pytest.raises(ModelInconsistency) as info:
        haefliger_report(fixtures.center_surplus_with_novikov())
    assert info.value.rule == "closed-leaves"
    assert haefliger_report(fixtures.two_center(3)).tag == ALL_COMPACT


def test_checker_registry_names():
    assert sorted(CHECKERS) == ["center-saddle", "haefliger", "leaf-space", "novikov",
                                "reeb-sphere", "transversal"]
