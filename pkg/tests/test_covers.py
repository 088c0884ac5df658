import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvekit.construction import side_curve
from curvekit.covers import (DEFAULT_D, LiftedTwists, build_tower, genus_two_cover, holonomy_by_walk,
                             lift_curve, lift_sequence, verify_lifted_sequence)
from curvekit.errors import ChartMismatch
from curvekit.mapping_classes import twist_power
from curvekit.surface import get_chart, intersection_number
from curvekit.transport import Perm, Transport
from curvekit.triangulation import SurfaceSig

from pools import TINY
from strategies import tiny_curves


@pytest.fixture(scope="module")
def tower():
    return build_tower(2)


def test_degrees_and_surfaces(tower):
    f, F = tower
    assert f.degree == 2 and F.degree == 4
    assert F.degree // f.degree == 2
    assert F.total.surface == SurfaceSig(2, 10)
    assert f.total.surface == SurfaceSig(0, 8)
    assert get_chart("S2-cover") is not None and genus_two_cover() is F


def test_euler_characteristic_bookkeeping(tower):
    _, F = tower
    V = len(F.total.vertices())
    E = F.total.zeta
    T = len(F.total.triangles)
    assert V - E + T == -2  # closed genus two surface with marked points
    # orbifold base: sphere with five cone points of order two
    assert F.degree * (2 - 5 / 2) == -2


def test_each_puncture_has_two_preimages(tower):
    _, F = tower
    heads = {F.total.head(x) for x in range(F.total.zeta)} | {F.total.head(~x) for x in range(F.total.zeta)}
    for k in range(5):
        assert sorted(h for h in heads if h.startswith(f"P{k}.")) == [f"P{k}.0", f"P{k}.1"]


def test_deck_transformations_are_isometries(tower):
    _, F = tower
    deck = F.deck()
    assert len(deck) == 4
    for p in deck:
        assert F.total.is_isometry_to(F.total, p)


@given(tiny_curves)
def test_weight_conservation_and_counts(c):
    _, F = build_tower(2)
    L = lift_curve(F, c)
    assert all(L.weights()[x] == c.weights[F.edge_image(x)] for x in range(F.total.zeta))
    assert len(L) <= F.degree
    walk = holonomy_by_walk(F, c)
    assert F.holonomy(c) == walk
    assert len(L) == F.degree // (1 if not any(walk) else 2)


@given(tiny_curves)
def test_lift_is_deck_invariant(c):
    _, F = build_tower(2)
    L = set(lift_curve(F, c))
    for p in F.deck():
        moved = {tuple(Transport([Perm(p)]).apply(x.weights)) for x in L}
        assert moved == {x.weights for x in L}


@settings(max_examples=25)
@given(tiny_curves, tiny_curves)
def test_intersection_multiplicativity(a, b):
    _, F = build_tower(2)
    up = sum(intersection_number(x, y) for x in lift_curve(F, a) for y in lift_curve(F, b))
    assert up == F.degree * intersection_number(a, b)


def test_gamma0_preimage_has_two_components(tower):
    _, F = tower
    assert len(lift_curve(F, side_curve(1))) == 2
    assert F.component_count(side_curve(1)) == 2


def test_holonomy_of_side_curves(tower):
    _, F = tower
    assert [any(F.holonomy(side_curve(k))) for k in range(5)] == [True, True, False, False, True]


def test_wrong_chart_is_rejected(tower):
    _, F = tower
    up = lift_curve(F, side_curve(0)).components[0]
    with pytest.raises(ChartMismatch):
        lift_curve(F, up)


@settings(max_examples=20)
@given(st.integers(0, 4), st.sampled_from(TINY), st.sampled_from([-3, -1, 1, 2, 5]))
def test_lifted_twists_cover_base_twists(k, b, e):
    _, F = build_tower(2)
    lt = LiftedTwists(F)
    c = side_curve(k)
    tr = lt.transport(c, e)
    total = [0] * F.total.zeta
    for comp in lift_curve(F, b):
        total = [x + y for x, y in zip(total, tr.apply(comp.weights))]
    assert tuple(total) == F.lift_weights(twist_power(c, b, e).weights)


def test_lifted_sequence_projects_and_is_disjoint_consecutively(tower, bundle10):
    _, F = tower
    L = lift_sequence(F, bundle10.powers, 10)
    for i, g in enumerate(L):
        comps = {tuple(Transport([Perm(p)]).apply(g.weights)) for p in F.deck()}
        summed = tuple(sum(w[x] for w in comps) for x in range(F.total.zeta))
        assert summed == F.lift_weights(bundle10.curves[i].weights)
        assert len(comps) == F.component_count(bundle10.curves[i])
    for i in range(10):
        assert intersection_number(L[i], L[i + 1]) == 0


def test_lifted_report(tower, bundle10):
    _, F = tower
    rep = verify_lifted_sequence(F, bundle10, DEFAULT_D)
    assert rep["violations"] == []
    assert rep["empirical"]["smallest_d"] <= DEFAULT_D
    # the lifted coefficient is e_{i-1} or about half of it (a doubly covered core)
    for row in rep["annular"]:
        assert row["e_prev"] / 2 - 13 <= row["value"] <= row["e_prev"] + 13
