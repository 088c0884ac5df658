import pytest
from hypothesis import given

from curvekit.construction import side_curve
from curvekit.errors import Disconnected, NotACurve, Peripheral
from curvekit.oracles import arc_walk_intersection
from curvekit.surface import (Marking, MultiCurve, NormalCurve, canonical_key, curve_from_json,
                              curve_to_json, intersection_number, multicurve_components, overlaps,
                              puncture_partition, tighten)
from curvekit.tracing import corner_counts

from pools import SMALL, TINY
from strategies import small_curves, tiny_curves


def test_zero_weights_are_peripheral():
    with pytest.raises(Peripheral):
        tighten([0] * 9)


def test_canonical_input_round_trips():
    g0 = side_curve(1)
    assert tighten(g0.weights).weights == g0.weights
    assert canonical_key(tighten(g0.weights)) == canonical_key(g0)


def test_inserted_bigon_is_removed():
    g0 = side_curve(1)
    w = list(g0.weights)
    w[5] += 2  # push a strand across the diagonal and back
    with pytest.raises(NotACurve):
        NormalCurve(g0.chart, w)
    assert tighten(w) == g0


def test_two_parallel_copies_are_disconnected():
    with pytest.raises(Disconnected):
        tighten([2 * x for x in side_curve(0).weights])


def test_negative_weight_rejected():
    w = list(side_curve(0).weights)
    w[0] = -1
    with pytest.raises(NotACurve):
        tighten(w)


@given(small_curves)
def test_tighten_is_idempotent(c):
    once = tighten(c.weights)
    assert tighten(once.weights) == once == c


@given(small_curves)
def test_corner_coordinates_are_nonnegative(c):
    corners = corner_counts(c.chart, c.weights)
    assert min(corners.values()) >= 0


def test_consecutive_sequence_curves_are_disjoint(bundle10):
    g = bundle10.curves
    assert intersection_number(g[0], g[1]) == 0
    assert not overlaps(g[0], g[1])


def test_gamma0_gamma2_against_arc_walk(bundle10):
    g = bundle10.curves
    v = arc_walk_intersection(g[0], g[2])
    assert v == 2
    assert intersection_number(g[0], g[2]) == v


@given(tiny_curves, tiny_curves)
def test_intersection_matches_arc_walk(a, b):
    assert intersection_number(a, b) == arc_walk_intersection(a, b)


@given(small_curves, small_curves)
def test_intersection_is_symmetric(a, b):
    assert intersection_number(a, b) == intersection_number(b, a)


@given(small_curves)
def test_self_intersection_and_overlap(a):
    assert intersection_number(a, a) == 0
    assert not overlaps(a, a)


def test_overlap_table_up_to_twelve(bundle12):
    g = bundle12.curves
    for i in range(13):
        for j in range(i + 2, 13):
            assert overlaps(g[i], g[j]), (i, j)


@given(small_curves)
def test_json_round_trip(c):
    assert curve_from_json(curve_to_json(c)) == c


def test_huge_curves_serialise_exactly(bundle12):
    c = bundle12.curves[12]
    data = curve_to_json(c)
    assert all(isinstance(x, str) for x in data["weights"])
    assert curve_from_json(data).weights == c.weights
    assert max(c.weights) > 2 ** 64


@given(small_curves)
def test_puncture_partition_is_two_plus_three(c):
    small, large = puncture_partition(c)
    assert (len(small), len(large)) == (2, 3)
    assert small | large == {f"P{k}" for k in range(5)}


@pytest.mark.parametrize("k", range(5))
def test_side_curves_cut_off_their_side(k):
    assert puncture_partition(side_curve(k))[0] == {f"P{k}", f"P{(k + 1) % 5}"}


def test_multicurve_components_split_disjoint_sum():
    a, b = side_curve(0), side_curve(2)
    assert intersection_number(a, b) == 0
    raw = [x + y for x, y in zip(a.weights, b.weights)]
    assert set(multicurve_components(raw)) == {a, b}
    assert MultiCurve([a, b]).weights() == tuple(raw)


def test_multicurve_rejects_crossing_components():
    with pytest.raises(NotACurve):
        MultiCurve([side_curve(0), side_curve(1)])


def test_marking_checks():
    c = [side_curve(k) for k in range(5)]
    m = Marking([c[1], c[3]], {c[1]: c[0], c[3]: c[4]})
    assert len(m.curves()) == 4
    with pytest.raises(NotACurve):
        Marking([c[1]])
    with pytest.raises(NotACurve):
        Marking([c[1], c[3]], {c[1]: c[2]})  # c2 also crosses the other base curve c3


def test_pool_is_nontrivial():
    assert len(TINY) == 29
    assert len(SMALL) == 71
