import pytest

from curvekit.errors import TriangulationError
from curvekit.triangulation import SurfaceSig, Triangulation, doubled_pentagon, norm


def test_surface_signature_complexity():
    assert SurfaceSig(0, 5).complexity == 2
    assert SurfaceSig(2, 0).complexity == 3
    assert SurfaceSig(2, 10).complexity == 13


def test_pentagon_chart_shape(chart):
    assert chart.surface == SurfaceSig(0, 5)
    assert chart.zeta == 9
    assert len(chart.triangles) == 6
    assert len(chart.vertices()) == 5
    # every oriented label appears exactly once
    labels = sorted(x for tri in chart.triangles for x in tri)
    assert labels == sorted(list(range(9)) + [~i for i in range(9)])


def test_bad_gluing_is_rejected():
    tris = ((0, 1, ~5), (5, 2, ~6), (6, 3, 4), (7, ~1, ~0), (8, ~2, ~7), (~4, ~3, ~3))
    with pytest.raises(TriangulationError):
        Triangulation(SurfaceSig(0, 5), tris, (), "broken")


@pytest.mark.parametrize("edge", range(9))
def test_double_flip_returns_to_the_same_edges(chart, edge):
    if not chart.is_flippable(edge):
        pytest.skip("edge not flippable")
    twice = chart.flip(edge).flip(edge)
    same = sorted(tuple(sorted(norm(x) for x in t)) for t in twice.triangles)
    assert same == sorted(tuple(sorted(norm(x) for x in t)) for t in chart.triangles)


def test_flip_preserves_punctures(chart):
    for e in range(chart.zeta):
        if chart.is_flippable(e):
            S = chart.flip(e)
            assert len(S.vertices()) == 5
            assert {S.head(x) for x in range(S.zeta)} <= {f"P{k}" for k in range(5)}


def test_identity_is_an_isometry(chart):
    assert chart.is_isometry_to(chart, list(range(chart.zeta)))
    assert tuple(range(chart.zeta)) in [tuple(p) for p in chart.isometries_to(chart)]


def test_chart_is_rebuilt_identically():
    assert doubled_pentagon().signature() == doubled_pentagon().signature()
