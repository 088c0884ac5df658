"""Filling, small curve-graph distances and certified distance bounds.

On the five-punctured sphere every curve disjoint from ``a`` lies in the
four-holed sphere ``Y_a`` cut off by ``a``.  So ``a`` and ``b`` fail to fill
exactly when some curve of ``Y_a`` misses ``b``, which happens iff the
projection of ``b`` to ``Y_a`` contains a curve disjoint from ``b``.  The
projection module finds that curve (the arc type of largest multiplicity).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import ChartMismatch, Exhausted, WitnessInvalid
from .projections import annulus, four_holed, project_nonannular, subsurface_coefficient
from .surface import NormalCurve, curve_to_json, intersection_number

DEFAULT_G = 100


def _check(a: NormalCurve, b: NormalCurve):
    if a.chart.name != b.chart.name:
        raise ChartMismatch(f"{a.chart.name} vs {b.chart.name}")
    if a.chart.surface.complexity != 2:
        raise NotImplementedError("filling is decided on the five-punctured sphere only")


def common_disjoint_curve(a: NormalCurve, b: NormalCurve) -> Optional[NormalCurve]:
    """A curve disjoint from both (``None`` when the pair fills)."""
    _check(a, b)
    if a == b or intersection_number(a, b) == 0:
        raise ValueError("curves must intersect")
    p = project_nonannular(four_holed(a), b)
    for t, c in zip(p.types, p.curves()):
        if t.count == 0:
            return c
    return None


def is_filling(a: NormalCurve, b: NormalCurve) -> bool:
    _check(a, b)
    if a == b or intersection_number(a, b) == 0:
        return False
    return common_disjoint_curve(a, b) is None


def distance_small(a: NormalCurve, b: NormalCurve):
    """``(d, witness)`` with ``d`` in ``{0, 1, 2, ">=3"}``."""
    _check(a, b)
    if a == b:
        return 0, None
    if intersection_number(a, b) == 0:
        return 1, None
    w = common_disjoint_curve(a, b)
    if w is not None:
        return 2, w
    return ">=3", None


@dataclass
class DistanceCertificate:
    a: NormalCurve
    b: NormalCurve
    lower: int = 0
    lower_witness: list = field(default_factory=list)
    upper: Optional[int] = None
    upper_path: list = field(default_factory=list)
    G: int = DEFAULT_G

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise WitnessInvalid("lower bound exceeds upper bound")

    def to_json(self) -> dict:
        return {
            "pair": [curve_to_json(self.a), curve_to_json(self.b)],
            "lower": self.lower,
            "lower_witness": [curve_to_json(c) for c in self.lower_witness],
            "upper": self.upper,
            "upper_path": [curve_to_json(c) for c in self.upper_path],
            "G": self.G,
        }


def verify_path(path: Sequence[NormalCurve], a: NormalCurve, b: NormalCurve) -> bool:
    if not path or path[0] != a or path[-1] != b:
        return False
    return all(intersection_number(x, y) == 0 and x != y for x, y in zip(path, path[1:]))


def _greedy_path(a: NormalCurve, b: NormalCurve, budget: int) -> List[NormalCurve]:
    """Step to the projection curve of ``b`` meeting it least, until disjoint."""
    path = [a]
    cur = a
    while cur != b:
        if intersection_number(cur, b) == 0:
            path.append(b)
            break
        if len(path) > budget:
            raise Exhausted(f"no path within {budget} steps")
        p = project_nonannular(four_holed(cur), b)
        best = min(range(len(p.types)), key=lambda k: p.types[k].count)
        cur = p.curves()[best]
        path.append(cur)
    return path


def distance_upper(a: NormalCurve, b: NormalCurve, budget: int, hints: Sequence[Sequence[NormalCurve]] = ()) -> DistanceCertificate:
    """A verified path of disjoint curves from ``a`` to ``b`` with at most ``budget`` steps."""
    _check(a, b)
    candidates = []
    for h in hints:
        if verify_path(h, a, b):
            candidates.append(list(h))
    try:
        candidates.append(_greedy_path(a, b, budget))
    except Exhausted:
        pass
    if a == b:
        candidates.append([a])
    candidates = [c for c in candidates if len(c) - 1 <= budget]
    if not candidates:
        raise Exhausted(f"no path within {budget} steps")
    path = min(candidates, key=len)
    if not verify_path(path, a, b):
        raise WitnessInvalid("constructed path is not a disjointness path")
    d, _ = distance_small(a, b)
    lower = d if isinstance(d, int) else 3
    return DistanceCertificate(a, b, lower=min(lower, len(path) - 1), upper=len(path) - 1, upper_path=path)


def distance_lower_by_witnesses(a: NormalCurve, b: NormalCurve, annuli: Sequence[NormalCurve], G: int = DEFAULT_G) -> DistanceCertificate:
    """Lower bound from annuli with large projections.

    A geodesic from ``a`` to ``b`` must contain a curve missing each witness
    core whose coefficient exceeds ``G``.  Such a curve is interior (the
    endpoints cross every core), and cores that pairwise fill force distinct
    ones, so ``k`` cores give ``d(a, b) >= k + 1``.
    """
    _check(a, b)
    for w in annuli:
        if intersection_number(w, a) == 0 or intersection_number(w, b) == 0:
            raise WitnessInvalid("witness core misses an endpoint")
        rec = subsurface_coefficient(annulus(w), a, b)
        if rec.value - rec.slack <= G:
            raise WitnessInvalid(f"coefficient {rec.value} does not exceed G={G}")
    for i, u in enumerate(annuli):
        for v in annuli[i + 1:]:
            if not is_filling(u, v):
                raise WitnessInvalid("witness cores do not fill pairwise")
    # each core is missed by an interior vertex, and filling cores need distinct ones
    lower = len(annuli) + 1 if annuli else (0 if a == b else 1)
    return DistanceCertificate(a, b, lower=lower, lower_witness=list(annuli), G=G)
