"""Truncated coefficient sums between two markings.

The estimate adds up every computed coefficient that reaches the threshold
``A``, over an explicit finite family: the whole surface, plus the
four-holed spheres cut off by curves of total weight at most
``weight_cutoff`` that meet one of the two markings at most ``radius``
times.  Since every omitted term is non-negative, the result bounds the
full thresholded sum from below on that family.  Nothing is claimed about
how close it is to the pants distance itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .curve_graph import distance_lower_by_witnesses, distance_small, is_filling
from .errors import EmptyProjection, WitnessInvalid
from .oracles import enumerate_curves
from .projections import WHOLE, CoefficientRecord, annulus, four_holed, subsurface_coefficient
from .surface import Marking, NormalCurve, base_chart, canonical_key, intersection_number

DEFAULT_WEIGHT_CUTOFF = 20


@dataclass
class DistanceEstimate:
    pair: Tuple[Marking, Marking]
    A: int
    radius: int
    family_size: int
    contributing: List[CoefficientRecord] = field(default_factory=list)

    @property
    def lower_bound_sum(self) -> int:
        return sum(r.value for r in self.contributing)

    def to_json(self) -> dict:
        return {
            "A": self.A,
            "radius": self.radius,
            "family_size": self.family_size,
            "lower_bound_sum": self.lower_bound_sum,
            "contributing": [r.to_json() for r in self.contributing],
        }


def _curve_lower(a: NormalCurve, b: NormalCurve, witnesses: Sequence[NormalCurve], G: int) -> int:
    d, _ = distance_small(a, b)
    lower = 3 if d == ">=3" else d
    if lower < 3 or not witnesses:
        return lower
    chosen: List[NormalCurve] = []
    for w in witnesses:
        if not intersection_number(w, a) or not intersection_number(w, b):
            continue
        rec = subsurface_coefficient(annulus(w), a, b)
        if rec.value - rec.slack <= G:
            continue
        if all(is_filling(w, u) for u in chosen):
            chosen.append(w)
    if chosen:
        try:
            lower = max(lower, distance_lower_by_witnesses(a, b, chosen, G).lower)
        except WitnessInvalid:
            pass
    return lower


def surface_term(m1: Marking, m2: Marking, witnesses: Sequence[NormalCurve] = (), G: int = 100) -> int:
    """A certified lower bound for the curve-graph distance between the two bases."""
    return min(_curve_lower(a, b, witnesses, G) for a in m1.base for b in m2.base)


def family(m1: Marking, m2: Marking, radius: int, weight_cutoff: int = DEFAULT_WEIGHT_CUTOFF) -> List[NormalCurve]:
    out = {}
    for c in enumerate_curves(base_chart(), weight_cutoff):
        for m in (m1, m2):
            if sum(intersection_number(c, x) for x in m.base) <= radius:
                out[canonical_key(c)] = c
                break
    for m in (m1, m2):
        for c in m.base:
            out.setdefault(canonical_key(c), c)
    return [out[k] for k in sorted(out)]


def estimate(m1: Marking, m2: Marking, A: int, radius: int, weight_cutoff: int = DEFAULT_WEIGHT_CUTOFF,
             witnesses: Sequence[NormalCurve] = (), G: int = 100) -> DistanceEstimate:
    if A <= 2:
        raise ValueError("threshold A must exceed 2")
    fam = family(m1, m2, radius, weight_cutoff)
    est = DistanceEstimate((m1, m2), A, radius, len(fam) + 1)
    dS = surface_term(m1, m2, witnesses, G)
    if dS >= A:
        est.contributing.append(CoefficientRecord(WHOLE, "left", "right", dS, 0, []))
    for c in fam:
        try:
            rec = subsurface_coefficient(four_holed(c), m1, m2)
        except EmptyProjection:
            continue
        if rec.value >= A:
            est.contributing.append(rec)
    return est


def sequence_marking(bundle, N: int) -> Marking:
    """The marking with base ``{g_{N-1}, g_N}``."""
    return Marking([bundle.curves[N - 1], bundle.curves[N]])
