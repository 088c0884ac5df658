"""Exact curve computations on the five-punctured sphere and its covers.

Curves are normal coordinates on a fixed triangulation; mapping classes act
through flips and a closed-form twist recurrence on arbitrary precision
integers, so powers in the millions cost no more than small ones.

The usual entry points::

    from curvekit import default_schedule, generate, annulus, subsurface_coefficient

    b = generate(10, default_schedule())
    subsurface_coefficient(annulus(b.curves[4]), b.curves[1], b.curves[7]).value
"""

from .construction import (Constants, SequenceBundle, TwistSchedule, default_schedule, generate, mu_hat,
                           side_curve)
from .covers import CoveringMap, build_tower, genus_two_cover, lift_curve, lift_sequence
from .curve_graph import distance_lower_by_witnesses, distance_small, distance_upper, is_filling
from .mapping_classes import MappingClassWord, Rho, Twist, apply, invert, twist_power
from .pants import estimate, surface_term
from .projections import (Subsurface, annulus, behrstock_check, four_holed, relative_twist,
                          subsurface_coefficient)
from .report import Report
from .surface import (Marking, MultiCurve, NormalCurve, base_chart, canonical_key, intersection_number,
                      tighten)
from .transport import audit_mode
from .triangulation import Triangulation

__version__ = "0.1.0"

__all__ = [
    "Constants", "SequenceBundle", "TwistSchedule", "default_schedule", "generate", "mu_hat", "side_curve",
    "CoveringMap", "build_tower", "genus_two_cover", "lift_curve", "lift_sequence",
    "distance_lower_by_witnesses", "distance_small", "distance_upper", "is_filling",
    "MappingClassWord", "Rho", "Twist", "apply", "invert", "twist_power",
    "estimate", "surface_term",
    "Subsurface", "annulus", "behrstock_check", "four_holed", "relative_twist", "subsurface_coefficient",
    "Report",
    "Marking", "MultiCurve", "NormalCurve", "base_chart", "canonical_key", "intersection_number", "tighten",
    "audit_mode", "Triangulation",
]
