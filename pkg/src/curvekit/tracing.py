"""Explicit drawing of small normal multicurves.

Every normal arc is materialized, so the cost is linear in the total weight.
The fast algorithms never call this on huge curves; it serves connectivity
checks at construction time, component splitting in covers, and the
independent oracles.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .errors import NotACurve
from .triangulation import Triangulation, norm


def corner_counts(T: Triangulation, w: Sequence[int]) -> Dict[Tuple[int, int], int]:
    """Number of arcs cutting corner ``(t, p)`` (the corner at the head of side p)."""
    out = {}
    for t, tri in enumerate(T.triangles):
        ws = [w[norm(x)] for x in tri]
        for p in range(3):
            twice = ws[p] + ws[(p + 1) % 3] - ws[(p + 2) % 3]
            if twice < 0 or twice % 2:
                raise NotACurve(f"matching condition fails in triangle {t}")
            out[(t, p)] = twice // 2
    return out


def _partner(T, w, corners, label, j):
    """Other endpoint, inside the triangle of ``label``, of the arc at position j."""
    t, p = T.locate(label)
    tri = T.triangles[t]
    wl = w[norm(label)]
    prev_corner = corners[(t, (p + 2) % 3)]  # corner at the tail of this side
    if j < prev_corner:
        # arc j around the tail vertex; other end on the previous side
        other = tri[(p + 2) % 3]
        return other, w[norm(other)] - 1 - j
    m = wl - 1 - j  # index from the head vertex
    other = tri[(p + 1) % 3]
    return other, m


def trace_components(T: Triangulation, w: Sequence[int]) -> List[List[int]]:
    """Components as cyclic lists of exit labels.

    Each entry is the oriented side through which the curve leaves a
    triangle; the curve then enters the triangle containing its reverse.
    """
    corners = corner_counts(T, w)
    seen = set()
    comps = []
    for e in range(T.zeta):
        for j0 in range(w[e]):
            if (e, j0) in seen:
                continue
            seq = []
            lab, j = e, j0
            while (lab, j) not in seen:
                seen.add((lab, j))
                out, jo = _partner(T, w, corners, lab, j)
                seen.add((out, jo))
                seq.append(out)
                lab, j = ~out, w[norm(out)] - 1 - jo
            comps.append(seq)
    return comps


def component_weights(T: Triangulation, seq: Sequence[int]) -> Tuple[int, ...]:
    w = [0] * T.zeta
    for lab in seq:
        w[norm(lab)] += 1
    return tuple(w)
