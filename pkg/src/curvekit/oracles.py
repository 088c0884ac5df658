"""Slow, independent reference algorithms.

Nothing here uses flips or the twist recurrence.  Curves are drawn
explicitly (:mod:`curvekit.tracing`) and compared as cyclic words of edge
crossings, so these routines only scale to small weights.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence

from .surface import NormalCurve
from .tracing import corner_counts, trace_components
from .triangulation import Triangulation, norm


def crossing_word(c: NormalCurve) -> List[int]:
    comps = trace_components(c.chart, c.weights)
    if len(comps) != 1:
        raise ValueError("expected a connected curve")
    return comps[0]


def _linked_runs(T: Triangulation, A: Sequence[int], B: Sequence[int]) -> int:
    na, nb = len(A), len(B)
    count = 0
    for i in range(na):
        for j in range(nb):
            if A[i] != B[j] or A[i - 1] == B[j - 1]:
                continue
            s, p, q = T.rotated(A[i])
            left_start = (~A[i - 1] == p)
            L = 1
            while A[(i + L) % na] == B[(j + L) % nb]:
                L += 1
                if L > na + nb:
                    raise RuntimeError("unbounded common run")
            last = A[(i + L - 1) % na]
            _, p2, q2 = T.rotated(~last)
            left_end = (A[(i + L) % na] == q2)
            if left_start != left_end:
                count += 1
    return count


def arc_walk_intersection(a: NormalCurve, b: NormalCurve) -> int:
    """Geometric intersection by counting linked common runs of crossing words."""
    T = a.chart
    A = crossing_word(a)
    B = crossing_word(b)
    if a == b:
        return 0
    rev = [~x for x in reversed(B)]
    return _linked_runs(T, A, B) + _linked_runs(T, A, rev)


def enumerate_curves(T: Triangulation, max_total: int) -> Iterator[NormalCurve]:
    """Every curve whose canonical weights sum to at most ``max_total``."""
    zeta = T.zeta
    # order edges so that triangles close as early as possible
    order: List[int] = []
    for tri in T.triangles:
        for z in tri:
            if norm(z) not in order:
                order.append(norm(z))
    closes = {k: [] for k in range(zeta)}
    for tri in T.triangles:
        idx = [norm(z) for z in tri]
        last = max(order.index(e) for e in idx)
        closes[last].append(idx)
    w = [0] * zeta

    def rec(k, budget):
        if k == zeta:
            if any(w):
                yield tuple(w)
            return
        e = order[k]
        for val in range(budget + 1):
            w[e] = val
            ok = True
            for a, b, c in closes[k]:
                if (w[a] + w[b] + w[c]) % 2 or w[a] > w[b] + w[c] or w[b] > w[a] + w[c] or w[c] > w[a] + w[b]:
                    ok = False
                    break
            if ok:
                yield from rec(k + 1, budget - val)
        w[e] = 0

    verts = T.vertices()
    for vec in rec(0, max_total):
        corners = corner_counts(T, vec)
        if any(min(corners[c] for c in cyc) for cyc in verts):
            continue
        if len(trace_components(T, vec)) != 1:
            continue
        yield NormalCurve(T, vec, _trusted=True)


def stepwise_twist(alpha: NormalCurve, beta: NormalCurve, e: int) -> NormalCurve:
    """Iterate single twists ``|e|`` times (reference for the closed form)."""
    from .transport import audit_mode
    from .mapping_classes import twist_power

    with audit_mode(True):
        cur = beta
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            cur = twist_power(alpha, cur, step)
    return cur


def brute_force_disjoint(a: NormalCurve, b: NormalCurve, max_total: int) -> List[NormalCurve]:
    """Curves of bounded weight disjoint from both ``a`` and ``b`` (arc-walk test)."""
    out = []
    for c in enumerate_curves(a.chart, max_total):
        if c in (a, b):
            continue
        if arc_walk_intersection(c, a) == 0 and arc_walk_intersection(c, b) == 0:
            out.append(c)
    return out
