"""Subsurface projections and coefficients on the five-punctured sphere.

Annular projections are read off the twist recurrence: in a chart where the
core ``a`` crosses two edges once each, the total weight ``W(k)`` of those
edges after ``k`` twists is a convex function whose slope changes from
``-2n`` to ``2n`` (``n = i(a, b)``) across a window of width about one.  The
window's position shifts by exactly ``-e`` when ``b`` is replaced by
``D_a^e(b)``, so it serves as a twisting coordinate for ``b`` around ``a``.

Non-annular projections use the Farey model of the four-holed sphere ``Y``
on one side of ``a``.  The arcs of ``b`` inside ``Y`` have at most three
types, forming a Farey triangle, and ``F(s) = i(b, s)`` is minimized on that
triangle.  A greedy descent over Farey neighbours (twist fans of a fixed
frame) finds it, keeping track of slopes so that exact Farey distances can
be taken between projection sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from . import farey
from .errors import EmptyProjection, NoOverlap, NotOverlapping
from .surface import (CoreChart, Marking, NormalCurve, canonical_key,
                      curve_to_json, intersection_number, normalize_weights,
                      puncture_partition,
                      reduce_weights, trusted_curve)
from .transport import Flip, Transport, stable_increment, twist_pair
from .triangulation import Triangulation, norm

ANNULAR_SLACK = 1
NONANNULAR_SLACK = 0


@dataclass(frozen=True)
class Subsurface:
    kind: str  # "annular", "nonannular" or "surface"
    boundary: Optional[NormalCurve]

    def __post_init__(self):
        if self.kind not in ("annular", "nonannular", "surface"):
            raise ValueError(f"unknown subsurface kind {self.kind!r}")
        if (self.kind == "surface") != (self.boundary is None):
            raise ValueError("only the whole surface has no boundary")
        if self.kind == "nonannular" and self.boundary.chart.surface.complexity != 2:
            raise ValueError("non-annular subsurfaces are supported on the five-punctured sphere")

    @property
    def key(self):
        if self.boundary is None:
            return (self.kind,)
        return (self.kind,) + canonical_key(self.boundary)

    def side(self) -> frozenset:
        """Punctures inside the four-holed sphere (non-annular kind only)."""
        return puncture_partition(self.boundary)[1]

    def to_json(self) -> dict:
        if self.boundary is None:
            return {"kind": self.kind}
        out = {"kind": self.kind, "core": curve_to_json(self.boundary)}
        if self.kind == "nonannular":
            out["side"] = sorted(self.side())
        return out


def annulus(c: NormalCurve) -> Subsurface:
    return Subsurface("annular", c)


def four_holed(c: NormalCurve) -> Subsurface:
    return Subsurface("nonannular", c)


WHOLE = Subsurface("surface", None)


@dataclass
class CoefficientRecord:
    subsurface: Subsurface
    left: str
    right: str
    value: int
    slack: int
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "subsurface": self.subsurface.to_json(),
            "left": self.left,
            "right": self.right,
            "value": self.value,
            "slack": self.slack,
            "witnesses": [curve_to_json(c) for c in self.witnesses],
        }


# ---------------------------------------------------------------------------
# annular


def _core_data(alpha: NormalCurve, b: NormalCurve):
    cc = alpha.core_chart()
    w = cc.core_weights(b.weights)
    u, v, s = w[cc.e1], w[cc.e2], w[cc.x] + w[cc.y]
    return u, v, s, stable_increment(u, v, s)


def twist_window(alpha: NormalCurve, b: NormalCurve) -> Tuple[int, int]:
    """``(k_lo, k_hi)``: last power where all strands descend, first where all ascend."""
    u, v, s, n = _core_data(alpha, b)
    if n == 0:
        raise NoOverlap("curve misses the annulus core")

    def slope(k):
        a1, b1 = twist_pair(u, v, s, k + 1, fast=True)
        a0, b0 = twist_pair(u, v, s, k, fast=True)
        return (a1 + b1) - (a0 + b0)

    R = u + v + s + 2
    # smallest k with slope == 2n
    lo, hi = -R, R
    while lo < hi:
        mid = (lo + hi) // 2
        if slope(mid) >= 2 * n:
            hi = mid
        else:
            lo = mid + 1
    k_hi = lo
    # largest k with slope == -2n
    lo, hi = -R, R
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if slope(mid) <= -2 * n:
            lo = mid
        else:
            hi = mid - 1
    return lo, k_hi


def twist_position(alpha: NormalCurve, b: NormalCurve) -> int:
    """Twice the twisting coordinate of ``b`` around ``alpha`` (shifts by 2e under D^e)."""
    k_lo, k_hi = twist_window(alpha, b)
    return -(k_lo + k_hi)


def relative_twist(alpha: NormalCurve, b: NormalCurve, c: NormalCurve) -> int:
    """Twisting of ``c`` relative to ``b`` around ``alpha`` (``D_alpha^e b`` gives ``e``)."""
    if intersection_number(alpha, b) == 0:
        raise NoOverlap("left curve misses the core")
    if intersection_number(alpha, c) == 0:
        raise NoOverlap("right curve misses the core")
    return (twist_position(alpha, c) - twist_position(alpha, b)) // 2


def _annular_pair_value(pb: int, pc: int, same: bool) -> int:
    if same:
        return 0
    return abs(pc - pb) // 2 + 1


def annular_distance(alpha: NormalCurve, b: NormalCurve, c: NormalCurve) -> CoefficientRecord:
    if intersection_number(alpha, b) == 0:
        raise NoOverlap("left curve misses the core")
    if intersection_number(alpha, c) == 0:
        raise NoOverlap("right curve misses the core")
    value = _annular_pair_value(twist_position(alpha, b), twist_position(alpha, c), b == c)
    return CoefficientRecord(annulus(alpha), _label(b), _label(c), value, ANNULAR_SLACK, [b, c])


# ---------------------------------------------------------------------------
# non-annular: frames in the four-holed sphere


def _boundary_of_edge(T: Triangulation, e: int) -> Tuple[int, ...]:
    """Normal weights of the boundary of a neighbourhood of edge ``e``."""
    u, v = T.tail(e), T.head(e)
    raw = [0] * T.zeta
    for f in range(T.zeta):
        if f == e:
            continue
        raw[f] = (T.tail(f) in (u, v)) + (T.head(f) in (u, v))
    w, _ = normalize_weights(raw, T)
    return w


class _LocalCurve:
    """A small curve in the frame chart with its own annulus chart."""

    def __init__(self, T: Triangulation, weights, slope):
        self.weights = tuple(weights)
        self.slope = slope
        T2, _, moves, core = reduce_weights(T, self.weights)
        self.core = CoreChart(T2, Transport(moves), *core)

    def crossings(self, w) -> int:
        return self.core.crossings(w)


class _Frame:
    def __init__(self, alpha: NormalCurve):
        cc = alpha.core_chart()
        T = cc.chart
        sx, sy = cc.side_punctures(cc.x), cc.side_punctures(cc.y)
        if len(sx) == 3:
            side = sx
        elif len(sy) == 3:
            side = sy
        else:
            raise ValueError("curve does not cut off a four-holed sphere")
        self.side = frozenset(side)
        fixed = {cc.e1, cc.e2, cc.x, cc.y}
        T, flips = self._find_triangle(T, fixed)
        self.chart = T
        self.to_local = cc.to_core.then(Transport(flips))
        self.alpha_local = tuple(1 if e in (cc.e1, cc.e2) else 0 for e in range(T.zeta))
        tri = self._triangle
        curves = [_LocalCurve(T, _boundary_of_edge(T, norm(z)), None) for z in tri]
        for c in curves:
            if c.crossings(self.alpha_local):
                raise AssertionError("frame curve crosses the boundary")
        for i in range(3):
            for j in range(i + 1, 3):
                if curves[i].crossings(curves[j].weights) != 2:
                    raise AssertionError("frame curves are not a Farey triangle")
        slopes = [(1, 0), (0, 1), (1, 1)]
        for c, s in zip(curves, slopes):
            c.slope = s
        self.frame = curves
        A, B, C = curves
        dab = A.core.twist(1).apply(B.weights)
        if C.crossings(dab) == 2:
            self.eps = 1
        elif C.crossings(dab) == 6:
            self.eps = -1
        else:
            raise AssertionError("twist calibration failed")

    def _find_triangle(self, T, fixed):
        frontier = [(T, [])]
        seen = {T.signature()}
        for _ in range(5):
            nxt = []
            for S, path in frontier:
                tri = self._good_triangle(S, fixed)
                if tri is not None:
                    self._triangle = tri
                    return S, path
                for e in range(S.zeta):
                    if e in fixed or not S.is_flippable(e):
                        continue
                    if S.tail(e) not in self.side or S.head(e) not in self.side:
                        continue
                    a, b, c, d = S.square(e)
                    S2 = S.flip(e)
                    sig = S2.signature()
                    if sig in seen:
                        continue
                    seen.add(sig)
                    nxt.append((S2, path + [Flip(e, norm(a), norm(b), norm(c), norm(d))]))
            frontier = nxt
        raise AssertionError("no frame triangle found")

    def _good_triangle(self, S, fixed):
        for tri in S.triangles:
            if any(norm(z) in fixed for z in tri):
                continue
            verts = {S.head(z) for z in tri}
            if verts == set(self.side):
                return tri
        return None


@lru_cache(maxsize=256)
def _frame(alpha: NormalCurve) -> _Frame:
    return _Frame(alpha)


@dataclass(frozen=True)
class ArcType:
    slope: farey.Slope
    count: int  # F at this vertex
    word: tuple  # ((frame index, power), ...), applied last-to-first to the frame curve
    frame_index: int


def _convex_argmin(f):
    """Integer minimizer of a convex function on Z (smallest one)."""

    def diff(m):
        return f(m + 1) - f(m)

    if diff(0) >= 0:
        hi = 0
        step = 1
        lo = -1
        while diff(lo) >= 0:
            hi = lo
            lo = -step * 2
            step *= 2
    else:
        lo = 0
        step = 1
        hi = 1
        while diff(hi) < 0:
            lo = hi
            hi = step * 2
            step *= 2
    # diff(lo) < 0 <= diff(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if diff(mid) >= 0:
            hi = mid
        else:
            lo = mid
    return hi


def _descend(fr: _Frame, bl: Sequence[int], n_arcs: int) -> List[ArcType]:
    """Arc types of a curve (local weights ``bl``) in the four-holed sphere."""
    M = farey.IDENTITY
    word: List[Tuple[int, int]] = []
    cur = 0
    bl = tuple(bl)
    F = fr.frame[cur].crossings(bl)
    while F > 0:
        best = None
        core = fr.frame[cur].core
        for X in range(3):
            if X == cur:
                continue
            curve = fr.frame[X]

            def f(m, curve=curve):
                return curve.crossings(core.twist(-m).apply(bl))

            m = _convex_argmin(f)
            val = f(m)
            if best is None or val < best[0]:
                best = (val, X, m)
        val, X, m = best
        if val >= F:
            break
        bl = fr.frame[cur].core.twist(-m).apply(bl)
        M = farey.matmul(M, farey.twist_matrix(fr.frame[cur].slope, fr.eps, m))
        word.append((cur, m))
        cur, F = X, val

    types = [ArcType(farey.apply_matrix(M, fr.frame[cur].slope), F, tuple(word), cur)]
    if n_arcs == 0 or F == 0:
        return types
    core = fr.frame[cur].core
    for X in range(3):
        if X == cur:
            continue
        curve = fr.frame[X]

        def f(m, curve=curve):
            return curve.crossings(core.twist(-m).apply(bl))

        m0 = _convex_argmin(f)
        for m in range(m0 - 2, m0 + 3):
            val = f(m)
            # each arc of another type crosses the surgery curve twice, so
            # i(s, b) = 2 (n_arcs - arcs of type s) and s is used iff this is < 2 n_arcs
            if val < 2 * n_arcs:
                Mt = farey.matmul(M, farey.twist_matrix(fr.frame[cur].slope, fr.eps, m))
                types.append(ArcType(farey.apply_matrix(Mt, curve.slope), val, tuple(word) + ((cur, m),), X))
    return types


class Projection:
    """``pi_Y(c)`` for a non-annular ``Y``: the arc types with their slopes."""

    def __init__(self, Y: Subsurface, c: NormalCurve, types: List[ArcType]):
        self.subsurface = Y
        self.curve = c
        self.types = types

    @property
    def slopes(self) -> List[farey.Slope]:
        return [t.slope for t in self.types]

    def __len__(self):
        return len(self.types)

    def __bool__(self):
        return bool(self.types)

    def curves(self) -> List[NormalCurve]:
        """The projection as curves on the base chart."""
        fr = _frame(self.subsurface.boundary)
        base = self.subsurface.boundary.chart
        back = fr.to_local.inverse()
        out = []
        for t in self.types:
            X = fr.frame[t.frame_index]
            w = X.weights
            h = []
            for idx, m in reversed(t.word):
                h.append(fr.frame[idx].core.twist(m))
            for tr in h:
                w = tr.apply(w)
            inv = Transport([mv for tr in reversed(h) for mv in tr.inverse().moves])
            core = CoreChart(X.core.chart, fr.to_local.then(inv).then(X.core.to_core),
                             X.core.e1, X.core.e2, X.core.x, X.core.y)
            c = trusted_curve(base, back.apply(w))
            object.__setattr__(c, "_core", core)
            out.append(c)
        return out


def project_nonannular(Y: Subsurface, c: NormalCurve) -> Projection:
    if Y.kind != "nonannular":
        raise ValueError("expected a non-annular subsurface")
    alpha = Y.boundary
    if c == alpha:
        return Projection(Y, c, [])
    fr = _frame(alpha)
    n = intersection_number(alpha, c)
    bl = fr.to_local.apply(c.weights)
    if n == 0:
        # c lies in Y or on the other side (a twice-punctured disc, which has no curves)
        pass
    types = _descend(fr, bl, n // 2)
    if n == 0 and types[0].count != 0:
        return Projection(Y, c, [])
    return Projection(Y, c, types)


def projection_distance(p: Projection, q: Projection) -> int:
    if not p:
        raise EmptyProjection("left")
    if not q:
        raise EmptyProjection("right")
    return min(farey.farey_distance(a, b) for a in p.slopes for b in q.slopes)


def projection_diameter(p: Projection) -> int:
    s = p.slopes
    return max((farey.farey_distance(a, b) for a in s for b in s), default=0)


# ---------------------------------------------------------------------------
# coefficients of curves and markings


Arg = Union[NormalCurve, Marking]


def _label(x) -> str:
    if isinstance(x, Marking):
        return "marking(" + ",".join(_label(c) for c in x.base) + ")"
    w = x.weights
    if max(w) < 10 ** 6:
        return "[" + ",".join(str(v) for v in w) + "]"
    return f"curve#{abs(hash(canonical_key(x))) % 10 ** 10:010d}"


def _annular_reps(alpha: NormalCurve, m: Arg) -> List[NormalCurve]:
    if isinstance(m, NormalCurve):
        return [m] if intersection_number(alpha, m) else []
    if alpha in m.base.components:
        t = m.transversals.get(alpha)
        return [t] if t is not None else []
    return [c for c in m.base if intersection_number(alpha, c)]


def _nonannular_reps(Y: Subsurface, m: Arg) -> List[Projection]:
    curves = [m] if isinstance(m, NormalCurve) else list(m.base)
    out = []
    for c in curves:
        p = project_nonannular(Y, c)
        if p:
            out.append(p)
    return out


def subsurface_coefficient(Y: Subsurface, m1: Arg, m2: Arg) -> CoefficientRecord:
    if Y.kind == "annular":
        alpha = Y.boundary
        r1, r2 = _annular_reps(alpha, m1), _annular_reps(alpha, m2)
        if not r1:
            raise EmptyProjection("left")
        if not r2:
            raise EmptyProjection("right")
        pos1 = [(c, twist_position(alpha, c)) for c in r1]
        pos2 = [(c, twist_position(alpha, c)) for c in r2]
        best = None
        for b, pb in pos1:
            for c, pc in pos2:
                v = _annular_pair_value(pb, pc, b == c)
                if best is None or v < best[0]:
                    best = (v, b, c)
        return CoefficientRecord(Y, _label(m1), _label(m2), best[0], ANNULAR_SLACK, [best[1], best[2]])
    p1, p2 = _nonannular_reps(Y, m1), _nonannular_reps(Y, m2)
    if not p1:
        raise EmptyProjection("left")
    if not p2:
        raise EmptyProjection("right")
    best = None
    for a in p1:
        for b in p2:
            d = projection_distance(a, b)
            if best is None or d < best[0]:
                best = (d, a, b)
    d, a, b = best
    wit = [a.curve, b.curve]
    return CoefficientRecord(Y, _label(m1), _label(m2), d, NONANNULAR_SLACK, wit)


def projects_to(Y: Subsurface, m: Arg) -> bool:
    if Y.kind == "annular":
        return bool(_annular_reps(Y.boundary, m))
    return bool(_nonannular_reps(Y, m))


def subsurfaces_overlap(Y: Subsurface, Z: Subsurface) -> bool:
    """Boundaries intersect (or nest the wrong way for two four-holed spheres)."""
    if Y.boundary == Z.boundary:
        return False
    return intersection_number(Y.boundary, Z.boundary) > 0


@dataclass
class BehrstockRecord:
    Y: Subsurface
    Z: Subsurface
    dY: CoefficientRecord
    dZ: CoefficientRecord

    @property
    def min(self) -> int:
        return min(self.dY.value, self.dZ.value)


def behrstock_check(m: Arg, Y: Subsurface, Z: Subsurface) -> BehrstockRecord:
    if not subsurfaces_overlap(Y, Z):
        raise NotOverlapping("both")
    if not projects_to(Y, m):
        raise NotOverlapping("Y", "marking misses Y")
    if not projects_to(Z, m):
        raise NotOverlapping("Z", "marking misses Z")
    dY = subsurface_coefficient(Y, Z.boundary, m)
    dZ = subsurface_coefficient(Z, Y.boundary, m)
    return BehrstockRecord(Y, Z, dY, dZ)
