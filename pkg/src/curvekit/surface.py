"""Curves in normal coordinates: validation, annulus charts, intersection."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (ChartMismatch, Disconnected, NotACurve, Peripheral,
                     ShorteningFailed)
from .tracing import corner_counts, trace_components
from .transport import (CoreTwist, Flip, Transport, best_twist,
                        stable_increment, twist_pair)
from .triangulation import Triangulation, doubled_pentagon, norm

TRACE_LIMIT = 4000

_CHARTS: Dict[str, Triangulation] = {}


def register_chart(T: Triangulation) -> Triangulation:
    _CHARTS.setdefault(T.name, T)
    return _CHARTS[T.name]


def get_chart(name: str) -> Triangulation:
    if name not in _CHARTS and name == "S0,5":
        register_chart(doubled_pentagon())
    if name not in _CHARTS and name == "S2-cover":
        from .covers import build_tower
        build_tower(2)
    try:
        return _CHARTS[name]
    except KeyError:
        raise ChartMismatch(f"unknown chart {name!r}") from None


def base_chart() -> Triangulation:
    return get_chart("S0,5")


# ---------------------------------------------------------------------------
# annulus charts


@dataclass(frozen=True)
class CoreChart:
    """A chart in which a curve crosses exactly two edges, once each.

    ``to_core`` carries weights from the curve's own chart into ``chart``.
    The curve is the core of the annulus formed by the two triangles that
    contain ``e1`` and ``e2``; ``x`` and ``y`` are the boundary loops.
    """

    chart: Triangulation
    to_core: Transport
    e1: int
    e2: int
    x: int
    y: int

    def twist(self, k: int) -> Transport:
        """Transport realizing the ``k``-th power of the twist on the source chart."""
        mv = CoreTwist(self.e1, self.e2, self.x, self.y, k)
        return self.to_core.then(Transport([mv])).then(self.to_core.inverse())

    def core_weights(self, weights: Sequence[int]) -> Tuple[int, ...]:
        return self.to_core.apply(weights)

    def crossings(self, weights: Sequence[int]) -> int:
        w = self.to_core.apply(weights)
        return stable_increment(w[self.e1], w[self.e2], w[self.x] + w[self.y])

    def side_punctures(self, loop: int) -> frozenset:
        """Punctures on the far side of boundary loop ``loop`` (plus its base vertex)."""
        T = self.chart
        base = T.head(loop)
        seen = {base}
        # flood fill over edges not crossing the annulus
        blocked = {self.e1, self.e2, loop}
        stack = [base]
        adj: Dict[object, set] = {}
        for e in range(T.zeta):
            if e in blocked:
                continue
            u, v = T.tail(e), T.head(e)
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        other = T.head(self.y if loop == self.x else self.x)
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in seen and v != other:
                    seen.add(v)
                    stack.append(v)
        return frozenset(seen)


def _annulus_data(T: Triangulation, e: int, f: int):
    """``(e1, e2, x, y)`` if edges e, f bound a two-triangle annulus, else None."""
    t1 = T.locate(e)[0]
    t2 = T.locate(~e)[0]
    if t1 == t2:
        return None
    tri1, tri2 = T.triangles[t1], T.triangles[t2]
    if {norm(z) for z in tri1} & {norm(z) for z in tri2} != {e, f}:
        return None
    x = next(z for z in tri1 if norm(z) not in (e, f))
    y = next(z for z in tri2 if norm(z) not in (e, f))
    if T.head(x) != T.tail(x) or T.head(y) != T.tail(y):
        return None
    _, g, h = T.rotated(x)
    e2, e1 = norm(g), norm(h)
    if e1 == e2:
        return None
    return e1, e2, norm(x), norm(y)


@lru_cache(maxsize=4096)
def _verified_annulus(T: Triangulation, e1: int, e2: int, x: int, y: int) -> bool:
    a, b, c, d = T.square(e1)
    if {norm(a), norm(c)} != {x, y} or norm(b) != e2 or norm(d) != e2:
        return False
    T2 = T.flip(e1)
    for s1 in (e2, ~e2):
        for s2 in (e1, ~e1):
            perm = list(range(T.zeta))
            perm[e1] = s1
            perm[e2] = s2
            if T2.is_isometry_to(T, perm):
                return True
    return False


@lru_cache(maxsize=4096)
def annulus_configs(T: Triangulation) -> Tuple[Tuple[int, int, int, int], ...]:
    out = set()
    for e in range(T.zeta):
        if not T.is_flippable(e):
            continue
        t1 = T.locate(e)[0]
        for z in T.triangles[t1]:
            f = norm(z)
            if f == e:
                continue
            data = _annulus_data(T, e, f)
            if data and _verified_annulus(T, *data):
                out.add(data)
    return tuple(sorted(out))


def find_core(T: Triangulation, w: Sequence[int]):
    nz = [i for i, x in enumerate(w) if x]
    if len(nz) != 2 or w[nz[0]] != 1 or w[nz[1]] != 1:
        return None
    data = _annulus_data(T, nz[0], nz[1])
    if data and _verified_annulus(T, *data):
        return data
    return None


def _flip_gain(T, w, e):
    a, b, c, d = T.square(e)
    new = max(w[norm(a)] + w[norm(c)], w[norm(b)] + w[norm(d)]) - w[e]
    return w[e] - new, Flip(e, norm(a), norm(b), norm(c), norm(d))


def _search_escape(T, w, depth):
    """Flip sequences that never increase the weight and end lower (or at a core)."""
    total = sum(w)
    frontier = [(T, tuple(w), [])]
    seen = {(T.signature(), tuple(w))}
    for _ in range(depth):
        nxt = []
        for S, ws, path in frontier:
            for e in range(S.zeta):
                if not S.is_flippable(e):
                    continue
                gain, mv = _flip_gain(S, ws, e)
                if gain < 0:
                    continue
                w2 = list(ws)
                mv.apply(w2)
                S2 = S.flip(e)
                key = (S2.signature(), tuple(w2))
                if key in seen:
                    continue
                seen.add(key)
                p2 = path + [(e, mv)]
                if sum(w2) < total or find_core(S2, w2):
                    return p2
                nxt.append((S2, tuple(w2), p2))
        frontier = nxt
    return None


def reduce_weights(T: Triangulation, weights: Sequence[int], max_steps: int = 100_000):
    """Greedy shortening by flips and annulus untwisting.

    Returns ``(T_final, w_final, moves, core)`` where ``core`` is the annulus
    data when the result is an annulus core, else None.
    """
    w = list(weights)
    moves = []
    for _ in range(max_steps):
        core = find_core(T, w)
        if core:
            return T, w, moves, core
        best = None
        for cfg in annulus_configs(T):
            e1, e2, x, y = cfg
            k = best_twist(w[e1], w[e2], w[x] + w[y])
            if k:
                a, b = twist_pair(w[e1], w[e2], w[x] + w[y], k)
                gain = w[e1] + w[e2] - a - b
                if gain > 0 and (best is None or gain > best[0]):
                    best = (gain, None, CoreTwist(e1, e2, x, y, k))
        for e in range(T.zeta):
            if T.is_flippable(e) and w[e]:
                gain, mv = _flip_gain(T, w, e)
                if gain > 0 and (best is None or gain > best[0]):
                    best = (gain, e, mv)
        if best is not None:
            _, e, mv = best
            mv.apply(w)
            moves.append(mv)
            if e is not None:
                T = T.flip(e)
            continue
        path = _search_escape(T, w, 3 if T.zeta <= 12 else 2)
        if path is None:
            return T, w, moves, None
        for e, mv in path:
            mv.apply(w)
            moves.append(mv)
            T = T.flip(e)
    raise ShorteningFailed("step limit reached")


# ---------------------------------------------------------------------------
# curves


class NormalCurve:
    """An essential simple closed curve in normal coordinates on a fixed chart.

    Instances are immutable.  ``origin`` optionally records ``(inverse, src)``
    meaning this curve is ``h(src)`` where ``inverse`` transports weights by
    ``h^{-1}``; it lets annulus charts be found without any search.
    """

    __slots__ = ("chart", "weights", "_origin", "_core", "_hash")

    def __init__(self, chart: Triangulation, weights: Sequence[int], *, _trusted: bool = False, _origin=None):
        w = tuple(int(x) for x in weights)
        if not _trusted:
            canon = tighten(w, chart)
            if canon.weights != w:
                raise NotACurve("weights are not in canonical form; call tighten()")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_origin", _origin)
        object.__setattr__(self, "_core", None)
        object.__setattr__(self, "_hash", hash((chart.name, w)))

    def __setattr__(self, key, value):
        raise AttributeError("NormalCurve is immutable")

    def __eq__(self, other):
        return isinstance(other, NormalCurve) and self.chart.name == other.chart.name and self.weights == other.weights

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if max(self.weights) < 10 ** 6:
            return f"NormalCurve({list(self.weights)})"
        return f"NormalCurve(weight~10^{len(str(self.total_weight)) - 1})"

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def core_chart(self) -> CoreChart:
        if self._core is None:
            object.__setattr__(self, "_core", _make_core(self))
        return self._core


def _make_core(c: NormalCurve) -> CoreChart:
    if c._origin is not None:
        inverse, src = c._origin
        base = src.core_chart()
        return CoreChart(base.chart, inverse.then(base.to_core), base.e1, base.e2, base.x, base.y)
    T, w, moves, core = reduce_weights(c.chart, c.weights)
    if core is None:
        raise ShorteningFailed("no annulus chart found for curve")
    return CoreChart(T, Transport(moves), *core)


def trusted_curve(chart: Triangulation, weights: Sequence[int], origin=None) -> NormalCurve:
    return NormalCurve(chart, weights, _trusted=True, _origin=origin)


def _remove_bigons(T: Triangulation, w: List[int]) -> None:
    changed = True
    while changed:
        changed = False
        for tri in T.triangles:
            idx = [norm(z) for z in tri]
            for p in range(3):
                a, b, c = idx[p], idx[(p + 1) % 3], idx[(p + 2) % 3]
                excess = w[a] - w[b] - w[c]
                if excess > 0:
                    if excess % 2:
                        raise NotACurve("odd excess across a triangle")
                    w[a] -= excess
                    changed = True


def _remove_peripheral(T: Triangulation, w: List[int]) -> int:
    removed = 0
    corners = corner_counts(T, w)
    for cyc in T.vertices():
        k = min(corners[c] for c in cyc)
        if k:
            removed += k
            for t, p in cyc:
                tri = T.triangles[t]
                w[norm(tri[p])] -= k
                w[norm(tri[(p + 1) % 3])] -= k
            corners = corner_counts(T, w)
    return removed


def count_components(T: Triangulation, w: Sequence[int]) -> int:
    """Number of components of a normal multicurve without peripheral parts."""
    if not any(w):
        return 0
    if sum(w) <= TRACE_LIMIT:
        return len(trace_components(T, w))
    g = 0
    for x in w:
        g = gcd(g, x)
    if g > 1:
        return g * count_components(T, [x // g for x in w])
    T2, w2, _, core = reduce_weights(T, w)
    if core:
        return 1
    if sum(w2) <= TRACE_LIMIT:
        return len(trace_components(T2, w2))
    raise ShorteningFailed("cannot decide connectivity")


def normalize_weights(raw: Sequence[int], chart: Triangulation) -> Tuple[Tuple[int, ...], int]:
    """Bigon and peripheral removal; returns (weights, number of peripheral loops removed)."""
    if len(raw) != chart.zeta:
        raise NotACurve(f"expected {chart.zeta} weights, got {len(raw)}")
    w = [int(x) for x in raw]
    if any(x < 0 for x in w):
        raise NotACurve("negative weight")
    _remove_bigons(chart, w)
    corner_counts(chart, w)
    removed = _remove_peripheral(chart, w)
    return tuple(w), removed


def tighten(raw: Sequence[int], chart: Optional[Triangulation] = None) -> NormalCurve:
    """Canonical curve for raw weights, or NotACurve / Peripheral / Disconnected."""
    chart = chart or base_chart()
    w, removed = normalize_weights(raw, chart)
    if not any(w):
        raise Peripheral("empty" if not removed else "puncture-parallel")
    n = count_components(chart, w)
    if n > 1 or (removed and n):
        raise Disconnected(f"{n + removed} components")
    return NormalCurve(chart, w, _trusted=True)


def multicurve_components(raw: Sequence[int], chart: Optional[Triangulation] = None) -> List[NormalCurve]:
    """Split small normal multicurves into their essential components."""
    chart = chart or base_chart()
    w, _ = normalize_weights(raw, chart)
    if not any(w):
        return []
    from .tracing import component_weights
    comps = {}
    for seq in trace_components(chart, w):
        cw = component_weights(chart, seq)
        comps[cw] = NormalCurve(chart, cw, _trusted=True)
    return [comps[k] for k in sorted(comps)]


def _check(a: NormalCurve, b: NormalCurve) -> None:
    if a.chart.name != b.chart.name:
        raise ChartMismatch(f"{a.chart.name} vs {b.chart.name}")


def intersection_number(a: NormalCurve, b: NormalCurve) -> int:
    """Exact geometric intersection number."""
    _check(a, b)
    if a.weights == b.weights:
        return 0
    if b._core is not None or (a._core is None and b._origin is not None and a._origin is None):
        a, b = b, a
    elif a._core is None and a._origin is None and b._origin is None and b.total_weight < a.total_weight:
        a, b = b, a
    return a.core_chart().crossings(b.weights)


def overlaps(a: NormalCurve, b: NormalCurve) -> bool:
    return intersection_number(a, b) > 0


def canonical_key(a: NormalCurve) -> Tuple:
    return (a.chart.name, a.weights)


def puncture_partition(c: NormalCurve) -> Tuple[frozenset, frozenset]:
    """The two puncture sets cut off by a curve on a punctured sphere (smaller first).

    Each edge runs between punctures and changes side at every crossing, so
    its weight is odd exactly when its ends lie on different sides.
    """
    T = c.chart
    if T.surface.genus:
        raise NotImplementedError("puncture partition needs a planar chart")
    colour: Dict[object, int] = {}
    start = T.head(0)
    colour[start] = 0
    stack = [start]
    edges = [(T.tail(e), T.head(e), c.weights[e] % 2) for e in range(T.zeta)]
    while stack:
        u = stack.pop()
        for a, b, par in edges:
            for x, y in ((a, b), (b, a)):
                if x == u and y not in colour:
                    colour[y] = colour[u] ^ par
                    stack.append(y)
    sides = [frozenset(v for v, k in colour.items() if k == s) for s in (0, 1)]
    return tuple(sorted(sides, key=lambda z: (len(z), sorted(map(str, z)))))


def curve_to_json(c: NormalCurve) -> dict:
    return {"chart": c.chart.name, "weights": [str(x) for x in c.weights]}


def curve_from_json(data) -> NormalCurve:
    if isinstance(data, str):
        data = json.loads(data)
    chart = get_chart(data["chart"])
    return NormalCurve(chart, [int(x) for x in data["weights"]])


# ---------------------------------------------------------------------------
# multicurves and markings


class MultiCurve:
    def __init__(self, components: Iterable[NormalCurve]):
        comps = {}
        for c in components:
            comps[canonical_key(c)] = c
        self.components = tuple(comps[k] for k in sorted(comps))
        for i, a in enumerate(self.components):
            for b in self.components[i + 1:]:
                if intersection_number(a, b):
                    raise NotACurve("multicurve components intersect")

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def weights(self) -> Tuple[int, ...]:
        return tuple(sum(ws) for ws in zip(*(c.weights for c in self.components)))


class Marking:
    """Pants decomposition plus optional transversals (keyed by base curve)."""

    def __init__(self, base: Iterable[NormalCurve], transversals: Optional[Dict[NormalCurve, NormalCurve]] = None):
        self.base = MultiCurve(base)
        chart = self.base.components[0].chart
        xi = chart.surface.complexity
        if len(self.base) != xi:
            raise NotACurve(f"a marking base needs {xi} curves, got {len(self.base)}")
        self.transversals = dict(transversals or {})
        for b, t in self.transversals.items():
            if not overlaps(b, t):
                raise NotACurve("transversal misses its base curve")
            for other in self.base:
                if other != b and overlaps(other, t):
                    raise NotACurve("transversal meets another base curve")

    def curves(self) -> List[NormalCurve]:
        return list(self.base) + [self.transversals[b] for b in self.base if b in self.transversals]
