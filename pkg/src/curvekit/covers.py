"""Branched covers of the five-punctured sphere and lifts of curves.

A cover is given by an abelian monodromy ``m: punctures -> (Z/2)^r``: the
loop around puncture ``p`` moves sheets by ``m[p]``.  Because the group is
elementary abelian, a simple closed curve ``c`` has holonomy equal to the
sum of ``m[p]`` over the punctures on one side of it, and its preimage has
``degree / |<hol(c)>|`` components.

The genus two cover is the composite of two double covers.  The first is
branched over ``P0`` and ``P1`` (a sphere with six orbifold points and two
regular branch points upstairs), the second over the six lifted orbifold
points.  Every puncture downstairs then has two preimages of local degree 2,
so the total surface is a closed genus two surface with ten marked points.

Curves upstairs are normal curves on the lifted chart.  Huge lifts are
never traced: the pure-braid form of the construction word is lifted letter
by letter (twists about lifted components, and single base twists realised
by flips plus an isometry, which lift sheetwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .errors import ChartMismatch, TriangulationError
from .surface import (MultiCurve, NormalCurve, base_chart, intersection_number, get_chart,
                      multicurve_components, puncture_partition, reduce_weights, register_chart,
                      trusted_curve)
from .tracing import trace_components
from .transport import Flip, Perm, Transport
from .triangulation import SurfaceSig, Triangulation, norm

Group = Tuple[int, ...]

TOWER_MONODROMY = {
    # first coordinate: the rotation double cover, branched at P0 and P1
    # second coordinate: the hyperelliptic double cover over the other points
    "P0": (1, 0),
    "P1": (1, 1),
    "P2": (0, 1),
    "P3": (0, 1),
    "P4": (0, 1),
}


def _add(g: Group, h: Group) -> Group:
    return tuple(x ^ y for x, y in zip(g, h))


def _corner_cycles(triangles):
    index = {}
    for t, tri in enumerate(triangles):
        for p, lab in enumerate(tri):
            index[lab] = (t, p)
    seen = set()
    cycles = []
    for t in range(len(triangles)):
        for p in range(3):
            if (t, p) in seen:
                continue
            cyc = []
            cur = (t, p)
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                nxt = triangles[cur[0]][(cur[1] + 1) % 3]
                cur = index[~nxt]
            cycles.append(cyc)
    return cycles


def _solve_cocycle(T: Triangulation, mono: Dict[str, Group], r: int) -> List[Group]:
    """Sheet shifts on edges whose sum around each puncture is its monodromy."""
    cycles = T.vertices()
    crossed = []
    for cyc in cycles:
        t, p = cyc[0]
        vertex = T.head(T.triangles[t][p])
        crossed.append((vertex, [norm(T.triangles[t][(p + 1) % 3]) for t, p in cyc]))
    shifts = [[0] * r for _ in range(T.zeta)]
    for bit in range(r):
        for bits in product((0, 1), repeat=T.zeta):
            if all(sum(bits[e] for e in edges) % 2 == mono[v][bit] for v, edges in crossed):
                for e in range(T.zeta):
                    shifts[e][bit] = bits[e]
                break
        else:
            raise TriangulationError("monodromy is not realisable (odd total)")
    return [tuple(s) for s in shifts]


@dataclass(frozen=True)
class CoveringMap:
    base: Triangulation
    total: Triangulation
    group: Tuple[Group, ...]
    shifts: Tuple[Group, ...]
    monodromy: Tuple[Tuple[str, Group], ...]

    @property
    def degree(self) -> int:
        return len(self.group)

    def edge_image(self, edge: int) -> int:
        return edge // self.degree

    def edge_sheet(self, edge: int) -> Group:
        return self.group[edge % self.degree]

    def simplex_map(self) -> List[int]:
        """Base triangle of each total triangle."""
        return [t // self.degree for t in range(len(self.total.triangles))]

    def deck(self) -> List[Tuple[int, ...]]:
        """Deck transformations as edge permutations of the total chart."""
        D = self.degree
        out = []
        for h in self.group:
            perm = []
            for edge in range(self.total.zeta):
                e, g = divmod(edge, D)
                perm.append(e * D + self.group.index(_add(self.group[g], h)))
            out.append(tuple(perm))
        return out

    def mono(self) -> Dict[str, Group]:
        return dict(self.monodromy)

    def holonomy(self, c: NormalCurve) -> Group:
        """Sum of puncture monodromies on one side of ``c``."""
        side = puncture_partition(c)[0]
        m = self.mono()
        h = tuple(0 for _ in self.group[0])
        for p in side:
            h = _add(h, m[p])
        return h

    def component_count(self, c: NormalCurve) -> int:
        return self.degree // (1 if not any(self.holonomy(c)) else 2)

    def lift_weights(self, weights: Sequence[int]) -> Tuple[int, ...]:
        D = self.degree
        return tuple(weights[edge // D] for edge in range(self.total.zeta))

    def to_json(self) -> dict:
        return {
            "base_chart": self.base.name,
            "total_chart": self.total.name,
            "simplex_map": self.simplex_map(),
            "degree": self.degree,
            "monodromy": {p: list(g) for p, g in self.monodromy},
        }


def build_cover(base: Triangulation, mono: Dict[str, Group], name: str) -> CoveringMap:
    r = len(next(iter(mono.values())))
    group = tuple(product((0, 1), repeat=r))
    shifts = _solve_cocycle(base, mono, r)
    D = len(group)
    gi = {g: k for k, g in enumerate(group)}

    def label(L, g):
        if L >= 0:
            return L * D + gi[g]
        e = ~L
        return ~(e * D + gi[_add(g, shifts[e])])

    tris = []
    for tri in base.triangles:
        for g in group:
            tris.append(tuple(label(L, g) for L in tri))
    # name the punctures upstairs by corner cycles
    heads = {}
    counter: Dict[str, int] = {}
    for cyc in _corner_cycles(tris):
        t, p = cyc[0]
        b = base.head(base.triangles[t // D][p])
        k = counter.get(b, 0)
        counter[b] = k + 1
        vname = f"{b}.{k}"
        for t, p in cyc:
            lab = tris[t][p]
            heads[lab] = vname
            heads[~tris[t][(p + 1) % 3]] = vname
    V = len(set(heads.values()))
    F = len(tris)
    E = 3 * F // 2
    chi = V - E + F
    if chi % 2:
        raise TriangulationError("odd Euler characteristic upstairs")
    genus = (2 - chi) // 2
    total = Triangulation(SurfaceSig(genus, V), tuple(tris), tuple(sorted(heads.items())), name)
    return CoveringMap(base, total, group, tuple(shifts), tuple(sorted(mono.items())))


@lru_cache(maxsize=None)
def build_tower(g: int = 2) -> Tuple[CoveringMap, CoveringMap]:
    """``(f, F)``: the rotation double cover and the degree four composite."""
    if g != 2:
        raise NotImplementedError("only the genus two cover is built")
    base = base_chart()
    first = {p: (m[0],) for p, m in TOWER_MONODROMY.items()}
    f = build_cover(base, first, "S0,8-cover")
    F = build_cover(base, TOWER_MONODROMY, "S2-cover")
    register_chart(f.total)
    register_chart(F.total)
    return f, F


def genus_two_cover() -> CoveringMap:
    return build_tower(2)[1]


def lift_curve(cov: CoveringMap, c: NormalCurve) -> MultiCurve:
    """Full preimage of a (traceable) curve, split into components."""
    if c.chart.name != cov.base.name:
        raise ChartMismatch(f"{c.chart.name} vs {cov.base.name}")
    total = get_chart(cov.total.name)
    comps = multicurve_components(cov.lift_weights(c.weights), total)
    return MultiCurve(comps)


def holonomy_by_walk(cov: CoveringMap, c: NormalCurve) -> Group:
    """Holonomy computed by walking the drawn curve (independent of sides)."""
    comps = trace_components(c.chart, c.weights)
    h = tuple(0 for _ in cov.group[0])
    for lab in comps[0]:
        h = _add(h, cov.shifts[norm(lab)])
    return h


# ---------------------------------------------------------------------------
# lifting mapping classes


def _lift_flips(cov: CoveringMap, S: Triangulation, moves: Sequence[Flip]):
    out = []
    D = cov.degree
    for mv in moves:
        for k in range(D):
            e = mv.e * D + k
            a, b, c, d = S.square(e)
            out.append(Flip(e, norm(a), norm(b), norm(c), norm(d)))
            S = S.flip(e)
    return S, out


def _covering_isometry(cov: CoveringMap, S: Triangulation, target: Triangulation, sigma: Sequence[int]) -> Tuple[int, ...]:
    D = cov.degree
    for perm in S.isometries_to(target):
        ok = True
        for x in range(S.zeta):
            s = sigma[x // D]
            y = perm[x]
            if norm(y) // D != norm(s) or (y < 0) != (s < 0):
                ok = False
                break
        if ok:
            return perm
    raise TriangulationError("base isometry does not lift")


def _base_single_twist(c: NormalCurve):
    """A flip/isometry transport equal to a single twist about ``c`` and its sign."""
    T = c.chart
    T_c, _, moves, core = reduce_weights(T, c.weights)
    if any(not isinstance(m, Flip) for m in moves):
        raise TriangulationError("annulus chart needs more than flips")
    e1, e2, x, y = core
    a, b, cc, d = T_c.square(e1)
    flip = Flip(e1, norm(a), norm(b), norm(cc), norm(d))
    T2 = T_c.flip(e1)
    sigma = None
    for s1 in (e2, ~e2):
        for s2 in (e1, ~e1):
            perm = list(range(T.zeta))
            perm[e1] = s1
            perm[e2] = s2
            if T2.is_isometry_to(T_c, perm):
                sigma = perm
    if sigma is None:
        raise TriangulationError("annulus flip is not a twist")
    back = list(reversed(moves))
    tr = Transport(list(moves) + [flip, Perm([norm(z) for z in sigma])] + back)
    for w in _probe_curves(T):
        pos = tr.apply(w)
        if pos == w:
            continue
        fwd = c.core_chart().twist(1).apply(w)
        bwd = c.core_chart().twist(-1).apply(w)
        if pos == fwd:
            sign = 1
        elif pos == bwd:
            sign = -1
        else:
            raise TriangulationError("flip twist does not match the closed form")
        return moves, flip, sigma, sign
    raise TriangulationError("no probe curve crosses the core")


def _probe_curves(T):
    from .oracles import enumerate_curves
    for c in enumerate_curves(T, 12):
        yield c.weights


def _unoriented(T: Triangulation):
    # a flip undone by flipping again reverses the edge, so compare up to that
    return sorted(tuple(sorted(norm(x) for x in tri)) for tri in T.triangles)


class LiftedTwists:
    """Lifts to the genus two chart of twist powers about small base curves."""

    def __init__(self, cov: CoveringMap):
        self.cov = cov
        self.total = get_chart(cov.total.name)
        self._cache: Dict[NormalCurve, tuple] = {}

    def _data(self, c: NormalCurve):
        if c in self._cache:
            return self._cache[c]
        comps = list(lift_curve(self.cov, c))
        half = None
        if len(comps) < self.cov.degree:
            moves, flip, sigma, sign = _base_single_twist(c)
            S0 = self.cov.total
            S1, up1 = _lift_flips(self.cov, S0, moves)
            S2, up2 = _lift_flips(self.cov, S1, [flip])
            perm = _covering_isometry(self.cov, S2, S1, sigma)
            S3, up3 = _lift_flips(self.cov, S1, list(reversed(moves)))
            if _unoriented(S3) != _unoriented(S0):
                raise TriangulationError("lifted flips do not return to the total chart")
            half = Transport(up1 + up2 + [Perm([norm(z) for z in perm])] + up3)
            if sign < 0:
                half = half.inverse()
        self._cache[c] = (comps, half)
        return self._cache[c]

    def transport(self, c: NormalCurve, e: int) -> Transport:
        """Transport upstairs realising a lift of ``D_c^e``."""
        comps, half = self._data(c)
        moves = []
        if half is None:
            for comp in comps:
                moves.extend(comp.core_chart().twist(e).moves)
            return Transport(moves)
        q, r = divmod(e, 2)
        if r:
            moves.extend(half.moves)
        for comp in comps:
            moves.extend(comp.core_chart().twist(q).moves)
        return Transport(moves)


def lift_sequence(cov: CoveringMap, powers: Sequence[int], n: int, choice: int = 0) -> List[NormalCurve]:
    """One component of the preimage of each ``g_i``, ``i <= n``.

    ``choice`` picks the component by rank of its canonical key.
    """
    from .construction import side_curve

    lt = LiftedTwists(cov)
    total = lt.total
    decks = [Transport([Perm(p)]) for p in cov.deck()]
    out = []
    for i in range(n + 1):
        start = side_curve(1 + 2 * i)
        comps, _ = lt._data(start)
        src = comps[0]
        moves = []
        for k in range(i, 0, -1):
            moves.extend(lt.transport(side_curve(2 * (k - 1)), powers[k - 1]).moves)
        fwd = Transport(moves)
        images = {}
        for dk in decks:
            tr = fwd.then(dk)
            w = tr.apply(src.weights)
            if w not in images:
                images[w] = tr
        keys = sorted(images)
        w = keys[min(choice, len(keys) - 1)]
        out.append(trusted_curve(total, w, (images[w].inverse(), src)))
    return out


DEFAULT_D = 4


def verify_lifted_sequence(cov: CoveringMap, bundle, d: int = DEFAULT_D, choices: Sequence[int] = (0, 1)) -> dict:
    """Overlap and annular tables for lifted sequence curves.

    Booleans are computed for every component choice in ``choices`` and must
    agree; the coefficient table uses the first choice.
    """
    from .projections import annulus, subsurface_coefficient

    n = bundle.n
    lifts = {ch: lift_sequence(cov, bundle.powers, n, ch) for ch in choices}
    violations = []
    overlap_rows = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            flags = []
            for ch in choices:
                L = lifts[ch]
                flags.append(intersection_number(L[i], L[j]) > 0)
            if len(set(flags)) > 1:
                violations.append({"tag": "claim:component-choice", "i": i, "j": j})
            crosses = flags[0]
            overlap_rows.append({"i": i, "j": j, "overlap": crosses})
            if j - i >= d and not crosses:
                violations.append({"tag": "claim:lifted-overlap", "i": i, "j": j})
            if j == i + 1 and crosses:
                violations.append({"tag": "claim:lifted-disjoint", "i": i, "j": j})
    L = lifts[choices[0]]
    rows = []
    skipped = []
    for i in range(2, n - 1):
        e = bundle.e(i - 1)
        for j in range(0, i - 1):
            for jp in range(i + 2, n + 1):
                if not (intersection_number(L[i], L[j]) and intersection_number(L[i], L[jp])):
                    skipped.append({"i": i, "j": j, "j_prime": jp})
                    continue
                rec = subsurface_coefficient(annulus(L[i]), L[j], L[jp])
                rows.append({"i": i, "j": j, "j_prime": jp, "value": rec.value,
                             "slack": rec.slack, "e_prev": e})
    ratios = [r["value"] / r["e_prev"] for r in rows]
    crossing = {(r["i"], r["j"]) for r in overlap_rows if r["overlap"]}
    d_min = 1 + max([j - i for i in range(n + 1) for j in range(i + 1, n + 1)
                     if (i, j) not in crossing], default=0)
    return {
        "cover": cov.to_json(),
        "d": d,
        "choices": list(choices),
        "overlap": overlap_rows,
        "annular": rows,
        "skipped": skipped,
        "empirical": {
            "smallest_d": d_min,
            "max_ratio": max(ratios) if ratios else None,
            "max_inverse_ratio": max(1 / x for x in ratios) if ratios else None,
        },
        "violations": violations,
    }
