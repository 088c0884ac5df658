"""Dehn twist powers and the rotation rho acting on normal curves.

A word ``[L1, L2, ..., Lm]`` denotes the composition ``L1 o L2 o ... o Lm``,
so ``Lm`` acts first.  This is the convention of
``f1 o f2 o ... o fi (gamma_0)`` used for the curve sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

from .errors import ChartMismatch, TriangulationError
from .surface import (NormalCurve, base_chart, curve_from_json, curve_to_json,
                      trusted_curve)
from .transport import Flip, Perm, Transport
from .triangulation import Triangulation, norm

ROTATION_ORDER = 5


@lru_cache(maxsize=None)
def rho_transport(k: int) -> Transport:
    """Transport realizing ``rho^k`` on the five-punctured sphere chart.

    ``rho`` sends puncture ``P_j`` to ``P_{j+2}``.  It is not a symmetry of
    the doubled-pentagon chart, so it is realized as a short flip sequence
    followed by an isometric relabeling.
    """
    k %= ROTATION_ORDER
    T = base_chart()
    if k == 0:
        return Transport()
    pi = {f"P{j}": f"P{(j + 2 * k) % 5}" for j in range(5)}
    frontier = [(T, [])]
    seen = {T.signature()}
    for _ in range(6):
        nxt = []
        for S, path in frontier:
            isos = S.isometries_to(T, pi)
            if isos:
                perm = isos[0]
                return Transport(path + [Perm([norm(x) for x in perm])])
            for e in range(S.zeta):
                if not S.is_flippable(e):
                    continue
                a, b, c, d = S.square(e)
                S2 = S.flip(e)
                sig = S2.signature()
                if sig in seen:
                    continue
                seen.add(sig)
                nxt.append((S2, path + [Flip(e, norm(a), norm(b), norm(c), norm(d))]))
        frontier = nxt
    raise TriangulationError("rotation chart not found")


@dataclass(frozen=True)
class Twist:
    curve: NormalCurve
    power: int

    def transport(self) -> Transport:
        return self.curve.core_chart().twist(self.power)

    def inverse(self) -> "Twist":
        return Twist(self.curve, -self.power)


@dataclass(frozen=True)
class Rho:
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % ROTATION_ORDER)

    def transport(self) -> Transport:
        return rho_transport(self.exponent)

    def inverse(self) -> "Rho":
        return Rho(-self.exponent)


Letter = Union[Twist, Rho]


class MappingClassWord:
    """Immutable composition of twist powers and rotations."""

    def __init__(self, letters: Sequence[Letter] = (), chart: Triangulation = None):
        cleaned: List[Letter] = []
        for L in letters:
            if isinstance(L, Rho) and L.exponent == 0:
                continue
            if isinstance(L, Twist) and L.power == 0:
                continue
            cleaned.append(L)
        self.letters: Tuple[Letter, ...] = tuple(cleaned)
        self.chart = chart or (cleaned[0].curve.chart if cleaned and isinstance(cleaned[0], Twist) else base_chart())
        for L in self.letters:
            if isinstance(L, Twist) and L.curve.chart.name != self.chart.name:
                raise ChartMismatch("twist curve on a different chart")
            if isinstance(L, Rho) and self.chart.name != "S0,5":
                raise ChartMismatch("rho lives on the five-punctured sphere")
        self._transport = None

    def __mul__(self, other: "MappingClassWord") -> "MappingClassWord":
        return MappingClassWord(self.letters + other.letters, self.chart)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        parts = []
        for L in self.letters:
            parts.append(f"rho^{L.exponent}" if isinstance(L, Rho) else f"T^{L.power}")
        return "Word(" + " ".join(parts) + ")"

    def transport(self) -> Transport:
        if self._transport is None:
            moves = []
            for L in reversed(self.letters):
                moves.extend(L.transport().moves)
            self._transport = Transport(moves)
        return self._transport


IDENTITY_WORD = MappingClassWord()


def invert(w: MappingClassWord) -> MappingClassWord:
    return MappingClassWord([L.inverse() for L in reversed(w.letters)], w.chart)


def apply(w: MappingClassWord, c: NormalCurve) -> NormalCurve:
    """Image of ``c``; the result remembers how to reach an annulus chart."""
    if c.chart.name != w.chart.name:
        raise ChartMismatch(f"{w.chart.name} vs {c.chart.name}")
    if not w.letters:
        return c
    fwd = w.transport()
    inv = fwd.inverse()
    weights = fwd.apply(c.weights)
    if c._origin is not None:
        inv_c, src = c._origin
        origin = (inv.then(inv_c), src)
    else:
        origin = (inv, c)
    return trusted_curve(c.chart, weights, origin)


def twist_power(alpha: NormalCurve, beta: NormalCurve, e: int) -> NormalCurve:
    """``D_alpha^e (beta)`` with the closed-form power."""
    if alpha.chart.name != beta.chart.name:
        raise ChartMismatch(f"{alpha.chart.name} vs {beta.chart.name}")
    if e == 0 or alpha == beta:
        return beta
    return apply(MappingClassWord([Twist(alpha, e)], alpha.chart), beta)


def rho_power(k: int, c: NormalCurve) -> NormalCurve:
    return apply(MappingClassWord([Rho(k)]), c)


def word_to_json(w: MappingClassWord) -> list:
    out = []
    for L in w.letters:
        if isinstance(L, Rho):
            out.append({"rho": L.exponent})
        else:
            out.append({"twist": {"curve": curve_to_json(L.curve), "power": str(L.power)}})
    return out


def word_from_json(data) -> MappingClassWord:
    if isinstance(data, str):
        data = json.loads(data)
    letters: List[Letter] = []
    chart = None
    for item in data:
        if "rho" in item:
            letters.append(Rho(int(item["rho"])))
        else:
            c = curve_from_json(item["twist"]["curve"])
            chart = c.chart
            letters.append(Twist(c, int(item["twist"]["power"])))
    return MappingClassWord(letters, chart)
