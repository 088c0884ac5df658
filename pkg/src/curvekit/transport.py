"""Piecewise-linear maps on edge weights.

A :class:`Transport` is a list of primitive moves that carries the normal
coordinates of a curve from one labeled triangulation to another.  Three
kinds of move exist:

* ``Flip``: change of chart by a diagonal exchange (an involution on weights);
* ``Perm``: relabeling of edges by a combinatorial isometry;
* ``CoreTwist``: a power of the Dehn twist about the core of an annulus made
  of two triangles, evaluated in closed form.

All arithmetic is on Python integers, so weights have unbounded size.
"""

from __future__ import annotations

import contextlib
import threading
from typing import Iterable, List, Sequence, Tuple

_state = threading.local()


def audit_enabled() -> bool:
    return getattr(_state, "audit", False)


@contextlib.contextmanager
def audit_mode(flag: bool = True):
    """Force twist powers to be evaluated one step at a time."""
    old = audit_enabled()
    _state.audit = flag
    try:
        yield
    finally:
        _state.audit = old


# ---------------------------------------------------------------------------
# the annulus twist recurrence
#
# With (u, v) the weights of the two edges crossing the core and s the sum of
# the two boundary loops, one positive twist is (u, v) -> (v, max(s, 2v) - u).


def twist_step(u: int, v: int, s: int) -> Tuple[int, int]:
    return v, max(s, 2 * v) - u


def _forward(u: int, v: int, s: int, k: int, fast: bool = False) -> Tuple[int, int]:
    if audit_enabled() and not fast:
        for _ in range(k):
            u, v = v, max(s, 2 * v) - u
        return u, v
    while k > 0:
        if 2 * v >= s:
            d = v - u
            if d >= 0:
                return u + k * d, v + k * d
            m = min(k, (2 * v - s) // (-2 * d) + 1)
            u, v = u + m * d, v + m * d
            k -= m
        else:
            u, v = v, s - u
            k -= 1
    return u, v


def twist_pair(u: int, v: int, s: int, k: int, fast: bool = False) -> Tuple[int, int]:
    """Weights of the two core edges after ``k`` positive twists.

    ``fast`` skips audit mode; searches that only probe the recurrence
    (rather than apply a mapping class) use it.
    """
    if k >= 0:
        return _forward(u, v, s, k, fast)
    b, a = _forward(v, u, s, -k, fast)
    return a, b


def stable_increment(u: int, v: int, s: int) -> int:
    """Per-twist growth of each core edge once the map is linear.

    This equals the number of times the curve crosses the core.
    """
    for _ in range(10_000):
        if 2 * v >= s:
            d = v - u
            if d >= 0:
                return d
            m = (2 * v - s) // (-2 * d) + 1
            u, v = u + m * d, v + m * d
        else:
            u, v = v, s - u
    raise RuntimeError("twist recurrence failed to stabilize")


def best_twist(u: int, v: int, s: int) -> int:
    """A power ``k`` minimizing ``u_k + v_k`` (smallest ``|k|`` among minima)."""

    def total(k):
        a, b = twist_pair(u, v, s, k, fast=True)
        return a + b

    w0 = total(0)
    for sign in (1, -1):
        if total(sign) < w0:
            lo, hi = 1, 2
            while total(sign * hi) < total(sign * (hi - 1)):
                lo, hi = hi, 2 * hi
            # first k in [lo, hi] with total(k+1) >= total(k)
            while lo < hi:
                mid = (lo + hi) // 2
                if total(sign * (mid + 1)) < total(sign * mid):
                    lo = mid + 1
                else:
                    hi = mid
            return sign * lo
    return 0


# ---------------------------------------------------------------------------
# primitive moves


class Flip:
    __slots__ = ("e", "a", "b", "c", "d")

    def __init__(self, e, a, b, c, d):
        self.e, self.a, self.b, self.c, self.d = e, a, b, c, d

    def apply(self, w: List[int]) -> None:
        w[self.e] = max(w[self.a] + w[self.c], w[self.b] + w[self.d]) - w[self.e]

    def inverse(self) -> "Flip":
        return self

    def __repr__(self):
        return f"Flip({self.e})"


class Perm:
    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)

    def apply(self, w: List[int]) -> None:
        old = list(w)
        for i, j in enumerate(self.images):
            w[j] = old[i]

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __repr__(self):
        return f"Perm({self.images})"


class CoreTwist:
    __slots__ = ("e1", "e2", "x", "y", "k")

    def __init__(self, e1, e2, x, y, k):
        self.e1, self.e2, self.x, self.y, self.k = e1, e2, x, y, k

    def apply(self, w: List[int]) -> None:
        w[self.e1], w[self.e2] = twist_pair(w[self.e1], w[self.e2], w[self.x] + w[self.y], self.k)

    def inverse(self) -> "CoreTwist":
        return CoreTwist(self.e1, self.e2, self.x, self.y, -self.k)

    def __repr__(self):
        return f"CoreTwist({self.e1},{self.e2},k={self.k})"


class Transport:
    """An immutable sequence of moves applied left to right."""

    __slots__ = ("moves",)

    def __init__(self, moves: Iterable = ()):
        self.moves = tuple(moves)

    def apply(self, weights: Sequence[int]) -> Tuple[int, ...]:
        w = list(weights)
        for mv in self.moves:
            mv.apply(w)
        return tuple(w)

    def then(self, other: "Transport") -> "Transport":
        return Transport(self.moves + other.moves)

    def inverse(self) -> "Transport":
        return Transport(mv.inverse() for mv in reversed(self.moves))

    def __len__(self):
        return len(self.moves)

    def __repr__(self):
        return f"Transport({len(self.moves)} moves)"


IDENTITY = Transport()
