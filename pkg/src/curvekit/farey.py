"""Distances in the Farey graph.

Slopes are primitive integer pairs ``(p, q)`` up to sign; ``(1, 0)`` is
infinity.  Two slopes are adjacent when ``|p s - q r| = 1``.
"""

from __future__ import annotations

from math import gcd
from typing import List, Tuple

Slope = Tuple[int, int]


def normalize(s: Slope) -> Slope:
    p, q = s
    g = gcd(p, q)
    if g == 0:
        raise ValueError("zero vector is not a slope")
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def det(a: Slope, b: Slope) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def to_infinity(a: Slope):
    """An integer matrix of determinant 1 sending slope ``a`` to ``(1, 0)``."""
    p, q = normalize(a)
    g, x, y = _ext_gcd(p, q)  # x p + y q = g = +-1
    if g < 0:
        x, y = -x, -y
    # rows (x, y) and (-q, p): determinant x p + y q = 1
    return ((x, y), (-q, p))


def _apply(M, s: Slope) -> Slope:
    return normalize((M[0][0] * s[0] + M[0][1] * s[1], M[1][0] * s[0] + M[1][1] * s[1]))


def continued_fraction(p: int, q: int) -> List[int]:
    """Regular continued fraction of ``p/q`` (``q > 0``) with floor convention."""
    out = []
    while q:
        a = p // q
        out.append(a)
        p, q = q, p - a * q
    return out


def distance_from_infinity(s: Slope) -> int:
    p, q = normalize(s)
    if q == 0:
        return 0
    if q == 1:
        return 1
    cf = continued_fraction(p, q)
    n = len(cf)
    # convergent indices -1 .. n-1; dist[k+1] holds distance to convergent k
    INF = float("inf")
    dist = [INF] * (n + 1)
    dist[0] = 0
    for k in range(-1, n - 1):
        d = dist[k + 1]
        if d + 1 < dist[k + 2]:
            dist[k + 2] = d + 1
        if k + 2 <= n - 1 and cf[k + 2] == 1 and d + 1 < dist[k + 3]:
            dist[k + 3] = d + 1
    return int(dist[n])


def farey_distance(a: Slope, b: Slope) -> int:
    M = to_infinity(a)
    return distance_from_infinity(_apply(M, b))


def twist_matrix(v: Slope, eps: int, power: int = 1):
    """Matrix of the ``power``-th twist about slope ``v`` (``eps`` fixes the handedness)."""
    a, c = v
    k = 2 * eps * power
    return ((1 - k * a * c, k * a * a), (-k * c * c, 1 + k * a * c))


def matmul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def apply_matrix(M, s: Slope) -> Slope:
    return _apply(M, s)


IDENTITY = ((1, 0), (0, 1))
