from collections import deque
from functools import lru_cache
from math import gcd

from hypothesis import given
from hypothesis import strategies as st

from curvekit import farey

BOX = 24


@lru_cache(maxsize=None)
def _bfs():
    slopes = [farey.normalize((p, q)) for p in range(-BOX, BOX + 1) for q in range(0, BOX + 1)
              if gcd(p, q) == 1 and (q > 0 or p == 1)]
    slopes = sorted(set(slopes))
    dist = {(1, 0): 0}
    queue = deque([(1, 0)])
    while queue:
        s = queue.popleft()
        for t in slopes:
            if t not in dist and abs(farey.det(s, t)) == 1:
                dist[t] = dist[s] + 1
                queue.append(t)
    return dist


primitive = st.tuples(st.integers(-10, 10), st.integers(0, 10)).filter(
    lambda s: gcd(*s) == 1 and (s[1] > 0 or s[0] == 1))


@given(primitive)
def test_distance_from_infinity_matches_bfs(s):
    assert farey.distance_from_infinity(s) == _bfs()[farey.normalize(s)]


@given(primitive, primitive)
def test_distance_is_symmetric_and_invariant(a, b):
    d = farey.farey_distance(a, b)
    assert d == farey.farey_distance(b, a)
    M = farey.to_infinity(a)
    assert farey.apply_matrix(M, a) == (1, 0)
    assert d == farey.distance_from_infinity(farey.apply_matrix(M, b))


def test_small_cases():
    assert farey.farey_distance((1, 0), (0, 1)) == 1
    assert farey.farey_distance((0, 1), (1, 1)) == 1
    assert farey.farey_distance((1, 2), (2, 1)) == 2
    assert farey.farey_distance((3, 5), (3, 5)) == 0
    assert farey.continued_fraction(7, 3) == [2, 3]


@given(st.sampled_from([(1, 0), (0, 1), (1, 1)]), st.sampled_from([-1, 1]), st.integers(-6, 6))
def test_twist_matrix_fixes_its_slope(v, eps, m):
    M = farey.twist_matrix(v, eps, m)
    assert M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1
    assert farey.apply_matrix(M, v) == farey.normalize(v)
    assert farey.matmul(farey.twist_matrix(v, eps, m), farey.twist_matrix(v, eps, -m)) == farey.IDENTITY
