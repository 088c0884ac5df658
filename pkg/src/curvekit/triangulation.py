"""Labeled ideal triangulations of punctured surfaces.

Edges are numbered ``0 .. zeta-1``.  An oriented edge is an integer: ``i``
is edge ``i`` in its reference direction and ``~i`` (that is ``-i-1``) is the
same edge traversed backwards.  A triangle is a triple of oriented edges
listed counterclockwise, so the head of each side is the tail of the next.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import TriangulationError


def norm(label: int) -> int:
    """Unoriented edge index of an oriented label."""
    return label if label >= 0 else ~label


@dataclass(frozen=True)
class SurfaceSig:
    genus: int
    punctures: int

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    def __str__(self) -> str:
        return f"S{self.genus},{self.punctures}"


Triangle = Tuple[int, int, int]


@dataclass(frozen=True)
class Triangulation:
    """Immutable combinatorial triangulation.

    ``heads`` maps every oriented label to the puncture at its head; puncture
    names are arbitrary hashables (strings for the fixed charts).
    """

    surface: SurfaceSig
    triangles: Tuple[Triangle, ...]
    heads: Tuple[Tuple[int, object], ...]
    name: str = ""
    symmetries: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()
    _index: Dict[int, Tuple[int, int]] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        index = {}
        for t, tri in enumerate(self.triangles):
            for p, lab in enumerate(tri):
                if lab in index:
                    raise TriangulationError(f"oriented edge {lab} used twice")
                index[lab] = (t, p)
        object.__setattr__(self, "_index", index)
        zeta = self.zeta
        for i in range(zeta):
            if i not in index or ~i not in index:
                raise TriangulationError(f"edge {i} is not glued to two triangle sides")
        if len(index) != 2 * zeta:
            raise TriangulationError("edge labels are not 0..zeta-1")
        head = dict(self.heads)
        object.__setattr__(self, "_head", head)
        for tri in self.triangles:
            for p in range(3):
                if head[tri[p]] != head[~tri[(p + 1) % 3]]:
                    raise TriangulationError("puncture labels inconsistent with gluing")
        nverts = len(self.vertices())
        chi = nverts - zeta + len(self.triangles)
        if chi != 2 - 2 * self.surface.genus or nverts != self.surface.punctures:
            raise TriangulationError(
                f"Euler characteristic {chi} with {nverts} vertices does not match {self.surface}"
            )
        for name, perm in self.symmetries:
            if not self.is_isometry_to(self, perm):
                raise TriangulationError(f"symmetry {name} does not preserve the gluing")

    # basic structure -------------------------------------------------
    @property
    def zeta(self) -> int:
        return 3 * len(self.triangles) // 2

    def locate(self, label: int) -> Tuple[int, int]:
        return self._index[label]

    def rotated(self, label: int) -> Triangle:
        """The triangle containing ``label``, rotated to start with it."""
        t, p = self._index[label]
        tri = self.triangles[t]
        return (tri[p], tri[(p + 1) % 3], tri[(p + 2) % 3])

    def head(self, label: int):
        return self._head[label]

    def head_map(self) -> Dict[int, object]:
        return dict(self._head)

    def tail(self, label: int):
        return self.head(~label)

    def vertices(self) -> List[List[Tuple[int, int]]]:
        """Corner cycles.  Corner ``(t, p)`` sits at the head of side ``p``."""
        seen = set()
        cycles = []
        for t in range(len(self.triangles)):
            for p in range(3):
                if (t, p) in seen:
                    continue
                cyc = []
                cur = (t, p)
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(cur)
                    tri = self.triangles[cur[0]]
                    nxt = tri[(cur[1] + 1) % 3]
                    cur = self._index[~nxt]
                cycles.append(cyc)
        return cycles

    def is_flippable(self, edge: int) -> bool:
        return self._index[edge][0] != self._index[~edge][0]

    def square(self, edge: int) -> Tuple[int, int, int, int]:
        """Sides ``(a, b, c, d)`` of the square around ``edge``.

        The two triangles are ``(edge, a, b)`` and ``(~edge, c, d)``;
        ``a`` is opposite ``c`` and ``b`` is opposite ``d``.
        """
        _, a, b = self.rotated(edge)
        _, c, d = self.rotated(~edge)
        return a, b, c, d

    def flip(self, edge: int) -> "Triangulation":
        if not self.is_flippable(edge):
            raise TriangulationError(f"edge {edge} is not flippable")
        a, b, c, d = self.square(edge)
        t1 = self._index[edge][0]
        t2 = self._index[~edge][0]
        tris = list(self.triangles)
        tris[t1] = (edge, b, c)
        tris[t2] = (~edge, d, a)
        head = dict(self.heads)
        head[edge] = head[a]
        head[~edge] = head[c]
        return Triangulation(self.surface, tuple(tris), tuple(sorted(head.items())), self.name)

    # isometries ------------------------------------------------------
    def is_isometry_to(self, other: "Triangulation", perm: Sequence[int]) -> bool:
        """Does the oriented-label map ``i -> perm[i]`` carry self onto other?"""
        def img(lab):
            return perm[lab] if lab >= 0 else ~perm[~lab]

        target = set()
        for tri in other.triangles:
            for r in range(3):
                target.add(tuple(tri[(r + k) % 3] for k in range(3)))
        return all(tuple(img(x) for x in tri) in target for tri in self.triangles)

    def isometries_to(self, other: "Triangulation", vertex_map: Optional[dict] = None) -> List[Tuple[int, ...]]:
        """All orientation preserving combinatorial isomorphisms self -> other.

        Returned as tuples ``perm`` of oriented images of ``0..zeta-1``.  When
        ``vertex_map`` is given only maps inducing it on punctures are kept.
        """
        if self.zeta != other.zeta:
            return []
        found = []
        start = self.triangles[0][0]
        for cand in list(other._index):
            mapping = {}
            stack = [(start, cand)]
            ok = True
            while stack and ok:
                src, dst = stack.pop()
                if src in mapping:
                    if mapping[src] != dst:
                        ok = False
                    continue
                mapping[src] = dst
                s_tri = self.rotated(src)
                d_tri = other.rotated(dst)
                for k in range(3):
                    stack.append((s_tri[k], d_tri[k]))
                    stack.append((~s_tri[k], ~d_tri[k]))
            if not ok or len(mapping) != 2 * self.zeta:
                continue
            perm = tuple(mapping[i] for i in range(self.zeta))
            if vertex_map is not None:
                sh, oh = self.head_map(), other.head_map()
                if any(vertex_map[sh[i]] != oh[mapping[i]] for i in mapping):
                    continue
            found.append(perm)
        return sorted(set(found))

    def relabel(self, perm: Sequence[int], name: str = "") -> "Triangulation":
        def img(lab):
            return perm[lab] if lab >= 0 else ~perm[~lab]

        tris = tuple(tuple(img(x) for x in tri) for tri in self.triangles)
        head = {img(k): v for k, v in self.heads}
        return Triangulation(self.surface, tris, tuple(sorted(head.items())), name or self.name)

    def signature(self) -> Tuple:
        """Hashable description (triangles up to rotation plus puncture labels)."""
        norm_tris = []
        for tri in self.triangles:
            r = min(range(3), key=lambda k: tri[k])
            norm_tris.append(tuple(tri[(r + k) % 3] for k in range(3)))
        return (tuple(sorted(norm_tris)), self.heads)

    def edge_ends(self, edge: int) -> Tuple[object, object]:
        return self.tail(edge), self.head(edge)


def doubled_pentagon() -> Triangulation:
    """The fixed chart of the five-punctured sphere.

    Punctures ``P0..P4`` are the corners of a pentagon; the sphere is the
    double of the pentagon.  Edges 0..4 are the pentagon sides
    ``P_k -> P_{k+1}``; edges 5, 6 are the front diagonals ``P0 -> P2`` and
    ``P0 -> P3``; edges 7, 8 are the back diagonals with the same ends.
    """
    tris = (
        (0, 1, ~5), (5, 2, ~6), (6, 3, 4),
        (7, ~1, ~0), (8, ~2, ~7), (~4, ~3, ~8),
    )
    ends = {0: ("P0", "P1"), 1: ("P1", "P2"), 2: ("P2", "P3"), 3: ("P3", "P4"),
            4: ("P4", "P0"), 5: ("P0", "P2"), 6: ("P0", "P3"), 7: ("P0", "P2"), 8: ("P0", "P3")}
    heads = {}
    for e, (t, h) in ends.items():
        heads[e] = h
        heads[~e] = t
    return Triangulation(SurfaceSig(0, 5), tris, tuple(sorted(heads.items())), "S0,5")
