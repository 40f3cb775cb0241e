"""Simple polytopes given purely by facet-vertex incidence."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple


class PolytopeError(ValueError):
    """Invalid polytope data."""


class NotSimple(PolytopeError):
    pass


class DisconnectedSkeleton(PolytopeError):
    pass


class DuplicateVertex(PolytopeError):
    pass


class InvalidFace(PolytopeError):
    pass


@dataclass(frozen=True)
class Face:
    """A nonempty face, identified by the vertices it contains.

    ``facet_set`` is the maximal set of facets containing the face; for a
    simple polytope its size is the codimension.
    """

    facet_set: FrozenSet[int]
    vertex_set: FrozenSet[int]
    codim: int
    dim: int

    def __contains__(self, v: int) -> bool:
        return v in self.vertex_set

    def is_subface_of(self, other: "Face") -> bool:
        return self.vertex_set <= other.vertex_set


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    face: Face


_NAME_SPLIT = re.compile(r"\s*(?:∩|&|\^|\*|,|/\\)\s*")


class SimplePolytope:
    """Combinatorial simple ``n``-polytope.

    Built from the facets through each vertex; every other piece of the face
    lattice is derived on demand and cached.  Instances are treated as
    immutable.
    """

    def __init__(
        self,
        dim: int,
        vertex_facets: Sequence[Iterable[int]],
        facet_names: Optional[Sequence[str]] = None,
        vertex_names: Optional[Sequence[str]] = None,
        facet_count: Optional[int] = None,
    ):
        self.dim = int(dim)
        self.vertex_facets: Tuple[FrozenSet[int], ...] = tuple(frozenset(int(i) for i in s) for s in vertex_facets)
        if facet_count is None:
            facet_count = len(facet_names) if facet_names is not None else 1 + max(
                (max(s) for s in self.vertex_facets if s), default=-1
            )
        self.facet_count = int(facet_count)
        self.facet_names = tuple(facet_names) if facet_names is not None else tuple(
            f"F{i + 1}" for i in range(self.facet_count)
        )
        self.vertex_names = tuple(vertex_names) if vertex_names is not None else tuple(
            f"v{i + 1}" for i in range(len(self.vertex_facets))
        )
        self._validate()

    def _validate(self) -> None:
        n, d, m = self.dim, self.facet_count, len(self.vertex_facets)
        if len(self.facet_names) != d:
            raise PolytopeError(f"{len(self.facet_names)} facet names for {d} facets")
        if len(self.vertex_names) != m:
            raise PolytopeError(f"{len(self.vertex_names)} vertex names for {m} vertices")
        if len(set(self.facet_names)) != d or len(set(self.vertex_names)) != m:
            raise PolytopeError("facet and vertex names must be unique")
        if n < 0:
            raise PolytopeError("dimension must be nonnegative")
        for v, s in enumerate(self.vertex_facets):
            bad = [i for i in s if not 0 <= i < d]
            if bad:
                raise PolytopeError(f"vertex {self.vertex_names[v]}: facet index out of range {bad}")
            if len(s) != n:
                raise NotSimple(f"vertex {self.vertex_names[v]} lies in {len(s)} facets, expected {n}")
        if len(set(self.vertex_facets)) != m:
            seen: Dict[FrozenSet[int], int] = {}
            for v, s in enumerate(self.vertex_facets):
                if s in seen:
                    raise DuplicateVertex(
                        f"vertices {self.vertex_names[seen[s]]} and {self.vertex_names[v]} have the same facets"
                    )
                seen[s] = v
        if n == 0:
            if m != 1 or d != 0:
                raise PolytopeError("a 0-dimensional polytope is a single vertex with no facets")
            return
        if d < n + 1 or m < n + 1:
            raise PolytopeError(f"need at least {n + 1} facets and vertices, got {d} and {m}")
        used = set().union(*self.vertex_facets)
        if len(used) != d:
            missing = sorted(set(range(d)) - used)
            raise PolytopeError(f"facets without vertices: {[self.facet_names[i] for i in missing]}")
        adj = self._adjacency()
        seen_v = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen_v:
                    seen_v.add(w)
                    stack.append(w)
        if len(seen_v) != m:
            raise DisconnectedSkeleton(f"1-skeleton has {m - len(seen_v)} unreachable vertices")
        for v in range(m):
            if len(adj[v]) != n:
                raise NotSimple(f"vertex {self.vertex_names[v]} has {len(adj[v])} neighbours, expected {n}")

    def _adjacency(self) -> List[List[int]]:
        n = self.dim
        adj: List[List[int]] = [[] for _ in self.vertex_facets]
        for a, b in combinations(range(len(self.vertex_facets)), 2):
            if len(self.vertex_facets[a] & self.vertex_facets[b]) == n - 1:
                adj[a].append(b)
                adj[b].append(a)
        return adj

    # -- face lattice -------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_facets)

    def vertices_in(self, facets: Iterable[int]) -> FrozenSet[int]:
        s = frozenset(facets)
        return frozenset(v for v, vf in enumerate(self.vertex_facets) if s <= vf)

    def _make_face(self, vertex_set: FrozenSet[int]) -> Face:
        facet_set = frozenset.intersection(*(self.vertex_facets[v] for v in vertex_set))
        return Face(facet_set, vertex_set, len(facet_set), self.dim - len(facet_set))

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        """All nonempty faces, the polytope itself included, each once."""
        found: Dict[FrozenSet[int], Face] = {}
        for vf in self.vertex_facets:
            for k in range(len(vf) + 1):
                for sub in combinations(sorted(vf), k):
                    vs = self.vertices_in(sub)
                    if vs not in found:
                        found[vs] = self._make_face(vs)
        return tuple(sorted(found.values(), key=lambda F: (F.dim, sorted(F.facet_set), sorted(F.vertex_set))))

    @cached_property
    def _by_vertices(self) -> Dict[FrozenSet[int], Face]:
        return {F.vertex_set: F for F in self.faces}

    @cached_property
    def face_index(self) -> Dict[Face, int]:
        return {F: i for i, F in enumerate(self.faces)}

    @property
    def whole(self) -> Face:
        return self._by_vertices[frozenset(range(self.vertex_count))]

    def face_of(self, facets: Iterable[int]) -> Face:
        """The face cut out by the given facets."""
        facets = list(facets)
        vs = self.vertices_in(facets)
        if not vs:
            raise InvalidFace(f"facets {sorted(facets)} have empty intersection")
        return self._by_vertices[vs]

    def vertex_face(self, v: int) -> Face:
        return self._by_vertices[frozenset([v])]

    def face_with_vertices(self, vertices: Iterable[int]) -> Face:
        vs = frozenset(vertices)
        if vs not in self._by_vertices:
            raise InvalidFace(f"no face has exactly the vertices {sorted(vs)}")
        return self._by_vertices[vs]

    def faces_of_dim(self, k: int) -> List[Face]:
        return [F for F in self.faces if F.dim == k]

    def subfaces(self, F: Face) -> List[Face]:
        return [G for G in self.faces if G.vertex_set <= F.vertex_set]

    def covering_pairs(self) -> List[Tuple[Face, Face]]:
        """Pairs ``(F, G)`` with ``F`` a facet of the face ``G``."""
        return [
            (F, G)
            for G in self.faces
            for F in self.faces
            if F.dim == G.dim - 1 and F.vertex_set < G.vertex_set
        ]

    # -- naming -------------------------------------------------------------

    def face_name(self, F: Face) -> str:
        if F.vertex_set == self.whole.vertex_set:
            return "Q"
        if F.dim == 0:
            return self.vertex_names[next(iter(F.vertex_set))]
        return "∩".join(self.facet_names[i] for i in sorted(F.facet_set))

    def face_by_name(self, name: str) -> Face:
        """Inverse of :meth:`face_name`; ``&``, ``^`` and ``,`` also separate facets."""
        name = name.strip()
        if name == "Q":
            return self.whole
        if name in self.vertex_names:
            return self.vertex_face(self.vertex_names.index(name))
        parts = [p for p in _NAME_SPLIT.split(name) if p]
        try:
            idx = [self.facet_names.index(p) for p in parts]
        except ValueError:
            raise InvalidFace(f"unknown face name {name!r}") from None
        return self.face_of(idx)

    def vertex_by_name(self, name: str) -> int:
        try:
            return self.vertex_names.index(name)
        except ValueError:
            raise InvalidFace(f"unknown vertex {name!r}") from None

    # -- skeleton and counts ------------------------------------------------

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        out = []
        for F in self.faces_of_dim(1):
            a, b = sorted(F.vertex_set)
            out.append(Edge(a, b, F))
        return tuple(sorted(out, key=lambda e: (e.a, e.b)))

    def skeleton(self) -> Dict[int, List[int]]:
        """Adjacency lists of the vertex-edge graph."""
        adj: Dict[int, List[int]] = {v: [] for v in range(self.vertex_count)}
        for e in self.edges:
            adj[e.a].append(e.b)
            adj[e.b].append(e.a)
        return adj

    def edge_between(self, a: int, b: int) -> Optional[Edge]:
        lo, hi = min(a, b), max(a, b)
        for e in self.edges:
            if e.a == lo and e.b == hi:
                return e
        return None

    def f_vector(self) -> List[int]:
        f = [0] * (self.dim + 1)
        for F in self.faces:
            f[F.dim] += 1
        return f

    def h_vector(self) -> List[int]:
        """``sum_k h_k t^k = sum_i f_i (t - 1)^i``."""
        f = self.f_vector()
        h = [0] * (self.dim + 1)
        for i, fi in enumerate(f):
            for k in range(i + 1):
                h[k] += fi * comb(i, k) * (-1) ** (i - k)
        return h

    # -- faces as polytopes -------------------------------------------------

    def face_polytope(self, F: Face) -> Tuple["SimplePolytope", List[int], List[int]]:
        """``F`` as a simple polytope in its own right.

        Returns ``(polytope, facet_map, vertex_map)`` where ``facet_map[j]``
        is the facet ``F_i`` of this polytope cutting out the ``j``-th facet
        ``F ∩ F_i`` of the face, and ``vertex_map`` lists the vertices of F.
        """
        verts = sorted(F.vertex_set)
        facets = sorted(set().union(*(self.vertex_facets[v] for v in verts)) - F.facet_set)
        pos = {i: j for j, i in enumerate(facets)}
        vf = [[pos[i] for i in sorted(self.vertex_facets[v] - F.facet_set)] for v in verts]
        P = SimplePolytope(
            F.dim,
            vf,
            facet_names=[self.face_name(self.face_of(F.facet_set | {i})) for i in facets],
            vertex_names=[self.vertex_names[v] for v in verts],
            facet_count=len(facets),
        )
        return P, facets, verts

    def __repr__(self) -> str:
        return f"SimplePolytope(dim={self.dim}, facets={self.facet_count}, vertices={self.vertex_count})"


def build_polytope(
    dim: int,
    vertex_facets: Sequence[Iterable[int]],
    facet_names: Optional[Sequence[str]] = None,
    vertex_names: Optional[Sequence[str]] = None,
    facet_count: Optional[int] = None,
) -> SimplePolytope:
    return SimplePolytope(dim, vertex_facets, facet_names, vertex_names, facet_count)


def faces(P: SimplePolytope) -> List[Face]:
    return list(P.faces)


def skeleton(P: SimplePolytope) -> Dict[int, List[int]]:
    return P.skeleton()


def h_vector(P: SimplePolytope) -> List[int]:
    return P.h_vector()
