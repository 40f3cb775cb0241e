"""Characteristic functions on simple polytopes and their local groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .polytope import Face, InvalidFace, SimplePolytope
from .zlinalg import (
    FiniteAbelianGroup,
    determinant,
    is_primitive,
    lattice_basis_completion,
    primitive_part,
    quotient_invariants,
    smith_normal_form,
    vecmat,
)


class DimensionMismatch(ValueError):
    pass


class VertexNotInFace(ValueError):
    pass


class DegenerateLocalGroup(ValueError):
    """The characteristic vectors at a vertex do not span a full-rank lattice."""


class CharacteristicPair:
    """A simple polytope with an integer vector attached to each facet."""

    def __init__(self, polytope: SimplePolytope, lam: Sequence[Sequence[int]]):
        n = polytope.dim
        if len(lam) != polytope.facet_count:
            raise DimensionMismatch(f"{len(lam)} characteristic vectors for {polytope.facet_count} facets")
        for i, v in enumerate(lam):
            if len(v) != n:
                raise DimensionMismatch(
                    f"lambda({polytope.facet_names[i]}) has length {len(v)}, expected {n}"
                )
        self.polytope = polytope
        self.lam: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(a) for a in v) for v in lam)
        self._cache: Dict[tuple, object] = {}  # per-pair memo; the pair is immutable

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def vertex_matrix(self, v: int) -> List[List[int]]:
        """Characteristic vectors at ``v`` as columns, facets in index order."""
        cols = [self.lam[i] for i in sorted(self.polytope.vertex_facets[v])]
        return [[c[r] for c in cols] for r in range(self.dim)]

    def __repr__(self) -> str:
        return f"CharacteristicPair({self.polytope!r})"


@dataclass
class ValidationReport:
    singular_vertices: List[Tuple[int, int]] = field(default_factory=list)
    non_primitive: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.singular_vertices and not self.non_primitive


def validate_characteristic(pair: CharacteristicPair) -> ValidationReport:
    """Check primitivity of every vector and independence at every vertex."""
    report = ValidationReport()
    for i, v in enumerate(pair.lam):
        if not is_primitive(v):
            report.non_primitive.append(i)
    for v in range(pair.polytope.vertex_count):
        d = determinant(pair.vertex_matrix(v))
        if d == 0:
            report.singular_vertices.append((v, d))
    return report


@dataclass(frozen=True)
class InducedPair:
    """Projection of a characteristic pair to a face ``F`` of codimension k.

    ``basis`` is a unimodular basis of ``Z^n`` whose first k rows span the
    saturation of the lattice generated by the vectors on the facets through
    ``F``; ``basis_inv`` converts a row vector into coordinates in it.
    ``lambda_F`` maps each facet ``F_i`` of ``Q`` meeting ``F`` in a facet of
    ``F`` to the primitive image of ``lambda(F_i)`` in ``Z^{n-k}``.
    """

    face: Face
    quotient_rank: int
    lambda_F: Mapping[int, Tuple[int, ...]]
    basis: Tuple[Tuple[int, ...], ...]
    basis_inv: Tuple[Tuple[int, ...], ...]

    def project(self, x: Sequence[int]) -> List[int]:
        coords = vecmat(x, self.basis_inv)
        return coords[len(coords) - self.quotient_rank:]

    def as_pair(self, parent: CharacteristicPair) -> CharacteristicPair:
        """The induced data as a characteristic pair on the face polytope."""
        P, facet_map, _ = parent.polytope.face_polytope(self.face)
        return CharacteristicPair(P, [self.lambda_F[i] for i in facet_map])


def _facets_meeting(pair: CharacteristicPair, F: Face) -> List[int]:
    P = pair.polytope
    out = []
    for i in sorted(set().union(*(P.vertex_facets[v] for v in F.vertex_set)) - F.facet_set):
        out.append(i)
    return out


def induced_characteristic(pair: CharacteristicPair, F: Face) -> InducedPair:
    key = ("induced", F)
    if key in pair._cache:
        return pair._cache[key]
    P, n = pair.polytope, pair.dim
    if P.face_index.get(F) is None:
        raise InvalidFace(f"{F} is not a face of {P}")
    k = F.codim
    M = [pair.lam[i] for i in sorted(F.facet_set)]
    B, B_inv, r = lattice_basis_completion(M, n)
    if r != k:
        raise DegenerateLocalGroup(f"face {P.face_name(F)}: facet vectors have rank {r} < {k}")
    lam_F = {}
    for i in _facets_meeting(pair, F):
        img = vecmat(pair.lam[i], B_inv)[k:]
        lam_F[i] = tuple(primitive_part(img))
    out = InducedPair(
        face=F,
        quotient_rank=n - k,
        lambda_F=lam_F,
        basis=tuple(map(tuple, B)),
        basis_inv=tuple(map(tuple, B_inv)),
    )
    pair._cache[key] = out
    return out


def local_group(pair: CharacteristicPair, F: Face, v: int) -> FiniteAbelianGroup:
    """``Z^{n-k} / M_F(v)`` for a vertex ``v`` of the face ``F``."""
    P = pair.polytope
    if v not in F.vertex_set:
        raise VertexNotInFace(f"{P.vertex_names[v]} is not a vertex of {P.face_name(F)}")
    ind = induced_characteristic(pair, F)
    vecs = [ind.lambda_F[i] for i in sorted(P.vertex_facets[v] - F.facet_set)]
    G, free = quotient_invariants(ind.quotient_rank, vecs)
    if free:
        raise DegenerateLocalGroup(
            f"vectors at {P.vertex_names[v]} in {P.face_name(F)} span a lattice of corank {free}"
        )
    return G


def vertex_group(pair: CharacteristicPair, v: int) -> FiniteAbelianGroup:
    return local_group(pair, pair.polytope.whole, v)


def face_group(pair: CharacteristicPair, F: Face) -> FiniteAbelianGroup:
    """``M*(F) / M(F)``, computed in a basis of the saturation ``M*(F)``."""
    P = pair.polytope
    if F == P.whole:
        raise InvalidFace("the face group is defined for proper faces only")
    ind = induced_characteristic(pair, F)
    k = F.codim
    coords = [vecmat(pair.lam[i], ind.basis_inv)[:k] for i in sorted(F.facet_set)]
    return FiniteAbelianGroup.from_diagonal(smith_normal_form(coords, k).invariant_factors)


def local_group_table(
    pair: CharacteristicPair, faces: Optional[Sequence[Face]] = None
) -> List[Tuple[Face, int, FiniteAbelianGroup]]:
    """``(F, v, G_F(v))`` for every face and each of its vertices."""
    P = pair.polytope
    out = []
    for F in faces if faces is not None else P.faces:
        for v in sorted(F.vertex_set):
            out.append((F, v, local_group(pair, F, v)))
    return out
