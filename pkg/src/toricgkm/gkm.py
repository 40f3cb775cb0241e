"""GKM graphs, vertex sections and face-indexed piecewise elements.

Two equivalent descriptions of the equivariant ring of a divisive toric
orbifold are modelled here.  A *section* assigns a ring element to every
vertex and must satisfy a divisibility condition along each edge.  A
*piecewise element* assigns to every face ``F`` a residue modulo the face
ideal ``J_F`` and must be compatible along face inclusions.  ``theory`` is
``"K"`` (Laurent polynomials, Euler class ``1 - x^{-u}``) or ``"H"``
(polynomials, Euler class the linear form of ``u``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .characteristic import CharacteristicPair
from .laurent import (
    GradedPolynomial,
    LaurentPolynomial,
    collapse_exponents,
    euler_class_H,
    euler_class_K,
    substitute_forms,
)
from .polytope import Edge, Face, InvalidFace, SimplePolytope
from .retraction import RetractionSequence, directed_skeleton, enumerate_retractions
from .zlinalg import ZeroVector, is_primitive, kernel_basis, lattice_basis_completion

THEORIES = ("K", "H")


class DegenerateEdge(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class MissingFace(ValueError):
    pass


class NotInGamma(ValueError):
    """A vertex section violates an edge divisibility condition."""

    def __init__(self, message: str, edge: Optional["GKMEdge"] = None):
        super().__init__(message)
        self.edge = edge


class FaceCongruenceError(ValueError):
    """Two vertex values of a face are not congruent modulo its ideal."""

    def __init__(self, message: str, face: Face, vertices: Tuple[int, int]):
        super().__init__(message)
        self.face = face
        self.vertices = vertices


def ring_for(theory: str):
    if theory == "K":
        return LaurentPolynomial
    if theory == "H":
        return GradedPolynomial
    raise ValueError(f"unknown theory {theory!r}; expected one of {THEORIES}")


def euler_class(u: Sequence[int], theory: str) -> LaurentPolynomial:
    return euler_class_K(u) if theory == "K" else euler_class_H(u)


# -- edge characters and the graph -------------------------------------------


def _face_matrix(pair: CharacteristicPair, F: Face) -> List[List[int]]:
    """``n x codim(F)`` matrix with the facet vectors of ``F`` as columns."""
    cols = [pair.lam[i] for i in sorted(F.facet_set)]
    return [[c[r] for c in cols] for r in range(pair.dim)]


def edge_character(pair: CharacteristicPair, E: Union[Face, Edge]) -> Tuple[int, ...]:
    """Primitive generator of the kernel of the edge's facet matrix, leading entry positive."""
    F = E.face if isinstance(E, Edge) else E
    if F.dim != 1:
        raise InvalidFace(f"{pair.polytope.face_name(F)} is not an edge")
    ker = kernel_basis(_face_matrix(pair, F), F.codim)
    if len(ker) != 1:
        raise DegenerateEdge(f"edge {pair.polytope.face_name(F)} has kernel of rank {len(ker)}")
    return tuple(ker[0])


@dataclass(frozen=True)
class GKMEdge:
    a: int
    b: int
    u: Tuple[int, ...]
    name: str = ""


@dataclass(frozen=True)
class GKMGraph:
    """Vertices in retraction order, edges with their characters.

    ``in_neighbors[i]`` lists the positions ``k > i`` in ``order`` joined
    to position ``i`` by an edge.
    """

    rank: int
    vertex_names: Tuple[str, ...]
    order: Tuple[int, ...]
    edges: Tuple[GKMEdge, ...]
    in_neighbors: Tuple[Tuple[int, ...], ...]

    def incident(self, v: int) -> List[GKMEdge]:
        return [e for e in self.edges if v in (e.a, e.b)]

    def edge_between(self, a: int, b: int) -> Optional[GKMEdge]:
        lo, hi = min(a, b), max(a, b)
        for e in self.edges:
            if (e.a, e.b) == (lo, hi):
                return e
        return None


def build_gkm_graph(pair: CharacteristicPair, seq: Optional[RetractionSequence] = None) -> GKMGraph:
    P = pair.polytope
    if seq is None:
        seq = enumerate_retractions(P, cap=1)[0]
    skel = directed_skeleton(seq)
    edges = tuple(GKMEdge(e.a, e.b, edge_character(pair, e), P.face_name(e.face)) for e in P.edges)
    return GKMGraph(pair.dim, P.vertex_names, tuple(seq.vertices), edges, skel.in_neighbors)


def default_graph(pair: CharacteristicPair) -> GKMGraph:
    key = ("gkm_graph",)
    cache = pair._cache
    if key not in cache:
        cache[key] = build_gkm_graph(pair)
    return cache[key]


def _independent(u: Sequence[int], w: Sequence[int]) -> bool:
    n = len(u)
    return any(u[i] * w[j] - u[j] * w[i] for i in range(n) for j in range(i + 1, n))


@dataclass
class CoprimalityVerdict:
    ok: bool
    witness: Optional[Tuple[int, GKMEdge, GKMEdge]] = None


def coprimality_check(graph: GKMGraph) -> CoprimalityVerdict:
    """Incident characters must be pairwise linearly independent at every vertex."""
    for v in graph.order:
        inc = sorted(graph.incident(v), key=lambda e: (e.a, e.b))
        for i in range(len(inc)):
            for j in range(i + 1, len(inc)):
                if not _independent(inc[i].u, inc[j].u):
                    return CoprimalityVerdict(False, (v, inc[i], inc[j]))
    return CoprimalityVerdict(True)


# -- divisibility -------------------------------------------------------------


@lru_cache(maxsize=4096)
def _completion(gens: Tuple[Tuple[int, ...], ...], n: int) -> Tuple[Tuple[Tuple[int, ...], ...], int]:
    _, B_inv, r = lattice_basis_completion([list(g) for g in gens], n)
    return tuple(map(tuple, B_inv)), r


def reduce_mod(f: LaurentPolynomial, gens: Sequence[Sequence[int]], theory: str) -> LaurentPolynomial:
    """Canonical residue of ``f`` modulo the ideal of Euler classes of ``gens``.

    ``gens`` must span a saturated sublattice; then the quotient ring is a
    Laurent (resp. polynomial) ring in ``n - rank`` variables and residues
    compare by equality.
    """
    n = f.nvars
    B_inv, r = _completion(tuple(tuple(int(a) for a in g) for g in gens), n)
    if theory == "K":
        return collapse_exponents(f, B_inv, r)
    return substitute_forms(f, B_inv, r)


def _check_char(u: Sequence[int]) -> None:
    if not any(u):
        raise ZeroVector("zero character")
    if not is_primitive(u):
        raise ValueError(f"character {tuple(u)} is not primitive")


def divisible_K(f: LaurentPolynomial, u: Sequence[int]) -> bool:
    """Whether ``1 - x^{-u}`` divides ``f``; the answer is the same for ``-u``."""
    _check_char(u)
    return reduce_mod(f, [u], "K").is_zero()


def divisible_H(f: LaurentPolynomial, u: Sequence[int]) -> bool:
    """Whether the linear form with coefficients ``u`` divides ``f``."""
    _check_char(u)
    return reduce_mod(f, [u], "H").is_zero()


def divisible(f: LaurentPolynomial, u: Sequence[int], theory: str) -> bool:
    return divisible_K(f, u) if theory == "K" else divisible_H(f, u)


def laurent_divides(divisor: LaurentPolynomial, f: LaurentPolynomial) -> bool:
    """``divisor`` must have the form ``1 - x^{-u}`` with ``u`` primitive."""
    zero = (0,) * divisor.nvars
    others = [e for e in divisor.terms if e != zero]
    if divisor.terms.get(zero) != 1 or len(others) != 1 or divisor.terms[others[0]] != -1:
        raise ValueError(f"divisor {divisor!r} is not of the form 1 - x^(-u)")
    return divisible_K(f, [-a for a in others[0]])


# -- sections -----------------------------------------------------------------


@dataclass(frozen=True)
class Section:
    """One ring element per vertex, indexed like the polytope's vertices."""

    theory: str
    values: Tuple[LaurentPolynomial, ...]

    def __add__(self, other: "Section") -> "Section":
        return Section(self.theory, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other: "Section") -> "Section":
        return Section(self.theory, tuple(a * b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Section") -> "Section":
        return Section(self.theory, tuple(a - b for a, b in zip(self.values, other.values)))

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class SectionVerdict:
    ok: bool
    failing_edge: Optional[GKMEdge] = None
    per_edge: List[Tuple[GKMEdge, bool]] = field(default_factory=list)


def check_section(graph: GKMGraph, s: Section, theory: Optional[str] = None) -> SectionVerdict:
    theory = theory or s.theory
    ring_for(theory)
    if len(s.values) != len(graph.vertex_names):
        raise SizeMismatch(f"section has {len(s.values)} entries for {len(graph.vertex_names)} vertices")
    per_edge = []
    first = None
    for e in sorted(graph.edges, key=lambda e: (e.a, e.b)):
        ok = divisible(s.values[e.a] - s.values[e.b], e.u, theory)
        per_edge.append((e, ok))
        if not ok and first is None:
            first = e
    return SectionVerdict(first is None, first, per_edge)


def check_section_K(graph: GKMGraph, s: Section) -> SectionVerdict:
    return check_section(graph, s, "K")


def check_section_H(graph: GKMGraph, s: Section) -> SectionVerdict:
    return check_section(graph, s, "H")


# -- faces and piecewise elements --------------------------------------------


def face_ideal(pair: CharacteristicPair, F: Face) -> List[Tuple[int, ...]]:
    """Saturated kernel basis of the facet matrix of ``F``: ``dim F`` vectors."""
    if pair.polytope.face_index.get(F) is None:
        raise InvalidFace(f"{F} is not a face")
    key = ("face_ideal", F)
    cache = pair._cache
    if key not in cache:
        gens = kernel_basis(_face_matrix(pair, F), F.codim)
        if len(gens) != F.dim:
            raise InvalidFace(f"{pair.polytope.face_name(F)}: kernel rank {len(gens)} != dim {F.dim}")
        cache[key] = [tuple(g) for g in gens]
    return cache[key]


@dataclass
class PiecewiseElement:
    """A representative per face, read modulo that face's ideal."""

    theory: str
    polytope: SimplePolytope
    values: Dict[Face, LaurentPolynomial]
    generators: Dict[Face, List[Tuple[int, ...]]] = field(default_factory=dict)

    def __add__(self, other: "PiecewiseElement") -> "PiecewiseElement":
        return PiecewiseElement(
            self.theory, self.polytope, {F: a + other.values[F] for F, a in self.values.items()}, self.generators
        )

    def __mul__(self, other: "PiecewiseElement") -> "PiecewiseElement":
        return PiecewiseElement(
            self.theory, self.polytope, {F: a * other.values[F] for F, a in self.values.items()}, self.generators
        )


def residue(pair: CharacteristicPair, F: Face, f: LaurentPolynomial, theory: str) -> LaurentPolynomial:
    return reduce_mod(f, face_ideal(pair, F), theory)


@dataclass
class PiecewiseVerdict:
    ok: bool
    witness: Optional[Tuple[Face, Face]] = None


def check_piecewise(pair: CharacteristicPair, p: PiecewiseElement, theory: Optional[str] = None) -> PiecewiseVerdict:
    """Every face representative must agree with each face it is a facet of,
    modulo the larger face's ideal."""
    theory = theory or p.theory
    ring_for(theory)
    P = pair.polytope
    missing = [F for F in P.faces if F not in p.values]
    if missing:
        raise MissingFace(f"no representative for face {P.face_name(missing[0])}")
    for F, G in P.covering_pairs():
        if not residue(pair, G, p.values[F] - p.values[G], theory).is_zero():
            return PiecewiseVerdict(False, (F, G))
    return PiecewiseVerdict(True)


def piecewise_from_section(
    pair: CharacteristicPair, s: Section, theory: Optional[str] = None, precheck: bool = True
) -> PiecewiseElement:
    """Send a section to the face-indexed element it determines.

    Each face gets the value at its first vertex once all of its vertex
    values are confirmed congruent modulo ``J_F``.  With ``precheck`` the
    edge conditions are verified first and :class:`NotInGamma` is raised on
    failure; without it only the face congruences are examined.
    """
    theory = theory or s.theory
    P = pair.polytope
    if len(s.values) != P.vertex_count:
        raise SizeMismatch(f"section has {len(s.values)} entries for {P.vertex_count} vertices")
    if precheck:
        verdict = check_section(default_graph(pair), s, theory)
        if not verdict.ok:
            e = verdict.failing_edge
            raise NotInGamma(f"edge condition fails on {e.name}", e)
    values: Dict[Face, LaurentPolynomial] = {}
    gens: Dict[Face, List[Tuple[int, ...]]] = {}
    for F in P.faces:
        verts = sorted(F.vertex_set)
        g = face_ideal(pair, F)
        base = reduce_mod(s.values[verts[0]], g, theory)
        for w in verts[1:]:
            if reduce_mod(s.values[w], g, theory) != base:
                raise FaceCongruenceError(
                    f"{P.vertex_names[verts[0]]} and {P.vertex_names[w]} differ modulo J({P.face_name(F)})",
                    F,
                    (verts[0], w),
                )
        values[F] = s.values[verts[0]]
        gens[F] = g
    return PiecewiseElement(theory, P, values, gens)


def section_from_piecewise(p: PiecewiseElement) -> Section:
    P = p.polytope
    return Section(p.theory, tuple(p.values[P.vertex_face(v)] for v in range(P.vertex_count)))


def constant_section(pair: CharacteristicPair, f: Union[int, LaurentPolynomial], theory: str) -> Section:
    ring = ring_for(theory)
    if isinstance(f, int):
        f = ring.constant(pair.dim, f)
    return Section(theory, tuple(f for _ in range(pair.polytope.vertex_count)))
