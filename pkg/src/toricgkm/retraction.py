"""Retraction sequences of simple polytopes and divisiveness certificates."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import _backend
from .characteristic import CharacteristicPair, local_group
from .polytope import Face, SimplePolytope
from .zlinalg import FiniteAbelianGroup

DEFAULT_BUDGET = 1_000_000
BUDGET_ENV = "TORICGKM_BUDGET"


class NotFreeVertex(ValueError):
    pass


class InvalidRetraction(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class Subcomplex:
    """A subcomplex of the face lattice, closed under taking faces.

    ``removed`` lists the vertices already retracted away, in order.
    """

    faces: FrozenSet[Face]
    removed: Tuple[int, ...] = ()

    @classmethod
    def full(cls, P: SimplePolytope) -> "Subcomplex":
        return cls(frozenset(P.faces))

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(next(iter(F.vertex_set)) for F in self.faces if F.dim == 0)

    def maximal_faces(self) -> List[Face]:
        out = [F for F in self.faces if not any(F.vertex_set < G.vertex_set for G in self.faces)]
        return sorted(out, key=lambda F: (-F.dim, sorted(F.vertex_set)))

    def is_empty(self) -> bool:
        return not self.faces


def free_face(B: Subcomplex, v: int) -> Optional[Face]:
    """The unique maximal face of ``B`` at ``v``, or None if ``v`` is not free."""
    star = [F for F in B.faces if v in F.vertex_set]
    if not star:
        return None
    top = max(star, key=lambda F: len(F.vertex_set))
    if all(F.vertex_set <= top.vertex_set for F in star):
        return top
    return None


def free_vertices(B: Subcomplex) -> List[int]:
    return [v for v in sorted(B.vertices) if free_face(B, v) is not None]


def retraction_step(B: Subcomplex, v: int) -> Tuple[Face, Subcomplex]:
    P = free_face(B, v)
    if P is None:
        raise NotFreeVertex(f"vertex {v} is not free in the subcomplex")
    rest = frozenset(F for F in B.faces if v not in F.vertex_set)
    return P, Subcomplex(rest, B.removed + (v,))


@dataclass(frozen=True)
class RetractionStep:
    subcomplex: Subcomplex
    face: Face
    vertex: int


@dataclass(frozen=True)
class RetractionSequence:
    """Vertices in retraction order with the maximal face used at each step."""

    polytope: SimplePolytope
    vertices: Tuple[int, ...]
    faces: Tuple[Face, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def steps(self) -> Tuple[RetractionStep, ...]:
        B = Subcomplex.full(self.polytope)
        out = []
        for v, P in zip(self.vertices, self.faces):
            out.append(RetractionStep(B, P, v))
            _, B = retraction_step(B, v)
        return tuple(out)

    @property
    def dims(self) -> List[int]:
        return [F.dim for F in self.faces]

    def names(self) -> List[Tuple[str, str]]:
        P = self.polytope
        return [(P.face_name(F), P.vertex_names[v]) for F, v in zip(self.faces, self.vertices)]


def sequence_from_order(P: SimplePolytope, order: Sequence[int]) -> RetractionSequence:
    """Replay a vertex order, checking that every step removes a free vertex."""
    B = Subcomplex.full(P)
    faces = []
    for v in order:
        try:
            F, B = retraction_step(B, v)
        except NotFreeVertex:
            raise InvalidRetraction(f"{P.vertex_names[v]} is not free at step {len(faces) + 1}") from None
        faces.append(F)
    if B.faces or sorted(order) != list(range(P.vertex_count)):
        raise InvalidRetraction("sequence does not retract the polytope to a single vertex")
    return RetractionSequence(P, tuple(order), tuple(faces))


def sequence_from_steps(P: SimplePolytope, steps: Iterable[Tuple[Face, int]]) -> RetractionSequence:
    """Validate explicit ``(face, vertex)`` steps, e.g. a published sequence."""
    steps = list(steps)
    seq = sequence_from_order(P, [v for _, v in steps])
    for i, ((F, v), G) in enumerate(zip(steps, seq.faces)):
        if F != G:
            raise InvalidRetraction(
                f"step {i + 1}: maximal face at {P.vertex_names[v]} is {P.face_name(G)}, not {P.face_name(F)}"
            )
    return seq


def _face_masks(P: SimplePolytope) -> List[int]:
    return [sum(1 << v for v in F.vertex_set) for F in P.faces]


def _to_sequences(P: SimplePolytope, raw) -> List[RetractionSequence]:
    faces = P.faces
    return [RetractionSequence(P, tuple(v for v, _ in r), tuple(faces[f] for _, f in r)) for r in raw]


def enumerate_retractions(P: SimplePolytope, cap: int = 0, budget: int = 0) -> List[RetractionSequence]:
    """All retraction sequences in depth-first order, vertices tried by index.

    ``cap`` truncates the list; ``budget`` bounds the number of search steps
    and raises :class:`SearchBudgetExceeded` when hit.
    """
    raw, _, aborted = _backend.search(_face_masks(P), P.vertex_count, None, cap, budget)
    if aborted:
        raise SearchBudgetExceeded(f"retraction enumeration exceeded {budget} steps")
    return _to_sequences(P, raw)


def count_retractions(P: SimplePolytope) -> int:
    raw, _, _ = _backend.search(_face_masks(P), P.vertex_count)
    return len(raw)


@dataclass
class DivisiveSearch:
    """Outcome of the divisiveness search.

    ``certificate`` is None when no sequence exists (``decided``) or when the
    node budget ran out first (not ``decided``).
    """

    certificate: Optional[RetractionSequence]
    decided: bool
    nodes: int
    reason: str = ""

    @property
    def status(self) -> str:
        if self.certificate is not None:
            return "DIVISIVE"
        return "NONE" if self.decided else "UNDECIDED"


def admissible_table(pair: CharacteristicPair) -> bytearray:
    """``table[f * m + v]`` is 1 iff ``G_F(v)`` is trivial for face ``f`` and vertex ``v``."""
    P = pair.polytope
    m = P.vertex_count
    table = bytearray(len(P.faces) * m)
    for f, F in enumerate(P.faces):
        for v in F.vertex_set:
            table[f * m + v] = local_group(pair, F, v).is_trivial
    return table


def find_divisive_sequence(pair: CharacteristicPair, budget: Optional[int] = None) -> DivisiveSearch:
    P = pair.polytope
    m = P.vertex_count
    if budget is None:
        budget = default_budget()
    table = admissible_table(pair)
    raw, nodes, aborted = _backend.search(_face_masks(P), m, bytes(table), 1, budget)
    if raw:
        return DivisiveSearch(_to_sequences(P, raw)[0], True, nodes)
    if aborted:
        return DivisiveSearch(None, False, nodes, f"node budget {budget} exhausted")
    whole = P.face_index[P.whole]
    if m > 1 and not any(table[whole * m + v] for v in range(m)):
        reason = "no admissible starting vertex"
    else:
        reason = "every retraction meets a nontrivial local group"
    return DivisiveSearch(None, True, nodes, reason)


def is_divisive(pair: CharacteristicPair, budget: Optional[int] = None) -> Optional[RetractionSequence]:
    """First certificate in search order, or None if the pair is not divisive."""
    res = find_divisive_sequence(pair, budget)
    if not res.decided:
        raise SearchBudgetExceeded(res.reason)
    return res.certificate


def certificate_groups(pair: CharacteristicPair, seq: RetractionSequence) -> List[FiniteAbelianGroup]:
    """Local group ``G_{P_i}(v_i)`` at every step of ``seq``."""
    return [local_group(pair, F, v) for F, v in zip(seq.faces, seq.vertices)]


def check_certificate(pair: CharacteristicPair, seq: RetractionSequence) -> bool:
    groups = certificate_groups(pair, seq)
    return all(G.is_trivial for G in groups[:-1])


@dataclass(frozen=True)
class DirectedSkeleton:
    """1-skeleton oriented from later to earlier vertices of a retraction.

    ``in_neighbors[i]`` holds the positions ``k > i`` joined to position
    ``i`` by an edge, so ``len(in_neighbors[i])`` is the in-degree there.
    """

    order: Tuple[int, ...]
    arcs: Tuple[Tuple[int, int], ...]
    in_neighbors: Tuple[Tuple[int, ...], ...]

    @property
    def in_degrees(self) -> List[int]:
        return [len(s) for s in self.in_neighbors]


def directed_skeleton(seq: RetractionSequence) -> DirectedSkeleton:
    P = seq.polytope
    pos = {v: i for i, v in enumerate(seq.vertices)}
    arcs = []
    nbrs: Dict[int, List[int]] = {i: [] for i in range(len(seq))}
    for e in P.edges:
        i, j = sorted((pos[e.a], pos[e.b]))
        arcs.append((j, i))
        nbrs[i].append(j)
    return DirectedSkeleton(
        tuple(seq.vertices),
        tuple(sorted(arcs)),
        tuple(tuple(sorted(nbrs[i])) for i in range(len(seq))),
    )


def cell_dimensions(seq: RetractionSequence) -> List[int]:
    return sorted(seq.dims, reverse=True)


def cell_counts(seq: RetractionSequence) -> List[int]:
    """``c_k`` = number of steps whose face has dimension ``k``."""
    c = [0] * (seq.polytope.dim + 1)
    for d in seq.dims:
        c[d] += 1
    return c
