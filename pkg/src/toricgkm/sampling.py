"""Random sections for property tests.

Every element of the section ring produced here is built from *face bumps*:
for a face ``F`` and a ring element ``g``, the section equal to
``g * prod e(u_E)`` on the vertices of ``F`` and zero elsewhere, where the
product runs over the edges with exactly one endpoint in ``F``.  Along an
edge inside ``F`` or away from it the difference vanishes; along a leaving
edge it carries that edge's own Euler class.  Constants (``F = Q``) and
single-vertex Thom classes (``F`` a vertex) are special cases, and sums
and products of bumps stay in the ring.
"""

from __future__ import annotations

import random
from typing import Optional

from .characteristic import CharacteristicPair
from .gkm import GKMGraph, Section, default_graph, euler_class, ring_for
from .laurent import LaurentPolynomial
from .polytope import Face


def random_polynomial(rng: random.Random, n: int, theory: str, max_terms: int = 2, spread: int = 1) -> LaurentPolynomial:
    ring = ring_for(theory)
    lo = -spread if theory == "K" else 0
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(lo, spread) for _ in range(n))
        terms.append((e, rng.choice((-2, -1, 1, 2))))
    return ring(n, terms)


def face_bump(pair: CharacteristicPair, F: Face, g: LaurentPolynomial, theory: str,
              graph: Optional[GKMGraph] = None) -> Section:
    graph = graph or default_graph(pair)
    ring = ring_for(theory)
    h = g
    for e in graph.edges:
        if (e.a in F.vertex_set) != (e.b in F.vertex_set):
            h = h * euler_class(e.u, theory)
    zero = ring.zero(pair.dim)
    return Section(theory, tuple(h if v in F.vertex_set else zero for v in range(pair.polytope.vertex_count)))


def random_gamma_element(pair: CharacteristicPair, theory: str, rng: random.Random, bumps: int = 3) -> Section:
    """A random element of the section ring (valid by construction)."""
    P = pair.polytope
    out = face_bump(pair, P.whole, random_polynomial(rng, pair.dim, theory), theory)
    for _ in range(rng.randint(1, bumps)):
        F = rng.choice(P.faces)
        out = out + face_bump(pair, F, random_polynomial(rng, pair.dim, theory), theory)
    return out


def perturb_vertex(s: Section, rng: random.Random, vertex: Optional[int] = None, c: Optional[int] = None) -> Section:
    """Add a nonzero constant at one vertex; this always leaves the ring."""
    vertex = rng.randrange(len(s.values)) if vertex is None else vertex
    c = rng.choice((-2, -1, 1, 2)) if c is None else c
    vals = list(s.values)
    vals[vertex] = vals[vertex] + c
    return Section(s.theory, tuple(vals))


def random_section(pair: CharacteristicPair, theory: str, rng: random.Random) -> Section:
    """Unconstrained random section; almost never in the ring."""
    return Section(theory, tuple(random_polynomial(rng, pair.dim, theory) for _ in range(pair.polytope.vertex_count)))


def random_trial_section(pair: CharacteristicPair, theory: str, rng: random.Random) -> Section:
    """Mix of valid, perturbed and unconstrained sections for equivalence trials."""
    kind = rng.random()
    s = random_gamma_element(pair, theory, rng)
    if kind < 0.5:
        return s
    if kind < 0.8:
        return perturb_vertex(s, rng)
    return random_section(pair, theory, rng)
