"""Exact integer linear algebra on lists of Python ints.

Matrices are plain ``list[list[int]]`` in row-major order.  A few routines
need the column count of a matrix with no rows, so they take it explicitly.
Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]
Vector = List[int]


class ZeroVector(ValueError):
    """Raised when an operation needs a nonzero integer vector."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: Optional[int] = None) -> Matrix:
    """Product of integer matrices; ``inner`` disambiguates 0-column ``A``."""
    if inner is None:
        inner = len(A[0]) if A else len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def vecmat(x: Sequence[int], A: Sequence[Sequence[int]]) -> Vector:
    """Row vector times matrix."""
    cols = len(A[0]) if A else 0
    return [sum(x[k] * A[k][j] for k in range(len(x))) for j in range(cols)]


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    return [[A[i][j] for i in range(len(A))] for j in range(ncols)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group in invariant-factor form ``Z/d1 + ... + Z/dr``.

    Unit factors are dropped, so the trivial group has no factors.
    """

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_diagonal(cls, diagonal: Sequence[int]) -> "FiniteAbelianGroup":
        return cls(tuple(abs(d) for d in diagonal if abs(d) > 1))

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if self.is_trivial:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    ``U_inv`` and ``V_inv`` are carried along so callers never need to invert
    an integer matrix themselves.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix = field(repr=False)
    V_inv: Matrix = field(repr=False)

    @property
    def diagonal(self) -> List[int]:
        r = min(len(self.D), len(self.V))
        return [self.D[i][i] for i in range(r)]

    @property
    def invariant_factors(self) -> List[int]:
        return [d for d in self.diagonal if d != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form by elementary row/column operations.

    Pivots are chosen by minimal absolute value in the trailing submatrix,
    scanning row-major, so the output is a deterministic function of ``A``.
    """
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    D = [list(map(int, row)) for row in A]
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    def add_row(dst, src, c):
        # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        for row in U_inv:
            row[src] -= c * row[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        V_inv[src] = [a - c * b for a, b in zip(V_inv[src], V_inv[dst])]

    def swap_rows(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in U_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in U_inv:
            row[i] = -row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = D[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                break
            swap_rows(t, best[1])
            swap_cols(t, best[2])
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if p < 0:
                negate_row(t)
            break
    return SmithForm(U, D, V, U_inv, V_inv)


def hermite_rows(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped, pivots are positive and entries above a pivot lie
    in ``[0, pivot)``.
    """
    M = [list(map(int, r)) for r in rows]
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    r = 0
    for c in range(n):
        if r >= len(M):
            break
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(M[i][c]), i))
            M[r], M[k] = M[k], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
    return [row for row in M if any(row)]


def primitive_part(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its entries, keeping the sign."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        raise ZeroVector("primitive part of the zero vector is undefined")
    return [a // g for a in v]


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g == 1


def normalize_sign(v: Sequence[int]) -> Vector:
    """Flip ``v`` so its first nonzero coordinate is positive."""
    for a in v:
        if a:
            return list(v) if a > 0 else [-b for b in v]
    return list(v)


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis of ``{x : x @ A == 0}`` for an ``n x c`` matrix ``A``.

    The returned basis spans a direct summand of ``Z^n`` and is in row
    Hermite form, so every vector is primitive with a positive leading entry.
    """
    n = len(A)
    snf = smith_normal_form(A, ncols)
    return hermite_rows(snf.U[snf.rank:], n)


def saturate(L: Sequence[Sequence[int]], n: Optional[int] = None) -> Matrix:
    """Basis of the smallest direct summand of ``Z^n`` containing ``span(L)``."""
    if n is None:
        n = len(L[0]) if L else 0
    if not L:
        return []
    snf = smith_normal_form(L, n)
    return hermite_rows(snf.V_inv[: snf.rank], n)


def quotient_invariants(n: int, L: Sequence[Sequence[int]]) -> Tuple[FiniteAbelianGroup, int]:
    """Torsion subgroup and free rank of ``Z^n / span(L)``."""
    if not L:
        return FiniteAbelianGroup(), n
    snf = smith_normal_form(L, n)
    return FiniteAbelianGroup.from_diagonal(snf.invariant_factors), n - snf.rank


def lattice_basis_completion(L: Sequence[Sequence[int]], n: int) -> Tuple[Matrix, Matrix, int]:
    """Unimodular ``B`` whose first ``r`` rows span the saturation of ``L``.

    Returns ``(B, B_inv, r)``.  Coordinates of a row vector ``x`` in the
    basis given by the rows of ``B`` are ``x @ B_inv``; dropping the first
    ``r`` of them realizes the projection ``Z^n -> Z^n / saturate(L)``.
    """
    if not L:
        return identity(n), identity(n), 0
    snf = smith_normal_form(L, n)
    return snf.V_inv, snf.V, snf.rank


def rank(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> int:
    return smith_normal_form(A, ncols).rank
