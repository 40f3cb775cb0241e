"""Sparse Laurent and ordinary polynomials over Z.

A polynomial in ``n`` variables is a dict from exponent tuples to nonzero
integer coefficients.  :class:`LaurentPolynomial` allows negative
exponents (the representation ring of a torus); :class:`GradedPolynomial`
does not (equivariant cohomology of a point).
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]


class LaurentPolynomial:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Union[Mapping[Sequence[int], int], Iterable[Tuple[Sequence[int], int]]] = ()):
        acc: Dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(a) for a in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
            acc[e] = acc.get(e, 0) + int(c)
        self.nvars = nvars
        self.terms: Dict[Exponent, int] = {e: c for e, c in acc.items() if c}
        self._hash = None
        self._check()

    def _check(self) -> None:
        pass

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, int]):
        out = cls.__new__(cls)
        out.nvars = nvars
        out.terms = terms
        out._hash = None
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: int):
        return cls._raw(nvars, {(0,) * nvars: int(c)} if c else {})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: int = 1):
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, nvars: int, i: int):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = self.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.constant(self.nvars, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- serialization ------------------------------------------------------

    def to_terms(self) -> List[dict]:
        return [{"exp": list(e), "coef": c} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_terms(cls, nvars: int, items: Iterable[Mapping]):
        return cls(nvars, [(t["exp"], t["coef"]) for t in items])

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}" for i, a in enumerate(e) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class GradedPolynomial(LaurentPolynomial):
    """Polynomial with nonnegative exponents."""

    __slots__ = ()

    def _check(self) -> None:
        for e in self.terms:
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent {e} in an ordinary polynomial")


def euler_class_K(u: Sequence[int]) -> LaurentPolynomial:
    """``1 - x^{-u}``."""
    if not any(u):
        from .zlinalg import ZeroVector

        raise ZeroVector("the Euler class of the trivial character is zero")
    n = len(u)
    return LaurentPolynomial(n, {(0,) * n: 1, tuple(-a for a in u): -1})


def euler_class_H(u: Sequence[int]) -> GradedPolynomial:
    """The linear form ``u_1 x_1 + ... + u_n x_n``."""
    if not any(u):
        from .zlinalg import ZeroVector

        raise ZeroVector("the Euler class of the trivial character is zero")
    n = len(u)
    return GradedPolynomial(n, [(tuple(int(i == j) for j in range(n)), a) for i, a in enumerate(u) if a])


def collapse_exponents(f: LaurentPolynomial, basis_inv: Sequence[Sequence[int]], k: int) -> LaurentPolynomial:
    """Image of ``f`` in ``Z[Z^n / L]`` where ``L`` is spanned by the first
    ``k`` rows of the unimodular basis inverse to ``basis_inv``.

    Each exponent is written in that basis and its first ``k`` coordinates
    are dropped, so coefficients of exponents in the same coset add up.
    """
    n = f.nvars
    out: Dict[Exponent, int] = {}
    for e, c in f.terms.items():
        coords = tuple(sum(e[i] * basis_inv[i][j] for i in range(n)) for j in range(k, n))
        out[coords] = out.get(coords, 0) + c
    return LaurentPolynomial._raw(n - k, {e: c for e, c in out.items() if c})


def substitute_forms(f: LaurentPolynomial, basis_inv: Sequence[Sequence[int]], k: int) -> GradedPolynomial:
    """Image of a polynomial ``f`` modulo the linear forms of the first ``k``
    rows of the unimodular basis inverse to ``basis_inv``.

    With new variables ``y = B x`` the forms become ``y_1..y_k``; the residue
    is ``f`` rewritten in ``y`` with those set to zero.
    """
    n = f.nvars
    m = n - k
    # x_j = sum_{i >= k} basis_inv[j][i] * y_i
    subs = [
        GradedPolynomial._raw(
            m,
            {tuple(int(a == b) for b in range(m)): basis_inv[j][k + a] for a in range(m) if basis_inv[j][k + a]},
        )
        for j in range(n)
    ]
    out = GradedPolynomial.zero(m)
    powers: Dict[Tuple[int, int], GradedPolynomial] = {}
    for e, c in f.terms.items():
        term = GradedPolynomial.constant(m, c)
        for j, a in enumerate(e):
            if a:
                if (j, a) not in powers:
                    powers[(j, a)] = subs[j] ** a
                term = term * powers[(j, a)]
        out = out + term
    return out
