"""Linear algebra over prime fields F_p.

Scalars are plain ints reduced into ``range(p)``; vectors are tuples of
such ints. The modulus travels with the containing object (a form, a
subspace, a polynomial), never with individual scalars.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]


class FieldError(ValueError):
    """Dimension or modulus mismatch, or an invalid field object."""


class TriangularizationError(ValueError):
    """Raised when a form has a nonzero isotropic vector."""

    def __init__(self, vector: Vector):
        super().__init__(f"isotropic vector {vector}: no triangular basis is guaranteed")
        self.vector = vector


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise FieldError(f"modulus {p} is not prime")


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def all_vectors(p: int, d: int) -> Iterator[Vector]:
    """Every vector of F_p^d in lexicographic order."""
    return itertools.product(range(p), repeat=d)


def rref(rows: Iterable[Sequence[int]], p: int) -> tuple[Vector, ...]:
    """Reduced row echelon form of ``rows`` mod p, zero rows dropped."""
    mat = [[x % p for x in r] for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next((i for i in range(pivot_row, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        inv = inverse(mat[pivot_row][col], p)
        mat[pivot_row] = [x * inv % p for x in mat[pivot_row]]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row])


def rank(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(rows, p))


def null_space(rows: Sequence[Sequence[int]], p: int, ncols: int) -> tuple[Vector, ...]:
    """Basis (in RREF) of ``{x : r . x = 0 for every r in rows}``."""
    reduced = rref(rows, p)
    pivots = []
    for r in reduced:
        pivots.append(next(i for i, x in enumerate(r) if x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(reduced, pivots):
            v[pc] = -r[f] % p
        basis.append(v)
    return rref(basis, p)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^d stored by its canonical RREF basis."""

    p: int
    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, p: int, ambient_dim: int, vectors: Iterable[Sequence[int]] = ()) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise FieldError(f"vector {v} does not live in F_{p}^{ambient_dim}")
        return cls(p, ambient_dim, rref(vectors, p))

    @classmethod
    def full(cls, p: int, d: int) -> "Subspace":
        return cls.span(p, d, [tuple(int(i == j) for j in range(d)) for i in range(d)])

    @classmethod
    def zero(cls, p: int, d: int) -> "Subspace":
        return cls(p, d, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        return rank(self.basis + (tuple(v),), self.p) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(v in other for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.p, self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        # x in both <=> x annihilated by both orthogonal complements (standard dot product)
        rows = null_space(self.basis, self.p, self.ambient_dim) + null_space(
            other.basis, self.p, self.ambient_dim
        )
        return Subspace(self.p, self.ambient_dim, null_space(rows, self.p, self.ambient_dim))

    def vectors(self) -> Iterator[Vector]:
        for coeffs in all_vectors(self.p, self.dim):
            v = [0] * self.ambient_dim
            for c, b in zip(coeffs, self.basis):
                for i, x in enumerate(b):
                    v[i] = (v[i] + c * x) % self.p
            yield tuple(v)


def all_subspaces(p: int, d: int) -> list[Subspace]:
    """Every subspace of F_p^d (brute force; desk-scale only)."""
    seen = {Subspace.zero(p, d)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for U in frontier:
            for v in all_vectors(p, d):
                if v in U:
                    continue
                W = Subspace.span(p, d, U.basis + (v,))
                if W not in seen:
                    seen.add(W)
                    nxt.append(W)
        frontier = nxt
    return sorted(seen, key=lambda U: (U.dim, U.basis))


@dataclass(frozen=True)
class BilinearForm:
    """Bilinear form on F_p^d; ``matrix[i][j]`` is phi(e_i, e_j)."""

    p: int
    matrix: tuple[Vector, ...]

    def __post_init__(self):
        _check_prime(self.p)
        m = tuple(tuple(int(x) % self.p for x in row) for row in self.matrix)
        if any(len(row) != len(m) for row in m):
            raise FieldError("form matrix must be square")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def diag(cls, p: int, *entries: int) -> "BilinearForm":
        d = len(entries)
        return cls(p, tuple(tuple(entries[i] if i == j else 0 for j in range(d)) for i in range(d)))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> int:
        return form_eval(self, x, y)

    def gram(self, basis: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
        """Matrix of the form in the given (ordered) basis."""
        return tuple(tuple(form_eval(self, b, c) for c in basis) for b in basis)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)


def form_eval(phi: BilinearForm, x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != phi.dim or len(y) != phi.dim:
        raise FieldError(f"vectors of length {len(x)}, {len(y)} for a form of dimension {phi.dim}")
    p = phi.p
    total = 0
    for i, xi in enumerate(x):
        if xi % p:
            row = phi.matrix[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y))
    return total % p


def _check_space(phi: BilinearForm, U: Subspace) -> None:
    if U.p != phi.p or U.ambient_dim != phi.dim:
        raise FieldError(f"subspace of F_{U.p}^{U.ambient_dim} used with a form on F_{phi.p}^{phi.dim}")


def orthogonal(phi: BilinearForm, U: Subspace, side: str = "left") -> Subspace:
    """Left complement {x : phi(x,u)=0 for u in U} or the right one {x : phi(u,x)=0}."""
    _check_space(phi, U)
    d, p, M = phi.dim, phi.p, phi.matrix
    if side == "left":
        # phi(x, u) = sum_i x_i (M u)_i
        rows = [tuple(sum(M[i][j] * u[j] for j in range(d)) % p for i in range(d)) for u in U.basis]
    elif side == "right":
        rows = [tuple(sum(u[i] * M[i][j] for i in range(d)) % p for j in range(d)) for u in U.basis]
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return Subspace(p, d, null_space(rows, p, d))


def radical(phi: BilinearForm, side: str = "right") -> Subspace:
    """V-perp (``side='right'``) or perp-V (``side='left'``)."""
    return orthogonal(phi, Subspace.full(phi.p, phi.dim), side)


def is_nondegenerate(phi: BilinearForm, U: Subspace | None = None) -> bool:
    """Whether the restriction of phi to U (default: the whole space) has trivial radical."""
    if U is None:
        U = Subspace.full(phi.p, phi.dim)
    _check_space(phi, U)
    return rank(phi.gram(U.basis), phi.p) == U.dim


def find_isotropic(phi: BilinearForm) -> Vector | None:
    """Lexicographically first x != 0 with phi(x, x) = 0, or None."""
    for v in all_vectors(phi.p, phi.dim):
        if any(v) and form_eval(phi, v, v) == 0:
            return v
    return None


def is_strong_nondegenerate(phi: BilinearForm) -> bool:
    return find_isotropic(phi) is None


def triangularize(phi: BilinearForm) -> list[Vector]:
    """Basis b_1..b_d with phi(b_i, b_j) = 0 whenever i > j.

    Takes the least nonzero vector u of the current subspace W and recurses
    on W intersected with the left complement of <u>.
    """
    iso = find_isotropic(phi)
    if iso is not None:
        raise TriangularizationError(iso)
    p, d = phi.p, phi.dim
    W = Subspace.full(p, d)
    basis: list[Vector] = []
    while W.dim:
        u = next(v for v in all_vectors(p, d) if any(v) and v in W)
        basis.append(u)
        W = W.intersection(orthogonal(phi, Subspace.span(p, d, [u]), "left"))
    return basis


class FpPoly:
    """Polynomial over F_p with ascending coefficients."""

    def __init__(self, p: int, coeffs: Sequence[int]):
        _check_prime(p)
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __eq__(self, other):
        return isinstance(other, FpPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"FpPoly(p={self.p}, coeffs={list(self.coeffs)})"


def poly_roots(f: FpPoly) -> set[int]:
    if f.is_zero():
        raise FieldError("the zero polynomial vanishes everywhere")
    return {x for x in range(f.p) if f(x) == 0}
