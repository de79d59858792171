"""Extraspecial braces: the bilinear-form construction, the E0/E1/E2 families,
recognition, form extraction and classification of the strong ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .brace import BraceHom, EngineError, FiniteBrace, TupleCodec, cyclic_product_table
from .fp import BilinearForm, FpPoly, is_prime, poly_roots, rank
from .masks import SubsetMask
from .substructures import socle_fix_centre

FAMILIES = ("E0", "E1", "E2")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    m: int
    p: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        low = 1 if self.family == "E0" else 0
        if not low <= self.m < self.p:
            raise ValueError(f"{self.family} needs {low} <= m < p, got m = {self.m}, p = {self.p}")

    @property
    def form(self) -> BilinearForm:
        m, p = self.m, self.p
        if self.family == "E0":
            return BilinearForm(p, ((m,),))
        if self.family == "E1":
            return BilinearForm(p, ((m, 0), (0, 1)))
        return BilinearForm(p, ((m, 1), (0, 1)))

    @property
    def order(self) -> int:
        return self.p ** (2 if self.family == "E0" else 3)

    def __str__(self) -> str:
        return f"{self.family}({self.m},{self.p})"


@dataclass(frozen=True)
class ExtraspecialCertificate:
    c: int
    C: SubsetMask
    strong: bool


def brace_from_form(phi: BilinearForm, name: str | None = None) -> FiniteBrace:
    """V (+) C_p with (x,k)(y,t) = (x+y, k+t+phi(x,y)); element (x_1..x_d, k)."""
    d, p = phi.dim, phi.p
    radices = (p,) * (d + 1)
    codec = TupleCodec(radices)
    add = cyclic_product_table(radices)
    coords = codec.coordinates()
    x = coords[:, :d]
    M = np.array(phi.matrix, dtype=np.int64).reshape(d, d)
    twist = (x @ M @ x.T) % p  # phi(x, y) for every pair
    # the last coordinate has weight 1, so adding phi(x,y) to the sum shifts the id within C
    k_sum = coords[add, d]
    mul = add - k_sum + (k_sum + twist) % p
    return FiniteBrace(add, mul, codec=codec, name=name or f"brace({list(map(list, phi.matrix))} over F{p})", check=False)


def family(spec: FamilySpec) -> FiniteBrace:
    return brace_from_form(spec.form, name=str(spec))


def _is_strong(A: FiniteBrace, C: SubsetMask) -> bool:
    ids = np.arange(A.n)
    outside = ~C.as_bool()
    return bool(np.all(A.star_table[ids, ids][outside] != 0))


def recognize_extraspecial(A: FiniteBrace) -> ExtraspecialCertificate | None:
    """Least central c with A/<c>_+ abelian and nonzero, or None."""
    if A.is_abelian() or not A.is_elementary_abelian():
        return None
    _, _, zeta = socle_fix_centre(A)
    stars = np.unique(A.star_table)
    for c in zeta.elements[1:]:
        C = A.close([int(c)], "additive")
        if C.is_full():
            continue
        if C.as_bool()[stars].all():
            return ExtraspecialCertificate(int(c), C, _is_strong(A, C))
    return None


def _check_certificate(A: FiniteBrace, cert: ExtraspecialCertificate) -> None:
    fresh = recognize_extraspecial(A)
    _, _, zeta = socle_fix_centre(A)
    stars = np.unique(A.star_table)
    if (
        fresh is None
        or cert.c not in zeta
        or A.close([cert.c], "additive") != cert.C
        or not cert.C.as_bool()[stars].all()
        or cert.C.is_full()
    ):
        raise ValueError("stale extraspecial certificate")


def quotient_basis(A: FiniteBrace, cert: ExtraspecialCertificate) -> list[int]:
    """Basis representatives of A/C.

    Candidates are the codec unit vectors (when the codec is additive) and
    then every element in id order; each is kept if it is independent of C
    and of the representatives already kept.
    """
    candidates = []
    if A.codec is not None and A.codec.cyclic:
        candidates += A.codec.units()
    candidates += range(A.n)
    chosen: list[int] = []
    span = cert.C
    for x in candidates:
        if span.is_full():
            break
        if x in span:
            continue
        chosen.append(int(x))
        span = A.close(np.append(span.elements, x), "additive")
    return chosen


def _coordinates(A: FiniteBrace, basis: list[int], c: int, p: int) -> np.ndarray:
    """Row e: coefficients of e in the additive basis (b_1, ..., b_d, c)."""
    d = len(basis)
    coords = np.full((A.n, d + 1), -1, dtype=np.int64)
    multiples = []
    for g in basis + [c]:
        mult = [0]
        for _ in range(p - 1):
            mult.append(int(A.add[mult[-1], g]))
        multiples.append(mult)
    for ks in itertools.product(range(p), repeat=d + 1):
        e = 0
        for k, mult in zip(ks, multiples):
            e = int(A.add[e, mult[k]])
        coords[e] = ks
    if (coords < 0).any():
        raise ValueError("basis does not span A modulo C")
    return coords


def extract_form(A: FiniteBrace, cert: ExtraspecialCertificate, basis: list[int] | None = None) -> BilinearForm:
    """The form phi(xC, yC) = k with x * y = k c, in the chosen basis of A/C.

    Verifies on every pair of elements that x * y depends only on the
    cosets and agrees with the bilinear extension of the matrix.
    """
    _check_certificate(A, cert)
    p = int(A.add_order[cert.c])
    basis = quotient_basis(A, cert) if basis is None else list(basis)
    d = len(basis)
    coords = _coordinates(A, basis, cert.c, p)
    c_coeff = np.zeros(A.n, dtype=np.int64)
    in_c = np.all(coords[:, :d] == 0, axis=1)
    c_coeff[in_c] = coords[in_c, d]
    matrix = tuple(tuple(int(c_coeff[A.star(b, e)]) for e in basis) for b in basis)
    phi = BilinearForm(p, matrix)
    x = coords[:, :d]
    predicted = (x @ np.array(matrix, dtype=np.int64).reshape(d, d) @ x.T) % p
    stars = A.star_table
    if not cert.C.as_bool()[stars].all() or not np.array_equal(c_coeff[stars], predicted):
        raise EngineError("star products are not a bilinear function of the cosets")
    return phi


def _congruence(phi: BilinearForm, psi: BilinearForm):
    """(T, s) with psi(Tx, Ty) = s phi(x, y) for all x, y, T invertible; or None."""
    d, p = phi.dim, phi.p
    P = np.array(phi.matrix, dtype=np.int64).reshape(d, d)
    Q = np.array(psi.matrix, dtype=np.int64).reshape(d, d)
    for entries in itertools.product(range(p), repeat=d * d):
        T = np.array(entries, dtype=np.int64).reshape(d, d)  # column j is the image of e_j
        if rank(T.tolist(), p) < d:
            continue
        lhs = (T.T @ Q @ T) % p
        for s in range(1, p):
            if np.array_equal(lhs, (s * P) % p):
                return T, s
    return None


def classify_strong(E: FiniteBrace) -> tuple[FamilySpec, BraceHom]:
    """First family brace, scanning E0, E1, E2 and m = 1, 2, ..., isomorphic to E.

    Isomorphisms between form braces are (x, k) -> (Tx, sk) with T and s
    carrying one form to a multiple of the other, so the search runs over
    those; the resulting map is checked as a brace isomorphism.
    """
    cert = recognize_extraspecial(E)
    if cert is None or not cert.strong:
        raise ValueError("brace is not strong extraspecial")
    p = int(E.add_order[cert.c])
    if E.n not in (p**2, p**3):
        raise EngineError(f"strong extraspecial brace of order {E.n} > p^3 = {p ** 3}")
    basis = quotient_basis(E, cert)
    phi = extract_form(E, cert, basis)
    coords = _coordinates(E, basis, cert.c, p)
    d = phi.dim
    names = ("E0",) if E.n == p**2 else ("E1", "E2")
    for name in names:
        for m in range(1, p):
            spec = FamilySpec(name, m, p)
            found = _congruence(phi, spec.form)
            if found is None:
                continue
            T, s = found
            target = family(spec)
            image = np.concatenate([(coords[:, :d] @ T.T) % p, (s * coords[:, d:]) % p], axis=1)
            hom = BraceHom(target=target, source=E, mapping=[target.codec.encode(row) for row in image], check=False)
            if not (hom.is_bijective() and hom.is_homomorphism()):
                raise EngineError(f"congruence for {spec} did not give a brace isomorphism")
            return spec, hom
    raise EngineError(
        f"no family matches strong extraspecial brace of order {E.n}; "
        f"mul table {E.mul.tolist()}"
    )


def dedekind_criterion(spec: FamilySpec) -> bool:
    """Polynomial test: E0 always; E1/E2 need m != 0 and mX^2+1 / mX^2+X+1 rootless."""
    if spec.family == "E0":
        return True
    if spec.m == 0:
        return False
    linear = 0 if spec.family == "E1" else 1
    return not poly_roots(FpPoly(spec.p, [1, linear, spec.m]))
