"""The involutive solution of the Yang-Baxter equation attached to a left brace."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .brace import EngineError, FiniteBrace


@dataclass(frozen=True)
class SolutionMap:
    """r(i, j) = (first[i, j], second[i, j]) on a set of size n."""

    n: int
    first: np.ndarray
    second: np.ndarray

    def __post_init__(self):
        for t in (self.first, self.second):
            if t.shape != (self.n, self.n) or t.min() < 0 or t.max() >= self.n:
                raise ValueError("solution tables must be n x n with entries in 0..n-1")
        codes = self.first.astype(np.int64) * self.n + self.second
        if len(np.unique(codes)) != self.n * self.n:
            raise ValueError("r is not a bijection on pairs")

    def __call__(self, i: int, j: int) -> tuple[int, int]:
        return int(self.first[i, j]), int(self.second[i, j])

    @classmethod
    def flip(cls, n: int) -> "SolutionMap":
        i, j = np.indices((n, n))
        return cls(n, j, i)


def associated_solution(A: FiniteBrace) -> SolutionMap:
    """r(x, y) = (u, v) with u = lambda_x(y) and v = lambda_u^{-1}(x).

    Certifies u v = x y on every pair.
    """
    lam = A.lam
    lam_inv = np.argsort(lam, axis=1)  # row a is the inverse permutation of lambda_a
    x, y = np.indices((A.n, A.n))
    u = lam[x, y]
    v = lam_inv[u, x]
    if not np.array_equal(A.mul[u, v], A.mul):
        raise EngineError("associated solution does not preserve products")
    return SolutionMap(A.n, u, v)


@dataclass(frozen=True)
class SolutionReport:
    braid: bool
    involutive: bool
    nondegenerate: bool
    braid_witness: tuple[int, int, int] | None = None
    involutive_witness: tuple[int, int] | None = None
    nondegenerate_witness: tuple[str, int] | None = None

    @property
    def ok(self) -> bool:
        return self.braid and self.involutive and self.nondegenerate


def _braid_witness(r: SolutionMap) -> tuple[int, int, int] | None:
    f, s, n = r.first, r.second, r.n

    def r12(a, b, c):
        return f[a, b], s[a, b], c

    def r23(a, b, c):
        return a, f[b, c], s[b, c]

    y, z = np.indices((n, n))
    for x in range(n):  # one slab of n^2 triples at a time
        xs = np.full_like(y, x)
        left = r12(*r23(*r12(xs, y, z)))
        right = r23(*r12(*r23(xs, y, z)))
        bad = (left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2])
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return x, int(j), int(k)
    return None


def check_solution(r: SolutionMap) -> SolutionReport:
    """Braid relation on all triples, r o r = id, bijective component maps; least witnesses."""
    braid = _braid_witness(r)
    f, s = r.first, r.second
    back_f, back_s = f[f, s], s[f, s]
    i, j = np.indices((r.n, r.n))
    bad = (back_f != i) | (back_s != j)
    invol = tuple(int(t) for t in np.argwhere(bad)[0]) if bad.any() else None
    nondeg = None
    for x in range(r.n):
        # sigma_x = f(x, .) and tau_x = s(., x)
        if len(np.unique(f[x, :])) != r.n:
            nondeg = ("sigma", x)
            break
        if len(np.unique(s[:, x])) != r.n:
            nondeg = ("tau", x)
            break
    return SolutionReport(braid is None, invol is None, nondeg is None, braid, invol, nondeg)
