"""Shared fixtures and slow-but-obvious reference implementations used as oracles."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from bracelab.extraspecial import FamilySpec, family

settings.register_profile("bracelab", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("bracelab")


# -- pure-Python oracles ---------------------------------------------------------


def naive_is_brace(add, mul) -> bool:
    n = len(add)
    add = [list(map(int, r)) for r in add]
    mul = [list(map(int, r)) for r in mul]
    neg = [next(b for b in range(n) if add[a][b] == 0) for a in range(n)]
    for t in (add, mul):
        if any(t[0][x] != x or t[x][0] != x for x in range(n)):
            return False
        if any(sorted(row) != list(range(n)) for row in t):
            return False
        if any(sorted(t[i][j] for i in range(n)) != list(range(n)) for j in range(n)):
            return False
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                return False
    if any(add[a][b] != add[b][a] for a in range(n) for b in range(n)):
        return False
    for a, b, c in itertools.product(range(n), repeat=3):
        if mul[a][add[b][c]] != add[add[mul[a][b]][mul[a][c]]][neg[a]]:
            return False
    return True


def naive_star(A, a, b) -> int:
    ab = int(A.mul[a, b])
    return int(A.add[A.add[ab, A.neg[a]], A.neg[b]])


def naive_closure(A, elements) -> frozenset[int]:
    S = {0, *map(int, elements)}
    while True:
        new = {int(A.add[x, y]) for x in S for y in S} | {int(A.mul[x, y]) for x in S for y in S}
        if new <= S:
            return frozenset(S)
        S |= new


def naive_is_ideal(A, S) -> bool:
    """Definition: additive and multiplicative subgroup, lambda-invariant, normal in (A,.)."""
    S = set(map(int, S))
    n = A.n
    if 0 not in S or any(int(A.add[x, y]) not in S or int(A.mul[x, y]) not in S for x in S for y in S):
        return False
    inv = [next(b for b in range(n) if A.mul[a, b] == 0) for a in range(n)]
    for a in range(n):
        for s in S:
            lam = int(A.add[A.mul[a, s], A.neg[a]])
            if lam not in S or int(A.mul[A.mul[a, s], inv[a]]) not in S:
                return False
    return True


def naive_subbraces(A) -> set[frozenset[int]]:
    out = set()
    for bits in range(1 << (A.n - 1)):
        S = {0} | {i + 1 for i in range(A.n - 1) if bits >> i & 1}
        if all(int(A.add[x, y]) in S and int(A.mul[x, y]) in S for x in S for y in S):
            out.add(frozenset(S))
    return out


def naive_isomorphic(A, B) -> bool:
    """Try every bijection fixing 0 (tiny orders only)."""
    if A.n != B.n:
        return False
    for rest in itertools.permutations(range(1, A.n)):
        f = np.array((0,) + rest)
        if np.array_equal(f[A.add], B.add[f[:, None], f[None, :]]) and np.array_equal(
            f[A.mul], B.mul[f[:, None], f[None, :]]
        ):
            return True
    return False


# -- fixtures ---------------------------------------------------------------------


@pytest.fixture(scope="session")
def e013():
    return family(FamilySpec("E0", 1, 3))


@pytest.fixture(scope="session")
def e012():
    return family(FamilySpec("E0", 1, 2))


@pytest.fixture(scope="session")
def e115():
    return family(FamilySpec("E1", 1, 5))


@pytest.fixture(scope="session")
def e125():
    return family(FamilySpec("E1", 2, 5))
