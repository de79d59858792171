"""Closures, subbrace and ideal predicates, annihilators, subbrace enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import config
from .brace import EngineError, FiniteBrace
from .masks import SubsetMask


class Check(NamedTuple):
    """Outcome of a predicate; ``witness`` is the least violating pair when false."""

    ok: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _first_pair(bad: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> tuple[int, int] | None:
    hits = np.argwhere(bad)
    if not len(hits):
        return None
    # argwhere is row-major; rows/cols are sorted, so the first hit is the least pair
    i, j = hits[0]
    return int(rows[i]), int(cols[j])


def _least(*pairs) -> tuple[int, int] | None:
    found = [p for p in pairs if p is not None]
    return min(found) if found else None


def closure(A: FiniteBrace, S: SubsetMask, kind: str = "brace") -> SubsetMask:
    """<S>, <S>_+ or <S>_. depending on ``kind`` (brace, additive, multiplicative)."""
    return A.close(S.elements, kind)


def is_subbrace(A: FiniteBrace, S: SubsetMask) -> Check:
    els = S.elements
    if 0 not in S:
        return Check(False, (0, 0))
    inside = S.as_bool()
    block = np.ix_(els, els)
    return Check(
        *_verdict(
            _least(
                _first_pair(~inside[A.add[block]], els, els),
                _first_pair(~inside[A.mul[block]], els, els),
            )
        )
    )


def _verdict(witness):
    return (witness is None, witness)


def _lambda_witness(A: FiniteBrace, S: SubsetMask) -> tuple[int, int] | None:
    inside = S.as_bool()
    all_ids = np.arange(A.n)
    return _first_pair(~inside[A.lam[:, S.elements]], all_ids, S.elements)


def is_left_ideal(A: FiniteBrace, S: SubsetMask) -> Check:
    sub = is_subbrace(A, S)
    if not sub:
        return sub
    return Check(*_verdict(_lambda_witness(A, S)))


def _ideal_by_definition(A: FiniteBrace, S: SubsetMask) -> tuple[int, int] | None:
    inside = S.as_bool()
    all_ids, els = np.arange(A.n), S.elements
    conj = A.mul[A.mul[:, els], A.inv[:, None]]  # a s a^-1
    return _least(_lambda_witness(A, S), _first_pair(~inside[conj], all_ids, els))


def _ideal_by_star(A: FiniteBrace, S: SubsetMask) -> tuple[int, int] | None:
    inside = S.as_bool()
    all_ids, els = np.arange(A.n), S.elements
    return _least(
        _first_pair(~inside[A.star_table[:, els]], all_ids, els),
        _first_pair(~inside[A.star_table[els, :]], els, all_ids),
    )


def is_ideal(A: FiniteBrace, S: SubsetMask) -> Check:
    """Ideal test run two ways: lambda-invariant and normal, versus A*I, I*A inside I.

    The witness is the least pair (x, y) with x * y outside S and one of
    x, y in S.
    """
    sub = is_subbrace(A, S)
    if not sub:
        return sub
    by_def = _ideal_by_definition(A, S)
    by_star = _ideal_by_star(A, S)
    if (by_def is None) != (by_star is None):
        raise EngineError(f"ideal criteria disagree on {S!r}: {by_def} vs {by_star}")
    return Check(*_verdict(by_star))


def annihilators(A: FiniteBrace, S: SubsetMask) -> tuple[SubsetMask, SubsetMask, SubsetMask]:
    """(left, right, full) annihilators of a nonempty subset."""
    if not S.bits:
        raise ValueError("annihilators of the empty set are undefined")
    els = S.elements
    left = ~A.star_table[:, els].any(axis=1)
    right = ~A.star_table[els, :].any(axis=0)
    commute = np.all(A.mul[:, els] == A.mul[els, :].T, axis=1)
    return (
        SubsetMask.from_bool(left),
        SubsetMask.from_bool(right),
        SubsetMask.from_bool(left & right & commute),
    )


def socle_fix_centre(A: FiniteBrace) -> tuple[SubsetMask, SubsetMask, SubsetMask]:
    soc, fix, zeta = annihilators(A, A.full_mask())
    if not (is_ideal(A, soc) and is_ideal(A, zeta) and is_left_ideal(A, fix)):
        raise EngineError("socle/centre not ideals or fix not a left ideal")
    return soc, fix, zeta


@dataclass(frozen=True)
class Subbrace:
    """A closed subset together with its (re-derivable) flags."""

    brace: FiniteBrace
    mask: SubsetMask

    @cached_property
    def is_additive_subgroup(self) -> bool:
        return closure(self.brace, self.mask, "additive") == self.mask

    @cached_property
    def is_multiplicative_subgroup(self) -> bool:
        return closure(self.brace, self.mask, "multiplicative") == self.mask

    @cached_property
    def is_lambda_invariant(self) -> bool:
        return _lambda_witness(self.brace, self.mask) is None

    @cached_property
    def is_ideal(self) -> bool:
        return bool(is_ideal(self.brace, self.mask))

    def __len__(self) -> int:
        return len(self.mask)

    def __repr__(self) -> str:
        return f"Subbrace(order={len(self.mask)}, ideal={self.is_ideal}, {self.mask!r})"


def _same_closure_class(A: FiniteBrace, S: SubsetMask, x: int) -> np.ndarray:
    """Elements y with <S, y> = <S, x> for sure: y in kx + S with k a unit mod ord(x)."""
    order = int(A.add_order[x])
    hits = []
    kx = 0
    for k in range(1, order):
        kx = int(A.add[kx, x])
        if math.gcd(k, order) == 1:
            hits.append(A.add[kx, S.elements])
    return np.concatenate(hits) if hits else np.array([x])


def all_subbraces(A: FiniteBrace, cap: int | None = None) -> list[Subbrace]:
    """Every subbrace, found by growing closed sets one generator at a time.

    Sorted by (size, bits).
    """
    config.enforce("subbrace_enumeration", A.n, cap)
    start = A.zero_mask()
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            done = S.as_bool()
            for x in range(A.n):
                if done[x]:
                    continue
                T = A.close(np.append(S.elements, x))
                done[_same_closure_class(A, S, x)] = True
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return [Subbrace(A, m) for m in sorted(found, key=lambda m: m.sort_key)]


def one_generated_subbraces(A: FiniteBrace) -> list[SubsetMask]:
    """The distinct <x> for x in A, sorted by (size, bits)."""
    seen = set()
    done = np.zeros(A.n, dtype=bool)
    zero = A.zero_mask()
    for x in range(A.n):
        if done[x]:
            continue
        T = A.close([x])
        done[_same_closure_class(A, zero, x)] = True
        seen.add(T)
    return sorted(seen, key=lambda m: m.sort_key)


class SylowComponent(NamedTuple):
    prime: int
    mask: SubsetMask
    is_ideal: bool


def sylow_decomposition(A: FiniteBrace) -> tuple[list[SylowComponent], bool]:
    """Additive Sylow subgroups with their ideal status.

    The flag is True when every component is an ideal and A is certified to
    be their direct sum (trivial pairwise intersections, orders multiply to |A|).
    """
    comps = []
    for p in A.primes:
        pk = p ** _valuation(A.n, p)
        mask = SubsetMask.from_bool(pk % A.add_order == 0)
        comps.append(SylowComponent(p, mask, bool(is_ideal(A, mask))))
    direct = all(c.is_ideal for c in comps)
    if direct:
        for i, c in enumerate(comps):
            for d in comps[i + 1 :]:
                if not (c.mask & d.mask).is_trivial():
                    direct = False
        direct = direct and math.prod(len(c.mask) for c in comps) == A.n
    return comps, direct


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def is_normal_subgroup(table: np.ndarray, inv: np.ndarray, S: SubsetMask) -> bool:
    inside = S.as_bool()
    return bool(inside[table[table[:, S.elements], inv[:, None]]].all())


def is_dedekind_group(table: np.ndarray) -> bool:
    """Every subgroup normal; it suffices to test the cyclic subgroups."""
    n = len(table)
    inv = np.empty(n, dtype=np.int64)
    r, c = np.nonzero(table == 0)
    inv[r] = c
    for g in range(n):
        cyc = [0]
        x = g
        while x != 0:
            cyc.append(x)
            x = int(table[x, g])
        if not is_normal_subgroup(table, inv, SubsetMask.from_elements(n, cyc)):
            return False
    return True
