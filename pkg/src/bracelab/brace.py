"""Finite left braces as pairs of operation tables.

A left brace is a set with an abelian group ``+`` and a group ``.`` sharing
the identity 0 and satisfying ``a(b+c) = ab + ac - a``. Elements are the ids
``0..n-1``; the tables are read-only ``numpy`` arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import config
from .masks import SubsetMask


class BraceValidationError(ValueError):
    """Input tables do not define a left brace."""


class AdditiveGroupError(BraceValidationError):
    pass


class MultiplicativeGroupError(BraceValidationError):
    pass


class IdentityMismatchError(BraceValidationError):
    pass


class BraceLawError(BraceValidationError):
    def __init__(self, witness: tuple[int, int, int]):
        a, b, c = witness
        super().__init__(f"a(b+c) != ab + ac - a for (a, b, c) = {witness}")
        self.witness = witness


class EngineError(RuntimeError):
    """Two criteria that must agree did not. Always a bug, never a result."""


@dataclass(frozen=True)
class TupleCodec:
    """Mixed-radix labelling of element ids; the first coordinate is most significant.

    When ``cyclic`` is true the coordinates are additive: the brace's sum is
    coordinatewise addition modulo the radices.
    """

    radices: tuple[int, ...]
    cyclic: bool = True

    @property
    def size(self) -> int:
        return math.prod(self.radices)

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.radices):
            raise ValueError(f"expected {len(self.radices)} coordinates, got {len(coords)}")
        idx = 0
        for k, r in zip(coords, self.radices):
            idx = idx * r + (int(k) % r)
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for r in reversed(self.radices):
            idx, k = divmod(idx, r)
            out.append(k)
        return tuple(reversed(out))

    def coordinates(self) -> np.ndarray:
        """``size x len(radices)`` array whose row i is ``decode(i)``."""
        ids = np.arange(self.size)
        cols = []
        for r in reversed(self.radices):
            ids, k = np.divmod(ids, r)
            cols.append(k)
        return np.stack(cols[::-1], axis=1) if cols else np.zeros((1, 0), dtype=int)

    def units(self) -> list[int]:
        """Ids of the coordinate unit vectors, in coordinate order."""
        d = len(self.radices)
        return [self.encode([int(i == j) for j in range(d)]) for i in range(d)]

    def label(self, idx: int) -> str:
        return "(" + ",".join(map(str, self.decode(idx))) + ")"


def _readonly(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int32)
    arr.setflags(write=False)
    return arr


def _inverse_column(table: np.ndarray) -> np.ndarray:
    """Inverse of each element for a group table with identity 0."""
    rows, cols = np.nonzero(table == 0)
    inv = np.empty(len(table), dtype=np.int32)
    inv[rows] = cols
    return inv


def _generators(table: np.ndarray) -> list[int]:
    """Least-first generating set of a finite magma with identity 0."""
    n = len(table)
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    gens: list[int] = []
    for x in range(n):
        if inside[x]:
            continue
        gens.append(x)
        inside[x] = True
        while True:
            members = np.flatnonzero(inside)
            grown = np.zeros(n, dtype=bool)
            grown[table[np.ix_(members, members)].ravel()] = True
            if not (grown & ~inside).any():
                break
            inside |= grown
    return gens


def _check_group(table: np.ndarray, err: type[BraceValidationError], name: str) -> None:
    n = len(table)
    ids = np.arange(n)
    if not (np.array_equal(table[0], ids) and np.array_equal(table[:, 0], ids)):
        raise err(f"0 is not the identity of the {name} table")
    if not (np.all(np.sort(table, axis=1) == ids) and np.all(np.sort(table, axis=0) == ids[:, None])):
        raise err(f"the {name} table is not a Latin square")
    # Light's test: the g with (xg)y = x(gy) for all x, y are closed under the
    # operation, so checking a generating set checks every triple
    for g in _generators(table):
        lhs = table[table[:, g]]  # (xg)y at [x, y]
        rhs = table[:, table[g]]  # x(gy)
        if not np.array_equal(lhs, rhs):
            x, y = np.argwhere(lhs != rhs)[0]
            raise err(f"the {name} table is not associative at {(int(x), g, int(y))}")


class FiniteBrace:
    """A certified finite left brace.

    Build one with :func:`validate` (or the constructor, which validates).
    Tables are never relabelled: id 0 must already be the identity of both.
    """

    def __init__(
        self,
        add,
        mul,
        *,
        codec: TupleCodec | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        add = _readonly(add)
        mul = _readonly(mul)
        self.add = add
        self.mul = mul
        self.n = len(add)
        self.codec = codec
        self.name = name
        if codec is not None and codec.size != self.n:
            raise ValueError(f"codec of size {codec.size} for a brace of order {self.n}")
        if check:
            self._validate()

    # -- validation -------------------------------------------------------

    def _validate(self) -> None:
        add, mul, n = self.add, self.mul, self.n
        if add.ndim != 2 or add.shape != (n, n) or mul.shape != (n, n) or n < 1:
            raise BraceValidationError("tables must be square, of the same side n >= 1")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise BraceValidationError("table entries must be element ids 0..n-1")
        _check_group(add, AdditiveGroupError, "additive")
        if not np.array_equal(add, add.T):
            i, j = np.argwhere(add != add.T)[0]
            raise AdditiveGroupError(f"addition is not commutative at {(int(i), int(j))}")
        ids = np.arange(n)
        mul_identity = [
            e for e in range(n) if np.array_equal(mul[e], ids) and np.array_equal(mul[:, e], ids)
        ]
        if mul_identity and mul_identity[0] != 0:
            raise IdentityMismatchError(
                f"multiplicative identity is {mul_identity[0]}, additive identity is 0"
            )
        _check_group(mul, MultiplicativeGroupError, "multiplicative")
        add32, mul32 = add.astype(np.int32), mul.astype(np.int32)
        for a in range(n):
            # a(b+c) = ab + ac - a, i.e. a(b+c) + a = ab + ac
            row = mul32[a]
            lhs = add32[:, a][row[add32]]
            rhs = add32[row[:, None], row[None, :]]
            if not np.array_equal(lhs, rhs):
                b, c = np.argwhere(lhs != rhs)[0]
                raise BraceLawError((a, int(b), int(c)))

    # -- derived tables -----------------------------------------------------

    @cached_property
    def neg(self) -> np.ndarray:
        return _inverse_column(self.add)

    @cached_property
    def inv(self) -> np.ndarray:
        return _inverse_column(self.mul)

    @cached_property
    def lam(self) -> np.ndarray:
        """``lam[a, b] = ab - a``; row a is the permutation lambda_a."""
        t = self.add[self.mul, self.neg[:, None]]
        t.setflags(write=False)
        return t

    @cached_property
    def star_table(self) -> np.ndarray:
        """``star_table[a, b] = ab - a - b``."""
        t = self.add[self.lam, self.neg[None, :]]
        t.setflags(write=False)
        return t

    @cached_property
    def add_order(self) -> np.ndarray:
        return _orders(self.add)

    @cached_property
    def mul_order(self) -> np.ndarray:
        return _orders(self.mul)

    @cached_property
    def primes(self) -> tuple[int, ...]:
        """pi(A): the primes dividing the order."""
        return tuple(sorted(_prime_factors(self.n)))

    @cached_property
    def additive_shape(self) -> tuple[int, ...]:
        """Invariant factors of (A,+), ascending with each dividing the next."""
        return group_shape(self.add_order)

    def is_abelian(self) -> bool:
        return not self.star_table.any()

    def is_trivial(self) -> bool:
        return self.n == 1

    def is_elementary_abelian(self) -> bool:
        """Whether (A,+) is an elementary abelian p-group (order 1 included)."""
        return len(set(self.add_order.tolist()) - {1}) <= 1 and all(
            _is_prime(int(o)) for o in set(self.add_order.tolist()) - {1}
        )

    # -- element-level operations -------------------------------------------

    def star(self, a: int, b: int) -> int:
        return int(self.star_table[a, b])

    def label(self, idx: int) -> str:
        return self.codec.label(idx) if self.codec else str(idx)

    def element(self, *coords: int) -> int:
        """Element id of a codec tuple."""
        if self.codec is None:
            raise ValueError("brace has no tuple codec")
        return self.codec.encode(coords)

    def mask(self, elements: Iterable[int]) -> SubsetMask:
        return SubsetMask.from_elements(self.n, elements)

    def full_mask(self) -> SubsetMask:
        return SubsetMask.full(self.n)

    def zero_mask(self) -> SubsetMask:
        return SubsetMask.zero(self.n)

    # -- closures ------------------------------------------------------------

    def close(self, elements: Iterable[int] | np.ndarray, kind: str = "brace") -> SubsetMask:
        """Least subset containing ``elements`` and 0, closed under the chosen operations.

        Closure under the operation suffices for subgroups: the sets are finite.
        """
        tables = {
            "additive": (self.add,),
            "multiplicative": (self.mul,),
            "brace": (self.add, self.mul),
        }[kind]
        if not isinstance(elements, np.ndarray):
            elements = list(elements)
        flags = np.zeros(self.n, dtype=bool)
        flags[np.asarray(elements, dtype=np.int64)] = True
        flags[0] = True
        old = flags.copy()
        new_els = np.flatnonzero(flags)
        while True:
            els = np.flatnonzero(flags)
            for t in tables:
                flags[t[np.ix_(new_els, els)].ravel()] = True
                if t is self.mul:
                    flags[t[np.ix_(els, new_els)].ravel()] = True
            grown = flags & ~old
            if not grown.any():
                return SubsetMask.from_bool(flags)
            new_els = np.flatnonzero(grown)
            old = flags.copy()

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteBrace{label} of order {self.n}>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteBrace)
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.add.tobytes(), self.mul.tobytes()))


def validate(add, mul, *, codec: TupleCodec | None = None, name: str | None = None) -> FiniteBrace:
    """Check the brace axioms on the tables and return the certified brace."""
    return FiniteBrace(add, mul, codec=codec, name=name)


# -- helpers ----------------------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def _prime_factors(n: int) -> set[int]:
    out, q = set(), 2
    while q * q <= n:
        while n % q == 0:
            out.add(q)
            n //= q
        q += 1
    if n > 1:
        out.add(n)
    return out


def _orders(table: np.ndarray) -> np.ndarray:
    """Element orders in a group table with identity 0."""
    n = len(table)
    ids = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = ids.copy()
    k = 1
    while (orders == 0).any():
        hit = (cur == 0) & (orders == 0)
        orders[hit] = k
        cur = table[cur, ids]
        k += 1
    return orders


def group_shape(orders: Sequence[int] | np.ndarray) -> tuple[int, ...]:
    """Invariant factors of an abelian group from its multiset of element orders."""
    orders = np.asarray(orders)
    n = len(orders)
    factors_by_prime: dict[int, list[int]] = {}
    for p in sorted(_prime_factors(n)):
        # rank of the exponent->=k layer: log_p(|{x: p^k x = 0}| / |{x: p^(k-1) x = 0}|)
        counts = [1]
        k = 1
        while True:
            c = int(np.sum((p**k) % orders == 0))
            counts.append(c)
            if c == counts[-2]:
                break
            k += 1
        layers = [round(math.log(counts[i] // counts[i - 1], p)) for i in range(1, len(counts) - 1)]
        # layers[k-1] = number of cyclic p-factors with exponent >= k
        exps = []
        for k in range(len(layers), 0, -1):
            exceed = layers[k] if k < len(layers) else 0
            exps += [k] * (layers[k - 1] - exceed)
        factors_by_prime[p] = sorted(p**e for e in exps)
    # combine p-parts into invariant factors d_1 | d_2 | ...
    length = max((len(v) for v in factors_by_prime.values()), default=0)
    out = []
    for i in range(length):
        d = 1
        for v in factors_by_prime.values():
            j = len(v) - length + i
            if j >= 0:
                d *= v[j]
        out.append(d)
    return tuple(out)


def cyclic_product_table(radices: Sequence[int]) -> np.ndarray:
    """Addition table of C_{r1} x ... x C_{rk} in the mixed-radix labelling."""
    codec = TupleCodec(tuple(radices))
    coords = codec.coordinates()
    summed = (coords[:, None, :] + coords[None, :, :]) % np.array(radices)
    weights = np.array([math.prod(radices[i + 1 :]) for i in range(len(radices))], dtype=np.int64)
    return (summed * weights).sum(axis=2)


def abelian_brace(radices: Sequence[int], name: str | None = None) -> FiniteBrace:
    """The abelian (trivial) brace on C_{r1} x ... x C_{rk}: ab = a + b."""
    radices = tuple(int(r) for r in radices) or (1,)
    if any(r < 1 for r in radices):
        raise ValueError(f"cyclic orders must be positive: {radices}")
    table = cyclic_product_table(radices)
    return FiniteBrace(table, table, codec=TupleCodec(radices), name=name, check=False)


def lambda_map(A: FiniteBrace, a: int) -> np.ndarray:
    """lambda_a as a permutation array: ``b -> ab - a``."""
    return A.lam[a].copy()


def star(A: FiniteBrace, a: int, b: int) -> int:
    return A.star(a, b)


def subset_star(A: FiniteBrace, X: SubsetMask, Y: SubsetMask) -> SubsetMask:
    """X * Y: the additive subgroup generated by all x * y."""
    vals = A.star_table[np.ix_(X.elements, Y.elements)].ravel()
    return A.close(np.unique(vals), "additive")


def direct_product(A: FiniteBrace, B: FiniteBrace, max_order: int | None = None) -> FiniteBrace:
    """A (+) B with componentwise operations; pair (a, b) has id ``a * |B| + b``."""
    n = A.n * B.n
    config.enforce("max_order", n, max_order)

    def combine(ta, tb):
        return (ta[:, None, :, None] * B.n + tb[None, :, None, :]).reshape(n, n)

    if A.codec and B.codec and A.codec.cyclic and B.codec.cyclic:
        codec = TupleCodec(A.codec.radices + B.codec.radices)
    else:
        codec = TupleCodec((A.n, B.n), cyclic=False)
    name = f"{A.name or 'A'} + {B.name or 'B'}"
    return FiniteBrace(
        combine(A.add, B.add), combine(A.mul, B.mul), codec=codec, name=name, check=False
    )


class BraceHom:
    """A map between braces preserving both operations (checked on construction)."""

    def __init__(self, source: FiniteBrace, target: FiniteBrace, mapping, *, check: bool = True):
        self.source = source
        self.target = target
        self.map = np.asarray(mapping, dtype=np.int64)
        if self.map.shape != (source.n,):
            raise ValueError("mapping must list one image per source element")
        if check and not self.is_homomorphism():
            raise ValueError("mapping does not preserve both operations")

    def is_homomorphism(self) -> bool:
        f, S, T = self.map, self.source, self.target
        if f.min() < 0 or f.max() >= T.n:
            return False
        return bool(
            np.array_equal(f[S.add], T.add[f[:, None], f[None, :]])
            and np.array_equal(f[S.mul], T.mul[f[:, None], f[None, :]])
        )

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(np.unique(self.map)) == self.source.n

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def kernel(self) -> SubsetMask:
        return SubsetMask.from_bool(self.map == 0)

    def __repr__(self) -> str:
        return f"BraceHom({self.source!r} -> {self.target!r})"


def restrict(A: FiniteBrace, S: SubsetMask) -> tuple[FiniteBrace, np.ndarray]:
    """The subbrace on S relabelled ``0..|S|-1`` in increasing id order.

    Returns the brace and the embedding (new id -> old id). S must be a subbrace.
    """
    els = S.elements
    index = np.full(A.n, -1, dtype=np.int64)
    index[els] = np.arange(len(els))
    add = index[A.add[np.ix_(els, els)]]
    mul = index[A.mul[np.ix_(els, els)]]
    if (add < 0).any() or (mul < 0).any() or els[0] != 0:
        raise ValueError("subset is not a subbrace")
    return FiniteBrace(add, mul, check=False), els


def quotient(A: FiniteBrace, I: SubsetMask) -> tuple[FiniteBrace, BraceHom]:
    """A/I with cosets labelled by their least element, in increasing order."""
    from .substructures import is_ideal

    ok, witness = is_ideal(A, I)
    if not ok:
        raise ValueError(f"not an ideal (witness {witness})")
    members = I.elements
    cosets = A.add[:, members]  # row a = a + I
    rep = cosets.min(axis=1)
    reps = np.unique(rep)
    label = np.searchsorted(reps, rep)
    add = label[A.add[np.ix_(reps, reps)]]
    mul = label[A.mul[np.ix_(reps, reps)]]
    Q = FiniteBrace(add, mul, name=f"{A.name or 'A'}/I", check=False)
    return Q, BraceHom(A, Q, label, check=False)
