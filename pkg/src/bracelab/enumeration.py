"""All left braces on a finite abelian group, via regular subgroups of the holomorph.

A brace on (G,+) is the same as a map lambda: G -> Aut(G) with
lambda_a lambda_b = lambda_{a + lambda_a(b)}; the set {x -> a + lambda_a(x)}
is then a regular subgroup of Hol(G), and ab = a + lambda_a(b).
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from . import config
from .brace import FiniteBrace, TupleCodec, abelian_brace
from .isomorphism import brace_invariant, isomorphism_search

MAX_AUTOMORPHISMS = 500_000


def _prime_powers(n: int) -> dict[int, int]:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors(primary: dict[int, list[int]]) -> tuple[int, ...]:
    """Ascending divisibility chain from prime -> list of exponents."""
    width = max((len(e) for e in primary.values()), default=0)
    factors = [1] * width
    for p, exps in primary.items():
        for i, e in enumerate(sorted(exps, reverse=True)):
            factors[width - 1 - i] *= p**e
    return tuple(factors)


@dataclass(frozen=True)
class AbelianGroupSpec:
    """A finite abelian group as a product of cyclic groups, stored as invariant factors."""

    cyclic_factors: tuple[int, ...]

    def __post_init__(self):
        primary: dict[int, list[int]] = defaultdict(list)
        for f in self.cyclic_factors:
            f = int(f)
            if f < 1:
                raise ValueError(f"cyclic factor {f} must be a positive integer")
            for p, e in _prime_powers(f).items():
                primary[p].append(e)
        object.__setattr__(self, "cyclic_factors", _invariant_factors(primary))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupSpec":
        parts = [s for s in text.replace("x", ",").split(",") if s.strip()]
        try:
            return cls(tuple(int(s) for s in parts))
        except ValueError as exc:
            raise ValueError(f"bad additive group {text!r}: {exc}") from None

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_factors)

    @property
    def is_p_group(self) -> bool:
        return len(_prime_powers(self.order)) == 1

    def brace(self) -> FiniteBrace:
        return abelian_brace(self.cyclic_factors, name=str(self))

    def __str__(self) -> str:
        return "x".join(f"C{f}" for f in self.cyclic_factors) or "C1"


def abelian_groups(n: int) -> list[AbelianGroupSpec]:
    """Every abelian group of order n, once each."""
    if n < 1:
        raise ValueError("order must be positive")
    choices = []
    for p, k in _prime_powers(n).items():
        choices.append([(p, part) for part in _partitions(k)])
    groups = {
        AbelianGroupSpec(tuple(p**e for p, part in combo for e in part))
        for combo in itertools.product(*choices)
    }
    return sorted(groups, key=lambda g: (len(g.cyclic_factors), g.cyclic_factors))


def _partitions(k: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = k if largest is None else largest
    if k == 0:
        return [()]
    return [(e,) + rest for e in range(min(k, largest), 0, -1) for rest in _partitions(k - e, e)]


@dataclass(frozen=True)
class HolomorphElement:
    """x -> translation + automorphism(x), the automorphism given as a permutation."""

    translation: int
    automorphism: tuple[int, ...]

    def act(self, G: FiniteBrace, x: int) -> int:
        return int(G.add[self.translation, self.automorphism[x]])

    def compose(self, G: FiniteBrace, other: "HolomorphElement") -> "HolomorphElement":
        """self after other."""
        t = self.act(G, other.translation)
        return HolomorphElement(t, tuple(self.automorphism[i] for i in other.automorphism))


def automorphisms(G: AbelianGroupSpec, cap: int | None = None) -> np.ndarray:
    """Aut(G) as a sorted array of permutations of the element ids (identity first).

    Each automorphism is fixed by the images of the standard generators; an
    image tuple is kept when each image has order dividing its generator's
    and the images generate subgroups of the right size as they are added.
    """
    n = G.order
    config.enforce("automorphisms", n, cap)
    A = G.brace()
    codec = A.codec
    radices = np.array(codec.radices, dtype=np.int64)
    gens = codec.units()
    cands = [np.flatnonzero(f % A.add_order == 0) for f in codec.radices]
    found: list[tuple[int, ...]] = []

    def multiples(g: int) -> np.ndarray:
        out = [0]
        while True:
            nxt = int(A.add[out[-1], g])
            if nxt == 0:
                return np.array(out)
            out.append(nxt)

    def grow(i: int, span: np.ndarray, images: tuple[int, ...]) -> None:
        if i == len(gens):
            found.append(images)
            if len(found) > MAX_AUTOMORPHISMS:
                raise config.CapExceeded("automorphism count", len(found), MAX_AUTOMORPHISMS)
            return
        want = len(span) * codec.radices[i]
        for h in cands[i]:
            new = np.unique(A.add[np.ix_(span, multiples(int(h)))])
            if len(new) == want:
                grow(i + 1, new, images + (int(h),))

    grow(0, np.array([0]), ())
    coords = codec.coordinates()  # n x r
    image_coords = coords[np.array(found, dtype=np.int64).reshape(len(found), len(gens))] if gens else None
    if image_coords is None:
        return np.zeros((1, 1), dtype=np.int64)
    # element k = sum_i k_i e_i goes to sum_i k_i h_i
    mapped = np.einsum("xi,aij->axj", coords, image_coords) % radices
    weights = np.cumprod(np.concatenate([[1], radices[::-1][:-1]]))[::-1]
    perms = mapped @ weights
    order = np.lexsort(perms.T[::-1])
    return perms[order]


def _perm_key(perms: np.ndarray, probe: np.ndarray, n: int) -> np.ndarray:
    return perms[..., probe] @ (n ** np.arange(len(probe), dtype=np.int64))


def sylow_subgroup(autos: np.ndarray, p: int, probe: np.ndarray | None = None) -> np.ndarray:
    """A Sylow p-subgroup of the permutation group ``autos`` (a full group, sorted).

    Grown greedily: while P is not yet Sylow, its normalizer holds a
    p-element outside P, and the least such one is adjoined.
    """
    k, n = autos.shape
    probe = np.arange(n) if probe is None else probe  # keep n ** len(probe) below 2**63
    keys = _perm_key(autos, probe, n)
    index = {int(key): i for i, key in enumerate(keys)}
    target = p ** _valuation(k, p)
    inv = np.argsort(autos, axis=1)
    orders = _element_orders(autos)
    p_elements = np.flatnonzero(np.array([_is_power_of(int(o), p) for o in orders]))
    members = {0}  # index 0 is the identity
    while len(members) < target:
        P = autos[sorted(members)]
        member_mask = np.zeros(k, dtype=bool)
        member_mask[list(members)] = True
        added = False
        for g in p_elements:
            if member_mask[g]:
                continue
            conj = autos[g][P[:, inv[g]]]  # g x g^-1
            if all(int(c) in index and member_mask[index[int(c)]] for c in _perm_key(conj, probe, n)):
                members = _close(autos, index, probe, members | {int(g)})
                added = True
                break
        if not added:
            raise RuntimeError("no p-element in the normalizer; the input is not a group")
    return autos[sorted(members)]


def _close(autos, index, probe, members: set[int]) -> set[int]:
    n = autos.shape[1]
    members = set(members)
    frontier = list(members)
    while frontier:
        nxt = []
        cur = sorted(members)
        for a in frontier:
            prods = np.concatenate([autos[a][autos[cur]], autos[cur][:, autos[a]]])
            for key in _perm_key(prods, probe, n):
                i = index[int(key)]
                if i not in members:
                    members.add(i)
                    nxt.append(i)
        frontier = nxt
    return members


def _element_orders(perms: np.ndarray) -> np.ndarray:
    ids = np.arange(perms.shape[1])
    orders = np.zeros(len(perms), dtype=np.int64)
    cur = perms.copy()
    k = 1
    while (orders == 0).any():
        orders[(np.all(cur == ids, axis=1)) & (orders == 0)] = k
        cur = np.take_along_axis(perms, cur, axis=1)
        k += 1
    return orders


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _default_probe(G: FiniteBrace) -> np.ndarray:
    # an additive automorphism is fixed by its values on a generating set
    if G.codec is not None and G.codec.cyclic:
        return np.array(G.codec.units(), dtype=np.int64)
    return np.arange(G.n)


def lambda_maps(G: FiniteBrace, pool: np.ndarray, probe: np.ndarray | None = None):
    """Yield every lambda: G -> pool (as an array of pool indices) giving a brace.

    ``pool`` must be a group of automorphisms of G containing the identity
    at index 0. The smallest translation outside the current closed set is
    fixed next, so each regular subgroup is produced exactly once.
    """
    n = G.n
    m = len(pool)
    probe = _default_probe(G) if probe is None else probe
    keys = _perm_key(pool, probe, n)
    index = {int(key): i for i, key in enumerate(keys)}
    if m <= 2048:
        comp = np.empty((m, m), dtype=np.int64)
        for a in range(m):
            for b, key in enumerate(_perm_key(pool[a][pool], probe, n)):
                comp[a, b] = index[int(key)]
        compose = lambda a, b: int(comp[a, b])  # noqa: E731
    else:
        def compose(a, b):
            return index[int(_perm_key(pool[a][pool[b]], probe, n))]
    add = G.add

    def extend(assign: np.ndarray, members: list[int], t: int, alpha: int) -> np.ndarray | None:
        assign = assign.copy()
        members = list(members)
        assign[t] = alpha
        queue = [t]
        members.append(t)
        while queue:
            x = queue.pop()
            ax = int(assign[x])
            for y in list(members):
                ay = int(assign[y])
                for (s, sa), (u, ua) in (((x, ax), (y, ay)), ((y, ay), (x, ax))):
                    w = int(add[s, pool[sa][u]])
                    wa = compose(sa, ua)
                    if assign[w] < 0:
                        assign[w] = wa
                        members.append(w)
                        queue.append(w)
                    elif assign[w] != wa:
                        return None
        return assign

    def search(assign: np.ndarray):
        free = np.flatnonzero(assign < 0)
        if not len(free):
            yield assign
            return
        t = int(free[0])
        members = [int(i) for i in np.flatnonzero(assign >= 0)]
        for alpha in range(m):
            grown = extend(assign, members, t, alpha)
            if grown is not None:
                yield from search(grown)

    start = np.full(n, -1, dtype=np.int64)
    start[0] = 0
    yield from search(start)


def enumerate_braces(G: AbelianGroupSpec, up_to_iso: bool = True, cap: int | None = None) -> list[FiniteBrace]:
    """Every left brace with additive group G, sorted by multiplication table.

    With ``up_to_iso`` one brace per isomorphism class is kept: the one with
    the least multiplication table among those met. For a p-group the
    lambda-images are taken inside one Sylow p-subgroup of Aut(G); every
    brace is isomorphic to one of those, since its lambda-image is a
    p-group and conjugating by an automorphism of G gives an isomorphic brace.
    """
    config.enforce("enumeration", G.order, cap)
    A0 = G.brace()
    n = A0.n
    if n == 1:
        return [A0]
    autos = automorphisms(G)
    pool = autos
    if up_to_iso and G.is_p_group:
        p = next(iter(_prime_powers(n)))
        pool = sylow_subgroup(autos, p, _default_probe(A0))
    braces = []
    rows = np.arange(n)[:, None]
    for assign in lambda_maps(A0, pool):
        lam = pool[assign]  # lam[a] = permutation lambda_a
        mul = A0.add[rows, lam]
        braces.append(FiniteBrace(A0.add, mul, codec=A0.codec))
    if up_to_iso:
        braces = _dedupe(braces)
    braces.sort(key=_table_key)
    for i, B in enumerate(braces):
        B.name = f"{G} #{i}"
    return braces


def _table_key(B: FiniteBrace) -> tuple[int, ...]:
    return tuple(B.mul.ravel().tolist())


def _dedupe(braces: list[FiniteBrace]) -> list[FiniteBrace]:
    buckets: dict[tuple, list[FiniteBrace]] = defaultdict(list)
    for B in braces:
        reps = buckets[brace_invariant(B)]
        for i, R in enumerate(reps):
            if isomorphism_search(B, R) is not None:
                if _table_key(B) < _table_key(R):
                    reps[i] = B
                break
        else:
            reps.append(B)
    return [R for reps in buckets.values() for R in reps]
