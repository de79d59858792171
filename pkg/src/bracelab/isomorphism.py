"""Brace isomorphism search and isomorphism invariants."""

from __future__ import annotations

from collections import Counter

import numpy as np

from .brace import BraceHom, FiniteBrace
from .masks import SubsetMask

DEFAULT_NODE_BUDGET = 2_000_000


class SearchBudgetExceeded(RuntimeError):
    """The backtracking search visited more nodes than allowed; no verdict."""

    def __init__(self, budget: int):
        super().__init__(f"isomorphism search exceeded its budget of {budget} nodes")
        self.budget = budget


def _perm_orders(perms: np.ndarray) -> np.ndarray:
    """Order of each row of ``perms`` viewed as a permutation."""
    n_rows, n = perms.shape
    ids = np.arange(n)
    orders = np.zeros(n_rows, dtype=np.int64)
    cur = perms.copy()
    k = 1
    while (orders == 0).any():
        done = np.all(cur == ids, axis=1) & (orders == 0)
        orders[done] = k
        cur = np.take_along_axis(perms, cur, axis=1)
        k += 1
    return orders


def _base_signature(A: FiniteBrace) -> np.ndarray:
    cached = A.__dict__.get("_base_signature")
    if cached is not None:
        return cached
    ids = np.arange(A.n)
    st = A.star_table
    sq = st[ids, ids]
    soc = ~st.any(axis=1)
    fix = ~st.any(axis=0)
    sig = np.stack(
        [
            A.add_order,
            A.mul_order,
            (A.lam == ids).sum(axis=1),
            (st == 0).sum(axis=0),
            _perm_orders(A.lam),
            A.add_order[sq],
            soc,
            fix,
            soc[A.inv],
        ],
        axis=1,
    ).astype(np.int64)
    A.__dict__["_base_signature"] = sig
    return sig


def _joint_labels(rows_a: np.ndarray, rows_b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    both = np.concatenate([rows_a, rows_b])
    _, labels = np.unique(both, axis=0, return_inverse=True)
    labels = labels.ravel()
    return labels[: len(rows_a)], labels[len(rows_a) :]


def _refine(A: FiniteBrace, labels: np.ndarray, k: int) -> np.ndarray:
    """Row x: histogram of labels over x*y, over y*x, and over xy."""
    n = A.n
    rows = np.arange(n)[:, None]
    parts = [labels[:, None]]
    for table in (A.star_table, A.star_table.T, A.mul):
        hist = np.zeros((n, k), dtype=np.int64)
        np.add.at(hist, (np.broadcast_to(rows, table.shape), labels[table]), 1)
        parts.append(hist)
    return np.concatenate(parts, axis=1)


def joint_signatures(A: FiniteBrace, B: FiniteBrace, rounds: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Element labels, consistent between A and B, preserved by any isomorphism A -> B."""
    la, lb = _joint_labels(_base_signature(A), _base_signature(B))
    for _ in range(rounds):
        k = int(max(la.max(), lb.max())) + 1
        la, lb = _joint_labels(_refine(A, la, k), _refine(B, lb, k))
    return la, lb


def brace_invariant(A: FiniteBrace) -> tuple:
    """Hashable isomorphism invariant used for quick rejection and bucketing."""
    cached = A.__dict__.get("_brace_invariant")
    if cached is not None:
        return cached
    sig = _base_signature(A)
    counts = tuple(sorted(Counter(map(tuple, sig.tolist())).items()))
    st = A.star_table
    inv = (A.n, A.additive_shape, counts, len(A.close(np.unique(st), "additive")))
    A.__dict__["_brace_invariant"] = inv
    return inv


def _generators(A: FiniteBrace, labels: np.ndarray) -> list[int]:
    """Additive generators, chosen greedily: biggest span growth, then rarest label, then id."""
    class_size = np.bincount(labels)
    span = np.zeros(A.n, dtype=bool)
    span[0] = True
    gens = []
    while not span.all():
        best = None
        for x in np.flatnonzero(~span):
            r, y = 1, int(x)
            while not span[y]:
                y = int(A.add[y, x])
                r += 1
            key = (-(r - 1), int(class_size[labels[x]]), int(x))
            if best is None or key < best[0]:
                best = (key, int(x))
        g = best[1]
        gens.append(g)
        span = A.close(np.append(np.flatnonzero(span), g), "additive").as_bool()
    return gens


def isomorphism_search(
    A: FiniteBrace, B: FiniteBrace, budget: int | None = DEFAULT_NODE_BUDGET
) -> BraceHom | None:
    """An isomorphism A -> B, or None if none exists.

    Images of an additive generating set are tried smallest first among
    elements with the same invariant label. A partial map is kept additive
    on the span built so far and star products with the chosen generators
    are checked as soon as they are defined; star is additive in its second
    argument, so this suffices. Raises :class:`SearchBudgetExceeded` when
    more than ``budget`` nodes are visited.
    """
    if A.n != B.n or A.additive_shape != B.additive_shape:
        return None
    if brace_invariant(A) != brace_invariant(B):
        return None
    la, lb = joint_signatures(A, B)
    if not np.array_equal(np.sort(la), np.sort(lb)):
        return None
    n = A.n
    if n == 1:
        return BraceHom(A, B, [0])
    gens = _generators(A, la)
    cands = {lab: np.flatnonzero(lb == lab) for lab in np.unique(la)}
    f = np.full(n, -1, dtype=np.int64)
    f[0] = 0
    img = np.zeros(n, dtype=bool)
    img[0] = True
    sa, sb = A.star_table, B.star_table
    nodes = 0

    def consistent(xs: np.ndarray, ys: np.ndarray) -> bool:
        # pairs (x, y) over xs x ys with both mapped
        v = sa[np.ix_(xs, ys)]
        w = sb[np.ix_(f[xs], f[ys])]
        fv = f[v]
        defined = fv >= 0
        return bool(np.all(fv[defined] == w[defined]) and not img[w[~defined]].any())

    def extend(i: int, span: np.ndarray) -> bool:
        nonlocal nodes
        if i == len(gens):
            return True
        g = gens[i]
        in_span = np.zeros(n, dtype=bool)
        in_span[span] = True
        multiples = [g]
        while not in_span[multiples[-1]]:
            multiples.append(int(A.add[multiples[-1], g]))
        r = len(multiples)  # multiples[r-1] = r*g is in the span
        jg = np.array(multiples[:-1])
        target = f[multiples[-1]]
        for h in cands[la[g]]:
            if img[h]:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise SearchBudgetExceeded(budget)
            jh = [int(h)]
            for _ in range(r - 2):
                jh.append(int(B.add[jh[-1], h]))
            jh = np.array(jh)
            if img[jh].any() or B.add[jh[-1], h] != target:
                continue
            new_dom = A.add[np.ix_(jg, span)].ravel()
            new_img = B.add[np.ix_(jh, f[span])].ravel()
            if not np.array_equal(la[new_dom], lb[new_img]) or img[new_img].any():
                continue
            f[new_dom] = new_img
            img[new_img] = True
            grown = np.concatenate([span, new_dom])
            # old pairs too: a star value may have just entered the domain
            if consistent(grown, np.array(gens[: i + 1])) and extend(i + 1, grown):
                return True
            f[new_dom] = -1
            img[new_img] = False
        return False

    if not extend(0, np.array([0])):
        return None
    return BraceHom(A, B, f)


def are_isomorphic(A: FiniteBrace, B: FiniteBrace, budget: int | None = DEFAULT_NODE_BUDGET) -> bool:
    return isomorphism_search(A, B, budget) is not None


def image_mask(hom: BraceHom, S: SubsetMask) -> SubsetMask:
    return SubsetMask.from_elements(hom.target.n, hom.map[S.elements])
