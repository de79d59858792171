"""Left/right star series, socle/central/fix series, nilpotency, Dedekind tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import config
from .brace import EngineError, FiniteBrace, quotient, restrict, subset_star
from .masks import SubsetMask
from .substructures import (
    Subbrace,
    all_subbraces,
    is_ideal,
    is_left_ideal,
    one_generated_subbraces,
    socle_fix_centre,
)

SERIES_KINDS = ("left", "right", "socle", "central", "fix")
DESCENDING = ("left", "right")


@dataclass(frozen=True)
class SeriesChain:
    kind: str
    terms: tuple[SubsetMask, ...]
    reached_terminal: bool

    @property
    def length(self) -> int:
        """Number of strict steps taken before the chain stabilized."""
        return len(self.terms) - 1

    @property
    def level(self) -> int | None:
        return self.length if self.reached_terminal else None

    def __getitem__(self, k: int) -> SubsetMask:
        # past the end the chain is constant
        return self.terms[min(k, len(self.terms) - 1)]

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def _pull_back(A: FiniteBrace, I: SubsetMask, which: int) -> SubsetMask:
    """Preimage in A of Soc(A/I) (which=0) or zeta(A/I) (which=2)."""
    Q, proj = quotient(A, I)
    target = socle_fix_centre(Q)[which]
    return SubsetMask.from_bool(target.as_bool()[proj.map])


def _fix_step(A: FiniteBrace, F: SubsetMask) -> SubsetMask:
    inside = F.as_bool()
    return SubsetMask.from_bool(inside[A.star_table].all(axis=0))


def _certify(A: FiniteBrace, kind: str, term: SubsetMask) -> None:
    if kind == "fix" or kind == "left":
        ok = is_left_ideal(A, term)
    else:
        ok = is_ideal(A, term)
    if not ok:
        raise EngineError(f"{kind} series term {term!r} fails certification: {ok.witness}")


def compute_series(A: FiniteBrace, kind: str) -> SeriesChain:
    if kind not in SERIES_KINDS:
        raise ValueError(f"unknown series {kind!r}; expected one of {SERIES_KINDS}")
    full = A.full_mask()
    if kind in DESCENDING:
        terms = [full]
    else:
        terms = [A.zero_mask()]
    while True:
        cur = terms[-1]
        if kind == "left":
            nxt = subset_star(A, full, cur)
        elif kind == "right":
            nxt = subset_star(A, cur, full)
        elif kind == "socle":
            nxt = _pull_back(A, cur, 0)
        elif kind == "central":
            nxt = _pull_back(A, cur, 2)
        else:
            nxt = _fix_step(A, cur)
        if nxt == cur:
            break
        if kind in DESCENDING and not nxt < cur or kind not in DESCENDING and not cur < nxt:
            raise EngineError(f"{kind} series is not monotone at step {len(terms)}")
        _certify(A, kind, nxt)
        terms.append(nxt)
    last = terms[-1]
    reached = last.is_trivial() if kind in DESCENDING else last.is_full()
    return SeriesChain(kind, tuple(terms), reached)


class Nilpotency(NamedTuple):
    holds: bool
    level: int | None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class NilpotencyReport:
    left_nilpotent: Nilpotency
    right_nilpotent: Nilpotency
    centrally_nilpotent: Nilpotency
    multipermutation_level: int | None
    series: dict[str, SeriesChain] = field(repr=False, compare=False)


def nilpotency_report(A: FiniteBrace) -> NilpotencyReport:
    """Decide left/right/central nilpotency by the descending and the ascending series.

    Each decision is reached two ways and any disagreement raises EngineError.
    """
    chains = {kind: compute_series(A, kind) for kind in SERIES_KINDS}
    pairs = {"left": ("left", "fix"), "right": ("right", "socle")}
    verdicts = {}
    for side, (down, up) in pairs.items():
        d, u = chains[down], chains[up]
        if d.reached_terminal != u.reached_terminal or (d.reached_terminal and d.length != u.length):
            raise EngineError(
                f"{side} nilpotency: {down} series {d.level} vs {up} series {u.level}"
            )
        verdicts[side] = Nilpotency(u.reached_terminal, u.level)
    central = chains["central"]
    if central.reached_terminal != (verdicts["left"].holds and verdicts["right"].holds):
        raise EngineError("upper central series disagrees with left and right nilpotency")
    return NilpotencyReport(
        verdicts["left"],
        verdicts["right"],
        Nilpotency(central.reached_terminal, central.level),
        chains["socle"].level,
        chains,
    )


def is_dedekind(
    A: FiniteBrace, method: str = "one-generated", cap: int | None = None
) -> tuple[bool, Subbrace | None]:
    """Whether every subbrace is an ideal, with the least non-ideal subbrace otherwise.

    A join of ideals is an ideal, so it is enough to look at the subbraces
    <x>; a smallest non-ideal subbrace is always of that form, so the
    witness agrees with a scan of all subbraces. ``method="exhaustive"``
    runs that scan instead (capped by ``subbrace_enumeration``).
    """
    if method == "exhaustive":
        candidates = [s.mask for s in all_subbraces(A, cap)]
    elif method == "one-generated":
        config.enforce("max_order", A.n, cap)
        candidates = one_generated_subbraces(A)
    else:
        raise ValueError(f"unknown method {method!r}")
    for S in candidates:
        if not is_ideal(A, S):
            return False, Subbrace(A, S)
    return True, None


@dataclass(frozen=True)
class DedekindDecomposition:
    E: SubsetMask
    Z: SubsetMask
    B: SubsetMask
    certified: bool
    problems: tuple[str, ...] = ()


def _extend_basis(A: FiniteBrace, start: SubsetMask, pool: np.ndarray) -> tuple[SubsetMask, list[int]]:
    """Grow ``start`` by the least elements of ``pool`` outside the running span."""
    span, chosen = start, []
    for x in pool:
        if int(x) not in span:
            chosen.append(int(x))
            span = A.close(np.append(span.elements, x), "additive")
    return span, chosen


def dedekind_structure_decompose(A: FiniteBrace, check_dedekind: bool = True) -> DedekindDecomposition:
    """A = E (+) Z with B = A*A inside E, Z a complement of B in Soc(A).

    Complements use the least ids available. Every postcondition is
    re-checked; failures are listed in ``problems`` and clear ``certified``.
    """
    if not A.is_elementary_abelian():
        raise ValueError("additive group is not elementary abelian")
    if check_dedekind:
        ok, witness = is_dedekind(A)
        if not ok:
            raise ValueError(f"brace is not Dedekind: {witness!r} is not an ideal")
    full = A.full_mask()
    soc, _, zeta = socle_fix_centre(A)
    B = subset_star(A, full, full)
    _, z_gens = _extend_basis(A, B, soc.elements)
    Z = A.close(z_gens, "additive")
    _, e_gens = _extend_basis(A, soc, np.arange(A.n))
    E = A.close(np.concatenate([B.elements, np.array(e_gens, dtype=np.int64)]), "additive")

    problems = []
    if not A.is_trivial():
        p = A.primes[0]
        if len(B) not in (1, p):
            problems.append(f"|A*A| = {len(B)} is neither 1 nor {p}")
    if not (E & Z).is_trivial() or len(E) * len(Z) != A.n:
        problems.append("A is not the direct sum of E and Z")
    if not (is_ideal(A, E) and is_ideal(A, Z)):
        problems.append("E or Z is not an ideal")
    if not B <= E:
        problems.append("A*A is not inside E")
    if not Z <= zeta:
        problems.append("Z is not central")
    if compute_series(A, "socle").level is None:
        problems.append("socle series does not reach A")
    if not E.is_trivial():
        from .extraspecial import recognize_extraspecial

        sub, _ = restrict(A, E)
        cert = recognize_extraspecial(sub)
        if cert is None or not cert.strong:
            problems.append("E is neither trivial nor strong extraspecial")
        EE = subset_star(A, E, E)
        if not ((Z & EE).is_trivial() and A.close(np.concatenate([Z.elements, EE.elements]), "additive") == zeta):
            problems.append("Z + E*E is not the centre")
        if zeta != soc:
            problems.append("centre and socle differ")
    return DedekindDecomposition(E, Z, B, not problems, tuple(problems))
