"""Cached collections of small braces used by the verification harness."""

from __future__ import annotations

from functools import lru_cache

from .brace import FiniteBrace, abelian_brace, direct_product
from .enumeration import abelian_groups, enumerate_braces
from .extraspecial import FAMILIES, FamilySpec, family
from .fp import is_strong_nondegenerate


def family_specs(primes=(2, 3, 5, 7)) -> list[FamilySpec]:
    """Every legal (family, m, p) for the given primes."""
    out = []
    for p in primes:
        for name in FAMILIES:
            low = 1 if name == "E0" else 0
            out.extend(FamilySpec(name, m, p) for m in range(low, p))
    return out


@lru_cache(maxsize=None)
def _family_brace(spec: FamilySpec) -> FiniteBrace:
    return family(spec)


def family_braces(primes=(2, 3, 5, 7)) -> list[tuple[FamilySpec, FiniteBrace]]:
    return [(s, _family_brace(s)) for s in family_specs(tuple(primes))]


@lru_cache(maxsize=None)
def _braces_of_order(n: int) -> tuple[FiniteBrace, ...]:
    return tuple(B for G in abelian_groups(n) for B in enumerate_braces(G))


def small_braces(max_order: int, min_order: int = 1) -> list[FiniteBrace]:
    """One brace per isomorphism class, every order in [min_order, max_order]."""
    return [B for n in range(min_order, max_order + 1) for B in _braces_of_order(n)]


STRONG_SMALL = [s for s in family_specs((2, 3, 5)) if is_strong_nondegenerate(s.form)]

# E with a larger elementary abelian Z: (family spec, rank of Z)
_WIDER = [("E0", 1, 2, 2), ("E2", 1, 2, 2), ("E0", 1, 2, 3), ("E0", 1, 3, 2), ("E0", 2, 3, 2), ("E1", 1, 3, 2)]


def sufficiency_constructions() -> list[tuple[str, FiniteBrace]]:
    """E (+) Z for every strong family E with p <= 5 and Z = C_p, plus six with |Z| in {4, 8, 9}."""
    out = []
    for spec in STRONG_SMALL:
        out.append((f"{spec} + C{spec.p}", direct_product(_family_brace(spec), abelian_brace((spec.p,)))))
    for name, m, p, r in _WIDER:
        spec = FamilySpec(name, m, p)
        Z = abelian_brace((p,) * r)
        out.append((f"{spec} + C{p}^{r}", direct_product(_family_brace(spec), Z)))
    return out
