"""Exhaustive desk-scale checks of the structural results, one named check each."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .brace import FiniteBrace, group_shape
from .corpus import family_braces, small_braces, sufficiency_constructions
from .enumeration import AbelianGroupSpec, enumerate_braces
from .extraspecial import brace_from_form, classify_strong, dedekind_criterion, family
from .fp import BilinearForm, find_isotropic, is_strong_nondegenerate
from .series import compute_series, dedekind_structure_decompose, is_dedekind, nilpotency_report
from .substructures import is_dedekind_group, is_ideal, is_subbrace, one_generated_subbraces, sylow_decomposition
from .ybe import associated_solution, check_solution


@dataclass
class TheoremResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, what: str) -> None:
        self.failures.append(what)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{verdict} {self.name}: {self.checked} instances, {len(self.failures)} failures"
        if self.failures:
            line += f"; first: {self.failures[0]}"
        return line


def _name(B: FiniteBrace) -> str:
    return B.name or f"brace of order {B.n}"


def _dedekind_corpus(max_order: int, primes=(2, 3, 5, 7)) -> list[FiniteBrace]:
    """Dedekind braces among all braces of order <= max_order and the family braces."""
    out = [B for B in small_braces(max_order) if is_dedekind(B)[0]]
    out += [B for _, B in family_braces(primes) if is_dedekind(B)[0]]
    return out


def _elementary_dedekind(max_order: int, primes=(2, 3, 5, 7)) -> list[FiniteBrace]:
    return [B for B in _dedekind_corpus(max_order, primes) if B.n > 1 and B.is_elementary_abelian()]


def central_nilpotency(max_order: int = 8) -> TheoremResult:
    res = TheoremResult("central-nilpotency")
    for B in _dedekind_corpus(max_order):
        res.checked += 1
        if not nilpotency_report(B).centrally_nilpotent:
            res.fail(f"{_name(B)} is Dedekind but not centrally nilpotent")
    return res


def soc_equals_zeta(max_order: int = 8) -> TheoremResult:
    res = TheoremResult("soc-equals-zeta")
    for B in _elementary_dedekind(max_order):
        res.checked += 1
        soc, cen = compute_series(B, "socle"), compute_series(B, "central")
        steps = max(len(soc.terms), len(cen.terms))
        for k in range(steps):
            if soc[k] != cen[k]:
                res.fail(f"{_name(B)}: Soc_{k} != zeta_{k}")
                break
    return res


def soc2_reaches_a(max_order: int = 8) -> TheoremResult:
    res = TheoremResult("soc2-reaches-A")
    for B in _elementary_dedekind(max_order):
        res.checked += 1
        if not compute_series(B, "socle")[2].is_full():
            res.fail(f"{_name(B)}: Soc_2 is not A")
    return res


def structure_decomposition(max_order: int = 8) -> TheoremResult:
    """Decomposition of every elementary Dedekind corpus brace, then the converse constructions."""
    res = TheoremResult("structure-decomposition")
    for B in _elementary_dedekind(max_order):
        res.checked += 1
        dec = dedekind_structure_decompose(B, check_dedekind=False)
        if not dec.certified:
            res.fail(f"{_name(B)}: {'; '.join(dec.problems)}")
    for label, B in sufficiency_constructions():
        res.checked += 1
        ok, witness = is_dedekind(B)
        if not ok:
            res.fail(f"{label} is not Dedekind; {witness!r} is not an ideal")
    return res


def sylow_decomposition_check(max_order: int = 16) -> TheoremResult:
    res = TheoremResult("sylow-decomposition")
    for B in _dedekind_corpus(max_order, primes=(2, 3)):
        res.checked += 1
        comps, direct = sylow_decomposition(B)
        if not direct:
            res.fail(f"{_name(B)}: additive Sylow subgroups are not ideals summing directly to A")
    return res


def dedekind_criterion_check(max_order: int | None = None) -> TheoremResult:
    res = TheoremResult("dedekind-criterion")
    for spec, B in family_braces((2, 3, 5, 7)):
        res.checked += 1
        found, witness = is_dedekind(B)
        expected = dedekind_criterion(spec)
        if found != expected:
            detail = "Dedekind" if found else f"non-ideal subbrace {witness!r}"
            res.fail(f"{spec}: polynomial test says {expected}, brace is {detail}")
    return res


def _forms(p: int, d: int):
    for entries in itertools.product(range(p), repeat=d * d):
        yield BilinearForm(p, tuple(tuple(entries[i * d : (i + 1) * d]) for i in range(d)))


def classification(max_order: int | None = None, primes=(2, 3, 5)) -> TheoremResult:
    res = TheoremResult("classification")
    for p in primes:
        for d in (1, 2):
            for phi in _forms(p, d):
                if not is_strong_nondegenerate(phi):
                    continue
                res.checked += 1
                E = brace_from_form(phi)
                if E.n > p**3:
                    res.fail(f"form {phi.matrix} over F{p} gives order {E.n} > p^3")
                    continue
                spec, hom = classify_strong(E)
                if not (hom.is_bijective() and hom.is_homomorphism() and hom.target == family(spec)):
                    res.fail(f"form {phi.matrix} over F{p}: witness for {spec} does not verify")
    return res


def chevalley_bound(max_order: int | None = None, samples: int = 2000, seed: int = 0) -> TheoremResult:
    res = TheoremResult("chevalley-bound")
    for phi in _forms(2, 3):
        res.checked += 1
        if find_isotropic(phi) is None:
            res.fail(f"no isotropic vector for {phi.matrix} over F2")
    rng = np.random.default_rng(seed)
    for i in range(samples):
        p = (3, 5)[i % 2]
        phi = BilinearForm(p, tuple(map(tuple, rng.integers(0, p, size=(3, 3)).tolist())))
        res.checked += 1
        v = find_isotropic(phi)
        if v is None:
            res.fail(f"no isotropic vector for {phi.matrix} over F{p}")
        elif not any(v) or phi(v, v) != 0:
            res.fail(f"find_isotropic returned a bad vector {v} for {phi.matrix} over F{p}")
    return res


def ybe_checks(max_order: int = 16) -> TheoremResult:
    res = TheoremResult("ybe-checks")
    corpus = [(_name(B), B) for B in small_braces(max_order)]
    corpus += [(str(s), B) for s, B in family_braces((2, 3, 5))]
    for label, B in corpus:
        res.checked += 1
        report = check_solution(associated_solution(B))
        if not report.ok:
            res.fail(f"{label}: {report}")
    return res


def cyclic_dedekind(max_order: int = 16) -> TheoremResult:
    res = TheoremResult("cyclic-dedekind")
    for B in small_braces(max_order):
        if len(B.additive_shape) > 1 or not is_dedekind_group(B.mul):
            continue
        res.checked += 1
        ok, witness = is_dedekind(B)
        if not ok:
            res.fail(f"{_name(B)}: cyclic, Dedekind multiplicative group, but {witness!r} is not an ideal")
    return res


def find_c4c2_counterexample() -> tuple[FiniteBrace, object] | None:
    """Brace on C4 x C2 with multiplicative group C4 x C2 and a non-ideal subbrace of order 2."""
    for B in enumerate_braces(AbelianGroupSpec((4, 2))):
        if not np.array_equal(B.mul, B.mul.T) or group_shape(B.mul_order) != (2, 4):
            continue
        for S in one_generated_subbraces(B):
            if len(S) == 2 and not is_ideal(B, S):
                return B, S
    return None


def find_c6_counterexample() -> tuple[FiniteBrace, object] | None:
    """Brace on C6 with non-abelian multiplicative group whose order-2 subgroup is a non-ideal subbrace."""
    for B in enumerate_braces(AbelianGroupSpec((6,))):
        if np.array_equal(B.mul, B.mul.T):
            continue
        S = B.mask(np.flatnonzero(B.add_order <= 2))
        if is_subbrace(B, S) and not is_ideal(B, S):
            return B, S
    return None


def counterexamples(max_order: int | None = None) -> TheoremResult:
    res = TheoremResult("counterexamples")
    for label, finder in (("C4xC2", find_c4c2_counterexample), ("C6", find_c6_counterexample)):
        res.checked += 1
        found = finder()
        if found is None:
            res.fail(f"no brace of the required kind on {label}")
            continue
        B, S = found
        if is_dedekind(B)[0]:
            res.fail(f"{label}: found brace is Dedekind")
        res.notes.append(f"{label}: {_name(B)}, non-ideal subbrace {[B.label(int(x)) for x in S.elements]}")
    return res


THEOREMS = {
    "central-nilpotency": central_nilpotency,
    "soc-equals-zeta": soc_equals_zeta,
    "soc2-reaches-A": soc2_reaches_a,
    "structure-decomposition": structure_decomposition,
    "sylow-decomposition": sylow_decomposition_check,
    "dedekind-criterion": dedekind_criterion_check,
    "classification": classification,
    "chevalley-bound": chevalley_bound,
    "ybe-checks": ybe_checks,
    "cyclic-dedekind": cyclic_dedekind,
    "counterexamples": counterexamples,
}

# theorems whose corpus has an order bound that --max-order may change
TAKES_ORDER = {"central-nilpotency", "soc-equals-zeta", "soc2-reaches-A", "structure-decomposition",
               "sylow-decomposition", "ybe-checks", "cyclic-dedekind"}


def run(name: str, max_order: int | None = None) -> TheoremResult:
    if name not in THEOREMS:
        raise KeyError(name)
    fn = THEOREMS[name]
    if max_order is not None and name in TAKES_ORDER:
        return fn(max_order)
    return fn()
