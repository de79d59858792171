"""Acceptance suite: eleven criteria, each timed against its budget.

Every test prints one line ``criterion N: PASS|FAIL ...`` to the terminal
(also under output capture) and then asserts both the verdict and the budget.
"""

import itertools
import time

import numpy as np
import pytest

from bracelab.brace import group_shape, restrict, subset_star, validate
from bracelab.corpus import STRONG_SMALL, family_specs, sufficiency_constructions
from bracelab.enumeration import AbelianGroupSpec, abelian_groups, enumerate_braces
from bracelab.extraspecial import (
    FamilySpec,
    brace_from_form,
    classify_strong,
    dedekind_criterion,
    family,
    recognize_extraspecial,
)
from bracelab.fp import BilinearForm, Subspace, all_subspaces, find_isotropic, is_strong_nondegenerate, orthogonal, radical
from bracelab.masks import SubsetMask
from bracelab.series import compute_series, dedekind_structure_decompose, is_dedekind, nilpotency_report
from bracelab.substructures import (
    all_subbraces,
    annihilators,
    closure,
    is_ideal,
    is_normal_subgroup,
    socle_fix_centre,
)
from bracelab.ybe import associated_solution, check_solution

from conftest import naive_is_ideal, naive_subbraces

PRIMES = (2, 3, 5, 7)


def report(capsys, number, title, budget, started, ok, detail):
    elapsed = time.perf_counter() - started
    verdict = "PASS" if ok and elapsed < budget else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number}: {verdict}  {title}  ({elapsed:.1f} s of {budget} s)  {detail}")
    assert ok, detail
    assert elapsed < budget, f"took {elapsed:.1f} s, budget {budget} s"


def enumerate_up_to(max_order, min_order=1, groups=None):
    out = []
    for n in range(min_order, max_order + 1):
        for G in abelian_groups(n):
            if groups is None or G.cyclic_factors in groups:
                out.extend(enumerate_braces(G))
    return out


def elementary_dedekind_corpus():
    groups = {(2, 2), (2, 2, 2)}
    braces = [B for B in enumerate_up_to(8, 4, groups) if is_dedekind(B)[0]]
    braces += [B for B in (family(s) for s in family_specs(PRIMES)) if is_dedekind(B)[0]]
    return braces


def test_criterion_01_family_validity(capsys):
    t = time.perf_counter()
    bad = []
    specs = family_specs(PRIMES)
    for spec in specs:
        A = family(spec)
        try:
            validate(A.add, A.mul)
        except Exception as exc:  # noqa: BLE001 - any rejection is a failure here
            bad.append(f"{spec}: {exc}")
    report(capsys, 1, "family validity", 10, t, not bad, f"{len(specs)} family braces, failures: {bad or 'none'}")


def test_criterion_02_dedekind_criterion(capsys):
    t = time.perf_counter()
    mismatches = []
    for spec in family_specs(PRIMES):
        found = is_dedekind(family(spec))[0]
        if found != dedekind_criterion(spec):
            mismatches.append(f"{spec} (brace Dedekind={found}, polynomial test={not found})")
    e1_5 = [m for m in range(5) if is_dedekind(family(FamilySpec("E1", m, 5)))[0]]
    ok = not mismatches and e1_5 == [2, 3]
    detail = f"mismatches: {mismatches or 'none'}; E1(m,5) Dedekind for m in {e1_5}"
    report(capsys, 2, "Dedekind criterion equivalence", 60, t, ok, detail)


def test_criterion_03_central_nilpotency(capsys):
    t = time.perf_counter()
    braces = enumerate_up_to(8)
    dedekind = [B for B in braces if is_dedekind(B)[0]]
    bad = [B.name for B in dedekind if not nilpotency_report(B).centrally_nilpotent.holds]
    detail = f"{len(braces)} braces of order <= 8, {len(dedekind)} Dedekind, exceptions: {bad or 'none'}"
    report(capsys, 3, "Dedekind braces are centrally nilpotent", 300, t, not bad and len(braces) == 38, detail)


def test_criterion_04_socle_equals_centre(capsys):
    t = time.perf_counter()
    corpus = elementary_dedekind_corpus()
    bad = []
    for B in corpus:
        soc, cen = compute_series(B, "socle"), compute_series(B, "central")
        if soc.terms != cen.terms:
            bad.append(f"{B.name}: Soc_n and zeta_n differ")
        if not soc[2].is_full():
            bad.append(f"{B.name}: Soc_2 is not A")
    report(capsys, 4, "Soc_n = zeta_n and Soc_2 = A", 120, t, not bad, f"{len(corpus)} braces, failures: {bad or 'none'}")


def test_criterion_05_structure_decomposition(capsys):
    t = time.perf_counter()
    corpus = elementary_dedekind_corpus()
    bad = []
    for B in corpus:
        d = dedekind_structure_decompose(B)
        p = B.primes[0]
        soc, _, zeta = socle_fix_centre(B)
        problems = list(d.problems)
        if not (d.E & d.Z).is_trivial() or len(d.E) * len(d.Z) != B.n:
            problems.append("not a direct sum")
        if len(d.B) not in (1, p) or d.B != subset_star(B, B.full_mask(), B.full_mask()):
            problems.append("|A*A| not in {1, p}")
        if not d.E.is_trivial():
            E, _ = restrict(B, d.E)
            cert = recognize_extraspecial(E)
            if cert is None or not cert.strong:
                problems.append("E not strong extraspecial")
            EE = subset_star(B, d.E, d.E)
            span = B.close(np.concatenate([d.Z.elements, EE.elements]), "additive")
            if not ((d.Z & EE).is_trivial() and span == zeta == soc):
                problems.append("Z + E*E is not zeta(A) = Soc(A)")
        if not d.certified or problems:
            bad.append(f"{B.name}: {problems}")
    report(capsys, 5, "structure decomposition", 120, t, not bad, f"{len(corpus)} braces, failures: {bad or 'none'}")


def test_criterion_06_sufficiency(capsys):
    t = time.perf_counter()
    built = sufficiency_constructions()
    bad = [label for label, B in built if not is_dedekind(B)[0]]
    bases = {label.split(" + ")[0] for label, _ in built}
    ok = not bad and len(built) == 20 and bases == {str(s) for s in STRONG_SMALL}
    detail = f"{len(built)} constructions over {len(bases)} strong family braces, non-Dedekind: {bad or 'none'}"
    report(capsys, 6, "E + Z is Dedekind", 120, t, ok, detail)


def test_criterion_07_classification(capsys):
    t = time.perf_counter()
    checked, bad = 0, []
    for p in (2, 3, 5):
        for d in (1, 2):
            for entries in itertools.product(range(p), repeat=d * d):
                phi = BilinearForm(p, tuple(tuple(entries[i * d:(i + 1) * d]) for i in range(d)))
                if not is_strong_nondegenerate(phi):
                    continue
                checked += 1
                E = brace_from_form(phi)
                spec, hom = classify_strong(E)
                if not (hom.is_bijective() and hom.is_homomorphism() and np.array_equal(hom.target.mul, family(spec).mul)):
                    bad.append(f"{phi.matrix} over F{p}: witness rejected")
                if E.n > p**3:
                    bad.append(f"{phi.matrix} over F{p}: order {E.n} > p^3")
    report(capsys, 7, "classification of strong extraspecial braces", 180, t, not bad and checked > 0,
           f"{checked} strong forms classified, failures: {bad or 'none'}")


def test_criterion_08_chevalley_bound(capsys):
    t = time.perf_counter()
    rng = np.random.default_rng(0)
    forms = [BilinearForm(2, tuple(tuple(e[i * 3:(i + 1) * 3]) for i in range(3))) for e in itertools.product(range(2), repeat=9)]
    for _ in range(2000):
        p = int(rng.choice([3, 5]))
        forms.append(BilinearForm(p, tuple(map(tuple, rng.integers(0, p, size=(3, 3)).tolist()))))
    bad = []
    for phi in forms:
        v = find_isotropic(phi)
        if v is None or not any(v) or phi(v, v) != 0:
            bad.append(phi.matrix)
    report(capsys, 8, "no strong form of dimension 3", 30, t, not bad and len(forms) == 2512,
           f"{len(forms)} forms, without isotropic vector: {bad or 'none'}")


def test_criterion_09_ybe(capsys):
    t = time.perf_counter()
    corpus = enumerate_up_to(16) + [family(s) for s in family_specs((2, 3, 5))]
    bad = []
    for B in corpus:
        rep = check_solution(associated_solution(B))
        if not rep.ok:
            bad.append(f"{B.name}: {rep}")
    report(capsys, 9, "associated solutions", 180, t, not bad, f"{len(corpus)} braces, failures: {bad or 'none'}")


def test_criterion_10_counterexamples(capsys):
    t = time.perf_counter()
    c4c2 = []
    for B in enumerate_braces(AbelianGroupSpec((4, 2))):
        if not np.array_equal(B.mul, B.mul.T) or group_shape(B.mul_order) != (2, 4) or is_dedekind(B)[0]:
            continue
        if any(len(S) == 2 and not naive_is_ideal(B, S) for S in naive_subbraces(B)):
            c4c2.append(B.name)
    c6 = []
    for B in enumerate_braces(AbelianGroupSpec((6,))):
        if np.array_equal(B.mul, B.mul.T):
            continue
        S = frozenset(np.flatnonzero(B.add_order <= 2).tolist())
        if S in naive_subbraces(B) and not naive_is_ideal(B, S):
            c6.append(B.name)
    report(capsys, 10, "small counterexamples", 60, t, bool(c4c2) and bool(c6),
           f"on C4xC2: {c4c2 or 'none'}; on C6: {c6 or 'none'}")


def _identities(B):
    """Star identities on all triples, square-zero powers, annihilator statements."""
    n, st, add, mul, neg = B.n, B.star_table, B.add, B.mul, B.neg
    a, b, c = np.indices((n, n, n))
    # a * (b + c) = a * b + a * c
    if not np.array_equal(st[a, add[b, c]], add[st[a, b], st[a, c]]):
        return "first star identity"
    # (ab) * c = a * (b * c) + b * c + a * c
    if not np.array_equal(st[mul[a, b], c], add[add[st[a, st[b, c]], st[b, c]], st[a, c]]):
        return "second star identity"
    for x in np.flatnonzero(st[np.arange(n), np.arange(n)] == 0):
        power, multiple = 0, 0
        for _ in range(int(B.add_order[x])):
            power, multiple = int(mul[power, x]), int(add[multiple, x])
            if power != multiple:
                return f"a^k != ka for a = {x}"
        if B.inv[x] != neg[x]:
            return f"a^-1 != -a for a = {x}"
    subsets = [SubsetMask(n, bits) for bits in range(1, 1 << n)] if n <= 8 else [s.mask for s in all_subbraces(B)]
    for S in subsets:
        left, right, full = annihilators(B, S)
        if closure(B, left, "multiplicative") != left or closure(B, right, "additive") != right:
            return f"annihilator of {S.elements.tolist()} not a subgroup"
        if closure(B, full, "multiplicative") != full:
            return f"annihilator of {S.elements.tolist()} not a subgroup"
        if not np.array_equal(mul[np.ix_(full.elements, S.elements)], mul[np.ix_(S.elements, full.elements)].T):
            return f"annihilator of {S.elements.tolist()} does not centralize it"
        if closure(B, S) == S and is_ideal(B, S):
            if not (is_normal_subgroup(mul, B.inv, left) and is_normal_subgroup(mul, B.inv, full)):
                return f"annihilators of ideal {S.elements.tolist()} not normal"
    rep = nilpotency_report(B)  # raises if descending and ascending criteria disagree
    if rep.centrally_nilpotent.holds != (rep.left_nilpotent.holds and rep.right_nilpotent.holds):
        return "central nilpotency is not left and right"
    return None


def _dimension_identity(phi):
    d = phi.dim
    rad_l, rad_r = radical(phi, "left"), radical(phi, "right")
    for U in all_subspaces(phi.p, d):
        if orthogonal(phi, U, "left").dim != d - U.dim + U.intersection(rad_r).dim:
            return False
        if orthogonal(phi, U, "right").dim != d - U.dim + U.intersection(rad_l).dim:
            return False
    return True


def test_criterion_11_identity_suites(capsys):
    t = time.perf_counter()
    corpus = enumerate_up_to(16) + [family(s) for s in family_specs((2, 3))]
    bad = []
    for B in corpus:
        problem = _identities(B)
        if problem:
            bad.append(f"{B.name}: {problem}")
    forms = 0
    for p, d in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)):
        for entries in itertools.product(range(p), repeat=d * d):
            phi = BilinearForm(p, tuple(tuple(entries[i * d:(i + 1) * d]) for i in range(d)))
            forms += 1
            if not _dimension_identity(phi):
                bad.append(f"dimension identity fails for {phi.matrix} over F{p}")
    report(capsys, 11, "identity and property suites", 180, t, not bad,
           f"{len(corpus)} braces, {forms} forms, failures: {bad or 'none'}")
