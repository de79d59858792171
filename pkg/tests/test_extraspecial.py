import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bracelab.brace import EngineError, FiniteBrace, abelian_brace, validate
from bracelab.corpus import family_specs
from bracelab.extraspecial import (
    FamilySpec,
    brace_from_form,
    classify_strong,
    dedekind_criterion,
    extract_form,
    family,
    quotient_basis,
    recognize_extraspecial,
)
from bracelab.fp import BilinearForm, all_vectors, is_strong_nondegenerate
from bracelab.isomorphism import isomorphism_search
from bracelab.series import compute_series
from bracelab.substructures import socle_fix_centre

from conftest import naive_is_brace

SPECS_5 = family_specs((2, 3, 5))


def star_formula(spec, a, b):
    """Star products written out coordinate by coordinate."""
    m, p = spec.m, spec.p
    if spec.family == "E0":
        return (0, m * a[0] * b[0] % p)
    k1, k2, t1, t2 = a[0], a[1], b[0], b[1]
    extra = k1 * t2 if spec.family == "E2" else 0
    return (0, 0, (m * k1 * t1 + extra + k2 * t2) % p)


@pytest.mark.parametrize("spec", SPECS_5, ids=str)
def test_family_star_products(spec):
    A = family(spec)
    assert A.n == spec.order
    labels = [A.codec.decode(i) for i in range(A.n)]
    for a, b in itertools.product(range(A.n), repeat=2):
        assert labels[int(A.star_table[a, b])] == star_formula(spec, labels[a], labels[b])


@pytest.mark.parametrize("spec", [s for s in SPECS_5 if s.order <= 27], ids=str)
def test_family_tables_satisfy_the_naive_brace_oracle(spec):
    A = family(spec)
    assert naive_is_brace(A.add, A.mul)


def test_family_examples():
    A = family(FamilySpec("E2", 1, 2))
    assert A.label(A.star(A.element(1, 0, 0), A.element(0, 1, 0))) == "(0,0,1)"
    assert family(FamilySpec("E1", 0, 7)).n == 343
    with pytest.raises(ValueError):
        FamilySpec("E0", 0, 3)
    with pytest.raises(ValueError):
        FamilySpec("E1", 5, 5)
    with pytest.raises(ValueError):
        FamilySpec("E3", 1, 5)
    with pytest.raises(ValueError):
        FamilySpec("E0", 1, 4)


def test_form_construction_matches_families():
    for spec in SPECS_5:
        A, B = brace_from_form(spec.form), family(spec)
        assert np.array_equal(A.mul, B.mul) and np.array_equal(A.add, B.add)
    p = 5
    assert np.array_equal(brace_from_form(BilinearForm(p, ((3,),))).mul, family(FamilySpec("E0", 3, p)).mul)
    assert np.array_equal(brace_from_form(BilinearForm.diag(p, 2, 1)).mul, family(FamilySpec("E1", 2, p)).mul)


def test_zero_form_gives_abelian_brace():
    A = brace_from_form(BilinearForm(3, ((0, 0), (0, 0))))
    assert A.is_abelian() and recognize_extraspecial(A) is None


@st.composite
def small_forms(draw):
    p = draw(st.sampled_from([2, 3]))
    d = draw(st.sampled_from([1, 2]))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=d, max_size=d), min_size=d, max_size=d))
    return BilinearForm(p, tuple(map(tuple, rows)))


@given(small_forms())
def test_any_form_gives_a_brace(phi):
    A = brace_from_form(phi)
    validate(A.add, A.mul)
    cert = recognize_extraspecial(A)
    assert (cert is not None) == (not phi.is_zero())
    if cert is not None:
        assert cert.strong == is_strong_nondegenerate(phi)


def test_recognition_examples(e013):
    assert recognize_extraspecial(abelian_brace((3, 3))) is None
    cert = recognize_extraspecial(e013)
    assert e013.label(cert.c) == "(0,1)" and cert.strong
    cert = recognize_extraspecial(family(FamilySpec("E1", 0, 5)))
    assert cert is not None and not cert.strong


def _brute_force_coords(A, basis, c, p):
    """Coefficients of every element over basis + [c], found by trying all combinations."""
    gens = list(basis) + [c]
    out = {}
    for coeffs in itertools.product(range(p), repeat=len(gens)):
        x = 0
        for k, g in zip(coeffs, gens):
            for _ in range(k):
                x = int(A.add[x, g])
        out[x] = coeffs
    assert len(out) == A.n
    return out


def _relabel(A, seed):
    rng = np.random.default_rng(seed)
    perm = np.concatenate([[0], 1 + rng.permutation(A.n - 1)])
    inv = np.argsort(perm)
    return FiniteBrace(perm[A.add[np.ix_(inv, inv)]], perm[A.mul[np.ix_(inv, inv)]])


@pytest.mark.parametrize("spec", SPECS_5, ids=str)
def test_extract_form_is_the_star_product(spec):
    E = family(spec)
    for A in (E, _relabel(E, spec.m + spec.p)):
        cert = recognize_extraspecial(A)
        assert cert is not None
        basis = quotient_basis(A, cert)
        phi = extract_form(A, cert, basis)
        coords = _brute_force_coords(A, basis, cert.c, spec.p)
        d = phi.dim
        for a, b in itertools.product(range(A.n), repeat=2):
            k = phi(coords[a][:d], coords[b][:d])
            assert coords[int(A.star_table[a, b])] == (0,) * d + (k,)
        assert is_strong_nondegenerate(phi) == cert.strong
        if A is E:
            assert phi == spec.form
        else:
            assert isomorphism_search(brace_from_form(phi), A) is not None


def test_extract_examples():
    for m in (1, 2, 4):
        E = family(FamilySpec("E0", m, 5))
        assert extract_form(E, recognize_extraspecial(E)).matrix == ((m,),)
    E = family(FamilySpec("E2", 3, 5))
    assert extract_form(E, recognize_extraspecial(E)).matrix == ((3, 1), (0, 1))


def test_stale_certificate_is_rejected(e013, e125):
    cert = recognize_extraspecial(e013)
    with pytest.raises(ValueError):
        extract_form(e125, cert)


def _strong_by_hand(spec):
    p, m = spec.p, spec.m
    lin = 1 if spec.family == "E2" else 0
    if spec.family == "E0":
        return True
    # phi(x, x) = m a^2 + lin a b + b^2
    return all((m * a * a + lin * a * b + b * b) % p for a, b in all_vectors(p, 2) if (a, b) != (0, 0))


@pytest.mark.parametrize("spec", family_specs((2, 3, 5, 7)), ids=str)
def test_strongness_matches_the_form_and_the_polynomial(spec):
    E = family(spec)
    cert = recognize_extraspecial(E)
    assert cert.strong == is_strong_nondegenerate(spec.form) == _strong_by_hand(spec)
    if spec.family != "E0":
        lin = 1 if spec.family == "E2" else 0
        rootless = all((spec.m * x * x + lin * x + 1) % spec.p for x in range(spec.p))
        assert cert.strong == (spec.m != 0 and rootless)


@pytest.mark.parametrize("spec", family_specs((2, 3, 5, 7)), ids=str)
def test_extraspecial_star_square_and_socle(spec):
    E = family(spec)
    cert = recognize_extraspecial(E)
    stars = set(np.unique(E.star_table).tolist())
    assert stars <= set(cert.C.elements.tolist())
    assert len(stars) == spec.p  # E * E is all of C
    assert compute_series(E, "socle")[2].is_full()


def test_classify_examples(e013):
    spec, hom = classify_strong(family(FamilySpec("E0", 2, 5)))
    assert spec.family == "E0" and spec.p == 5 and hom.is_homomorphism() and hom.is_bijective()
    phi = BilinearForm(5, ((1, 1), (0, 1)))
    assert is_strong_nondegenerate(phi)
    spec, hom = classify_strong(brace_from_form(phi))
    assert spec.family in ("E1", "E2") and hom.is_homomorphism() and hom.is_bijective()
    assert classify_strong(e013)[0] == FamilySpec("E0", 1, 3)
    with pytest.raises(ValueError):
        classify_strong(family(FamilySpec("E1", 0, 3)))


def test_classification_is_total_over_small_fields():
    # dim <= 2 over F2 and F3 here; F5 runs in the acceptance suite
    count = 0
    for p in (2, 3):
        for d in (1, 2):
            for entries in itertools.product(range(p), repeat=d * d):
                phi = BilinearForm(p, tuple(tuple(entries[i * d:(i + 1) * d]) for i in range(d)))
                if not is_strong_nondegenerate(phi):
                    continue
                E = brace_from_form(phi)
                spec, hom = classify_strong(E)
                assert E.n <= p**3 and hom.is_bijective() and hom.is_homomorphism()
                assert np.array_equal(hom.target.mul, family(spec).mul)
                count += 1
    assert count > 10


def test_classify_on_relabelled_brace():
    E = _relabel(family(FamilySpec("E2", 2, 3)), 3)
    spec, hom = classify_strong(E)
    assert spec.p == 3 and hom.is_homomorphism() and hom.is_bijective()


def test_dedekind_criterion_examples():
    assert all(dedekind_criterion(FamilySpec("E0", m, p)) for p in (2, 3, 5, 7) for m in range(1, p))
    assert not dedekind_criterion(FamilySpec("E1", 1, 5))
    assert dedekind_criterion(FamilySpec("E1", 2, 5))
    assert dedekind_criterion(FamilySpec("E2", 1, 2))


def test_centre_equals_socle_for_strong_families():
    for spec in SPECS_5:
        E = family(spec)
        soc, _, zeta = socle_fix_centre(E)
        cert = recognize_extraspecial(E)
        if cert.strong:
            assert soc == zeta == cert.C


def test_engine_error_when_no_family_matches(monkeypatch):
    from bracelab import extraspecial

    monkeypatch.setattr(extraspecial, "_congruence", lambda phi, psi: None)
    with pytest.raises(EngineError):
        classify_strong(family(FamilySpec("E0", 1, 3)))
