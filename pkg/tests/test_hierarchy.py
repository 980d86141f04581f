import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cyclic, disjoint, gamma_twisted, joukowski, perturbed, polynomial, skew_ring, vminus
from oracles import cyclotomic_collapse
from satogr.hierarchy import (
    _trace_zprec,
    check_decomposable_product,
    check_decomposable_residues,
    check_hurwitz_bilinear,
    check_hurwitz_operator_form,
    check_mring_equations,
    check_nkp,
    check_p1_base,
    collapse,
    hurwitz_residue,
    operator_values,
    product_coeff,
)
from satogr.laurent import INF, LSeries, vm_exponents
from satogr.schur import chi_pair
from satogr.tpoly import TPoly, TSeries

t2 = TPoly.var(0, 0, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.dictionaries(st.integers(-9, 9), st.integers(-5, 5).filter(bool), max_size=6))
def test_collapse_matches_cyclotomic_sum(e, coeffs):
    got = collapse(LSeries(coeffs), e)
    assert got.coeffs == cyclotomic_collapse(coeffs, e)


def test_collapse_precision():
    s = LSeries({0: 1, 3: 2}, 7)
    assert collapse(s, 3).prec == 3
    ts = TSeries({-2: TPoly.const(1), 1: TPoly.const(5)}, 4, 3)
    c = collapse(ts, 2)
    assert c.zprec == 2 and c.get(-1).constant() == 2


def test_product_coeff_matches_full_product():
    t1 = TPoly.var(0, 0, 1)
    a = TSeries({-1: t1, 0: TPoly.const(1), 1: TPoly.const(2)}, INF, 4)
    b = TSeries({-1: t1.scale(3), 1: TPoly.const(1)}, INF, 4)
    full = a.mul(b, 4)
    for k in range(-2, 3):
        assert product_coeff([a, b], k, 4).agrees_with(full.get(k))


def test_nkp_self_and_pair():
    assert check_nkp(perturbed(), perturbed(), 3).passed
    rep = check_nkp(vminus(), perturbed(), 3)
    assert rep.failed
    assert rep.witness["u"] == 1 and rep.witness["v"] == 1 and "monomial" in rep.witness


def test_nkp_refuses_mismatched_points():
    with pytest.raises(ValueError):
        check_nkp(vminus(), disjoint(), 2)
    with pytest.raises(ValueError):
        check_nkp(vminus(), polynomial(), 2)


@pytest.mark.parametrize("c, ok", [(1, True), (-1, True), (2, False)])
def test_hurwitz_on_skew_rings(c, ok):
    rep = check_hurwitz_bilinear(skew_ring(c), 3)
    assert rep.passed == ok and rep.details["agree"] is True


def test_hurwitz_point_passes():
    rep = check_hurwitz_bilinear(cyclic(2), 3)
    assert rep.passed and rep.details["agree"] is True


def test_mring():
    assert check_mring_equations(vminus(), 3).failed
    rep = check_mring_equations(cyclic(2), 3)
    assert rep.passed and rep.details["agree"] is True


def test_decomposable():
    assert check_decomposable_residues(disjoint(), [0], 3).passed
    rep = check_decomposable_residues(joukowski(), [0], 3)
    assert rep.failed and rep.details["agree"] is True
    assert check_decomposable_product(disjoint(), 3).details["subsets"] == [[1]]
    assert check_decomposable_product(joukowski(), 3).failed
    with pytest.raises(ValueError):
        check_decomposable_residues(vminus(), [0], 3)


def test_p1_base():
    assert check_p1_base(cyclic(2), 3).passed
    rep = check_p1_base(gamma_twisted(), 3)
    assert rep.failed and rep.details["agree"] is True


def test_operator_values_are_derivatives_of_residue():
    """value(lambda, mu) = -chi_lambda(d~_t) chi_mu(d~_s) of the residue at t = s = 0."""
    for c in (2, "1/2"):
        pt = skew_ring(c)
        Z = _trace_zprec(3, pt.shape, vm_exponents(0, pt.shape))
        for u in range(2):
            for v in range(2):
                res = hurwitz_residue(pt, u, v, 3, Z)
                for (lams, mus), val in operator_values(pt, u, v, 2, 3).items():
                    f = res
                    for i, lam in enumerate(lams):
                        f = chi_pair(lam, i, f, 0)
                    for i, mu in enumerate(mus):
                        f = chi_pair(mu, i, f, 1)
                    assert val == -f.constant()


def test_operator_form_detects_corrupted_tau():
    pt = cyclic(2)
    assert check_hurwitz_operator_form(pt, 2, 3).passed
    bad = check_hurwitz_operator_form(pt, 2, 3, tamper=lambda kind, j, tau: tau + t2 if kind == "psi" else tau)
    assert bad.failed and "lambda" in bad.witness


def test_random_pairs_fail_with_witness():
    rng = random.Random(5)
    cs = rng.sample(range(-4, 5), 3)
    for a in cs:
        for b in cs:
            if a != b:
                rep = check_nkp(perturbed(str(a)), perturbed(str(b)), 2)
                assert rep.failed and rep.witness["coefficient"] != Fraction(0)


def test_cubic_family_rejects_gap_point_from_weight_four():
    """span{1, 1/z} + z^-3 C[1/z]: the first violated equation has total weight 4."""
    from satogr.grasspoint import close
    from satogr.laurent import CoverShape, parse_element

    e1 = CoverShape((1,))
    pt = close(e1, [parse_element("1", e1), parse_element("z1^-1", e1)], tail=[parse_element("z1^-3", e1)],
               P=14, M=14)
    low = check_mring_equations(pt, 3)
    assert low.passed and low.details["agree"] is False
    rep = check_mring_equations(pt, 4)
    assert rep.failed and rep.details["cubic"] == "fail" and rep.details["agree"] is True
    assert rep.witness["weight"] == 4
