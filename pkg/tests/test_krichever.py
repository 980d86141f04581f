from fractions import Fraction

import pytest
import sympy

from conftest import E11, cyclic, disjoint, elliptic, gamma_twisted, joukowski
from satogr.grasspoint import close, contains
from satogr.krichever import (
    ExplicitAlgebra,
    HenselError,
    classify,
    expand_branch,
    krichever_point,
    parse_bivariate,
)
from satogr.laurent import CoverShape, LSeries, parse_element


def sympy_coeffs(expr, n):
    z = sympy.Symbol("z")
    s = sympy.series(expr, z, 0, n).removeO()
    return [Fraction(str(s.coeff(z, k))) for k in range(n)]


def test_sqrt_branch():
    w = expand_branch(parse_bivariate("y^2 - 1 - x"), 1, 8)
    z = sympy.Symbol("z")
    assert [w[k] for k in range(8)] == sympy_coeffs(sympy.sqrt(1 + z), 8)
    assert w.prec == 8


def test_linear_branch():
    w = expand_branch(parse_bivariate("y - x"), 0, 6)
    assert w.coeffs == {1: 1}


def test_series_reversion():
    w = expand_branch(parse_bivariate("y + y^3 + 2*y^5 - x"), 0, 10)
    back = w + w * w * w + (w * w * w * w * w).scale(2)
    assert back.agrees_with(LSeries({1: 1}))
    assert back.prec >= 10


def test_hensel_errors():
    with pytest.raises(HenselError):
        expand_branch(parse_bivariate("y^2 - x"), 0, 5)
    with pytest.raises(HenselError):
        expand_branch(parse_bivariate("y^2 - 1 - x"), 2, 5)


def test_parse_bivariate_rejects_irrational():
    with pytest.raises(ValueError):
        parse_bivariate("y^2 - sqrt(2)*x")


def test_classify_disjoint():
    rep = classify(disjoint())
    assert rep.certified and rep.index == 2 and rep.genus == -1
    assert rep.decomposition == [[1], [2]]
    assert rep.ring.passed and rep.trace_stable.passed and rep.p1_base.passed


def test_classify_joukowski():
    rep = classify(joukowski())
    assert rep.index == 1 and rep.genus == 0
    assert rep.decomposition is None and rep.to_dict()["connected"] is True
    assert rep.base_genus == 0 and rep.p1_base.passed


def test_classify_elliptic():
    rep = classify(elliptic())
    assert rep.certified and rep.genus == 1
    assert rep.ring.passed
    assert contains(elliptic(), parse_element("z1^-2", CoverShape((2,))))[0]
    assert not contains(elliptic(), parse_element("z1^-1", CoverShape((2,))))[0]


def test_classify_gamma_twist():
    rep = classify(gamma_twisted())
    assert rep.trace_stable.passed
    assert rep.p1_base.failed
    assert rep.index == 0 and rep.ring.failed


def test_classify_non_ring():
    pt = close(E11, [parse_element("z1^-1; 0", E11), parse_element("0; z2^-1", E11)], P=8, M=8)
    assert classify(pt).ring.failed


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_genus_zero(n):
    rep = classify(cyclic(n, 10, 10))
    assert rep.certified and rep.genus == 0
    assert rep.ring.passed and rep.trace_stable.passed and rep.p1_base.passed


def test_explicit_algebra_point():
    gens = (parse_element("z1^-1; z2^-1", E11),)
    pt = krichever_point(ExplicitAlgebra(gens, 6), P=8, M=8)
    assert classify(pt).trace_stable.passed
