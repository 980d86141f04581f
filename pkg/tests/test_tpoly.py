from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from satogr.tpoly import INF, TPoly, TSeries, WeightError, mono_weight

VARS = [(0, 0, 1), (0, 0, 2), (0, 1, 1), (1, 0, 1), (0, 0, 3)]
SYM = {v: sympy.Symbol(f"x{n}") for n, v in enumerate(VARS)}


@st.composite
def tpolys(draw, bound=None):
    n = draw(st.integers(0, 5))
    terms = {}
    for _ in range(n):
        exps = draw(st.lists(st.integers(0, 2), min_size=len(VARS), max_size=len(VARS)))
        m = tuple((v, e) for v, e in zip(VARS, exps) if e)
        terms[m] = draw(st.fractions(-4, 4, max_denominator=5))
    if bound is None:
        bound = draw(st.one_of(st.just(INF), st.integers(0, 8)))
    return TPoly(terms, bound)


def to_sympy(p: TPoly):
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in m:
            term *= SYM[v] ** e
        expr += term
    return sympy.expand(expr)


def truncated(expr, bound):
    """Drop monomials of weight > bound (oracle side)."""
    expr = sympy.expand(expr)
    if bound == INF:
        return expr
    poly = sympy.Poly(expr, *SYM.values()) if expr != 0 else None
    if poly is None:
        return expr
    out = sympy.Integer(0)
    weights = [v[2] for v in VARS]
    for exps, c in poly.terms():
        if sum(w * e for w, e in zip(weights, exps)) <= bound:
            out += c * sympy.Mul(*[s ** e for s, e in zip(SYM.values(), exps)])
    return sympy.expand(out)


@given(tpolys(), tpolys())
def test_mul_matches_sympy(a, b):
    p = a * b
    assert p.bound == min(a.bound + b.ord(), b.bound + a.ord())
    assert to_sympy(p) == truncated(to_sympy(a) * to_sympy(b), p.bound)


@given(tpolys(), tpolys(), tpolys())
def test_ring_axioms(a, b, c):
    assert ((a + b) * c).agrees_with(a * c + b * c)
    assert (a * b).agrees_with(b * a)
    assert (a - a).is_zero()


@given(tpolys())
def test_negate_vars_involution(a):
    assert a.negate_vars().negate_vars() == a
    assert (a.negate_vars() * a.negate_vars()).agrees_with((a * a).negate_vars())


@given(tpolys(bound=INF))
def test_deriv_matches_sympy(a):
    for v in VARS:
        assert to_sympy(a.deriv(v)) == sympy.expand(sympy.diff(to_sympy(a), SYM[v]))


def test_stored_monomials_within_bound():
    t1 = TPoly.var(0, 0, 1)
    p = TPoly({((VARS[0], 3),): 1, ((VARS[0], 1),): 2}, 2)
    assert all(mono_weight(m) <= 2 for m in p.terms)
    assert p.coeff(((VARS[0], 1),)) == 2
    with pytest.raises(WeightError):
        p.coeff(((VARS[0], 3),))
    assert (t1 * t1).coeff(((VARS[0], 2),)) == 1


def test_proportional():
    a = TPoly({(): 2, ((VARS[0], 1),): 6})
    b = TPoly({(): 1, ((VARS[0], 1),): 3})
    assert a.proportional_to(b) == 2
    assert a.normalized() == b
    assert a.proportional_to(TPoly.const(1)) is None


def test_str_marks_truncation():
    p = TPoly({(): 1, ((VARS[0], 1),): Fraction(-1, 2)}, 3)
    assert str(p) == "1 - 1/2*t1_1 + O(w^4)"


def test_tseries_precision():
    one = TSeries({0: TPoly.const(1, 5)}, 3, 5)
    zinv = TSeries({-1: TPoly.const(1, 5)}, 3, 5)
    p = one.mul(zinv)
    assert p.zprec == 2
    assert p.get(-1).constant() == 1
    with pytest.raises(WeightError):
        p.get(2)
