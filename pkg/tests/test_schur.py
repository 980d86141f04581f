from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exp_generating_coeffs, tpoly_to_sympy
from satogr.schur import (
    Partition,
    chi_derivative,
    chi_pair,
    d_operator,
    partitions,
    pieri,
    power_sum,
    removable_strips,
    schur_chi,
    shift_tau,
    vertex_factor,
)
from satogr.tpoly import TPoly

t = lambda i, j=0: TPoly.var(0, j, i)


def test_power_sum_examples():
    assert power_sum(0) == TPoly.const(1)
    assert power_sum(1, 1) == t(1, 1)
    assert power_sum(2) == t(2) + (t(1) * t(1)).scale(Fraction(1, 2))


def test_chi_examples():
    assert schur_chi((1,)) == t(1)
    assert schur_chi((1, 1)) == (t(1) * t(1)).scale(Fraction(1, 2)) - t(2)
    assert schur_chi((2,)) == power_sum(2)


def test_chi_derivative_examples():
    c21 = schur_chi((2, 1))
    assert chi_derivative((2, 1), 0, c21).constant() == 1
    assert chi_derivative((2,), 0, schur_chi((1, 1))).constant() == 0
    f = t(1) * t(2) + t(3)
    assert chi_derivative((), 0, f) == f


def test_generating_function_weight_8():
    """sum_k p_k z^k = exp(sum_i t_i z^i), expanded independently by sympy."""
    ts, gen = exp_generating_coeffs(8)
    for k in range(9):
        assert sympy.expand(tpoly_to_sympy(power_sum(k), ts) - gen[k]) == 0


def test_pieri_examples():
    assert pieri((1,), 1) == {Partition((2,)), Partition((1, 1))}
    lam = Partition((3, 1))
    assert pieri(lam, 0) == {lam}


@pytest.mark.parametrize("total", range(0, 7))
def test_pieri_identity(total):
    for m in range(total + 1):
        for lam in partitions(total - m):
            lhs = schur_chi(lam) * power_sum(m)
            rhs = TPoly.zero()
            for mu in pieri(lam, m):
                rhs = rhs + schur_chi(mu)
            assert lhs == rhs


def test_removable_strips_inverse_of_pieri():
    for n in range(6):
        for lam in partitions(n):
            for m in range(n + 1):
                for mu in removable_strips(lam, m):
                    assert lam in pieri(mu, m)


def test_d_operator_examples():
    f = schur_chi((1,)) + schur_chi((2,)).scale(3)
    assert d_operator((2,), 1, 0, f) == chi_pair((1,), 0, f)
    g = schur_chi((2, 1)).scale(5)
    assert d_operator((2, 1), 0, 0, g) == chi_pair((2, 1), 0, g)


@pytest.mark.parametrize("n", range(0, 5))
def test_d_identity(n):
    """D_{lam,m} f|_0 = chi_lam(d~)(p_m f)|_0 for every lam of weight n."""
    f = TPoly.zero()
    for k, lam in enumerate(p for w in range(n + 1) for p in partitions(w)):
        f = f + schur_chi(lam).scale(k + 1)
    for lam in partitions(n):
        for m in range(n + 1):
            lhs = d_operator(lam, m, 0, f).constant()
            rhs = chi_pair(lam, 0, power_sum(m) * f).constant()
            assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_chi_pair_is_derivative_at_zero(data):
    lam = data.draw(st.sampled_from([p for w in range(4) for p in partitions(w)]))
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
    basis = [t(1), t(2), t(1) * t(1), t(1, 1), t(3) * t(1, 1), t(1) * t(2)]
    f = TPoly.const(1)
    for c, b in zip(coeffs, basis):
        f = f + b.scale(c)
    sign = data.draw(st.sampled_from([1, -1]))
    direct = chi_derivative(lam, 0, f, sign=sign).set_zero(lambda v: v[1] == 0)
    assert chi_pair(lam, 0, f, sign=sign) == direct


def test_shift_examples():
    s = shift_tau(t(1), 0, 1, zprec=3)
    assert s.get(0) == t(1) and s.get(1).constant() == 1 and s.get(2).is_zero()
    one = shift_tau(TPoly.const(1), 0, 1, zprec=3)
    assert one.get(0).constant() == 1 and one.get(1).is_zero()
    m = shift_tau(t(2), 0, -1, zprec=3)
    assert m.get(0) == t(2) and m.get(2).constant() == Fraction(-1, 2)


def test_vertex_factor_inverse():
    cap = 5
    prod = vertex_factor(0, 1, cap=cap).mul(vertex_factor(0, -1, cap=cap), cap)
    for k in range(-cap, 1):
        p = prod.get(k)
        assert p.is_zero() == (k != 0)
    assert prod.get(0).constant() == 1
