import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    E1,
    E11,
    disjoint,
    joukowski,
    perturbed,
    polynomial,
    random_big_cell,
    vminus,
)
from satogr.grasspoint import (
    close,
    contains,
    decompose,
    dual,
    from_vectors,
    index,
    is_ring,
    is_trace_stable,
    subset_test,
    trace_subspace,
    twist,
)
from satogr.laurent import CoverShape, PrecisionError, PuiseuxElement, parse_element


def test_close_linear_dims():
    pt = close(E1, [parse_element("z1^-1", E1)], P=6, M=6)
    assert [pt.dim(m) for m in range(0, 4)] == [0, 1, 1, 1]


def test_close_algebra_monomials():
    pt = close(E1, [parse_element("z1^-1", E1)], closure="algebra", degree=4, P=6, M=6)
    assert sorted(tuple(r) for _, r in pt.rows()) == [((0, -4),), ((0, -3),), ((0, -2),), ((0, -1),), ((0, 0),)]


def test_close_algebra_two_components():
    pt = close(E11, [parse_element("z1^-1; z2", E11)], closure="algebra", degree=3, P=6, M=6)
    for text in ("z1^-3; z2^3", "z1^-2; z2^2", "1; 1"):
        assert contains(pt, parse_element(text, E11))[0]


@pytest.mark.parametrize("make, expected", [
    (lambda: vminus(), 0),
    (lambda: polynomial(), 1),
    (lambda: disjoint((1, 1, 1), 8, 8), 3),
])
def test_index_examples(make, expected):
    rep = index(make())
    assert rep.certified and rep.index == expected


def test_index_reports_kernel():
    rep = index(polynomial())
    assert rep.dim_ker == 1 and rep.dim_coker == 0


def test_uncertified_when_a_component_has_no_poles():
    pt = close(E11, [parse_element("z1^-1; 0", E11)], P=6, M=6)
    rep = index(pt)
    assert not rep.certified and "no poles" in rep.message


def test_contains_examples():
    V = vminus()
    assert contains(V, parse_element("z1^-1", E1))[0]
    assert not contains(V, parse_element("1", E1))[0]
    assert not contains(perturbed(), parse_element("z1^-1", E1))[0]
    with pytest.raises(PrecisionError):
        contains(V, parse_element("z1^-40", E1))


def test_is_ring_examples():
    assert is_ring(polynomial()).passed
    assert is_ring(vminus()).failed
    e2 = CoverShape((2,))
    cusp = close(e2, [parse_element("1", e2)], tail=[parse_element("z1^-2", e2), parse_element("z1^-3", e2)],
                 P=10, M=10)
    assert is_ring(cusp).passed


def _plus_vplus(shape, extra, P):
    vecs = [dict(parse_element(t, shape).columns()) for t in extra]
    vecs += [{(i, k): Fraction(1)} for i, e in enumerate(shape.e) for k in range(0, P * e)]
    return from_vectors(shape, vecs, P, 4)


def test_trace_stability_examples():
    assert is_trace_stable(disjoint()).passed
    bad = _plus_vplus(E11, ["z1^-1; 0"], 6)
    rep = is_trace_stable(bad)
    assert rep.failed and rep.witness["residual"] == {"component": 2, "exponent": -1}
    e2 = CoverShape((2,))
    c2 = close(e2, [parse_element("z1^-1", e2)], closure="algebra", degree=20, P=8, M=8)
    assert is_trace_stable(c2).passed


def test_trace_subspace_examples():
    e2 = CoverShape((2,))
    c2 = close(e2, [parse_element("z1^-1", e2)], closure="algebra", degree=20, P=8, M=8)
    even = close(e2, [parse_element("1", e2)], tail=[parse_element("z1^-2", e2)], P=8, M=8)
    for pt in (disjoint(), c2, even):
        tr, eq, ix = trace_subspace(pt)
        assert eq.passed
        assert ix.certified and ix.index == 1
        assert tr.same_as(polynomial(8, 8), 6, 6)


def test_dual_of_vminus():
    V = vminus((1,), 8, 8)
    D = dual(V)
    assert D.same_as(V, min(D.M, V.M), min(D.P, V.P))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(1,), (2,), (1, 1), (1, 2)]), st.integers(-1, 2))
def test_dual_involution_and_index(seed, e, shift):
    shape = CoverShape(e)
    U = random_big_cell(random.Random(seed), shape, 9, 9)
    if shift:
        U = twist(U, PuiseuxElement.z_monomial(shape, [shift] + [0] * (shape.r - 1)))
    D = dual(U)
    DD = dual(D)
    assert DD.same_as(U, min(DD.M, U.M), min(DD.P, U.P))
    iu, idu = index(U), index(D)
    assert iu.certified and idu.certified
    assert idu.index == shape.r - shape.n - iu.index


def test_twist_examples():
    z = parse_element("z1", E1)
    T = twist(polynomial(), z)
    assert index(T).index == 2
    assert twist(polynomial(), parse_element("1", E1)).same_as(polynomial())
    g = parse_element("1 + 2*z1^-1 + z1", E1)
    back = twist(twist(perturbed(), g), g.inverse(30))
    assert back.same_as(perturbed(), 8, 8)


def test_decompose_examples():
    assert decompose(disjoint()) == [[1], [2]]
    assert decompose(joukowski(8, 8)) is None
    assert subset_test(joukowski(8, 8), [0]).failed
    with pytest.raises(ValueError):
        decompose(polynomial())
