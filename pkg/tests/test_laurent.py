from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satogr.laurent import (
    INF,
    CoverShape,
    LSeries,
    PrecisionError,
    PuiseuxElement,
    ShapeError,
    embed_base,
    format_element,
    format_series,
    omitted_index,
    parse_element,
    parse_series,
    t2_pair,
    trace,
    vm_element,
    vm_exponents,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
shapes = st.lists(st.integers(1, 4), min_size=1, max_size=3).map(lambda e: CoverShape(tuple(e)))


@st.composite
def series(draw, var=0, exact=None):
    coeffs = draw(st.dictionaries(st.integers(-4, 4), fractions, max_size=5))
    if exact is None:
        exact = draw(st.booleans())
    prec = INF if exact else draw(st.integers(5, 9))
    return LSeries(coeffs, prec, var)


@st.composite
def units(draw, var=0):
    """Series with a nonzero leading coefficient known to it."""
    lead = draw(st.integers(-3, 3))
    c = draw(fractions.filter(bool))
    rest = draw(st.dictionaries(st.integers(lead + 1, lead + 5), fractions, max_size=4))
    return LSeries({lead: c, **rest}, draw(st.integers(lead + 6, lead + 9)), var)


def test_unit_product():
    a = LSeries({1: 1}, 5, 0)
    b = LSeries({-1: 1}, 5, 0)
    p = a * b
    assert p.prec == 4 and p.coeffs == {0: 1}


def test_disjoint_supports_add():
    a = LSeries({1: 2, 3: 1}, INF, 0)
    b = LSeries({-2: 5}, INF, 0)
    assert (a + b).coeffs == {1: 2, 3: 1, -2: 5}


def test_orthogonal_components():
    s = CoverShape((1, 1))
    p = parse_element("z1^-1; 0", s) * parse_element("0; z2^-1", s)
    assert p.is_zero()


def test_unknown_is_not_zero():
    a = LSeries({0: 1}, 3, 0)
    assert a[2] == 0
    with pytest.raises(PrecisionError):
        a[3]
    assert (a - LSeries({0: 1}, INF, 0)).is_zero()
    assert (a - LSeries({0: 1}, INF, 0)).prec == 3


@given(series(), series(), series())
def test_mul_associative_commutative(a, b, c):
    assert (a * b).agrees_with(b * a)
    assert ((a * b) * c).agrees_with(a * (b * c))


@given(series(), series())
def test_mul_precision_rule(a, b):
    p = a * b
    oa, ob = a.ord(), b.ord()
    if oa is None or ob is None:
        return
    assert p.prec == min(a.prec + ob, b.prec + oa)


@given(units())
def test_inverse(a):
    inv = a.inverse()
    one = a * inv
    assert one.prec >= 1
    assert one.agrees_with(LSeries({0: 1}, INF, 0))


def test_embed_base_examples():
    s = CoverShape((1, 2))
    v = embed_base(LSeries({1: 1}), s)
    assert v.comps[0].coeffs == {1: 1} and v.comps[1].coeffs == {2: 1}
    one = embed_base(LSeries({0: 1}), s)
    assert all(c.coeffs == {0: 1} for c in one.comps)
    assert embed_base(LSeries({-1: 1}), CoverShape((2,))).comps[0].coeffs == {-2: 1}


def test_trace_examples():
    s = CoverShape((2,))
    assert trace(PuiseuxElement.monomial(s, 0, 2)).coeffs == {1: 2}
    assert trace(PuiseuxElement.monomial(s, 0, 3)).is_zero()
    s11 = CoverShape((1, 1))
    v = parse_element("z1^-1 + 2; 3*z2^4", s11)
    assert trace(v).coeffs == {-1: 1, 0: 2, 4: 3}


@given(shapes, st.dictionaries(st.integers(-4, 4), fractions, max_size=4))
def test_trace_of_embedding_is_n_times(shape, d):
    f = LSeries(d)
    t = trace(embed_base(f, shape))
    assert t.agrees_with(f.scale(shape.n))


def test_t2_examples():
    s = CoverShape((2,))
    z = lambda k: PuiseuxElement.monomial(s, 0, k)
    assert t2_pair(z(1), z(-3)) == 2
    assert t2_pair(z(0), z(-1)) == 0
    s11 = CoverShape((1, 1))
    assert t2_pair(parse_element("1; 0", s11), parse_element("z1^-1; z2^-1", s11)) == 1


@given(shapes, st.data())
def test_t2_symmetric_bilinear(shape, data):
    el = lambda: PuiseuxElement(shape, [data.draw(series(i, exact=True)) for i in range(shape.r)])
    a, b, c = el(), el(), el()
    x = data.draw(fractions)
    assert t2_pair(a, b) == t2_pair(b, a)
    assert t2_pair(a.scale(x) + c, b) == x * t2_pair(a, b) + t2_pair(c, b)


def test_vm_examples():
    assert vm_exponents(-2, CoverShape((2,))) == [-2]
    assert vm_exponents(1, CoverShape((2,))) == [1]
    assert vm_exponents(-1, CoverShape((1, 2))) == [0, -1]
    v = vm_element(-1, CoverShape((1, 2)))
    assert v.comps[0].coeffs == {0: 1} and v.comps[1].coeffs == {-1: 1}


@settings(max_examples=60)
@given(shapes, st.integers(-8, 8))
def test_vm_properties(shape, m):
    if m == omitted_index(shape):
        with pytest.raises(ValueError):
            vm_exponents(m, shape)
        return
    a = vm_exponents(m, shape)
    assert sum(a) == m
    w = shape.r - shape.n - m
    if w != omitted_index(shape):
        b = vm_exponents(w, shape)
        assert [x + y for x, y in zip(a, b)] == [1 - e for e in shape.e]


def test_omitted_index():
    assert omitted_index(CoverShape((3,))) == -1
    assert omitted_index(CoverShape((2,))) is None
    assert omitted_index(CoverShape((1, 1))) is None


@given(series(var=1))
def test_format_parse_roundtrip(a):
    assert parse_series(format_series(a), 1) == a


def test_parse_errors():
    s = CoverShape((1, 1))
    with pytest.raises(ShapeError):
        parse_element("z1", s)
    with pytest.raises(ValueError):
        parse_series("z1^-1 + + 3", 0)
    with pytest.raises(ValueError):
        parse_series("z2", 0)


def test_format_element():
    s = CoverShape((1, 1))
    v = parse_element("z1^-1 - 1/2 + O(z1^3); 0", s)
    assert format_element(v) == "z1^-1 - 1/2 + O(z1^3); 0"
    assert parse_element(format_element(v), s) == v
    assert Fraction(-1, 2) == v.comps[0][0]
