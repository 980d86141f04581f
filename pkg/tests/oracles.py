"""Independent oracles shared by the unit and acceptance suites."""

from fractions import Fraction

import sympy


def cyclotomic_collapse(coeffs: dict, e: int) -> dict:
    """sum_j s(xi^j w) for xi = exp(2 pi i / e), rewritten in z = w^e.

    Each root-of-unity sum is simplified by sympy; a surviving coefficient of
    w^k with e not dividing k would be a bug in the oracle itself.
    """
    xi = sympy.exp(2 * sympy.pi * sympy.I / e)
    out = {}
    for k, c in coeffs.items():
        s = sympy.nsimplify(sympy.simplify(sympy.expand_complex(sum(xi ** (j * k) for j in range(e)))))
        if s == 0:
            continue
        assert k % e == 0, (k, e, s)
        out[k // e] = Fraction(c) * Fraction(int(s))
    return out


def exp_generating_coeffs(n: int):
    """Coefficients of z^0..z^n in exp(sum_i t_i z^i) as sympy expressions in t1..tn.

    Multiplies the truncated exponentials exp(t_i z^i) one variable at a time.
    """
    ts = sympy.symbols(f"t1:{n + 1}")
    z = sympy.Symbol("z")
    acc = sympy.Poly(1, z)
    for i, t in enumerate(ts, start=1):
        f = sympy.Poly(sum((t * z ** i) ** k / sympy.factorial(k) for k in range(n // i + 1)), z)
        acc = acc * f
        acc = sympy.Poly(sum(c * z ** d for (d,), c in acc.terms() if d <= n), z)
    return ts, [sympy.expand(acc.coeff_monomial(z ** k)) for k in range(n + 1)]


def tpoly_to_sympy(p, ts):
    """A single-family, single-component TPoly as a sympy expression in ts."""
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for (_, _, i), e in mono:
            term *= ts[i - 1] ** e
        expr += term
    return sympy.expand(expr)
