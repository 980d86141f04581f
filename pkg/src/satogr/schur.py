"""Schur polynomial calculus in the time variables.

``power_sum(k)`` is the coefficient p_k of z^k in exp(sum_k t_k z^k) (the
elementary Schur polynomial), and chi_lambda = det(p_{lambda_i - i + j}).
The scaled gradient is d~ = (d/dt_1, 1/2 d/dt_2, 1/3 d/dt_3, ...).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .tpoly import INF, TPoly, TSeries, WeightError

__all__ = [
    "Partition",
    "partitions",
    "power_sum",
    "schur_chi",
    "chi_derivative",
    "chi_pair",
    "pieri",
    "removable_strips",
    "d_operator",
    "shift_tau",
    "vertex_factor",
]


class Partition(tuple):
    """A Young diagram stored as a weakly decreasing tuple of positive parts."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        return self[i] if i < len(self) else 0

    def __repr__(self):
        return f"Partition({tuple(self)})"


def partitions(n: int, max_part=None):
    """All partitions of n, largest parts first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield Partition((k,) + tuple(rest))


# --- p_k and chi_lambda in an abstract single-variable family -------------------
# Internally the polynomials live in the variables (0, 0, i); they are renamed to
# the requested family and component on output.


@lru_cache(maxsize=None)
def _p(k: int) -> TPoly:
    if k < 0:
        return TPoly.zero()
    if k == 0:
        return TPoly.const(1)
    # k p_k = sum_{i=1}^k i t_i p_{k-i}
    acc = TPoly.zero()
    for i in range(1, k + 1):
        acc = acc + TPoly.var(0, 0, i, i) * _p(k - i)
    return acc.scale(Fraction(1, k))


def _det(mat):
    """Determinant of a small matrix of TPolys by cofactor expansion with memo."""
    n = len(mat)
    memo = {}

    def rec(row, cols):
        if row == n:
            return TPoly.const(1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = TPoly.zero()
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                continue
            entry = mat[row][c]
            # sign = (-1)^(number of unused columns before c)
            if not entry.is_zero():
                term = entry * rec(row + 1, cols | (1 << c))
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, 0)


@lru_cache(maxsize=None)
def _chi(lam: tuple) -> TPoly:
    n = len(lam)
    if n == 0:
        return TPoly.const(1)
    mat = [[_p(lam[i] - i + j) for j in range(n)] for i in range(n)]
    return _det(mat)


def _place(p: TPoly, j: int, fam: int, sign: int = 1) -> TPoly:
    out = p.rename(lambda v: (fam, j, v[2]))
    return out.negate_vars() if sign < 0 else out


def power_sum(k: int, j: int = 0, fam: int = 0, W=INF, sign: int = 1) -> TPoly:
    """p_k(sign * t^{(j)}), truncated at weight bound W."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > W:
        raise WeightError(f"p_{k} exceeds weight bound {W}")
    return _place(_p(k), j, fam, sign).truncate(W)


def schur_chi(lam, j: int = 0, fam: int = 0, W=INF) -> TPoly:
    lam = Partition(lam)
    if lam.weight > W:
        raise WeightError(f"chi_{tuple(lam)} exceeds weight bound {W}")
    return _place(_chi(tuple(lam)), j, fam).truncate(W)


# --- differential operators --------------------------------------------------------


def chi_derivative(lam, j: int, f: TPoly, fam: int = 0, sign: int = 1) -> TPoly:
    """chi_lambda(sign * d~_{t^{(j)}}) applied to f (no evaluation)."""
    lam = Partition(lam)
    op = _chi(tuple(lam))
    out = TPoly.zero(f.bound - lam.weight)
    for m, c in op.terms.items():
        g = f
        for (_, _, i), e in m:
            v = (fam, j, i)
            for _ in range(e):
                g = g.deriv(v)
            c = c * Fraction(sign, i) ** e
        out = out + g.scale(c)
    return out


def _extract_factor(m, j, fam):
    """Split a monomial into its t^{(j)} part (as exponent map) and the rest."""
    mine, rest = {}, []
    for v, e in m:
        if v[0] == fam and v[1] == j:
            mine[v[2]] = e
        else:
            rest.append((v, e))
    return mine, tuple(rest)


def chi_pair(lam, j: int, f: TPoly, fam: int = 0, sign: int = 1) -> TPoly:
    """chi_lambda(sign * d~_{t^{(j)}}) f evaluated at t^{(j)} = 0.

    Uses d^a t^a = prod a_i!, so only monomials of f whose t^{(j)} part has
    weight |lambda| contribute.
    """
    lam = Partition(lam)
    wt = lam.weight
    if wt > f.bound:
        raise WeightError(f"f known to weight {f.bound}, need {wt}")
    op = _chi(tuple(lam))
    opc = {}
    for m, c in op.terms.items():
        key = tuple(sorted((v[2], e) for v, e in m))
        opc[key] = c
    out: dict = {}
    for m, c in f.terms.items():
        mine, rest = _extract_factor(m, j, fam)
        if sum(i * e for i, e in mine.items()) != wt:
            continue
        key = tuple(sorted(mine.items()))
        a = opc.get(key)
        if not a:
            continue
        factor = Fraction(1)
        for i, e in mine.items():
            factor *= Fraction(sign, i) ** e * math.factorial(e)
        val = out.get(rest, 0) + a * factor * c
        if val:
            out[rest] = val
        else:
            out.pop(rest, None)
    return TPoly(out, f.bound - wt)


def pieri(lam, m: int) -> set:
    """All mu containing lambda with mu/lambda a horizontal m-strip."""
    lam = Partition(lam)
    L = len(lam)
    res = set()

    def rec(i, left, acc):
        if i == L + 1:
            if left == 0:
                res.add(Partition(acc))
            return
        lo = lam.part(i)
        hi = lo + left if i == 0 else min(lam.part(i - 1), lo + left)
        for x in range(lo, hi + 1):
            rec(i + 1, left - (x - lo), acc + [x])

    rec(0, m, [])
    return res


def removable_strips(lam, m: int) -> set:
    """All mu inside lambda with lambda/mu a horizontal m-strip."""
    lam = Partition(lam)
    L = len(lam)
    res = set()

    def rec(i, left, acc):
        if i == L:
            if left == 0:
                res.add(Partition(acc))
            return
        hi = lam[i]
        lo = max(lam.part(i + 1), hi - left)
        for x in range(lo, hi + 1):
            rec(i + 1, left - (hi - x), acc + [x])

    rec(0, m, [])
    return res


def d_operator(lam, m: int, j: int, f: TPoly, fam: int = 0, sign: int = 1) -> TPoly:
    """D_{lambda,m}(sign d~) f = sum over lambda/mu horizontal m-strips of chi_mu(sign d~) f |_0."""
    out = None
    for mu in sorted(removable_strips(lam, m)):
        term = chi_pair(mu, j, f, fam, sign)
        out = term if out is None else out + term
    if out is None:
        return TPoly.zero(f.bound - Partition(lam).weight + m)
    return out


# --- shifts -------------------------------------------------------------------------


def shift_tau(f: TPoly, j: int, sign: int = 1, zprec=None, fam: int = 0, cap=INF) -> TSeries:
    """f(t + sign*[z_j]) as a series in z_j, where [z]_i = z^i / i.

    The coefficient of z^k is p_k(sign * d~^{(j)}) f and is known to weight
    bound(f) - k.
    """
    if zprec is None:
        if f.bound == INF:
            raise ValueError("zprec required for an exact polynomial")
        zprec = int(f.bound) + 1
    out: dict[int, dict] = {}
    for m, c in f.terms.items():
        mine, rest = _extract_factor(m, j, fam)
        # expand prod_i (t_i + sign z^i / i)^{e_i}
        partial = {(0, ()): c}
        for i, e in mine.items():
            nxt = {}
            for b in range(e + 1):
                coef = math.comb(e, b) * Fraction(sign, i) ** b
                zk = i * b
                left = e - b
                for (k0, mono), c0 in partial.items():
                    if k0 + zk >= zprec:
                        continue
                    mm = mono + (((fam, j, i), left),) if left else mono
                    key = (k0 + zk, mm)
                    nxt[key] = nxt.get(key, 0) + c0 * coef
            partial = nxt
        for (k, mono), c0 in partial.items():
            if not c0:
                continue
            full = tuple(sorted(rest + mono))
            d = out.setdefault(k, {})
            s = d.get(full, 0) + c0
            if s:
                d[full] = s
            else:
                d.pop(full, None)
    coeffs = {k: TPoly(out.get(k, {}), f.bound - k) for k in range(0, zprec)}
    return TSeries(coeffs, zprec, cap)


def vertex_factor(j: int, sign: int, fam: int = 0, cap=INF, zprec=INF) -> TSeries:
    """exp(sign * sum_i t_i^{(j)} z^{-i}) = sum_k p_k(sign t) z^{-k}, kept to weight cap."""
    if cap == INF:
        raise ValueError("vertex_factor needs a finite weight cap")
    coeffs = {-k: power_sum(k, j, fam, sign=sign) for k in range(int(cap) + 1)}
    return TSeries(coeffs, zprec, cap)
