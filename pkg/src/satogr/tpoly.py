"""Weight-graded sparse polynomials in the time variables t_i^{(j)}.

A variable is a triple ``(family, component, i)``: ``family`` separates
independent copies (t, s, ...), ``component`` is the 0-based index j and
``i >= 1`` the weight.  A monomial is a sorted tuple of ``(variable, exponent)``
pairs.  A polynomial carries a weight ``bound``: every monomial of weight
``<= bound`` is known exactly, higher weights are unknown.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

INF = math.inf
FAMILY_NAMES = ("t", "s", "q", "w")

Var = tuple  # (family, component, index)
Mono = tuple  # ((Var, exp), ...)

ONE: Mono = ()


class WeightError(ArithmeticError):
    """An operation needed information beyond the known weight bound."""


@lru_cache(maxsize=None)
def mono_weight(m: Mono) -> int:
    return sum(v[2] * e for v, e in m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_key(m: Mono):
    return (mono_weight(m), m)


def var_name(v: Var) -> str:
    fam, j, i = v
    return f"{FAMILY_NAMES[fam]}{i}_{j + 1}"


def mono_str(m: Mono) -> str:
    if not m:
        return "1"
    return "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in m)


class TPoly:
    __slots__ = ("terms", "bound")

    def __init__(self, terms: Mapping[Mono, object] | None = None, bound=INF):
        if bound != INF:
            bound = int(bound)
        t = {}
        for m, c in (terms or {}).items():
            if mono_weight(m) > bound:
                continue
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                t[m] = c
        self.terms = t
        self.bound = bound

    @classmethod
    def _raw(cls, terms: dict, bound) -> "TPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p.bound = bound
        return p

    @classmethod
    def const(cls, c=1, bound=INF) -> "TPoly":
        return cls({ONE: c}, bound)

    @classmethod
    def zero(cls, bound=INF) -> "TPoly":
        return cls._raw({}, bound)

    @classmethod
    def var(cls, fam: int, j: int, i: int, c=1, bound=INF) -> "TPoly":
        return cls({(((fam, j, i), 1),): c}, bound)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def ord(self):
        """Lowest weight of a nonzero term; bound + 1 for a (known) zero."""
        if self.terms:
            return min(mono_weight(m) for m in self.terms)
        return self.bound + 1

    def constant(self) -> Fraction:
        if self.bound < 0:
            raise WeightError("constant term unknown")
        return self.terms.get(ONE, Fraction(0))

    def coeff(self, m: Mono) -> Fraction:
        if mono_weight(m) > self.bound:
            raise WeightError(f"monomial {mono_str(m)} beyond weight bound {self.bound}")
        return self.terms.get(m, Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def leading(self):
        """First nonzero term in the (weight, monomial) order, or None."""
        if not self.terms:
            return None
        m = min(self.terms, key=mono_key)
        return m, self.terms[m]

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    # arithmetic
    def __add__(self, other: "TPoly") -> "TPoly":
        bound = min(self.bound, other.bound)
        t = {m: c for m, c in self.terms.items() if mono_weight(m) <= bound}
        for m, c in other.terms.items():
            if mono_weight(m) > bound:
                continue
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return TPoly._raw(t, bound)

    def __neg__(self) -> "TPoly":
        return TPoly._raw({m: -c for m, c in self.terms.items()}, self.bound)

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def scale(self, c) -> "TPoly":
        c = Fraction(c)
        if not c:
            return TPoly._raw({}, self.bound)
        return TPoly._raw({m: c * v for m, v in self.terms.items()}, self.bound)

    def mul(self, other: "TPoly", cap=INF) -> "TPoly":
        bound = min(self.bound + other.ord(), other.bound + self.ord(), cap)
        t: dict = {}
        if self.terms and other.terms:
            ow = [(m, c, mono_weight(m)) for m, c in other.terms.items()]
            for m1, c1 in self.terms.items():
                w1 = mono_weight(m1)
                for m2, c2, w2 in ow:
                    if w1 + w2 > bound:
                        continue
                    m = mono_mul(m1, m2)
                    s = t.get(m, 0) + c1 * c2
                    if s:
                        t[m] = s
                    else:
                        t.pop(m, None)
        return TPoly._raw(t, bound)

    __mul__ = mul

    def truncate(self, bound) -> "TPoly":
        if bound >= self.bound:
            return self
        return TPoly._raw({m: c for m, c in self.terms.items() if mono_weight(m) <= bound}, bound)

    def deriv(self, v: Var) -> "TPoly":
        """Partial derivative in v; the weight bound drops by the weight of v."""
        t = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if not e:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            t[tuple(sorted(d.items()))] = c * e
        return TPoly._raw(t, self.bound - v[2])

    def set_zero(self, pred) -> "TPoly":
        """Substitute 0 for every variable v with pred(v) true."""
        return TPoly._raw(
            {m: c for m, c in self.terms.items() if not any(pred(v) for v, _ in m)}, self.bound
        )

    def substitute_scale(self, factor) -> "TPoly":
        """t_v -> factor(v) * t_v for each variable."""
        t = {}
        for m, c in self.terms.items():
            for v, e in m:
                c = c * Fraction(factor(v)) ** e
            if c:
                t[m] = c
        return TPoly._raw(t, self.bound)

    def rename(self, fmap) -> "TPoly":
        """Relabel variables with fmap(v) -> v' (weights must be preserved)."""
        t = {}
        for m, c in self.terms.items():
            d: dict = {}
            for v, e in m:
                w = fmap(v)
                d[w] = d.get(w, 0) + e
            t[tuple(sorted(d.items()))] = c
        return TPoly._raw(t, self.bound)

    def negate_vars(self) -> "TPoly":
        """f(t) -> f(-t)."""
        return TPoly._raw(
            {m: (-c if sum(e for _, e in m) % 2 else c) for m, c in self.terms.items()}, self.bound
        )

    def agrees_with(self, other: "TPoly") -> bool:
        b = min(self.bound, other.bound)
        return self.truncate(b).terms == other.truncate(b).terms

    def proportional_to(self, other: "TPoly"):
        """The scalar c with self = c*other on the common bound, or None."""
        b = min(self.bound, other.bound)
        a, o = self.truncate(b), other.truncate(b)
        if not a.terms and not o.terms:
            return Fraction(1)
        if not a.terms or not o.terms or set(a.terms) != set(o.terms):
            return None
        m = next(iter(a.terms))
        c = a.terms[m] / o.terms[m]
        return c if all(a.terms[k] == c * o.terms[k] for k in a.terms) else None

    def normalized(self) -> "TPoly":
        """Scale so that the leading coefficient is 1."""
        lead = self.leading()
        return self if lead is None else self.scale(1 / lead[1])

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.bound == other.bound and self.terms == other.terms

    def __hash__(self):
        return hash((self.bound, tuple(sorted(self.terms.items()))))

    def __str__(self):
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_str(m))
            elif c == -1:
                parts.append("-" + mono_str(m))
            else:
                parts.append(f"{c}*{mono_str(m)}")
        s = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.bound != INF:
            s += f" + O(w^{self.bound + 1})"
        return s

    def __repr__(self):
        return f"TPoly({str(self)!r})"


def tsum(polys: Iterable[TPoly], bound=INF) -> TPoly:
    out = TPoly.zero(bound)
    for p in polys:
        out = out + p
    return out


class TSeries:
    """Laurent series in one z-variable whose coefficients are TPolys.

    ``coeffs[k]`` is the coefficient of z^k.  Coefficients at ``k >= zprec``
    are unknown.  A missing key below ``zprec`` stands for zero known up to
    weight ``cap`` (the global weight cap of the computation).
    """

    __slots__ = ("coeffs", "zprec", "cap")

    def __init__(self, coeffs: Mapping[int, TPoly], zprec, cap=INF):
        self.coeffs = {k: p.truncate(cap) for k, p in coeffs.items() if k < zprec}
        self.zprec = zprec
        self.cap = cap

    def get(self, k: int) -> TPoly:
        if k >= self.zprec:
            raise WeightError(f"z-exponent {k} beyond precision {self.zprec}")
        p = self.coeffs.get(k)
        return p if p is not None else TPoly.zero(self.cap)

    def zord(self):
        ks = [k for k, p in self.coeffs.items() if not p.is_zero() or p.bound < self.cap]
        return min(ks) if ks else self.zprec

    def __add__(self, other: "TSeries") -> "TSeries":
        cap = min(self.cap, other.cap)
        zp = min(self.zprec, other.zprec)
        out = {}
        for k in set(self.coeffs) | set(other.coeffs):
            if k < zp:
                out[k] = self.get(k) + other.get(k)
        return TSeries(out, zp, cap)

    def scale(self, c) -> "TSeries":
        return TSeries({k: p.scale(c) for k, p in self.coeffs.items()}, self.zprec, self.cap)

    def shift(self, a: int) -> "TSeries":
        """Multiply by z^a."""
        return TSeries({k + a: p for k, p in self.coeffs.items()}, self.zprec + a, self.cap)

    def mul(self, other: "TSeries", cap=INF) -> "TSeries":
        cap = min(self.cap, other.cap, cap)
        zp = min(self.zprec + other.zord(), other.zprec + self.zord())
        out: dict[int, TPoly] = {}
        for a, p in self.coeffs.items():
            for b, q in other.coeffs.items():
                k = a + b
                if k >= zp:
                    continue
                prod = p.mul(q, cap)
                out[k] = out[k] + prod if k in out else prod
        return TSeries(out, zp, cap)

    def map(self, fn) -> "TSeries":
        return TSeries({k: fn(p) for k, p in self.coeffs.items()}, self.zprec, self.cap)

    def filter_exponents(self, pred) -> "TSeries":
        return TSeries({k: p for k, p in self.coeffs.items() if pred(k)}, self.zprec, self.cap)
