"""Truncated Laurent series over Q and elements of V = prod_i Q((z_i)).

Each component field is ``Q((z_i))`` with ``z_i ** e_i = z``.  A series keeps
an explicit precision: coefficients at exponents ``>= prec`` are *unknown*,
which is different from zero.  Exact (polynomial) data uses ``prec = INF``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

INF = math.inf

__all__ = [
    "INF",
    "CoverShape",
    "LSeries",
    "PuiseuxElement",
    "PrecisionError",
    "ShapeError",
    "embed_base",
    "trace",
    "t2_pair",
    "vm_element",
    "vm_exponents",
    "omitted_index",
    "parse_series",
    "parse_element",
    "format_series",
    "format_element",
]


class PrecisionError(ArithmeticError):
    """A requested coefficient lies beyond the known precision."""


class ShapeError(ValueError):
    pass


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True)
class CoverShape:
    """Ramification data (e_1, ..., e_r) of the fibre."""

    e: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(x) for x in self.e)
        if not e or any(x < 1 for x in e):
            raise ShapeError(f"invalid shape {self.e!r}")
        object.__setattr__(self, "e", e)

    @property
    def r(self) -> int:
        return len(self.e)

    @property
    def n(self) -> int:
        return sum(self.e)

    def __iter__(self):
        return iter(self.e)

    def __str__(self):
        return "(" + ",".join(map(str, self.e)) + ")"


class LSeries:
    """Truncated Laurent series sum c_k x^k + O(x^prec) with rational coefficients.

    ``var`` is ``None`` for the base variable z and the component index
    (0-based) for z_i.
    """

    __slots__ = ("var", "coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, object] | None = None, prec=INF, var=None):
        if prec != INF:
            prec = int(prec)
        cs = {}
        for k, c in (coeffs or {}).items():
            k = int(k)
            if k >= prec:
                continue
            c = _frac(c)
            if c:
                cs[k] = c
        self.var = var
        self.coeffs = cs
        self.prec = prec

    # construction helpers
    @classmethod
    def monomial(cls, k: int, c=1, var=None, prec=INF) -> "LSeries":
        return cls({k: c}, prec, var)

    @classmethod
    def zero(cls, var=None, prec=INF) -> "LSeries":
        return cls({}, prec, var)

    # basic queries
    def ord(self):
        """Lowest exponent with a nonzero coefficient, or None for (known) zero."""
        return min(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.prec == INF

    def __getitem__(self, k: int) -> Fraction:
        if k >= self.prec:
            raise PrecisionError(f"coefficient of exponent {k} unknown (precision {self.prec})")
        return self.coeffs.get(k, Fraction(0))

    def _check(self, other: "LSeries"):
        if self.var != other.var:
            raise ShapeError(f"variable mismatch: {self.var} vs {other.var}")

    # arithmetic
    def __add__(self, other: "LSeries") -> "LSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        cs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            cs[k] = cs.get(k, 0) + c
        return LSeries(cs, prec, self.var)

    def __neg__(self) -> "LSeries":
        return LSeries({k: -c for k, c in self.coeffs.items()}, self.prec, self.var)

    def __sub__(self, other: "LSeries") -> "LSeries":
        return self + (-other)

    def scale(self, c) -> "LSeries":
        c = _frac(c)
        if c == 0:
            return LSeries({}, self.prec, self.var)
        return LSeries({k: c * v for k, v in self.coeffs.items()}, self.prec, self.var)

    def shift(self, k: int) -> "LSeries":
        """Multiply by x**k."""
        return LSeries({a + k: c for a, c in self.coeffs.items()}, self.prec + k, self.var)

    def __mul__(self, other: "LSeries") -> "LSeries":
        self._check(other)
        a, b = self.ord(), other.ord()
        if (a is None and self.prec == INF) or (b is None and other.prec == INF):
            return LSeries({}, INF, self.var)
        # an unknown-but-zero-so-far series still has a lower bound on its order
        oa = a if a is not None else self.prec
        ob = b if b is not None else other.prec
        prec = min(self.prec + ob, other.prec + oa)
        cs: dict[int, Fraction] = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                k = i + j
                if k < prec:
                    cs[k] = cs.get(k, 0) + x * y
        return LSeries(cs, prec, self.var)

    def __pow__(self, k: int) -> "LSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = LSeries({0: 1}, INF, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, prec) -> "LSeries":
        return LSeries(self.coeffs, min(self.prec, prec), self.var)

    def inverse(self, prec=None) -> "LSeries":
        """Multiplicative inverse; exact series are inverted to relative precision ``prec``."""
        a = self.ord()
        if a is None:
            raise ZeroDivisionError("series is zero at known precision")
        lead = self.coeffs[a]
        if len(self.coeffs) == 1 and self.prec == INF:
            return LSeries({-a: 1 / lead}, INF, self.var)
        rel = self.prec - a  # relative precision of the unit part
        if rel == INF:
            if prec is None:
                raise PrecisionError("inverse of a non-monomial exact series needs a precision")
            rel = prec + a
        rel = int(rel)
        u = [self.coeffs.get(a + i, Fraction(0)) / lead for i in range(rel)]
        inv = [Fraction(0)] * rel
        if rel:
            inv[0] = Fraction(1)
        for i in range(1, rel):
            s = Fraction(0)
            for j in range(1, i + 1):
                if u[j]:
                    s += u[j] * inv[i - j]
            inv[i] = -s
        return LSeries({i - a: c / lead for i, c in enumerate(inv)}, rel - a, self.var)

    def __eq__(self, other):
        if not isinstance(other, LSeries):
            return NotImplemented
        return self.var == other.var and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.prec, tuple(sorted(self.coeffs.items()))))

    def agrees_with(self, other: "LSeries") -> bool:
        """True when both series coincide on their common precision."""
        p = min(self.prec, other.prec)
        ks = {k for k in self.coeffs if k < p} | {k for k in other.coeffs if k < p}
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in ks)

    def __repr__(self):
        return f"LSeries({format_series(self)!r})"


class PuiseuxElement:
    """An element (f_1(z_1), ..., f_r(z_r)) of V."""

    __slots__ = ("shape", "comps")

    def __init__(self, shape: CoverShape, comps: Iterable[LSeries]):
        comps = tuple(comps)
        if len(comps) != shape.r:
            raise ShapeError(f"expected {shape.r} components, got {len(comps)}")
        for i, c in enumerate(comps):
            if c.var != i:
                raise ShapeError(f"component {i} carries variable tag {c.var}")
        self.shape = shape
        self.comps = comps

    @classmethod
    def from_dicts(cls, shape: CoverShape, dicts, prec=INF) -> "PuiseuxElement":
        precs = prec if isinstance(prec, (list, tuple)) else [prec] * shape.r
        return cls(shape, [LSeries(d, p, i) for i, (d, p) in enumerate(zip(dicts, precs))])

    @classmethod
    def monomial(cls, shape: CoverShape, i: int, k: int, c=1) -> "PuiseuxElement":
        return cls.from_dicts(shape, [{k: c} if j == i else {} for j in range(shape.r)])

    @classmethod
    def one(cls, shape: CoverShape) -> "PuiseuxElement":
        return cls.from_dicts(shape, [{0: 1}] * shape.r)

    @classmethod
    def zero(cls, shape: CoverShape, prec=INF) -> "PuiseuxElement":
        return cls.from_dicts(shape, [{}] * shape.r, prec)

    @classmethod
    def z_monomial(cls, shape: CoverShape, exps) -> "PuiseuxElement":
        """The monomial (z_1^a_1, ..., z_r^a_r)."""
        return cls.from_dicts(shape, [{int(a): 1} for a in exps])

    def _check(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check(other)
        return PuiseuxElement(self.shape, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._check(other)
        return PuiseuxElement(self.shape, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return PuiseuxElement(self.shape, [-a for a in self.comps])

    def __mul__(self, other):
        self._check(other)
        return PuiseuxElement(self.shape, [a * b for a, b in zip(self.comps, other.comps)])

    def __pow__(self, k: int):
        return PuiseuxElement(self.shape, [a ** k for a in self.comps])

    def scale(self, c):
        return PuiseuxElement(self.shape, [a.scale(c) for a in self.comps])

    def inverse(self, prec=None):
        return PuiseuxElement(self.shape, [a.inverse(prec) for a in self.comps])

    def truncate(self, zprec) -> "PuiseuxElement":
        """Truncate at z-precision ``zprec`` (component i keeps exponents < zprec*e_i)."""
        return PuiseuxElement(
            self.shape, [c.truncate(zprec * e) for c, e in zip(self.comps, self.shape.e)]
        )

    def project(self, subset) -> "PuiseuxElement":
        """Keep the components in ``subset``, zero the others (exactly)."""
        subset = set(subset)
        return PuiseuxElement(
            self.shape,
            [c if i in subset else LSeries({}, INF, i) for i, c in enumerate(self.comps)],
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def valuation(self):
        """min_i ord(f_i)/e_i as a Fraction (z-valuation), None if zero."""
        vals = [Fraction(c.ord(), e) for c, e in zip(self.comps, self.shape.e) if c.ord() is not None]
        return min(vals) if vals else None

    def pole_order(self) -> int:
        """Smallest integer p >= 0 with the element in z^{-p} V_+ (known part)."""
        v = self.valuation()
        if v is None or v >= 0:
            return 0
        return math.ceil(-v)

    def zprec(self):
        """Precision in z units: floor(min_i prec_i / e_i)."""
        p = min(Fraction(c.prec, e) if c.prec != INF else INF for c, e in zip(self.comps, self.shape.e))
        return p if p == INF else math.floor(p)

    def columns(self):
        """Iterate over ((i, k), coefficient) pairs."""
        for i, c in enumerate(self.comps):
            for k, v in c.coeffs.items():
                yield (i, k), v

    def __eq__(self, other):
        if not isinstance(other, PuiseuxElement):
            return NotImplemented
        return self.shape == other.shape and self.comps == other.comps

    def __hash__(self):
        return hash((self.shape, self.comps))

    def agrees_with(self, other) -> bool:
        return all(a.agrees_with(b) for a, b in zip(self.comps, other.comps))

    def __repr__(self):
        return f"PuiseuxElement({format_element(self)!r})"


# --- maps between C((z)) and V -------------------------------------------


def embed_base(f: LSeries, shape: CoverShape) -> PuiseuxElement:
    """Diagonal embedding C((z)) -> V, z |-> (z_1^e_1, ..., z_r^e_r)."""
    if f.var is not None:
        raise ShapeError("embed_base expects a series in the base variable z")
    return PuiseuxElement(
        shape,
        [LSeries({k * e: c for k, c in f.coeffs.items()}, f.prec * e, i) for i, e in enumerate(shape.e)],
    )


def trace(v: PuiseuxElement) -> LSeries:
    """Trace of V over C((z)): Tr_i(z_i^k) = e_i z^{k/e_i} when e_i | k, else 0."""
    out: dict[int, Fraction] = {}
    prec = INF
    for c, e in zip(v.comps, v.shape.e):
        if c.prec != INF:
            prec = min(prec, -(-c.prec // e))
        for k, x in c.coeffs.items():
            if k % e == 0:
                out[k // e] = out.get(k // e, 0) + e * x
    return LSeries(out, prec, None)


def t2_pair(a: PuiseuxElement, b: PuiseuxElement) -> Fraction:
    """Residue pairing T_2(a, b) = res_{z=0} tr(a b) dz."""
    a._check(b)
    return trace(a * b)[-1]


# --- v_m -------------------------------------------------------------------


def omitted_index(shape: CoverShape):
    """The excluded index (r-n)/2, or None when there is none.

    When n = r the middle index is 0 and v_0 = 1, so nothing is excluded.
    """
    if (shape.r - shape.n) % 2 or shape.n == shape.r:
        return None
    return (shape.r - shape.n) // 2


def _vm_exponents(m: int, shape: CoverShape) -> list[int]:
    r, n = shape.r, shape.n
    base = [1 - e for e in shape.e]  # z^{-1} z_.
    if 2 * m == r - n and omitted_index(shape) is not None:
        raise ValueError(f"index m = {m} = (r-n)/2 is excluded for shape {shape}")
    if 2 * m > r - n:
        other = _vm_exponents(r - n - m, shape)
        return [b - o for b, o in zip(base, other)]
    d = n - r
    if d == 0:
        q, p = 0, m  # balanced monomial of total degree m
        s, t = divmod(p, r)
    else:
        q = -((m) // d)  # q = ceil(-m / d)
        p = q * d + m  # -m = q d - p, 0 <= p < d
        s, t = divmod(p, r)
    return [q * b + s + (1 if i < t else 0) for i, b in enumerate(base)]


def vm_element(m: int, shape: CoverShape) -> PuiseuxElement:
    """Monomial v_m = (z_1^a_1, ..., z_r^a_r) with sum a_i = m.

    Satisfies v_m v_{r-n-m} = z^{-1} z_. for every admissible m.
    """
    return PuiseuxElement.z_monomial(shape, _vm_exponents(m, shape))


def vm_exponents(m: int, shape: CoverShape) -> list[int]:
    return _vm_exponents(m, shape)


# --- text format -------------------------------------------------------------

_TERM = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<var>z\d*)(?:\^(?P<exp>-?\d+))?)?$"
)
_BIGO = re.compile(r"^O\((?P<var>z\d*)(?:\^(?P<exp>-?\d+))?\)$")


def _var_index(name: str, expected):
    idx = None if name == "z" else int(name[1:]) - 1
    if expected is not None and name == "z":
        return expected
    return idx


def parse_series(text: str, var=None) -> LSeries:
    """Parse ``c*z1^k`` terms (``+``/``-`` separated) with optional ``O(z1^p)``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty series")
    coeffs: dict[int, Fraction] = {}
    prec = INF
    parts = [p for p in re.split(r"(?<![\^(])(?=[+-])", s) if p]
    for part in parts:
        sign = 1
        if part[0] in "+-":
            sign = -1 if part[0] == "-" else 1
            part = part[1:]
        m = _BIGO.match(part)
        if m:
            if _var_index(m.group("var"), var) != var:
                raise ValueError(f"variable {m.group('var')} does not match component")
            prec = min(prec, int(m.group("exp") or 1))
            continue
        m = _TERM.match(part)
        if not m or not part:
            raise ValueError(f"cannot parse term {part!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("var"):
            if _var_index(m.group("var"), var) != var:
                raise ValueError(f"variable {m.group('var')} does not match component")
            k = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            if m.group("exp") is not None:
                raise ValueError(f"cannot parse term {part!r}")
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * coef
    return LSeries(coeffs, prec, var)


def parse_element(text: str, shape: CoverShape) -> PuiseuxElement:
    """Parse ``;``-separated components into an element of V."""
    parts = text.split(";")
    if len(parts) != shape.r:
        raise ShapeError(f"expected {shape.r} components separated by ';', got {len(parts)}")
    return PuiseuxElement(
        shape, [parse_series(p, i) if p.strip() not in ("", "0") else LSeries({}, INF, i) for i, p in enumerate(parts)]
    )


def format_series(f: LSeries) -> str:
    name = "z" if f.var is None else f"z{f.var + 1}"
    terms = []
    for k in sorted(f.coeffs):
        c = f.coeffs[k]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = name if k == 1 else f"{name}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if f.prec != INF:
        terms.append(("+", f"O({name}^{f.prec})"))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_element(v: PuiseuxElement) -> str:
    return "; ".join(format_series(c) for c in v.comps)
