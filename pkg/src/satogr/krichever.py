"""Krichever points from explicit covering data, and the classification pipeline.

Four presentations are supported:

* ``DisjointRational``: r disjoint lines, coordinate f_i with one pole at the
  marked point of line i (default f_i = 1/z_i);
* ``CyclicCover``: the line u -> u^n = x over the line, marked at u = infinity;
* ``PlaneCurve``: an affine plane curve F(x, y) = 0 mapped to the x-line, with
  one branch seed per marked point above x = infinity;
* ``ExplicitAlgebra``: the algebra generated by given elements of V.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .grasspoint import (
    DEFAULT_SLACK,
    GrassPoint,
    close,
    decompose,
    from_vectors,
    index,
    is_ring,
    is_trace_stable,
    trace_subspace,
)
from .laurent import INF, CoverShape, LSeries, PuiseuxElement
from .report import FAIL, PASS, CheckReport

__all__ = [
    "DisjointRational",
    "CyclicCover",
    "PlaneCurve",
    "BranchSeed",
    "ExplicitAlgebra",
    "HenselError",
    "expand_branch",
    "krichever_point",
    "ClassReport",
    "classify",
    "p1_base_subspace",
    "parse_bivariate",
]


class HenselError(ValueError):
    """The seed is not a simple root, so Newton lifting does not apply."""


Bivariate = dict  # {(a, b): coefficient} for X^a Y^b


def parse_bivariate(text: str, xname="x", yname="y") -> Bivariate:
    """Parse a polynomial in two variables with rational coefficients."""
    import sympy

    x, y = sympy.symbols(f"{xname} {yname}")
    try:
        poly = sympy.Poly(sympy.sympify(text, locals={xname: x, yname: y}), x, y)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from exc
    out = {}
    for (a, b), c in poly.terms():
        if not c.is_Rational:
            raise ValueError(f"coefficient {c} is not rational")
        out[(int(a), int(b))] = Fraction(int(c.p), int(c.q))
    return out


def _eval_in_w(G: Bivariate, w: LSeries, prec: int) -> LSeries:
    """G(z, w(z)) where G = {(a, b): c} means c z^a w^b."""
    var = w.var
    out = LSeries({}, prec, var)
    powers = {0: LSeries({0: 1}, INF, var)}
    maxb = max(b for _, b in G)
    for b in range(1, maxb + 1):
        powers[b] = (powers[b - 1] * w).truncate(prec)
    for (a, b), c in G.items():
        out = out + powers[b].shift(a).scale(c).truncate(prec)
    return out


def _dw(G: Bivariate) -> Bivariate:
    return {(a, b - 1): c * b for (a, b), c in G.items() if b}


def expand_branch(G: Bivariate, seed, prec: int, var=None) -> LSeries:
    """The power series root w(z) of G(z, w) = 0 with w(0) = seed, modulo z^prec.

    ``G`` maps (a, b) to the coefficient of z^a w^b.  Newton steps double the
    precision each round.
    """
    seed = Fraction(seed)
    g0 = sum(c * seed ** b for (a, b), c in G.items() if a == 0)
    if g0 != 0:
        raise HenselError(f"seed {seed} is not a root of G(0, w)")
    dG = _dw(G)
    d0 = sum(c * seed ** b for (a, b), c in dG.items() if a == 0)
    if d0 == 0:
        raise HenselError(f"seed {seed} is a multiple root; supply a uniformized branch")
    w = LSeries({0: seed}, 1, var)
    cur = 1
    while cur < prec:
        cur = min(2 * cur, prec)
        w = LSeries(w.coeffs, cur, var)
        val = _eval_in_w(G, w, cur)
        der = _eval_in_w(dG, w, cur)
        w = (w - (val * der.inverse(cur)).truncate(cur)).truncate(cur)
    return w


@dataclass(frozen=True)
class BranchSeed:
    """A marked point above x = infinity: x = z_j^{-e}, y = z_j^{-k} w(z_j), w(0) = w0."""

    e: int
    k: int
    w0: Fraction


@dataclass(frozen=True)
class DisjointRational:
    e: tuple
    coords: tuple = ()  # optional per-component LSeries, default z_i^{-1}


@dataclass(frozen=True)
class CyclicCover:
    n: int


@dataclass(frozen=True)
class PlaneCurve:
    F: tuple  # sorted ((a, b), coefficient) pairs for x^a y^b
    seeds: tuple

    @classmethod
    def make(cls, F, seeds) -> "PlaneCurve":
        if isinstance(F, str):
            F = parse_bivariate(F)
        return cls(tuple(sorted((k, Fraction(v)) for k, v in F.items())),
                   tuple(BranchSeed(int(s[0]), int(s[1]), Fraction(s[2])) if not isinstance(s, BranchSeed) else s
                         for s in seeds))

    @property
    def shape(self) -> CoverShape:
        return CoverShape(tuple(s.e for s in self.seeds))


@dataclass(frozen=True)
class ExplicitAlgebra:
    generators: tuple
    degree: int


def branch_equation(F: dict, seed: BranchSeed) -> Bivariate:
    """G(z, w) = z^N F(z^{-e}, z^{-k} w) with N the least making G polynomial in z."""
    N = max(seed.e * a + seed.k * b for (a, b) in F)
    G = {}
    for (a, b), c in F.items():
        key = (N - seed.e * a - seed.k * b, b)
        G[key] = G.get(key, 0) + c
    return {k: v for k, v in G.items() if v}


def plane_curve_generators(curve: PlaneCurve, prec_exps: Sequence[int]):
    """The elements x and y of V for the given branches, y known to the given exponents."""
    shape = curve.shape
    F = dict(curve.F)
    xs, ys = [], []
    for j, s in enumerate(curve.seeds):
        G = branch_equation(F, s)
        w = expand_branch(G, s.w0, prec_exps[j] + s.k, var=j)
        xs.append(LSeries({-s.e: 1}, INF, j))
        ys.append(w.shift(-s.k))
    return PuiseuxElement(shape, xs), PuiseuxElement(shape, ys)


def _auto_degree(poles: Sequence[Fraction], Mg: int) -> int:
    q = min([p for p in poles if p > 0], default=Fraction(1))
    return max(1, math.ceil(Fraction(Mg) / q) + 1)


def krichever_point(cover, P: int = 6, M: int = 6, degree: int | None = None,
                    slack: int = DEFAULT_SLACK) -> GrassPoint:
    Mg = M + slack
    if isinstance(cover, DisjointRational):
        shape = CoverShape(cover.e)
        gens = []
        for i in range(shape.r):
            gens.append(PuiseuxElement.from_dicts(shape, [{0: 1} if j == i else {} for j in range(shape.r)]))
            if cover.coords:
                f = cover.coords[i]
                comps = [f if j == i else LSeries({}, INF, j) for j in range(shape.r)]
            else:
                comps = [LSeries({-1: 1} if j == i else {}, INF, j) for j in range(shape.r)]
            gens.append(PuiseuxElement(shape, comps))
        d = degree if degree is not None else max(e for e in shape.e) * Mg + 1
        return close(shape, gens, closure="algebra", degree=d, P=P, M=M, slack=slack,
                     label=f"disjoint lines {shape}")
    if isinstance(cover, CyclicCover):
        if cover.n < 1:
            raise ValueError("n must be >= 1")
        shape = CoverShape((cover.n,))
        d = degree if degree is not None else cover.n * Mg + 1
        return close(shape, [PuiseuxElement.monomial(shape, 0, -1)], closure="algebra", degree=d,
                     P=P, M=M, slack=slack, label=f"cyclic cover n={cover.n}")
    if isinstance(cover, PlaneCurve):
        shape = curve_shape = cover.shape
        poles_y = [Fraction(s.k, s.e) for s in cover.seeds]
        max_pole = max([Fraction(1)] + poles_y)
        d = degree if degree is not None else _auto_degree([Fraction(1)] + [max(p, 0) for p in poles_y], Mg)
        # products of d factors lose (d - 1) * max pole of precision
        extra = math.ceil((d - 1) * max_pole) + 1
        precs = [(P + extra) * e for e in curve_shape.e]
        x, y = plane_curve_generators(cover, precs)
        return close(shape, [x, y], closure="algebra", degree=d, P=P, M=M, slack=slack,
                     label="plane curve")
    if isinstance(cover, ExplicitAlgebra):
        gens = list(cover.generators)
        if not gens:
            raise ValueError("empty generator list")
        return close(gens[0].shape, gens, closure="algebra", degree=cover.degree, P=P, M=M, slack=slack,
                     label="explicit algebra")
    raise TypeError(f"unknown cover data {cover!r}")


# --- classification -----------------------------------------------------------------


def polynomial_base_point(P: int, M: int) -> GrassPoint:
    """C[z^{-1}] over e = (1)."""
    base = CoverShape((1,))
    return from_vectors(base, [{(0, -k): Fraction(1)} for k in range(0, M + DEFAULT_SLACK + 1)], P, M,
                        M + DEFAULT_SLACK, "C[1/z]")


def p1_base_subspace(pt: GrassPoint) -> CheckReport:
    """tr(U) = C[z^{-1}] on the window."""
    params = {"M": pt.M, "P": pt.P}
    tr, rep, _ = trace_subspace(pt, require_stable=False)
    ref = polynomial_base_point(pt.P, pt.M)
    if tr.same_as(ref):
        return CheckReport("p1_base_subspace", PASS, None, params)
    missing = [k for k in range(0, pt.M + 1) if tr.dim(k) != k + 1]
    return CheckReport("p1_base_subspace", FAIL, {"first_mismatch_pole_order": missing[0] if missing else None},
                       params)


@dataclass
class ClassReport:
    ring: CheckReport
    trace_stable: CheckReport
    index: int | None
    certified: bool
    genus: int | None
    base_index: int | None
    base_genus: int | None
    trace_equals_intersection: CheckReport | None
    p1_base: CheckReport
    decomposition: list | None
    index_report: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "ring": self.ring.to_dict(),
            "trace_stable": self.trace_stable.to_dict(),
            "index": self.index,
            "certified": self.certified,
            "genus": self.genus,
            "base_index": self.base_index,
            "base_genus": self.base_genus,
            "trace_equals_intersection": None if self.trace_equals_intersection is None
            else self.trace_equals_intersection.to_dict(),
            "p1_base": self.p1_base.to_dict(),
            "decomposition": self.decomposition,
            "connected": None if self.decomposition is not None or self.index_report.get("r", 1) < 2 else True,
            "index_report": self.index_report,
        }


def classify(pt: GrassPoint) -> ClassReport:
    ring = is_ring(pt)
    ts = is_trace_stable(pt)
    ix = index(pt)
    genus = 1 - ix.index if ix.certified else None
    base_index = base_genus = None
    teq = None
    if ts.passed:
        tr, teq, bix = trace_subspace(pt)
        if bix.certified:
            base_index = bix.index
            base_genus = 1 - bix.index
        p1 = p1_base_subspace(pt)
    else:
        p1 = CheckReport("p1_base_subspace", FAIL, {"reason": "not trace-stable"}, {"M": pt.M, "P": pt.P})
    dec = decompose(pt) if pt.shape.r >= 2 else None
    info = ix.to_dict()
    info["r"] = pt.shape.r
    return ClassReport(ring, ts, ix.index, ix.certified, genus, base_index, base_genus, teq, p1, dec, info)
