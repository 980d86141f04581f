"""Points of the Sato Grassmannian gr(V) on a finite window.

A point is stored as a fully reduced echelon basis of U + z^P V_+ restricted
to vectors with poles of order at most ``Mg`` (the generation bound).  The
filtration U(m) = U ∩ z^{-m} V_+ is trusted for m <= M.  Columns are
``(i, k)`` meaning z_i^k, ordered by z-valuation k/e_i and then component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .laurent import (
    INF,
    CoverShape,
    LSeries,
    PrecisionError,
    PuiseuxElement,
    embed_base,
    trace,
)
from .linalg import Echelon, nullspace
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport

__all__ = [
    "GrassPoint",
    "IndexReport",
    "close",
    "from_vectors",
    "V_minus",
    "index",
    "contains",
    "is_ring",
    "is_trace_stable",
    "trace_subspace",
    "dual",
    "twist",
    "decompose",
    "subset_test",
]

DEFAULT_SLACK = 2


def column_key(shape: CoverShape):
    e = shape.e

    def key(col):
        i, k = col
        return (Fraction(k, e[i]), i)

    return key


def _to_vec(v: PuiseuxElement, P: int) -> dict:
    out = {}
    for i, (c, e) in enumerate(zip(v.comps, v.shape.e)):
        if c.prec < P * e:
            raise PrecisionError(f"component {i + 1} known below z^{P} (prec {c.prec}, need {P * e})")
        for k, x in c.coeffs.items():
            if k < P * e:
                out[(i, k)] = x
    return out


def _to_elem(vec: dict, shape: CoverShape, P) -> PuiseuxElement:
    ds = [dict() for _ in range(shape.r)]
    for (i, k), x in vec.items():
        ds[i][k] = x
    precs = [P * e if P != INF else INF for e in shape.e]
    return PuiseuxElement.from_dicts(shape, ds, precs)


@dataclass
class IndexReport:
    dim_ker: int
    dim_coker: int | None
    index: int | None
    evidence: list
    certified: bool
    message: str = ""

    def to_dict(self):
        return {
            "dim_ker": self.dim_ker,
            "dim_coker": self.dim_coker,
            "index": self.index,
            "evidence": [list(x) for x in self.evidence],
            "certified": self.certified,
            "message": self.message,
        }


class GrassPoint:
    """A point of gr(V) known on the window of poles <= Mg and precision P."""

    def __init__(self, shape: CoverShape, echelon: Echelon, P: int, M: int, Mg: int | None = None,
                 label: str = ""):
        self.shape = shape
        self.ech = echelon
        self.P = int(P)
        self.M = int(M)
        self.Mg = int(Mg if Mg is not None else M)
        self.label = label
        self._index = None

    # --- basis access ------------------------------------------------------
    def pivot_val(self, piv) -> Fraction:
        i, k = piv
        return Fraction(k, self.shape.e[i])

    def rows(self, m=None) -> list[tuple]:
        """Echelon rows (pivot, vector) of U(m), in pivot order; all rows when m is None."""
        out = self.ech.sorted_rows()
        if m is None:
            return out
        return [(p, r) for p, r in out if self.pivot_val(p) >= -m]

    def basis(self, m=None) -> list[PuiseuxElement]:
        return [_to_elem(r, self.shape, self.P) for _, r in self.rows(m)]

    def dim(self, m: int) -> int:
        return sum(1 for p in self.ech.rows if self.pivot_val(p) >= -m)

    def __len__(self):
        return len(self.ech)

    def same_as(self, other: "GrassPoint", M=None, P=None) -> bool:
        """Equality of U(M) modulo z^P on the common window."""
        if self.shape != other.shape:
            return False
        M = min(self.M, other.M) if M is None else M
        P = min(self.P, other.P) if P is None else P
        a = restrict(self, M, P)
        b = restrict(other, M, P)
        return a.ech.rows == b.ech.rows

    def __repr__(self):
        return f"GrassPoint(shape={self.shape}, dim={len(self)}, M={self.M}, P={self.P}, label={self.label!r})"


def restrict(pt: GrassPoint, M: int, P: int) -> GrassPoint:
    """The echelon of U(M) + z^P V_+ (rows truncated to precision P)."""
    e = pt.shape.e
    ech = Echelon(column_key(pt.shape))
    for p, r in pt.rows(M):
        ech.add({(i, k): c for (i, k), c in r.items() if k < P * e[i]})
    return GrassPoint(pt.shape, ech, P, M, M, pt.label)


def _monomials(gens: Sequence[PuiseuxElement], d: int, shape: CoverShape):
    """All products of at most d generators (with repetition), including 1."""
    yield PuiseuxElement.one(shape)
    layer = [(PuiseuxElement.one(shape), 0)]
    for _ in range(d):
        nxt = []
        for v, start in layer:
            for idx in range(start, len(gens)):
                w = v * gens[idx]
                nxt.append((w, idx))
                yield w
        layer = nxt


def close(shape: CoverShape, generators: Iterable[PuiseuxElement] = (), *, tail: Iterable[PuiseuxElement] = (),
          closure="linear", degree: int = 1, P: int = 6, M: int = 6, slack: int = DEFAULT_SLACK,
          label: str = "") -> GrassPoint:
    """Row-reduce the generator vectors into a GrassPoint.

    ``closure`` is ``"linear"`` or ``"algebra"`` (all generator monomials of
    degree <= ``degree``).  Each element of ``tail`` contributes its
    C[z^{-1}]-multiples with poles up to the generation bound M + slack.
    """
    generators = list(generators)
    tail = list(tail)
    if not generators and not tail:
        raise ValueError("empty generator list")
    for g in generators + tail:
        if g.shape != shape:
            raise ValueError(f"generator shape {g.shape} differs from {shape}")
    Mg = M + slack
    ech = Echelon(column_key(shape))
    if closure == "linear":
        vecs = iter(generators)
    elif closure == "algebra":
        vecs = _monomials(generators, degree, shape)
    else:
        raise ValueError(f"unknown closure {closure!r}")
    for v in vecs:
        ech.add(_to_vec(v, P))
    zinv = embed_base(LSeries({-1: 1}), shape)
    for t in tail:
        cur = t
        while True:
            val = cur.valuation()
            if val is not None and val < -Mg:
                break
            ech.add(_to_vec(cur, P))
            if cur.is_zero():
                break
            cur = cur * zinv
    return GrassPoint(shape, ech, P, M, Mg, label)


def from_vectors(shape: CoverShape, vectors: Iterable[dict], P: int, M: int, Mg=None, label="") -> GrassPoint:
    ech = Echelon(column_key(shape))
    e = shape.e
    for v in vectors:
        ech.add({(i, k): c for (i, k), c in v.items() if k < P * e[i]})
    return GrassPoint(shape, ech, P, M, Mg if Mg is not None else M, label)


def V_minus(shape: CoverShape, P: int = 6, M: int = 6) -> GrassPoint:
    """V_- = prod_i z_i^{-1} C[z_i^{-1}]."""
    Mg = M + DEFAULT_SLACK
    vecs = [{(i, -k): Fraction(1)} for i, e in enumerate(shape.e) for k in range(1, Mg * e + 1)]
    return from_vectors(shape, vecs, P, M, Mg, "V_-")


# --- index -------------------------------------------------------------------


def index(pt: GrassPoint) -> IndexReport:
    if pt._index is not None:
        return pt._index
    n = pt.shape.n
    dims = {m: pt.dim(m) for m in range(0, pt.M + 1)}
    evidence = [(m, dims[m] - dims[m - 1]) for m in range(1, pt.M + 1)]
    ker = dims[0]
    poles = set()
    for p, r in pt.rows(pt.M):
        for (i, k) in r:
            if k < 0:
                poles.add(i)
    missing = [i + 1 for i in range(pt.shape.r) if i not in poles]
    if missing:
        rep = IndexReport(ker, None, None, evidence, False,
                          f"components {missing} receive no poles: cokernel is infinite")
    else:
        coker = n * pt.M - (dims[pt.M] - ker)
        top = evidence[-2:]
        certified = len(top) >= 2 and all(inc == n for _, inc in top)
        msg = "" if certified else "increment plateau not reached at the top of the window"
        rep = IndexReport(ker, coker, ker - coker, evidence, certified, msg)
    pt._index = rep
    return rep


# --- membership ----------------------------------------------------------------


def contains(pt: GrassPoint, v: PuiseuxElement, zprec=None):
    """Membership of v in U + z^Q V_+ with Q = min(P, precision of v, zprec).

    Returns (member, Q, lowest residual column or None).  Raises when v has poles beyond the trusted bound M.
    """
    if v.shape != pt.shape:
        raise ValueError("shape mismatch")
    val = v.valuation()
    if val is not None and val < -pt.M:
        raise PrecisionError(f"element has pole order {math.ceil(-val)} beyond trusted bound {pt.M}")
    Q = pt.P
    vp = v.zprec()
    if vp != INF:
        Q = min(Q, vp)
    if zprec is not None:
        Q = min(Q, zprec)
    e = pt.shape.e
    vec = {(i, k): c for (i, k), c in v.columns() if k < Q * e[i]}
    key = pt.ech.key
    for p in sorted(pt.ech.rows, key=key):
        i, k = p
        if k >= Q * e[i]:
            break
        c = vec.get(p)
        if c:
            for col, x in pt.ech.rows[p].items():
                if col[1] < Q * e[col[0]]:
                    s = vec.get(col, 0) - c * x
                    if s:
                        vec[col] = s
                    else:
                        vec.pop(col, None)
    return (not vec), Q, (min(vec, key=key) if vec else None)


def _witness(col, shape):
    if col is None:
        return None
    i, k = col
    return {"component": i + 1, "exponent": k}


# --- predicates ----------------------------------------------------------------------


def is_ring(pt: GrassPoint) -> CheckReport:
    """1 ∈ U and b_a b_b ∈ U for echelon rows with pole orders summing to <= W.

    A product of rows with poles p_a, p_b is known modulo z^{P - max(p_a, p_b)},
    so the verifiable window is W = min(M, P - 1).
    """
    W = min(pt.M, pt.P - 1)
    params = {"M": pt.M, "P": pt.P, "window": W}
    ok, Q, w = contains(pt, PuiseuxElement.one(pt.shape))
    if not ok:
        return CheckReport("ring", FAIL, {"element": "1", "residual": _witness(w, pt.shape)}, params)
    if W < 1:
        return CheckReport("ring", INCONCLUSIVE, None, params, {"reason": "precision below pole bound"})
    piv = [p for p, _ in pt.rows(W)]
    elems = pt.basis(W)
    poles = [max(0, math.ceil(-pt.pivot_val(p))) for p in piv]
    for a in range(len(elems)):
        for b in range(a, len(elems)):
            if poles[a] + poles[b] > W:
                continue
            ok, Q, w = contains(pt, elems[a] * elems[b])
            if not ok:
                return CheckReport("ring", FAIL, {
                    "pair": [_witness(piv[a], pt.shape), _witness(piv[b], pt.shape)],
                    "residual": _witness(w, pt.shape)}, params)
    return CheckReport("ring", PASS, None, params)


def is_trace_stable(pt: GrassPoint) -> CheckReport:
    params = {"M": pt.M, "P": pt.P}
    for p, b in zip([p for p, _ in pt.rows(pt.M)], pt.basis(pt.M)):
        t = embed_base(trace(b), pt.shape)
        ok, Q, w = contains(pt, t)
        if not ok:
            return CheckReport("trace_stable", FAIL,
                               {"basis_pivot": _witness(p, pt.shape), "residual": _witness(w, pt.shape)}, params)
    return CheckReport("trace_stable", PASS, None, params)


def intersect_base(pt: GrassPoint) -> GrassPoint:
    """U ∩ C((z)) on the window, as a point over e = (1)."""
    base = CoverShape((1,))
    ks = list(range(-pt.M, pt.P))
    residuals = []
    for k in ks:
        v = embed_base(LSeries({k: 1}), pt.shape)
        ok, Q, _ = contains(pt, v)
        vec = {(i, kk): c for (i, kk), c in v.columns() if kk < pt.P * pt.shape.e[i]}
        residuals.append(pt.ech.reduce(vec))
    # sum_k f_k residual_k = 0
    cols = sorted({c for r in residuals for c in r}, key=repr)
    constraints = []
    for c in cols:
        constraints.append({k: r[c] for k, r in zip(ks, residuals) if c in r})
    sol = nullspace(constraints, ks)
    vecs = [{(0, k): x for k, x in s.items()} for s in sol]
    return from_vectors(base, vecs, pt.P, pt.M, pt.M, "U∩C((z))")


def trace_subspace(pt: GrassPoint, require_stable: bool = True):
    """(tr(U) as a point over e = (1), equality report with U ∩ C((z)), its IndexReport)."""
    if require_stable:
        ts = is_trace_stable(pt)
        if not ts.passed:
            raise ValueError("trace-stability not established")
    base = CoverShape((1,))
    vecs = []
    for b in pt.basis(pt.Mg):
        t = trace(b)
        vecs.append({(0, k): c for k, c in t.coeffs.items() if k < pt.P})
    tr = from_vectors(base, vecs, pt.P, pt.M, pt.Mg, "tr(U)")
    inter = intersect_base(pt)
    equal = tr.same_as(inter)
    rep = CheckReport("trace_equals_intersection", PASS if equal else FAIL,
                      None if equal else {"tr_dims": [tr.dim(m) for m in range(pt.M + 1)],
                                          "intersection_dims": [inter.dim(m) for m in range(pt.M + 1)]},
                      {"M": pt.M, "P": pt.P})
    return tr, rep, index(tr)


def dual(pt: GrassPoint) -> GrassPoint:
    """U^⊥ for the pairing T_2, from U(M) + z^P V_+.

    The result is exact for poles <= P and modulo z^{M-1}.
    """
    shape = pt.shape
    e = shape.e
    P, M = pt.P, pt.M
    if M < 2:
        raise ValueError("pole bound too small to certify any dual basis element")
    variables = [(i, b) for i in range(shape.r) for b in range(-(P + 1) * e[i] + 1, (M - 1) * e[i] + 1)]
    vs = set(variables)
    constraints = []
    for _, r in pt.rows(M):
        c = {}
        for (i, a), x in r.items():
            col = (i, -e[i] - a)
            if col in vs:
                c[col] = c.get(col, 0) + e[i] * x
        constraints.append(c)
    sol = nullspace(constraints, variables)
    Pd = M - 1
    return from_vectors(shape, sol, Pd, P, P, f"dual({pt.label})")


def twist(pt: GrassPoint, g: PuiseuxElement) -> GrassPoint:
    """The point g·U for an invertible g."""
    shape = pt.shape
    if g.shape != shape:
        raise ValueError("shape mismatch")
    ords = []
    for c in g.comps:
        o = c.ord()
        if o is None:
            raise ValueError("g is not invertible at the known precision")
        ords.append(o)
    shifts = [Fraction(o, e) for o, e in zip(ords, shape.e)]
    vecs = []
    newP = INF
    for b in pt.basis(pt.Mg):
        w = b * g
        zp = w.zprec()
        newP = min(newP, zp)
        vecs.append(w)
    if newP == INF:
        newP = pt.P + math.floor(min(shifts))
    hi = max(shifts)
    M2 = math.floor(pt.M - hi)
    Mg2 = math.floor(pt.Mg - hi)
    out = from_vectors(shape, [dict(w.columns()) for w in vecs], newP, M2, Mg2, f"twist({pt.label})")
    return out


def subset_test(pt: GrassPoint, subset) -> CheckReport:
    """p_S(U) ⊆ U for the projection onto the components in ``subset``."""
    subset = sorted(set(subset))
    params = {"subset": [i + 1 for i in subset], "M": pt.M, "P": pt.P}
    for p, b in zip([p for p, _ in pt.rows(pt.M)], pt.basis(pt.M)):
        ok, Q, w = contains(pt, b.project(subset))
        if not ok:
            return CheckReport("projection", FAIL,
                               {"basis_pivot": _witness(p, pt.shape), "residual": _witness(w, pt.shape)}, params)
    return CheckReport("projection", PASS, None, params)


def decompose(pt: GrassPoint):
    """Finest splitting of the components into blocks with U = prod of pieces, or None."""
    r = pt.shape.r
    if r < 2:
        raise ValueError("decomposition needs r >= 2")
    passing = []
    others = list(range(1, r))
    for size in range(0, r - 1):
        for rest in combinations(others, size):
            S = (0,) + rest
            if subset_test(pt, S).passed:
                passing.append(set(S))
    blocks = []
    seen = set()
    for i in range(r):
        if i in seen:
            continue
        atom = set(range(r))
        for S in passing:
            atom &= S if i in S else set(range(r)) - S
        blocks.append(sorted(atom))
        seen |= atom
    if len(blocks) == 1:
        return None
    return [[i + 1 for i in b] for b in sorted(blocks)]
