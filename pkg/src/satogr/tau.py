"""tau-functions, Baker-Akhiezer functions and their adjoints.

For an index-0 point U and N >= 1 let f_1, ..., f_{Nr} be a basis of
z_.^N U ∩ V_+.  Cauchy-Binet expands det(f_a^{(i)}(x_k^{(i)})) over exponent
sets S = S_1 ⊔ ... ⊔ S_r; dividing the alternants by the Vandermonde factors
gives Schur polynomials, so

    tau_U(t) = sum_S det F[:, S] * prod_i chi_{lambda(S_i)}(t^{(i)}).

Every tau returned here is normalized so that its first nonzero coefficient
(in weight-then-monomial order) equals 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .grasspoint import GrassPoint, contains, dual, index, twist
from .laurent import INF, CoverShape, PrecisionError, PuiseuxElement, omitted_index, vm_exponents
from .linalg import Echelon
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .schur import Partition, schur_chi, shift_tau, vertex_factor
from .tpoly import TPoly, WeightError, mono_str, mono_weight

__all__ = [
    "XPoly",
    "OmittedIndexError",
    "abel_basis",
    "tau_abel",
    "tau_abel_oracle",
    "tau_t",
    "tau_index0",
    "BakerFunction",
    "baker",
    "adjoint_baker",
    "adjoint_crosscheck",
    "verify_ba_spans",
]


class OmittedIndexError(ValueError):
    """The index (r - n)/2 is outside the scope of the v_m normalization."""


# --- polynomials in the Abel variables x_k^{(i)} -----------------------------------


class XPoly:
    """Polynomial in x_k^{(i)} (variable number i*N + k) truncated at total degree ``deg``."""

    __slots__ = ("r", "N", "terms", "deg")

    def __init__(self, r: int, N: int, terms=None, deg=INF):
        self.r, self.N, self.deg = r, N, deg
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c and sum(m) <= deg}

    @property
    def nvars(self):
        return self.r * self.N

    def zero_like(self, deg=None):
        return XPoly(self.r, self.N, {}, self.deg if deg is None else deg)

    def const(self, c):
        return XPoly(self.r, self.N, {(0,) * self.nvars: c}, self.deg)

    def __add__(self, o):
        d = min(self.deg, o.deg)
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return XPoly(self.r, self.N, t, d)

    def __neg__(self):
        return XPoly(self.r, self.N, {m: -c for m, c in self.terms.items()}, self.deg)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return XPoly(self.r, self.N, {m: c * v for m, v in self.terms.items()}, self.deg)

    def __mul__(self, o):
        d = min(self.deg, o.deg)
        t: dict = {}
        for m1, c1 in self.terms.items():
            s1 = sum(m1)
            for m2, c2 in o.terms.items():
                if s1 + sum(m2) > d:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return XPoly(self.r, self.N, t, d)

    def constant(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def truncate(self, deg):
        return XPoly(self.r, self.N, self.terms, min(self.deg, deg))

    def unit_inverse(self):
        """Inverse of a polynomial with nonzero constant term, to the same degree."""
        c0 = self.constant()
        if not c0:
            raise ZeroDivisionError("constant term vanishes")
        if self.deg == INF:
            raise ValueError("inverse needs a finite degree bound")
        rest = (self - self.const(c0)).scale(-1 / c0)  # self = c0 (1 - rest)
        out = self.const(1)
        power = self.const(1)
        for _ in range(int(self.deg)):
            power = power * rest
            if not power.terms:
                break
            out = out + power
        return out.scale(1 / c0)

    def divide_linear(self, a: int, b: int) -> "XPoly":
        """Exact quotient by (x_a - x_b); raises if the remainder is nonzero."""
        # group by the exponent of x_a, synthetic division in x_a with root x_b
        by_deg: dict[int, dict] = {}
        for m, c in self.terms.items():
            by_deg.setdefault(m[a], {})
            rest = m[:a] + (0,) + m[a + 1:]
            by_deg[m[a]][rest] = by_deg[m[a]].get(rest, 0) + c
        if not by_deg:
            return self.zero_like(self.deg - 1 if self.deg != INF else INF)
        top = max(by_deg)
        q: dict[int, dict] = {}
        carry: dict = {}
        for d in range(top, 0, -1):
            cur = dict(by_deg.get(d, {}))
            for m, c in carry.items():
                cur[m] = cur.get(m, 0) + c
            q[d - 1] = cur
            carry = {}
            for m, c in cur.items():
                mm = list(m)
                mm[b] += 1
                carry[tuple(mm)] = c
        rem = dict(by_deg.get(0, {}))
        for m, c in carry.items():
            rem[m] = rem.get(m, 0) + c
        limit = self.deg
        if any(c and sum(m) <= limit for m, c in rem.items()):
            raise ArithmeticError("Vandermonde division is not exact")
        terms = {}
        for d, poly in q.items():
            for m, c in poly.items():
                if c:
                    mm = list(m)
                    mm[a] = d
                    terms[tuple(mm)] = terms.get(tuple(mm), 0) + c
        return XPoly(self.r, self.N, terms, self.deg - 1 if self.deg != INF else INF)

    def proportional_to(self, o):
        d = min(self.deg, o.deg)
        a = {m: c for m, c in self.terms.items() if sum(m) <= d}
        b = {m: c for m, c in o.terms.items() if sum(m) <= d}
        if set(a) != set(b):
            return None
        if not a:
            return Fraction(1)
        m = next(iter(a))
        c = a[m] / b[m]
        return c if all(a[k] == c * b[k] for k in a) else None

    def agrees_with(self, o) -> bool:
        """Equal on every degree both sides know."""
        d = min(self.deg, o.deg)
        a = {m: c for m, c in self.terms.items() if sum(m) <= d}
        b = {m: c for m, c in o.terms.items() if sum(m) <= d}
        return a == b

    def normalized(self):
        if not self.terms:
            return self
        m = min(self.terms, key=lambda m: (sum(m), tuple(-x for x in m)))
        return self.scale(1 / self.terms[m])

    def __str__(self):
        def name(v):
            i, k = divmod(v, self.N)
            return f"x{k + 1}_{i + 1}"

        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))):
            mono = "*".join(name(v) + (f"^{e}" if e > 1 else "") for v, e in enumerate(m) if e)
            parts.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts) if parts else "0"


# --- the Abel basis and Pluecker data --------------------------------------------------


def abel_basis(pt: GrassPoint, N: int, upto: int):
    """Basis of U ∩ z_.^{-N} V_+ as rows of coefficients F[a][(i, c)] with c = b + N <= N + upto - 1.

    Returns (rows, dim).  Needs trusted poles up to N/min(e) and precision
    reaching exponent upto - 1 on every component.
    """
    shape = pt.shape
    need_M = math.ceil(Fraction(N, min(shape.e)))
    if pt.M < need_M:
        raise PrecisionError(f"pole bound {pt.M} too small for N={N} (need {need_M})")
    for e in shape.e:
        if pt.P * e < upto:
            raise PrecisionError(f"precision {pt.P} too small for weight {upto}")
    key = lambda col: (0 if col[1] < -N else 1, col[0], col[1])
    ech = Echelon(key)
    for _, r in pt.rows(need_M):
        ech.add(r)
    rows = []
    for p, r in ech.sorted_rows():
        if p[1] < -N:
            continue
        rows.append({(i, b + N): c for (i, b), c in r.items() if b + N < N + upto})
    return rows, len(rows)


def _multipartitions(r: int, B: int, N: int):
    """Tuples of r partitions with total weight <= B and all lengths <= N."""
    from .schur import partitions

    def rec(i, left):
        if i == r:
            yield ()
            return
        for w in range(left + 1):
            for lam in partitions(w):
                if len(lam) <= N:
                    for rest in rec(i + 1, left - w):
                        yield (lam,) + rest

    yield from rec(0, B)


def _columns_of(lams, N: int):
    cols = []
    for i, lam in enumerate(lams):
        lam = Partition(lam)
        for l in range(1, N + 1):
            cols.append((i, lam.part(N - l) + l - 1))
    return cols


class _Pluecker:
    """Minors det F[:, S] of a fixed Nr x C matrix, via its reduced echelon form."""

    def __init__(self, rows, N, r):
        self.ech = Echelon(lambda col: col)
        for row in rows:
            self.ech.add(row)
        self.pivots = sorted(self.ech.rows)
        self.pos = {p: a for a, p in enumerate(self.pivots)}
        self.rank = len(self.pivots)

    def minor(self, S: Sequence) -> Fraction:
        if self.rank < len(S):
            return Fraction(0)
        S = list(S)  # already in column order
        pivset = self.pos
        sign = 0
        inter = []
        for cpos, col in enumerate(S):
            if col in pivset:
                sign += cpos + pivset[col]
                inter.append(col)
        rows = [p for p in self.pivots if p not in set(inter)]
        cols = [c for c in S if c not in pivset]
        if len(rows) != len(cols):
            return Fraction(0)
        if not rows:
            return Fraction(1) if sign % 2 == 0 else Fraction(-1)
        from .linalg import det

        mat = [[self.ech.rows[p].get(c, Fraction(0)) for c in cols] for p in rows]
        d = det(mat)
        return d if sign % 2 == 0 else -d


def _plucker(pt: GrassPoint, N: int, B: int):
    rows, dim = abel_basis(pt, N, B)
    r = pt.shape.r
    if dim != N * r:
        return None, dim
    return _Pluecker(rows, N, r), dim


def tau_index0(pt: GrassPoint, B: int, N: int | None = None, fam: int = 0, normalize: bool = True) -> TPoly:
    """tau of an index-0 point up to weight B."""
    cache = pt.__dict__.setdefault("_tau_cache", {})
    key = (B, N, fam, normalize)
    if key in cache:
        return cache[key]
    r = pt.shape.r
    N0 = max(B, 1) if N is None else N
    cap = math.floor(pt.M * min(pt.shape.e))
    pl = None
    for Ntry in range(N0, max(N0, cap) + 1):
        pl, dim = _plucker(pt, Ntry, B)
        if pl is not None:
            N0 = Ntry
            break
        if N is not None:
            break
    if pl is None:
        raise PrecisionError(f"U ∩ z_.^(-N) V_+ never reached dimension N r for N <= {cap}")
    acc: dict = {}
    for lams in _multipartitions(r, B, N0):
        c = pl.minor(_columns_of(lams, N0))
        if not c:
            continue
        term = TPoly.const(c)
        for i, lam in enumerate(lams):
            if lam:
                term = term * schur_chi(lam, i, fam)
        for m, v in term.terms.items():
            acc[m] = acc.get(m, 0) + v
    tau = TPoly(acc, B)
    if normalize:
        tau = tau.normalized()
    cache[key] = tau
    return tau


def _require_index(pt: GrassPoint) -> int:
    ix = index(pt)
    if not ix.certified:
        raise PrecisionError(f"index not certified: {ix.message}")
    m = ix.index
    if m == omitted_index(pt.shape):
        raise OmittedIndexError(f"index m = {m} = (r-n)/2 is excluded for shape {pt.shape}")
    return m


def _monomial_twist(pt: GrassPoint, exps) -> GrassPoint:
    if all(a == 0 for a in exps):
        return pt
    return twist(pt, PuiseuxElement.z_monomial(pt.shape, exps))


def normalized_point(pt: GrassPoint, extra=None) -> GrassPoint:
    """v_m^{-1} (extra monomial) U, an index-0 point."""
    m = _require_index(pt)
    a = [-x for x in vm_exponents(m, pt.shape)]
    if extra is not None:
        a = [x + y for x, y in zip(a, extra)]
    return _monomial_twist(pt, a)


def tau_t(pt: GrassPoint, W: int, N: int | None = None, fam: int = 0) -> TPoly:
    """Normalized tau of U (any admissible index) up to weight W."""
    return tau_index0(normalized_point(pt), W, N, fam)


# --- the Abel pullback ---------------------------------------------------------------


def _alternant(xp: XPoly, i: int, cols: Sequence[int]) -> XPoly:
    """det[x_k^{(i)} ^ cols[l]]_{l, k} with rows l in the given (ascending) order."""
    N = xp.N
    terms = {}
    nv = xp.nvars
    for perm in permutations(range(N)):
        sign = 1
        p = list(perm)
        for a in range(N):
            for b in range(a + 1, N):
                if p[a] > p[b]:
                    sign = -sign
        m = [0] * nv
        for l, k in enumerate(perm):
            m[i * N + k] = cols[l]
        terms[tuple(m)] = terms.get(tuple(m), 0) + sign
    return XPoly(xp.r, N, terms, INF)


def tau_abel(pt: GrassPoint, N: int, D: int | None = None) -> XPoly:
    """prod Vandermonde^{-1} * det(f_a^{(i)}(x_k^{(i)})) for an index-0 point, to degree D.

    The sum over exponent sets is cut at Schur weight D; the Vandermonde
    division is exact degree by degree.
    """
    if index(pt).index != 0:
        raise ValueError("tau_abel needs an index-0 point")
    r = pt.shape.r
    if D is None:
        D = N
    pl, dim = _plucker(pt, N, D)
    if pl is None:
        raise ValueError(f"V/(V_+ + z_.^N U) != 0 at N={N} (dim {dim} != {N * r})")
    base = XPoly(r, N, {}, INF)
    numer = base.zero_like()
    for lams in _multipartitions(r, D, N):
        cols = _columns_of(lams, N)
        c = pl.minor(cols)
        if not c:
            continue
        term = base.const(c)
        for i in range(r):
            term = term * _alternant(base, i, [cc for (ii, cc) in cols if ii == i])
        numer = numer + term
    vdeg = r * N * (N - 1) // 2
    q = XPoly(r, N, numer.terms, D + vdeg)
    for i in range(r):
        for k in range(N):
            for l in range(k + 1, N):
                q = q.divide_linear(i * N + l, i * N + k)
    return q.normalized()


def _h_poly(base: XPoly, i: int, s: int) -> XPoly:
    """Complete homogeneous h_s(x^{(i)})."""
    if s < 0:
        return base.zero_like()
    N = base.N
    terms = {}

    def rec(k, left, m):
        if k == N - 1:
            mm = list(m)
            mm[i * N + k] = left
            terms[tuple(mm)] = 1
            return
        for a in range(left + 1):
            mm = list(m)
            mm[i * N + k] = a
            rec(k + 1, left - a, mm)

    rec(0, s, [0] * base.nvars)
    return XPoly(base.r, N, terms, base.deg)


def tau_abel_oracle(pt: GrassPoint, N: int, D: int | None = None, K: int | None = None) -> XPoly:
    """det of g U(K) -> z_.^{-K} V_+ / V_+ with g_i = prod_k (1 - x_k^{(i)}/z_i)^{-1}, to degree D.

    The determinant is expanded by Gaussian elimination over Q[x]/(deg > D)
    with unit pivots; K >= D makes the truncation exact.  Requires tau(0) != 0.
    """
    if index(pt).index != 0:
        raise ValueError("the oracle needs an index-0 point")
    r = pt.shape.r
    if D is None:
        D = N
    K = max(D, 1) if K is None else K
    rows, dim = abel_basis(pt, K, D + K)
    if dim != K * r:
        raise ValueError(f"window K={K} does not give a square matrix ({dim} rows)")
    base = XPoly(r, N, {}, D)
    hs = {(i, s): _h_poly(base, i, s) for i in range(r) for s in range(0, D + 1)}
    cols = [(i, l) for i in range(r) for l in range(1, K + 1)]
    A = []
    for row in rows:
        line = []
        for (i, l) in cols:
            acc = base.zero_like()
            for (ii, c), x in row.items():
                b = c - K
                if ii != i:
                    continue
                s = b + l
                if 0 <= s <= D:
                    acc = acc + hs[(i, s)].scale(x)
            line.append(acc)
        A.append(line)
    n = len(A)
    det = base.const(1)
    for col in range(n):
        piv = next((a for a in range(col, n) if A[a][col].constant()), None)
        if piv is None:
            raise ArithmeticError("oracle requires tau(0) != 0 (point outside the big cell)")
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        p = A[col][col]
        det = det * p
        inv = p.unit_inverse()
        for a in range(col + 1, n):
            f = A[a][col]
            if not f.terms:
                continue
            f = f * inv
            A[a] = [A[a][j] - f * A[col][j] if j > col else A[a][j] for j in range(n)]
    return det.normalized()


# --- Baker-Akhiezer functions ----------------------------------------------------------


@dataclass
class BakerFunction:
    """Hirota form: component j of the U-element is z_j^{offsets[j]} numer[j] / denom."""

    shape: CoverShape
    u: int
    index: int
    numer: list  # TSeries per component
    denom: TPoly
    offsets: list
    consts: list
    W: int
    zprec: int
    fam: int = 0
    adjoint: bool = False
    twist_taus: list = field(default_factory=list)

    def negate_time(self) -> "BakerFunction":
        return BakerFunction(self.shape, self.u, self.index, [s.map(TPoly.negate_vars) for s in self.numer],
                             self.denom.negate_vars(), self.offsets, self.consts, self.W, self.zprec, self.fam,
                             not self.adjoint, [t.negate_vars() for t in self.twist_taus])

    def in_family(self, fam: int) -> "BakerFunction":
        ren = lambda p: p.rename(lambda v: (fam, v[1], v[2]))
        return BakerFunction(self.shape, self.u, self.index, [s.map(ren) for s in self.numer], ren(self.denom),
                             self.offsets, self.consts, self.W, self.zprec, fam, self.adjoint,
                             [ren(t) for t in self.twist_taus])

    def element(self, mono) -> PuiseuxElement:
        """The z-vector sum_j z_j^{off_j} [t^mono] numer_j, known to the weight-limited precision."""
        w = mono_weight(mono)
        comps = []
        from .laurent import LSeries

        for j, s in enumerate(self.numer):
            coeffs = {}
            prec = s.zprec
            for k in sorted(s.coeffs):
                p = s.coeffs[k]
                if p.bound < w:
                    prec = min(prec, k)
                    break
                c = p.terms.get(mono)
                if c:
                    coeffs[k] = c
            if s.cap < w:
                raise WeightError("monomial beyond the weight cap")
            comps.append(LSeries({k: c for k, c in coeffs.items() if k < prec}, prec, j).shift(self.offsets[j]))
        return PuiseuxElement(self.shape, comps)


def _raw_numerators(pt: GrassPoint, u: int, W: int, Z: int, fam: int, m: int):
    """E_j(z_j) tau_{U_uj}(t + [z_j]) for each component j, plus the twisted taus."""
    r = pt.shape.r
    B = W + Z - 1
    numer, taus = [], []
    for j in range(r):
        extra = [0] * r
        extra[u] += 1
        extra[j] -= 1
        q = normalized_point(pt, extra)
        try:
            tj = tau_index0(q, B, fam=fam)
        except ArithmeticError:
            raise
        taus.append(tj)
        S = shift_tau(tj, j, +1, zprec=B + 1, fam=fam, cap=W)
        E = vertex_factor(j, -1, fam=fam, cap=W)
        numer.append(E.mul(S, cap=W))
    return numer, taus


def _solve_consts(pt: GrassPoint, u: int, numer, offsets, W: int):
    """Relative constants c_j (c_u = 1) making the t-coefficients of (z_j^{off_j} c_j N_j) lie in U."""
    r = pt.shape.r
    if r == 1:
        return [Fraction(1)]
    shape = pt.shape
    monos = sorted({m for s in numer for p in s.coeffs.values() for m in p.terms}, key=lambda m: (mono_weight(m), m))
    unknowns = [j for j in range(r) if j != u]
    RHS = r  # column index standing for the known term c_u = 1
    ech = Echelon(lambda c: c)
    tmp = BakerFunction(shape, u, 0, numer, TPoly.const(1), offsets, [1] * r, W, min(s.zprec for s in numer))
    e = shape.e
    for mono in monos:
        if len([p for p in ech.rows if p != RHS]) == len(unknowns):
            break
        elem = tmp.element(mono)
        Q = min(elem.zprec(), pt.P)
        val = elem.valuation()
        if Q < 1 or (val is not None and val < -pt.M):
            continue
        res = []
        for j in range(r):
            vec = {(i, k): c for (i, k), c in elem.project([j]).columns() if k < Q * e[i]}
            res.append(_reduce_at(pt, vec, Q))
        for col in set().union(*[set(x) for x in res]):
            row = {j: res[j][col] for j in unknowns if res[j].get(col)}
            if res[u].get(col):
                row[RHS] = res[u][col]
            ech.add(row)
    if RHS in ech.rows:
        raise ArithmeticError("no constants make the Baker function lie in U")
    consts = [Fraction(1)] * r
    for p, row in ech.rows.items():
        consts[p] = -sum((x for f, x in row.items() if f != p), Fraction(0))
    return consts


def _reduce_at(pt: GrassPoint, vec: dict, Q) -> dict:
    e = pt.shape.e
    vec = dict(vec)
    for p in sorted(pt.ech.rows, key=pt.ech.key):
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
    return vec


def baker(pt: GrassPoint, u: int, W: int, zprec: int, fam: int = 0) -> BakerFunction:
    """psi_{u,U} in Hirota form; ``u`` is 0-based."""
    m = _require_index(pt)
    cache = pt.__dict__.setdefault("_baker_cache", {})
    key = (u, W, zprec, fam)
    if key in cache:
        return cache[key]
    r = pt.shape.r
    vm = vm_exponents(m, pt.shape)
    offsets = [vm[j] - (1 if j == u else 0) for j in range(r)]
    numer, taus = _raw_numerators(pt, u, W, zprec, fam, m)
    denom = tau_t(pt, W, fam=fam)
    consts = _solve_consts(pt, u, numer, offsets, W)
    numer = [s.scale(c) for s, c in zip(numer, consts)]
    bf = BakerFunction(pt.shape, u, m, numer, denom, offsets, consts, W, zprec, fam, False, taus)
    cache[key] = bf
    return bf


def adjoint_baker(pt: GrassPoint, v: int, W: int, zprec: int, fam: int = 0, dual_pt: GrassPoint | None = None
                  ) -> BakerFunction:
    """psi*_{v,U}(t) = psi_{v,U^perp}(-t) in Hirota form."""
    _require_index(pt)
    D = dual_pt if dual_pt is not None else dual_of(pt)
    return baker(D, v, W, zprec, fam).negate_time()


def dual_of(pt: GrassPoint) -> GrassPoint:
    d = pt.__dict__.get("_dual")
    if d is None:
        d = dual(pt)
        pt._dual = d
    return d


def adjoint_crosscheck(pt: GrassPoint, v: int, W: int, zprec: int) -> CheckReport:
    """Compare psi*_v from the dual point with exp(sum t z_j^{-i}) tau_{U_jv}(t - [z_j]), per component up to scalar."""
    _require_index(pt)
    r = pt.shape.r
    star = adjoint_baker(pt, v, W, zprec)
    params = {"v": v + 1, "W": W, "zprec": zprec}
    B = W + zprec - 1
    for j in range(r):
        extra = [0] * r
        extra[j] += 1
        extra[v] -= 1
        q = normalized_point(pt, extra)
        tj = tau_index0(q, B)
        S = shift_tau(tj, j, -1, zprec=B + 1, cap=W)
        E = vertex_factor(j, +1, cap=W)
        direct = E.mul(S, cap=W)
        a, b = star.numer[j], direct
        ratio = None
        ok = True
        for k in sorted(set(a.coeffs) | set(b.coeffs)):
            if k >= min(a.zprec, b.zprec):
                continue
            pa, pb = a.get(k), b.get(k)
            if pa.is_zero() and pb.truncate(pa.bound).is_zero():
                continue
            c = pa.proportional_to(pb)
            if c is None or (ratio is not None and c != ratio) or c == 0:
                ok = False
                break
            ratio = c
        if not ok:
            return CheckReport("adjoint_crosscheck", FAIL, {"component": j + 1}, params)
    return CheckReport("adjoint_crosscheck", PASS, None, params)


def verify_ba_spans(pt: GrassPoint, W: int = 3, zprec: int | None = None, bf_list=None) -> CheckReport:
    """Every t-coefficient of tau_U psi_u (prefactors removed) lies in U."""
    _require_index(pt)
    r = pt.shape.r
    if zprec is None:
        # tau of the twisted points is needed to weight W + zprec - 1: keep it inside the pole bound
        # and modest, since the Pluecker sum grows quickly with the weight
        zprec = max(W + 2, min(2 * W + 2, math.floor(pt.M * min(pt.shape.e)) - W - 2))
    params = {"W": W, "zprec": zprec, "M": pt.M, "P": pt.P}
    checked = 0
    bfs = bf_list if bf_list is not None else [baker(pt, u, W, zprec) for u in range(r)]
    for bf in bfs:
        monos = sorted({mm for s in bf.numer for p in s.coeffs.values() for mm in p.terms},
                       key=lambda mm: (mono_weight(mm), mm))
        for mono in monos:
            elem = bf.element(mono)
            val = elem.valuation()
            if val is not None and val < -pt.M:
                continue
            Q = min(elem.zprec(), pt.P)
            if Q < 1:
                continue
            ok, Q, w = contains(pt, elem, Q)
            checked += 1
            if not ok:
                return CheckReport("ba_spans", FAIL, {"u": bf.u + 1, "monomial": mono_str(mono),
                                                      "residual": {"component": w[0] + 1, "exponent": w[1]}},
                                   params)
    if checked == 0:
        return CheckReport("ba_spans", INCONCLUSIVE, None, params, {"reason": "no coefficient within the window"})
    params["checked"] = checked
    return CheckReport("ba_spans", PASS, None, params)
