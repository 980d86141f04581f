"""Residue engine and the bilinear / differential equation checkers.

All identities are evaluated in Hirota form: only the numerators of the
Baker functions enter, so each reported polynomial is the residue multiplied
by the tau denominators.  Sums over e-th roots of unity are collapsed with
sum_j xi^{js} = e [e | s] before factors from different components meet.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from .grasspoint import GrassPoint, is_ring, is_trace_stable, subset_test, trace_subspace
from .krichever import p1_base_subspace
from .laurent import LSeries, vm_exponents
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .schur import Partition, chi_pair, d_operator, partitions, shift_tau
from .tau import _require_index, adjoint_baker, baker, dual_of, normalized_point, tau_index0
from .tpoly import INF, TPoly, TSeries, mono_str, mono_weight

__all__ = [
    "collapse",
    "residue_pairing",
    "product_coeff",
    "verdict_of",
    "check_nkp",
    "check_hurwitz_bilinear",
    "check_mring_equations",
    "check_decomposable_residues",
    "check_decomposable_product",
    "check_p1_base",
    "check_hurwitz_operator_form",
    "operator_values",
    "hurwitz_residue",
]

def collapse(s, e: int):
    """Sum over the e-th roots of unity of s(xi^j z^{1/e}), as a series in z.

    Keeps exponents divisible by e, divides them by e and multiplies the
    coefficient by e.  Works for LSeries and TSeries.
    """
    if isinstance(s, LSeries):
        prec = s.prec if s.prec == INF else -(-s.prec // e)
        return LSeries({k // e: e * c for k, c in s.coeffs.items() if k % e == 0}, prec, None)
    zp = s.zprec if s.zprec == INF else -(-s.zprec // e)
    return TSeries({k // e: p.scale(e) for k, p in s.coeffs.items() if k % e == 0}, zp, s.cap)


def _default_floor(k):
    return -k


def product_coeff(series, target: int, cap=INF, floors=None) -> TPoly:
    """Coefficient of z^target in prod(series), exact to the weight it reports.

    Coefficient k of every factor is assumed to have t-order >= floor(k)
    (default -k, true for Baker numerators before the z-offset).  An unknown
    coefficient k >= zprec then only meets partners of high t-order, which
    gives the weight bound without the worst-case z-order of TSeries.mul.
    """
    n = len(series)
    if floors is None:
        floors = [_default_floor] * n
    elif n != 2:
        raise ValueError("custom floors are supported for two factors only")
    bound = cap
    for f, s in enumerate(series):
        if s.zprec == INF:
            continue
        if n == 2:
            g = 1 - f
            bound = min(bound, max(0, floors[g](target - s.zprec)) - 1)
        else:
            bound = min(bound, s.zprec - target - 1)
    bound = max(bound, -1)

    def usable(f, k):
        return max(0, floors[f](k)) <= bound

    out = TPoly.zero(bound)

    def rec(f, left, acc):
        nonlocal out
        s = series[f]
        if f == n - 1:
            if left >= s.zprec or not usable(f, left):
                return
            p = s.coeffs.get(left)
            if p is not None and not p.is_zero():
                out = out + acc.mul(p, bound)
            return
        for k in sorted(s.coeffs):
            if not usable(f, k):
                continue
            p = s.coeffs[k]
            if p.is_zero() and p.bound >= bound:
                continue
            rec(f + 1, left - k, acc.mul(p, bound))

    rec(0, target, TPoly.const(1, bound))
    return out


def residue_pairing(factors, offsets, shape, exponent=0, subset=None, cap=INF) -> TPoly:
    """sum_{i in subset} e_i * coeff of z_i^exponent in z_i^{offsets[i]} prod_f factors[f][i].

    ``factors`` is a list of Baker numerators (lists of TSeries per component).
    """
    comps = range(shape.r) if subset is None else subset
    total = None
    for i in comps:
        term = product_coeff([f[i] for f in factors], exponent - offsets[i], cap).scale(shape.e[i])
        total = term if total is None else total + term
    return total


def verdict_of(name: str, poly: TPoly, W: int, params: dict, tag: dict) -> CheckReport:
    """fail on a nonzero coefficient, pass if zero through weight W, else inconclusive."""
    lead = poly.leading()
    if lead is not None:
        m, c = lead
        return CheckReport(name, FAIL, {**tag, "monomial": mono_str(m), "weight": mono_weight(m),
                                        "coefficient": str(c)}, params)
    if poly.bound < W:
        return CheckReport(name, INCONCLUSIVE, None, params, {**tag, "known_to_weight": poly.bound})
    return CheckReport(name, PASS, None, params)


def _fold(name, reports, params):
    reports = list(reports)
    for r in reports:
        if r.verdict == FAIL:
            return CheckReport(name, FAIL, r.witness, params)
    for r in reports:
        if r.verdict == INCONCLUSIVE:
            return CheckReport(name, INCONCLUSIVE, None, params, r.details)
    return CheckReport(name, PASS, None, params, {"equations": len(reports)})


def _trace_zprec(W: int, shape, um, u_extra: int = 1, upto: int = 0) -> int:
    """Smallest z-precision making the trace-sum pairing exact through weight W.

    ``upto`` additionally asks for the z^upto coefficient of the psi trace factor.
    """
    emax = max(shape.e)
    lo = min(um) - 1
    lo_star = min(1 - x for x in um) - 1
    need = emax * max(W + 1 - lo_star, upto + 1) - lo
    return max(need, W + 2)


def _auto_zprec(W: int, extra: int = 0) -> int:
    return W + 2 + extra


def _psi(pt, u, W, Z, fam):
    return baker(pt, u, W, Z, 0).in_family(fam) if fam else baker(pt, u, W, Z, 0)


def _psi_star(pt, v, W, Z, fam):
    bf = adjoint_baker(pt, v, W, Z, 0)
    return bf.in_family(fam) if fam else bf


# --- n-KP --------------------------------------------------------------------------


def check_nkp(A: GrassPoint, B: GrassPoint, W: int = 4, zprec: int | None = None) -> CheckReport:
    """The bilinear identity between psi_{u,A}(t) and psi*_{v,B}(s) for all u, v."""
    mA, mB = _require_index(A), _require_index(B)
    if A.shape != B.shape:
        raise ValueError("points live in different spaces")
    if mA != mB:
        raise ValueError(f"index mismatch {mA} != {mB}")
    Z = zprec or _auto_zprec(W)
    r = A.shape.r
    params = {"W": W, "zprec": Z, "index": mA}
    reps = []
    for u, v in product(range(r), repeat=2):
        psi = _psi(A, u, W, Z, 0)
        star = _psi_star(B, v, W, Z, 1)
        offs = [1 - (i == u) - (i == v) for i in range(r)]
        poly = residue_pairing([psi.numer, star.numer], offs, A.shape, 0, cap=W)
        reps.append(verdict_of("nkp", poly, W, params, {"u": u + 1, "v": v + 1}))
        if reps[-1].failed:
            break
    return _fold("nkp", reps, params)


# --- Hurwitz -------------------------------------------------------------------------


def _trace_factor(numer, offsets, shape):
    """sum_j Tr_j(z_j^{offsets[j]} numer[j]) as a TSeries in z."""
    out = None
    for j, s in enumerate(numer):
        c = collapse(s.shift(offsets[j]), shape.e[j])
        out = c if out is None else out + c
    return out


def hurwitz_residue(pt: GrassPoint, u: int, v: int, W: int, Z: int) -> TPoly:
    m = _require_index(pt)
    shape = pt.shape
    r = shape.r
    um = vm_exponents(m, shape)
    psi = _psi(pt, u, W, Z, 0)
    star = _psi_star(pt, v, W, Z, 1)
    oa = [um[j] - (j == u) for j in range(r)]
    ob = [1 - um[k] - (k == v) for k in range(r)]
    a = _trace_factor(psi.numer, oa, shape)
    b = _trace_factor(star.numer, ob, shape)
    return product_coeff([a, b], 0, W, [_trace_floor(oa, shape.e), _trace_floor(ob, shape.e)])


def _trace_floor(offsets, e):
    return lambda K: min(o - K * ej for o, ej in zip(offsets, e))


def check_hurwitz_bilinear(pt: GrassPoint, W: int = 3, zprec: int | None = None,
                           compare: bool = True) -> CheckReport:
    m = _require_index(pt)
    Z = zprec or _trace_zprec(W, pt.shape, vm_exponents(m, pt.shape))
    r = pt.shape.r
    params = {"W": W, "zprec": Z, "index": m}
    reps = []
    for u, v in product(range(r), repeat=2):
        poly = hurwitz_residue(pt, u, v, W, Z)
        reps.append(verdict_of("hurwitz_bilinear", poly, W, params, {"u": u + 1, "v": v + 1}))
        if reps[-1].failed:
            break
    rep = _fold("hurwitz_bilinear", reps, params)
    if compare:
        lin = is_trace_stable(pt)
        rep.details["trace_stable"] = lin.verdict
        rep.details["agree"] = _agree(rep, lin)
    return rep


def _agree(a: CheckReport, b: CheckReport):
    if INCONCLUSIVE in (a.verdict, b.verdict):
        return None
    return a.verdict == b.verdict


# --- ring equations --------------------------------------------------------------------


def _linear_family(pt, W, Z, params):
    """T_2(1, psi*_u) = 0 for every u: the coefficient of z_i^{-e_i} in z_i^{w_i - delta_iu} N*_u."""
    shape = pt.shape
    r = shape.r
    wm = vm_exponents(r - shape.n - _require_index(pt), shape)
    reps = []
    for u in range(r):
        star = _psi_star(pt, u, W, Z, 0)
        total = None
        for i in range(r):
            term = star.numer[i].get(-shape.e[i] - wm[i] + (i == u)).scale(shape.e[i])
            total = term if total is None else total + term
        reps.append(verdict_of("mring_linear", total, W, params, {"family": "linear", "u": u + 1}))
    return reps


def check_mring_equations(pt: GrassPoint, W: int = 3, zprec: int | None = None,
                          compare: bool = True) -> CheckReport:
    """Cubic family (U U ⊆ U) and linear family (1 ∈ U) of residue equations."""
    m = _require_index(pt)
    shape = pt.shape
    r = shape.r
    um = vm_exponents(m, shape)
    wm = vm_exponents(r - shape.n - m, shape)
    Z = zprec or _auto_zprec(W, max(max(abs(x) for x in um) + 1, max(wm) + 1))
    params = {"W": W, "zprec": Z, "index": m}
    reps = _linear_family(pt, W, Z, params)
    lin = _fold("mring_linear", reps, params)
    cubic = []
    if not lin.failed:
        for u, v, w in product(range(r), repeat=3):
            a = _psi(pt, u, W, Z, 0)
            b = _psi(pt, v, W, Z, 1)
            c = _psi_star(pt, w, W, Z, 2)
            offs = [um[i] + 1 - (i == u) - (i == v) - (i == w) for i in range(r)]
            poly = residue_pairing([a.numer, b.numer, c.numer], offs, shape, 0, cap=W)
            cubic.append(verdict_of("mring_cubic", poly, W, params, {"family": "cubic", "u": u + 1, "v": v + 1,
                                                                       "w": w + 1}))
            if cubic[-1].failed:
                break
    rep = _fold("mring", reps + cubic, params)
    rep.details["linear"] = lin.verdict
    rep.details["cubic"] = _fold("mring_cubic", cubic, params).verdict if cubic else "skipped"
    if compare:
        ring = is_ring(pt)
        rep.details["is_ring"] = ring.verdict
        rep.details["agree"] = _agree(rep, ring)
    return rep


# --- decomposability -------------------------------------------------------------------


def check_decomposable_residues(pt: GrassPoint, subset, W: int = 3, zprec: int | None = None,
                                compare: bool = True) -> CheckReport:
    """The bilinear identity restricted to the components in ``subset`` (0-based)."""
    _require_index(pt)
    r = pt.shape.r
    if r < 2:
        raise ValueError("decomposability needs r >= 2")
    subset = sorted(set(subset))
    Z = zprec or _auto_zprec(W)
    params = {"W": W, "zprec": Z, "subset": [i + 1 for i in subset]}
    reps = []
    for u, v in product(range(r), repeat=2):
        psi = _psi(pt, u, W, Z, 0)
        star = _psi_star(pt, v, W, Z, 1)
        offs = [1 - (i == u) - (i == v) for i in range(r)]
        poly = residue_pairing([psi.numer, star.numer], offs, pt.shape, 0, subset=subset, cap=W)
        reps.append(verdict_of("decomposable", poly, W, params, {"u": u + 1, "v": v + 1}))
        if reps[-1].failed:
            break
    rep = _fold("decomposable", reps, params)
    if compare:
        lin = subset_test(pt, subset)
        rep.details["projection_test"] = lin.verdict
        rep.details["agree"] = _agree(rep, lin)
    return rep


def check_decomposable_product(pt: GrassPoint, W: int = 3, zprec: int | None = None) -> CheckReport:
    """Some proper subset passes the restricted residue equations."""
    r = pt.shape.r
    params = {"W": W}
    others = list(range(1, r))
    found = []
    inconclusive = False
    for size in range(0, r - 1):
        for rest in combinations(others, size):
            S = (0,) + rest
            rep = check_decomposable_residues(pt, S, W, zprec, compare=False)
            if rep.passed:
                found.append([i + 1 for i in S])
            elif rep.verdict == INCONCLUSIVE:
                inconclusive = True
    if found:
        return CheckReport("decomposable_any", PASS, None, params, {"subsets": found})
    return CheckReport("decomposable_any", INCONCLUSIVE if inconclusive else FAIL, None, params)


# --- P^1 base ------------------------------------------------------------------------------


def check_p1_base(pt: GrassPoint, W: int = 3, zprec: int | None = None, M: int | None = None,
                  compare: bool = True) -> CheckReport:
    """Residues res z^{-i} tr(v_m psi_u / z_u) dz for 2 <= i <= M, plus 1 ∈ U and base index 1."""
    m = _require_index(pt)
    shape = pt.shape
    r = shape.r
    um = vm_exponents(m, shape)
    if M is None:
        M = max(2, min(pt.M, W + 1))
    Z = zprec or _trace_zprec(W, shape, um, upto=M - 1)
    params = {"W": W, "zprec": Z, "M": M, "index": m}
    reps = []
    for u in range(r):
        psi = _psi(pt, u, W, Z, 0)
        a = _trace_factor(psi.numer, [um[j] - (j == u) for j in range(r)], shape)
        for i in range(2, M + 1):
            if i - 1 >= a.zprec:
                reps.append(CheckReport("p1_base", INCONCLUSIVE, None, params, {"z_power": i - 1}))
                continue
            reps.append(verdict_of("p1_base", a.get(i - 1), W, params, {"u": u + 1, "z_power": i - 1}))
    unit = _fold("p1_unit", _linear_family(pt, W, Z, params), params)
    tr, _, bix = trace_subspace(pt, require_stable=False)
    base_ok = bix.certified and bix.index == 1
    base = CheckReport("p1_base_index", PASS if base_ok else FAIL,
                       None if base_ok else {"base_index": bix.index}, params)
    rep = _fold("p1_base", reps + [unit, base], params)
    rep.details["base_index"] = bix.index
    if compare:
        lin = p1_base_subspace(pt)
        rep.details["subspace_test"] = lin.verdict
        rep.details["agree"] = _agree(rep, lin)
    return rep


# --- operator form -----------------------------------------------------------------------


def _multidiagrams(r: int, D: int, W: int):
    """Tuples of r partitions, each of weight <= D, total <= W."""

    def rec(i, left):
        if i == r:
            yield ()
            return
        for w in range(min(D, left) + 1):
            for lam in partitions(w):
                for rest in rec(i + 1, left - w):
                    yield (lam,) + rest

    yield from rec(0, W)


def _side_values(taus, consts, diagrams, sign, maxbeta):
    """value[(j, diagrams, alpha, beta)]: c_j D_{lam_j,alpha}(sign d~_j) prod_{a != j} chi_{lam_a}(sign d~_a)
    applied to the z_j^beta coefficient of tau_j(t - sign [z_j]), all at t = 0."""
    out = {}
    for j, tau in enumerate(taus):
        shifted = shift_tau(tau, j, -sign, zprec=maxbeta + 1)
        for beta in range(maxbeta + 1):
            H = shifted.get(beta)
            for lams in diagrams:
                G = H
                for a, lam in enumerate(lams):
                    if a != j:
                        G = chi_pair(lam, a, G, 0, sign)
                lam = Partition(lams[j])
                for alpha in range(0, lam.part(0) + 1):
                    val = d_operator(lam, alpha, j, G, 0, sign).constant()
                    if val:
                        out[(j, lams, alpha, beta)] = consts[j] * val
    return out


def _twisted_tau(pt, u, j, B):
    r = pt.shape.r
    extra = [0] * r
    extra[u] += 1
    extra[j] -= 1
    return tau_index0(normalized_point(pt, extra), B)


def operator_values(pt: GrassPoint, u: int, v: int, D: int = 3, W: int = 3, tamper=None):
    """Values of the Young-diagram equations for all (lambda, mu) tuples.

    Returns {(lambdas, mus): Fraction}.  ``tamper`` may replace the twisted taus
    (a function (kind, j, tau) -> tau) for negative controls.
    """
    m = _require_index(pt)
    shape = pt.shape
    r = shape.r
    um = vm_exponents(m, shape)
    e = shape.e
    big = max(abs(x) for x in um)
    maxbeta = max(e) * (W + 2 * big + 2)
    B = W + maxbeta
    Z = _auto_zprec(W, big)
    psi = baker(pt, u, W, Z)
    star = adjoint_baker(pt, v, W, Z)
    star_pt = dual_of(pt)
    taus_t = [_twisted_tau(pt, u, j, B) for j in range(r)]
    taus_s = [_twisted_tau(star_pt, v, k, B).negate_vars() for k in range(r)]
    if tamper is not None:
        taus_t = [tamper("psi", j, t) for j, t in enumerate(taus_t)]
        taus_s = [tamper("star", k, t) for k, t in enumerate(taus_s)]
    diagrams = list(_multidiagrams(r, D, W))
    T = _side_values(taus_t, psi.consts, diagrams, -1, maxbeta)
    S = _side_values(taus_s, star.consts, diagrams, +1, maxbeta)
    Tidx: dict = {}
    for (j, lams, a1, b1), val in T.items():
        X = um[j] - (j == u) - a1 + b1
        if X % e[j] == 0:
            Tidx.setdefault(lams, []).append((Fraction(X, e[j]), e[j] * val))
    Sidx: dict = {}
    for (k, mus, a2, b2), val in S.items():
        Y = 1 - um[k] - (k == v) - a2 + b2
        if Y % e[k] == 0:
            Sidx.setdefault(mus, []).append((Fraction(Y, e[k]), e[k] * val))
    values = {}
    for lams in diagrams:
        wl = sum(map(sum, lams))
        for mus in diagrams:
            if wl + sum(map(sum, mus)) > W:
                continue
            acc = Fraction(0)
            for x, tv in Tidx.get(lams, ()):
                for y, sv in Sidx.get(mus, ()):
                    if x + y == 0:
                        acc += tv * sv
            values[(lams, mus)] = acc
    return values


def check_hurwitz_operator_form(pt: GrassPoint, D: int = 3, W: int = 3, tamper=None,
                                compare: bool = True) -> CheckReport:
    _require_index(pt)
    r = pt.shape.r
    params = {"D": D, "W": W}
    count = 0
    for u, v in product(range(r), repeat=2):
        vals = operator_values(pt, u, v, D, W, tamper)
        for key in sorted(vals, key=lambda k: (sum(map(sum, k[0])) + sum(map(sum, k[1])), repr(k))):
            count += 1
            if vals[key]:
                lams, mus = key
                rep = CheckReport("hurwitz_operator", FAIL, {
                    "u": u + 1, "v": v + 1, "lambda": [list(l) for l in lams], "mu": [list(x) for x in mus],
                    "value": str(vals[key])}, params)
                break
        else:
            continue
        break
    else:
        rep = CheckReport("hurwitz_operator", PASS, None, params, {"equations": count})
    if compare:
        res = check_hurwitz_bilinear(pt, W, compare=False)
        rep.details["residue_form"] = res.verdict
        rep.details["agree"] = _agree(rep, res)
    return rep
