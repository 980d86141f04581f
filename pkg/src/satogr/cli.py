"""Command line front end: ``satogr <command> POINT.json``.

A point document is a JSON object::

    {"shape": [1, 1], "precision": 12, "pole_bound": 12, "weight": 3,
     "generators": ["z1^-1; 2*z2^-1", "z1^-2; 0"], "closure": "algebra", "degree": 6}

or, instead of generators, a cover description::

    {"cover": {"type": "plane", "F": "y^2 - x*y + 1", "seeds": [[1, -1, 1], [1, 1, 1]]}}
    {"cover": {"type": "cyclic", "n": 3}}
    {"cover": {"type": "disjoint", "e": [1, 1]}}
    {"cover": {"type": "v_minus"}}

Optional keys: ``tail`` (elements whose C[1/z]-multiples are added),
``twist`` (an invertible element g; the point becomes g U), ``diagrams``,
``slack``, ``label``.  Exit codes: 0 all pass, 1 a check failed or two paired
checks disagree, 2 bad input or parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations

from . import grasspoint as gp
from . import hierarchy as hy
from . import krichever as kr
from . import tau as tm
from .laurent import CoverShape, PrecisionError, ShapeError, format_element, parse_element
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .tpoly import WeightError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SUITES = ("nkp", "hurwitz", "ring", "decomposable", "p1", "operator")


class InputError(ValueError):
    pass


# --- documents ----------------------------------------------------------------------


def load_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("the point document must be a JSON object")
    return doc


def _int(doc, key, default):
    val = doc.get(key, default)
    if isinstance(val, bool) or not isinstance(val, int) or val < 0:
        raise InputError(f"{key} must be a non-negative integer")
    return val


def _elements(texts, shape, key):
    if not isinstance(texts, list):
        raise InputError(f"{key} must be a list of series strings")
    out = []
    for t in texts:
        try:
            out.append(parse_element(str(t), shape))
        except (ValueError, ShapeError) as exc:
            raise InputError(f"bad element in {key}: {t!r}: {exc}") from exc
    return out


def apply_overrides(doc: dict, args) -> dict:
    doc = dict(doc)
    for key, attr in (("precision", "precision"), ("pole_bound", "pole_bound"), ("weight", "weight"),
                      ("diagrams", "diagrams")):
        val = getattr(args, attr, None)
        if val is not None:
            doc[key] = val
    return doc


def _cover(spec: dict, shape):
    kind = spec.get("type")
    if kind == "disjoint":
        e = tuple(spec.get("e", shape.e if shape else ()))
        coords = ()
        if "coords" in spec:
            cs = CoverShape(e)
            coords = tuple(el.comps[i] for i, el in enumerate(_elements(spec["coords"], cs, "coords")))
        return kr.DisjointRational(e, coords)
    if kind == "cyclic":
        return kr.CyclicCover(int(spec["n"]))
    if kind == "plane":
        try:
            return kr.PlaneCurve.make(spec["F"], [tuple(s) for s in spec["seeds"]])
        except (TypeError, IndexError) as exc:
            raise InputError(f"bad plane-curve data: {exc}") from exc
    if kind == "v_minus":
        return "v_minus"
    raise InputError(f"unknown cover type {kind!r}")


def build_point(doc: dict) -> gp.GrassPoint:
    P = _int(doc, "precision", 8)
    M = _int(doc, "pole_bound", 8)
    slack = _int(doc, "slack", gp.DEFAULT_SLACK)
    shape = None
    if "shape" in doc:
        try:
            shape = CoverShape(tuple(int(x) for x in doc["shape"]))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad shape: {exc}") from exc
    try:
        if "cover" in doc:
            cover = _cover(doc["cover"], shape)
            if cover == "v_minus":
                if shape is None:
                    raise InputError("v_minus needs a shape")
                pt = gp.V_minus(shape, P, M)
            else:
                if isinstance(cover, kr.CyclicCover):
                    cshape = CoverShape((cover.n,))
                elif isinstance(cover, kr.PlaneCurve):
                    cshape = cover.shape
                else:
                    cshape = CoverShape(cover.e)
                if shape is not None and shape != cshape:
                    raise InputError(f"declared shape {shape} differs from the cover's {cshape}")
                shape = cshape
                pt = kr.krichever_point(cover, P=P, M=M, degree=doc.get("degree"), slack=slack)
        else:
            if shape is None:
                raise InputError("a generator document needs a shape")
            gens = _elements(doc.get("generators", []), shape, "generators")
            tail = _elements(doc.get("tail", []), shape, "tail")
            closure = doc.get("closure", "linear")
            if closure not in ("linear", "algebra"):
                raise InputError(f"closure must be linear or algebra, not {closure!r}")
            pt = gp.close(shape, gens, tail=tail, closure=closure, degree=_int(doc, "degree", 1), P=P, M=M,
                          slack=slack, label=doc.get("label", ""))
        if "twist" in doc:
            g = _elements([doc["twist"]], shape, "twist")[0]
            pt = gp.twist(pt, g)
    except kr.HenselError as exc:
        raise InputError(str(exc)) from exc
    except (KeyError, TypeError) as exc:
        raise InputError(f"missing or malformed field: {exc}") from exc
    if doc.get("label"):
        pt.label = doc["label"]
    return pt


# --- commands -----------------------------------------------------------------------


def _echo_basis(pt, limit=12):
    return [format_element(b) for b in pt.basis(pt.M)[:limit]]


def cmd_inspect(pt, doc, args):
    ix = gp.index(pt)
    res = {
        "label": pt.label,
        "shape": list(pt.shape.e),
        "index": ix.to_dict(),
        "genus": 1 - ix.index if ix.certified else None,
        "basis": _echo_basis(pt),
        "dim_filtration": {str(m): pt.dim(m) for m in range(0, pt.M + 1)},
    }
    verdicts = {"index": PASS if ix.certified else INCONCLUSIVE}
    return res, verdicts


def cmd_tau(pt, doc, args):
    W = _int(doc, "weight", 3)
    tau = tm.tau_t(pt, W)
    res = {"weight": W, "tau": str(tau), "index": gp.index(pt).index}
    verdicts = {}
    if args.oracle:
        q = tm.normalized_point(pt)
        N = max(W, 1)
        a = tm.tau_abel(q, N, W)
        res["tau_abel"] = str(a)
        try:
            o = tm.tau_abel_oracle(q, N, W)
        except ArithmeticError as exc:
            res["oracle"] = {"verdict": INCONCLUSIVE, "reason": str(exc)}
            verdicts["oracle"] = INCONCLUSIVE
        else:
            c = a.proportional_to(o)
            ok = c is not None and c != 0
            res["tau_oracle"] = str(o)
            res["oracle"] = {"verdict": PASS if ok else FAIL}
            if not ok:
                res["oracle"]["difference"] = str(a.normalized() - o.normalized())
            verdicts["oracle"] = PASS if ok else FAIL
    return res, verdicts


def _baker_doc(bf, shown):
    comps = []
    for j, s in enumerate(bf.numer):
        comps.append({
            "component": j + 1,
            "offset": bf.offsets[j],
            "constant": str(bf.consts[j]),
            "zprec": s.zprec,
            "coefficients": {str(k): str(s.coeffs[k]) for k in sorted(s.coeffs)[:shown] if not s.coeffs[k].is_zero()},
        })
    return {"u": bf.u + 1, "index": bf.index, "denominator": str(bf.denom), "components": comps}


def cmd_baker(pt, doc, args):
    W = _int(doc, "weight", 3)
    Z = args.zprec or W + 2
    r = pt.shape.r
    res = {"weight": W, "zprec": Z, "psi": [], "psi_star": []}
    for u in range(r):
        res["psi"].append(_baker_doc(tm.baker(pt, u, W, Z), Z))
        res["psi_star"].append(_baker_doc(tm.adjoint_baker(pt, u, W, Z), Z))
    spans = tm.verify_ba_spans(pt, W, Z)
    res["ba_spans"] = spans.to_dict()
    return res, {"ba_spans": spans.verdict}


def _skip(name, reason):
    return CheckReport(name, INCONCLUSIVE, None, {}, {"skipped": reason})


def run_suite(pt, suite, doc, against=None):
    W = _int(doc, "weight", 3)
    D = _int(doc, "diagrams", 3)
    r = pt.shape.r
    if suite == "nkp":
        return [hy.check_nkp(pt, against if against is not None else pt, W)]
    if suite == "hurwitz":
        return [hy.check_hurwitz_bilinear(pt, W)]
    if suite == "ring":
        return [hy.check_mring_equations(pt, W)]
    if suite == "decomposable":
        if r < 2:
            return [_skip("decomposable", "r = 1")]
        reps = []
        for size in range(0, r - 1):
            for rest in combinations(range(1, r), size):
                reps.append(hy.check_decomposable_residues(pt, (0,) + rest, W))
        return reps
    if suite == "p1":
        return [hy.check_p1_base(pt, W)]
    if suite == "operator":
        return [hy.check_hurwitz_operator_form(pt, D, W)]
    raise InputError(f"unknown suite {suite!r}")


def cmd_check(pt, doc, args):
    suites = SUITES if args.suite == "all" else (args.suite,)
    against = build_point(apply_overrides(load_document(args.against), args)) if args.against else None
    res, verdicts = {}, {}
    for s in suites:
        reps = run_suite(pt, s, doc, against)
        res[s] = [r.to_dict() for r in reps]
        for i, r in enumerate(reps):
            key = s if len(reps) == 1 else f"{s}[{','.join(map(str, r.params.get('subset', [i])))}]"
            verdicts[key] = r.verdict
            if r.details.get("agree") is False:
                verdicts[key + ":agreement"] = FAIL
    return res, verdicts


def cmd_classify(pt, doc, args):
    rep = kr.classify(pt)
    res = rep.to_dict()
    res["in_M_infinity"] = rep.ring.passed
    res["hurwitz_point"] = rep.ring.passed and rep.trace_stable.passed
    return res, {}


def cmd_dual(pt, doc, args):
    d = gp.dual(pt)
    dd = gp.dual(d)
    Mw, Pw = min(pt.M, dd.M), min(pt.P, dd.P)
    same = dd.same_as(pt, Mw, Pw)
    ix, dix = gp.index(pt), gp.index(d)
    res = {
        "dual": {"index": dix.to_dict(), "precision": d.P, "pole_bound": d.M, "basis": _echo_basis(d)},
        "involution": {"verdict": PASS if same else FAIL, "window": {"M": Mw, "P": Pw}},
    }
    verdicts = {"involution": PASS if same else FAIL}
    if ix.certified and dix.certified:
        ok = dix.index == pt.shape.r - pt.shape.n - ix.index
        res["index_relation"] = PASS if ok else FAIL
        verdicts["index_relation"] = res["index_relation"]
    return res, verdicts


def cmd_trace(pt, doc, args):
    ts = gp.is_trace_stable(pt)
    tr, eq, bix = gp.trace_subspace(pt, require_stable=False)
    res = {
        "trace_stable": ts.to_dict(),
        "trace_equals_intersection": eq.to_dict() if eq is not None else None,
        "base_index": bix.to_dict(),
        "base_genus": 1 - bix.index if bix.certified else None,
        "basis": [format_element(b) for b in tr.basis(tr.M)[:12]],
    }
    return res, {}


COMMANDS = {
    "inspect": cmd_inspect,
    "tau": cmd_tau,
    "baker": cmd_baker,
    "check": cmd_check,
    "classify": cmd_classify,
    "dual": cmd_dual,
    "trace": cmd_trace,
}


# --- output -------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"


def exit_code(verdicts: dict) -> int:
    return EXIT_FAIL if FAIL in verdicts.values() else EXIT_OK


def summary(command: str, report: dict) -> str:
    lines = [f"{command}: {report['input'].get('label') or report['input'].get('file')}"]
    for k, v in sorted(report["verdicts"].items()):
        lines.append(f"  {k}: {v}")
    res = report["results"]
    for key in ("index", "genus", "base_index", "tau", "decomposition"):
        if key in res:
            val = res[key]
            if isinstance(val, dict) and "index" in val:
                val = f"{val['index']} ({'certified' if val.get('certified') else 'uncertified'})"
            lines.append(f"  {key}: {val}")
    lines.append(f"  exit: {report['exit_code']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="satogr", description="Points of the multi-component Sato Grassmannian.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", help="point document (JSON)")
        p.add_argument("--precision", type=int, help="z-precision P")
        p.add_argument("--pole-bound", dest="pole_bound", type=int, help="pole bound M")
        p.add_argument("--weight", type=int, help="weight bound W")
        p.add_argument("--diagrams", type=int, help="diagram weight bound D")
        p.add_argument("--report", help="write the full JSON report here ('-' for stdout)")
        if name == "tau":
            p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force determinant")
        if name == "baker":
            p.add_argument("--zprec", type=int, help="z-precision of the numerators")
        if name == "check":
            p.add_argument("--suite", default="all", choices=SUITES + ("all",))
            p.add_argument("--against", help="second point document for the nkp suite")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = apply_overrides(load_document(args.file), args)
        pt = build_point(doc)
        results, verdicts = COMMANDS[args.command](pt, doc, args)
    except tm.OmittedIndexError as exc:
        print(f"error: {exc}; this index is excluded from the theory and not computed", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, PrecisionError, WeightError, ShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code = exit_code(verdicts)
    echo = {k: v for k, v in doc.items()}
    echo["file"] = args.file
    report = {"command": args.command, "input": echo, "results": results, "verdicts": verdicts, "exit_code": code}
    text = render(report)
    if args.report == "-":
        sys.stdout.write(text)
    else:
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
        sys.stdout.write(summary(args.command, report))
    return code


if __name__ == "__main__":
    sys.exit(main())
