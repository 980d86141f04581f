"""Points from curves: classify them and run the bilinear checks.

Run with ``python3 demos/curves.py``; it takes a few seconds.
"""

from satogr.hierarchy import (
    check_decomposable_residues,
    check_hurwitz_bilinear,
    check_mring_equations,
    check_nkp,
    check_p1_base,
)
from satogr.krichever import CyclicCover, DisjointRational, PlaneCurve, classify, krichever_point

points = {
    "two disjoint lines": krichever_point(DisjointRational((1, 1)), P=12, M=12),
    "cyclic cover, n = 3": krichever_point(CyclicCover(3), P=12, M=12),
    "w = u + 1/u": krichever_point(PlaneCurve.make("y^2 - x*y + 1", [(1, -1, 1), (1, 1, 1)]), P=14, M=14),
    "y^2 = x^3 + x + 1": krichever_point(PlaneCurve.make("y^2 - x^3 - x - 1", [(2, 3, 1)]), P=14, M=14),
}

for name, pt in points.items():
    c = classify(pt)
    print(f"{name}: genus {c.genus}, ring {c.ring.verdict}, trace-stable {c.trace_stable.verdict}, "
          f"P^1 base {c.p1_base.verdict}, components {c.decomposition}")
    print("   nkp       :", check_nkp(pt, pt, 3).verdict)
    print("   ring eqs  :", check_mring_equations(pt, 3).verdict)
    if c.trace_stable.passed:
        print("   Hurwitz   :", check_hurwitz_bilinear(pt, 3).verdict)
        print("   P^1 base  :", check_p1_base(pt, 3).verdict)
    if pt.shape.r > 1:
        print("   splits off component 1:", check_decomposable_residues(pt, [0], 3).verdict)
