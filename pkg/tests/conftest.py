from functools import lru_cache

from satogr.grasspoint import V_minus, close, twist
from satogr.krichever import (
    CyclicCover,
    DisjointRational,
    ExplicitAlgebra,
    PlaneCurve,
    krichever_point,
    polynomial_base_point,
)
from satogr.laurent import CoverShape, parse_element

E1 = CoverShape((1,))
E11 = CoverShape((1, 1))


@lru_cache(maxsize=None)
def vminus(e=(1,), P=12, M=12):
    return V_minus(CoverShape(e), P, M)


@lru_cache(maxsize=None)
def perturbed(c="3", P=12, M=12):
    """span{z^-1 + c} + z^-2 C[z^-1]; tau = 1 + c t_1."""
    return close(E1, [parse_element(f"z1^-1 + {c}", E1)], tail=[parse_element("z1^-2", E1)], P=P, M=M)


@lru_cache(maxsize=None)
def polynomial(P=12, M=12):
    return polynomial_base_point(P, M)


@lru_cache(maxsize=None)
def disjoint(e=(1, 1), P=12, M=12):
    return krichever_point(DisjointRational(e), P=P, M=M)


@lru_cache(maxsize=None)
def cyclic(n, P=12, M=12):
    return krichever_point(CyclicCover(n), P=P, M=M)


@lru_cache(maxsize=None)
def joukowski(P=14, M=14):
    """The rational double cover w = u + 1/u, marked at u = 0 and u = infinity."""
    return krichever_point(PlaneCurve.make("y^2 - x*y + 1", [(1, -1, 1), (1, 1, 1)]), P=P, M=M)


@lru_cache(maxsize=None)
def elliptic(P=14, M=14):
    return krichever_point(PlaneCurve.make("y^2 - x^3 - x - 1", [(2, 3, 1)]), P=P, M=M)


@lru_cache(maxsize=None)
def skew_ring(c, P=12, M=12):
    """Ring spanned by 1, (z1^-1, c z2^-1) and all higher monomials; trace-stable iff c = +-1."""
    gens = (parse_element(f"z1^-1; {c}*z2^-1", E11), parse_element("z1^-2; 0", E11),
            parse_element("0; z2^-2", E11))
    return krichever_point(ExplicitAlgebra(gens, max(6, M)), P=P, M=M)


@lru_cache(maxsize=None)
def gamma_twisted(r=1, a="2", P=12, M=12):
    """A P^1-base point multiplied by embed_base(1 + a/z)."""
    shape = CoverShape((1,) * r)
    base = polynomial(P, M) if r == 1 else disjoint(shape.e, P, M)
    g = parse_element("; ".join(f"1 + {a}*z{i + 1}^-1" for i in range(r)), shape)
    return twist(base, g)


def big_cell(shape, perturb, P=8, M=8, slack=2):
    """Index-0 point spanned by z_i^{-k} + sum c z_j^l (l >= 0), k = 1 .. (M + slack) e_i.

    ``perturb`` maps (i, k) to {(j, l): c}.
    """
    from fractions import Fraction

    from satogr.grasspoint import from_vectors

    vecs = []
    for i, e in enumerate(shape.e):
        for k in range(1, (M + slack) * e + 1):
            v = {(i, -k): Fraction(1)}
            for col, c in perturb.get((i, k), {}).items():
                v[col] = v.get(col, 0) + Fraction(c)
            vecs.append(v)
    return from_vectors(shape, vecs, P, M, M + slack, "big cell")


def random_big_cell(rng, shape, P=8, M=8, depth=3, nonzero=4):
    """A random point of the big cell with a few small perturbations."""
    perturb = {}
    for _ in range(nonzero):
        i = rng.randrange(shape.r)
        k = rng.randint(1, depth)
        j = rng.randrange(shape.r)
        l = rng.randint(0, depth - 1)
        perturb.setdefault((i, k), {})[(j, l)] = rng.randint(-3, 3)
    return big_cell(shape, perturb, P, M)
