"""Exact sparse linear algebra over Q.

Vectors are dicts ``column -> Fraction``.  Columns are arbitrary hashables;
a ``key`` function fixes their order, and pivots are always the *lowest*
column under that order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

Vec = dict


def _clean(v: Mapping) -> dict:
    return {k: Fraction(c) for k, c in v.items() if c}


def axpy(y: dict, a: Fraction, x: Mapping) -> None:
    """y += a*x in place, dropping zeros."""
    if not a:
        return
    for k, c in x.items():
        s = y.get(k, 0) + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    """Incremental fully reduced row echelon form.

    Every stored row has coefficient 1 at its pivot, and no other row has a
    nonzero entry in that pivot column.
    """

    def __init__(self, key: Callable[[Hashable], object] = lambda c: c):
        self.key = key
        self.rows: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.rows)

    def pivot_of(self, v: Mapping):
        return min(v, key=self.key) if v else None

    def reduce(self, v: Mapping) -> dict:
        """Remainder of v modulo the span (entries in pivot columns cleared)."""
        w = _clean(v)
        for p in [p for p in w if p in self.rows]:
            c = w.get(p)
            if c:
                axpy(w, -c, self.rows[p])
        return w

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping) -> bool:
        """Insert v; return False if it was already in the span."""
        w = self.reduce(v)
        if not w:
            return False
        p = self.pivot_of(w)
        inv = 1 / w[p]
        w = {k: c * inv for k, c in w.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, w)
        self.rows[p] = w
        return True

    def extend(self, vs: Iterable[Mapping]) -> int:
        return sum(1 for v in vs if self.add(v))

    def sorted_rows(self) -> list[tuple[Hashable, dict]]:
        return sorted(self.rows.items(), key=lambda kv: self.key(kv[0]))

    def coordinates(self, v: Mapping):
        """Coefficients of v in the stored basis, or None when v is not in the span."""
        w = _clean(v)
        coords = {}
        for p in sorted([p for p in self.rows], key=self.key):
            c = w.get(p)
            if c:
                coords[p] = c
                axpy(w, -c, self.rows[p])
        return None if w else coords

    def copy(self) -> "Echelon":
        e = Echelon(self.key)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon(key=repr)
    return e.extend(vectors)


def nullspace(constraints: Iterable[Mapping], variables: list) -> list[dict]:
    """Basis of {x : sum_c a[c] x[c] = 0 for every constraint a}.

    ``variables`` lists every unknown; unknowns absent from all constraints
    are free.
    """
    order = {v: i for i, v in enumerate(variables)}
    ech = Echelon(key=lambda c: order[c])
    for a in constraints:
        for c in a:
            if c not in order:
                raise KeyError(f"constraint mentions unknown {c!r}")
        ech.add(a)
    basis = []
    for f in variables:
        if f in ech.rows:
            continue
        x = {f: Fraction(1)}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


def solve(constraints: list[Mapping], rhs: list, variables: list):
    """One solution x of a.x = b for each (a, b), or None if inconsistent."""
    order = {v: i for i, v in enumerate(variables)}
    RHS = object()
    order[RHS] = len(variables)
    ech = Echelon(key=lambda c: order[c])
    for a, b in zip(constraints, rhs):
        row = dict(a)
        if b:
            row[RHS] = -Fraction(b)
        ech.add(row)
    if RHS in ech.rows:
        return None
    x = {}
    for p, row in ech.rows.items():
        c = row.get(RHS)
        if c:
            x[p] = -c
    return x


def det(matrix: list[list]) -> Fraction:
    """Determinant of a dense square matrix by Gaussian elimination."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    d = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = -d
        p = a[col][col]
        d *= p
        for i in range(col + 1, n):
            f = a[i][col]
            if f:
                f /= p
                ri, rc = a[i], a[col]
                for j in range(col + 1, n):
                    if rc[j]:
                        ri[j] -= f * rc[j]
    return d


def inverse(matrix: list[list]) -> list[list[Fraction]]:
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]
