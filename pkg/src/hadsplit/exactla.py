"""Exact linear algebra over the rationals and Gaussian rationals.

Small dense matrices only. Elements must support +, -, *, /, bool, ==.
Fraction and GaussianRational both qualify.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["GaussianRational", "rref", "rank", "nullspace", "invert", "mat_mul", "mat_vec"]


class GaussianRational:
    """Element of Q(i) with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, (int, Fraction)):
            return GaussianRational(v)
        raise TypeError(f"cannot coerce {type(v).__name__}")

    def __add__(self, o):
        o = self._coerce(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o):
        o = self._coerce(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, o) -> bool:
        try:
            o = self._coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __repr__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Matrix = list[list]


def _clone(m: Sequence[Sequence]) -> Matrix:
    # plain ints are promoted so pivot division stays exact
    return [[Fraction(v) if isinstance(v, int) else v for v in row] for row in m]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    a = _clone(m)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r] + a[r:], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], one=Fraction(1)) -> list[list]:
    """Basis of the right kernel, one vector per free column.

    Vectors are normalized so the entry at their free column equals `one`
    (pass GaussianRational(1) to work over Q(i)).
    """
    if not m:
        return []
    red, pivots = rref(m)
    ncols = len(m[0])
    zero = one - one
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc] * one
        basis.append(v)
    return basis


def invert(m: Sequence[Sequence]):
    """Exact inverse via Gauss-Jordan, or None if singular."""
    n = len(m)
    one = _one_like(next((v for row in m for v in row if isinstance(v, GaussianRational)), m[0][0]))
    zero = one - one
    a = [list(row) + [zero] * n for row in m]
    for i in range(n):
        a[i][n + i] = one
    red, pivots = rref(a)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def _one_like(sample):
    if isinstance(sample, GaussianRational):
        return GaussianRational(1)
    return Fraction(1)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0] * b[0][j]
            for t in range(1, k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        s = row[0] * v[0]
        for t in range(1, len(v)):
            s = s + row[t] * v[t]
        out.append(s)
    return out
