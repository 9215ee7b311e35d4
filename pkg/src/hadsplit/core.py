"""Exact integer matrices and Hadamard matrix primitives.

All arithmetic is exact. Matrices with entries small enough to rule out
int64 overflow in a product are kept as numpy int64 arrays for speed;
anything larger falls back to object arrays of Python ints.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "HadsplitError",
    "ParseError",
    "IntMatrix",
    "HadamardMatrix",
    "SkewCore",
    "kronecker",
    "sylvester",
    "normalize",
    "paley_skew_core",
    "conference_from_core",
    "is_hadamard",
    "parse_matrix",
    "serialize_matrix",
]

# int64 matmul is safe when max|A| * max|B| * inner_dim stays below this.
_INT64_SAFE = 2**62


class HadsplitError(Exception):
    """Base for all library errors."""


class ParseError(HadsplitError):
    """Malformed matrix or Latin square text."""


def _as_array(rows: Iterable[Iterable[int]]) -> np.ndarray:
    data = [[int(v) for v in row] for row in rows]
    if not data or not data[0]:
        raise ValueError("matrix must have at least one row and column")
    width = len(data[0])
    for row in data:
        if len(row) != width:
            raise ValueError("ragged rows")
    peak = max(abs(v) for row in data for v in row)
    if peak < _INT64_SAFE:
        arr = np.array(data, dtype=np.int64)
    else:
        arr = np.empty((len(data), width), dtype=object)
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                arr[i, j] = v
    arr.setflags(write=False)
    return arr


def _max_abs(arr: np.ndarray) -> int:
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.flat)
    return int(np.abs(arr).max())


class IntMatrix:
    """Immutable exact integer matrix."""

    __slots__ = ("_a",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        self._a = _as_array(rows)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "IntMatrix":
        m = object.__new__(IntMatrix)
        arr.setflags(write=False)
        m._a = arr
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "IntMatrix":
        ncols = nrows if ncols is None else ncols
        return cls._wrap(np.zeros((nrows, ncols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap(np.eye(n, dtype=np.int64))

    @classmethod
    def ones(cls, nrows: int, ncols: int | None = None) -> "IntMatrix":
        ncols = nrows if ncols is None else ncols
        return cls._wrap(np.ones((nrows, ncols), dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape  # type: ignore[return-value]

    @property
    def nrows(self) -> int:
        return self._a.shape[0]

    @property
    def ncols(self) -> int:
        return self._a.shape[1]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return int(self._a[ij])

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self._a[i])

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.nrows)]

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in r] for r in self._a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.shape, tuple(int(v) for v in self._a.flat)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols})"

    def _binary(self, other: "IntMatrix", op) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        a, b = self._a, other._a
        if a.dtype == object or b.dtype == object:
            a, b = a.astype(object), b.astype(object)
        out = op(a, b)
        peak = _max_abs(out)
        if out.dtype != object and peak >= _INT64_SAFE:  # pragma: no cover
            out = op(a.astype(object), b.astype(object))
        return IntMatrix._wrap(out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(-self._a)

    def __rmul__(self, k: int) -> "IntMatrix":
        if not isinstance(k, int):
            return NotImplemented
        a = self._a
        if a.dtype != object and abs(k) * _max_abs(a) >= _INT64_SAFE:
            a = a.astype(object)
        return IntMatrix._wrap(k * a)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        a, b = self._a, other._a
        if a.dtype == object or b.dtype == object:
            return IntMatrix._wrap(a.astype(object) @ b.astype(object))
        bound = _max_abs(a) * _max_abs(b) * self.ncols
        if bound >= _INT64_SAFE:
            return IntMatrix._wrap(a.astype(object) @ b.astype(object))
        return IntMatrix._wrap(a @ b)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix._wrap(self._a.T.copy())

    def is_symmetric(self) -> bool:
        return self.is_square and bool(np.array_equal(self._a, self._a.T))

    def diagonal(self) -> tuple[int, ...]:
        return tuple(int(v) for v in np.diagonal(self._a))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._a.sum(axis=1))

    def col_sums(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._a.sum(axis=0))

    def max_abs(self) -> int:
        return _max_abs(self._a)

    def take_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix._wrap(self._a[list(indices), :].copy())

    def offdiag_values(self) -> set[int]:
        """Distinct values outside the main diagonal (square matrices)."""
        if not self.is_square:
            raise ValueError("square matrix required")
        n = self.nrows
        mask = ~np.eye(n, dtype=bool)
        return {int(v) for v in self._a[mask]}

    def value_positions(self, value: int) -> "IntMatrix":
        """0/1 matrix marking entries equal to value."""
        return IntMatrix._wrap((self._a == value).astype(np.int64))

    def scaled_exact(self, num: int, den: int) -> "IntMatrix":
        """Multiply by num/den, requiring exact divisibility of every entry."""
        out = []
        for r in self._a:
            row = []
            for v in r:
                t = int(v) * num
                q, rem = divmod(t, den)
                if rem:
                    raise ValueError(f"entry {int(v)} not divisible by {den}")
                row.append(q)
            out.append(row)
        return IntMatrix(out)


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product, exact."""
    x, y = a._a, b._a
    if x.dtype == object or y.dtype == object:
        x, y = x.astype(object), y.astype(object)
    elif _max_abs(x) * _max_abs(y) >= _INT64_SAFE:
        x, y = x.astype(object), y.astype(object)
    return IntMatrix._wrap(np.kron(x, y))


class HadamardMatrix(IntMatrix):
    """Square +-1 matrix H with H Ht = nI."""

    __slots__ = ()

    def __init__(self, rows: Iterable[Iterable[int]]):
        super().__init__(rows)
        _check_hadamard(self)

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "HadamardMatrix":
        h = object.__new__(HadamardMatrix)
        h._a = m._a
        _check_hadamard(h)
        return h

    @property
    def order(self) -> int:
        return self.nrows


def _check_hadamard(m: IntMatrix) -> None:
    if not m.is_square:
        raise ValueError("Hadamard matrix must be square")
    if not bool(np.all(np.abs(m._a) == 1)):
        raise ValueError("entries must be +-1")
    n = m.nrows
    g = m @ m.T
    if g != n * IntMatrix.identity(n):
        raise ValueError("rows are not orthogonal")


def is_hadamard(m: IntMatrix) -> bool:
    try:
        _check_hadamard(m)
    except ValueError:
        return False
    return True


def sylvester(m_exponent: int) -> HadamardMatrix:
    """Kronecker power of [[1,1],[1,-1]], order 2**m_exponent."""
    if m_exponent < 0:
        raise ValueError("exponent must be nonnegative")
    h = np.array([[1]], dtype=np.int64)
    base = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(m_exponent):
        h = np.kron(h, base)
    return HadamardMatrix(h.tolist())


def normalize(h: HadamardMatrix) -> HadamardMatrix:
    """Flip row and column signs so the first row and column are all-ones."""
    a = h._a.copy()
    a = a * a[0, :]  # column flips
    a = a * a[:, [0]]  # row flips
    return HadamardMatrix(a.tolist())


class SkewCore:
    """Core matrix Q of order q with QQt = qI - J, QJ = JQ = O, Qt = -Q."""

    __slots__ = ("q", "matrix")

    def __init__(self, matrix: IntMatrix):
        q = matrix.nrows
        if not matrix.is_square:
            raise ValueError("core must be square")
        j = IntMatrix.ones(q)
        if matrix @ matrix.T != q * IntMatrix.identity(q) - j:
            raise ValueError("core Gram condition failed")
        if matrix @ j != IntMatrix.zeros(q) or j @ matrix != IntMatrix.zeros(q):
            raise ValueError("core row and column sums must vanish")
        if matrix.T != -matrix:
            raise ValueError("core must be skew symmetric")
        self.q = q
        self.matrix = matrix

    def __repr__(self) -> str:
        return f"SkewCore(q={self.q})"


def paley_skew_core(q: int) -> SkewCore:
    """Quadratic residue core over GF(q), q = 3 mod 4 a prime power."""
    from .gf import GF

    if q % 4 != 3:
        raise ValueError("q must be 3 mod 4")
    field = GF(q)
    elems = field.elements()
    rows = []
    for x in elems:
        rows.append([field.chi(field.sub(y, x)) for y in elems])
    return SkewCore(IntMatrix(rows))


def conference_from_core(core: SkewCore) -> IntMatrix:
    """Skew conference matrix of order q+1: border the core with ones."""
    q = core.q
    top = [[0] + [1] * q]
    body = [[-1] + list(core.matrix.row(i)) for i in range(q)]
    c = IntMatrix(top + body)
    n = q + 1
    assert c @ c.T == q * IntMatrix.identity(n)
    assert c.T == -c
    return c


def parse_matrix(text: str) -> IntMatrix:
    """Parse the plain text matrix format.

    First non-comment line holds "nrows ncols"; each following line holds one
    row, entries separated by whitespace. For sign matrices the tokens "+"
    and "-" are accepted as 1 and -1. Lines starting with "#" are ignored.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"header must be 'nrows ncols', got {lines[0]!r}")
    try:
        nrows, ncols = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad header: {lines[0]!r}") from exc
    if nrows <= 0 or ncols <= 0:
        raise ParseError("dimensions must be positive")
    if len(lines) - 1 != nrows:
        raise ParseError(f"expected {nrows} rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        # dense sign strings like "+--+" are also accepted
        if len(toks) == 1 and ncols > 1 and set(toks[0]) <= {"+", "-"}:
            toks = list(toks[0])
        if len(toks) != ncols:
            raise ParseError(f"expected {ncols} entries, got {len(toks)}: {ln!r}")
        row = []
        for t in toks:
            if t == "+":
                row.append(1)
            elif t == "-":
                row.append(-1)
            else:
                try:
                    row.append(int(t))
                except ValueError as exc:
                    raise ParseError(f"bad entry {t!r}") from exc
        rows.append(row)
    return IntMatrix(rows)


def serialize_matrix(m: IntMatrix) -> str:
    """Inverse of parse_matrix; always emits decimal entries."""
    out = [f"{m.nrows} {m.ncols}"]
    for i in range(m.nrows):
        out.append(" ".join(str(v) for v in m.row(i)))
    return "\n".join(out) + "\n"


def isqrt_exact(n: int) -> int | None:
    """Integer square root if n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
