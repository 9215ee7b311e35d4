"""Families of Hadamard matrices with verified balanced splits.

Every builder returns a BshInstance whose split has been re-checked from
scratch, so a construction bug cannot produce a silently wrong instance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    HadamardMatrix,
    HadsplitError,
    IntMatrix,
    SkewCore,
    isqrt_exact,
    kronecker,
    normalize,
    sylvester,
)
from .splitting import SplitParams, SplitReport, check_split

__all__ = [
    "BshInstance",
    "TwinSplit",
    "JaPair",
    "kron_square",
    "gram_construction",
    "core_tensor",
    "two_row_split",
    "twin_sylvester",
    "ja_recursion",
    "skew_core_bsh",
    "translate_sylvester_rows",
    "witness_for",
]


@dataclass(frozen=True)
class BshInstance:
    h: HadamardMatrix
    rows: tuple[int, ...]
    report: SplitReport

    @property
    def params(self) -> SplitParams:
        return self.report.params


def _instance(h: HadamardMatrix, rows, expect: SplitParams) -> BshInstance:
    report = check_split(h, rows)
    if report.params != expect:
        raise HadsplitError(f"construction produced {report.params}, wanted {expect}")
    return BshInstance(h=h, rows=tuple(sorted(rows)), report=report)


def kron_square(h: HadamardMatrix, variant: str) -> BshInstance:
    """Square Kronecker power of a normalized order-m matrix.

    variant "large": split on rows (i, j) with i, j >= 1, giving
    (m^2, (m-1)^2, 1, 1-m). variant "small": split on the rows sharing
    exactly one index with the all-ones row, giving (m^2, 2m-2, m-2, -2).
    """
    m = h.order
    hn = normalize(h)
    big = HadamardMatrix.from_matrix(kronecker(hn, hn))
    if variant == "large":
        rows = [i * m + j for i in range(1, m) for j in range(1, m)]
        expect = SplitParams(m * m, (m - 1) * (m - 1), 1, 1 - m)
    elif variant == "small":
        rows = [j for j in range(1, m)] + [i * m for i in range(1, m)]
        expect = SplitParams(m * m, 2 * m - 2, m - 2, -2)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _instance(big, rows, expect)


def gram_construction(h: HadamardMatrix) -> BshInstance:
    """Order m^2 matrix M[(i,s),(j,t)] = r_j[s] r_i[t] split on its first block.

    The first m rows have column Gram I_m kron (m J_m), the imprimitive
    (m^2, m, m, 0) split.
    """
    m = h.order
    hn = normalize(h)
    r = hn.tolist()
    rows = []
    for i in range(m):
        for s in range(m):
            rows.append([r[j][s] * r[i][t] for j in range(m) for t in range(m)])
    big = HadamardMatrix(rows)
    return _instance(big, list(range(m)), SplitParams(m * m, m, m, 0))


def core_tensor(h: HadamardMatrix, k2: HadamardMatrix) -> BshInstance:
    """Tensor of orders k and m split away from the all-ones factor rows.

    Split rows are (i, j) with j >= 1 after normalizing the second factor;
    parameters (km, k(m-1), 0, -k).
    """
    k = h.order
    m = k2.order
    big = HadamardMatrix.from_matrix(kronecker(h, normalize(k2)))
    rows = [i * m + j for i in range(k) for j in range(1, m)]
    return _instance(big, rows, SplitParams(k * m, k * (m - 1), 0, -k))


def two_row_split(h: HadamardMatrix) -> BshInstance:
    """Split on everything but the first two rows of a normalized matrix.

    Columns are permuted so the second row reads +...+-...-;
    parameters (n, n-2, 0, -2).
    """
    n = h.order
    if n < 4:
        raise ValueError("order must be at least 4")
    hn = normalize(h)
    arr = np.array(hn.tolist(), dtype=np.int64)
    order = sorted(range(n), key=lambda c: (-arr[1][c], c))
    arr = arr[:, order]
    big = HadamardMatrix(arr.tolist())
    return _instance(big, list(range(2, n)), SplitParams(n, n - 2, 0, -2))


@dataclass(frozen=True)
class TwinSplit:
    """Row partition of the order 4^m Sylvester matrix into three splits.

    h1_rows carry (4^m, 2^m, 2^m, 0); h2_rows and h3_rows each carry the
    twin parameters (4^m, 2^(m-1)(2^m - 1), 2^(m-1), -2^(m-1)).
    """

    h: HadamardMatrix
    h1_rows: tuple[int, ...]
    h2_rows: tuple[int, ...]
    h3_rows: tuple[int, ...]
    reports: tuple[SplitReport, SplitReport, SplitReport]


def _twin_partition(m_exponent: int) -> tuple[list[int], list[int], list[int]]:
    # base partition of the order-4 row indices
    p, q, r = [0, 2], [1], [3]
    for _ in range(m_exponent - 1):
        def cell(xs, ys):
            return [4 * u + v for u in xs for v in ys]

        p1, q1, r1 = [0, 2], [1], [3]
        p_next = cell(p, p1)
        q_next = cell(p, q1) + cell(q, p1) + cell(q, q1) + cell(r, r1)
        r_next = cell(p, r1) + cell(q, r1) + cell(r, p1) + cell(r, q1)
        p, q, r = p_next, q_next, r_next
    return sorted(p), sorted(q), sorted(r)


def twin_sylvester(m_exponent: int) -> TwinSplit:
    """Partition the order 4^m Sylvester matrix into one imprimitive split
    and two splits sharing the same b = -a parameters."""
    if m_exponent < 1:
        raise ValueError("exponent must be at least 1")
    m = m_exponent
    n = 4**m
    h = sylvester(2 * m)
    p, q, r = _twin_partition(m)
    half = 2 ** (m - 1)
    gram_params = SplitParams(n, 2**m, 2**m, 0)
    twin_params = SplitParams(n, half * (2**m - 1), half, -half)
    rep1 = check_split(h, p)
    rep2 = check_split(h, q)
    rep3 = check_split(h, r)
    for rep, want in ((rep1, gram_params), (rep2, twin_params), (rep3, twin_params)):
        if rep.params != want:
            raise HadsplitError(f"partition produced {rep.params}, wanted {want}")
    return TwinSplit(
        h=h,
        h1_rows=tuple(p),
        h2_rows=tuple(q),
        h3_rows=tuple(r),
        reports=(rep1, rep2, rep3),
    )


def translate_sylvester_rows(m_exponent: int, rows, t: int) -> list[int]:
    """Translate a Sylvester row set by XOR on row indices.

    Rows of the order 2^k Sylvester matrix multiply pointwise by index XOR,
    so a translated set carries a Gram conjugated by a sign diagonal and
    keeps its split parameters.
    """
    n = 2**m_exponent
    if not 0 <= t < n:
        raise ValueError("translation out of range")
    out = [i ^ t for i in rows]
    if len(set(out)) != len(out) or any(not 0 <= i < n for i in out):
        raise ValueError("bad row set")
    return sorted(out)


@dataclass(frozen=True)
class JaPair:
    """Recursive pair over a skew core: j = J_q kron a_prev,
    a = I_q kron j_prev + Q kron a_prev, both of order q^m."""

    q: int
    m: int
    j: IntMatrix
    a: IntMatrix


def ja_recursion(core: SkewCore, m: int) -> JaPair:
    """The j/a matrix pair of order q^m, with its quadratic identities checked."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    q = core.q
    jq = IntMatrix.ones(q)
    iq = IntMatrix.identity(q)
    jm = IntMatrix.ones(1)
    am = IntMatrix.ones(1)
    for _ in range(m):
        jm, am = kronecker(jq, am), kronecker(iq, jm) + kronecker(core.matrix, am)
    order = q**m
    if jm @ jm.T + q * (am @ am.T) != (order * (q + 1)) * IntMatrix.identity(order):
        raise HadsplitError("j/a norm identity failed")
    if jm @ am.T != am @ jm.T:
        raise HadsplitError("j/a symmetry identity failed")
    return JaPair(q=q, m=m, j=jm, a=am)


def skew_core_bsh(core: SkewCore) -> BshInstance:
    """Split of order q(q+1) with parameters (q(q+1), q, q, -1).

    Built as -I kron j + C kron a from the level-1 recursion pair and the
    skew conference matrix C; the split is the first q rows.
    """
    from .core import conference_from_core

    q = core.q
    pair = ja_recursion(core, 1)
    c = conference_from_core(core)
    big = -1 * kronecker(IntMatrix.identity(q + 1), pair.j) + kronecker(c, pair.a)
    h = HadamardMatrix.from_matrix(big)
    return _instance(h, list(range(q)), SplitParams(q * (q + 1), q, q, -1))


def _twin_family_match(n: int, ell: int, a: int, b: int) -> str | None:
    root = isqrt_exact(n)
    # n must be 4^m, so sqrt(n) must be a power of two
    if root is None or root < 2 or root & (root - 1):
        return None
    m = root.bit_length() - 1
    if b == -a and a == root // 2 and ell == (n - root) // 2:
        return f"twin-sylvester m={m}"
    if b == 0 and a == root and ell == root:
        return f"twin-sylvester m={m} (imprimitive block)"
    return None


def witness_for(n: int, ell: int, a: int, b: int, _depth: int = 0) -> str | None:
    """Name a construction realizing the parameters, or None.

    Matching is by parameter lookup against the families in this module,
    their complements, and one all-ones-delete step.
    """
    if n < 1 or not 1 <= ell <= n:
        return None
    hit = _twin_family_match(n, ell, a, b)
    if hit:
        return hit
    root = isqrt_exact(n)
    if root is not None and root >= 2:
        m = root
        if (ell, a, b) == ((m - 1) ** 2, 1, 1 - m) and _hadamard_order_ok(m):
            return f"kron-square large m={m}"
        if (ell, a, b) == (2 * m - 2, m - 2, -2) and _hadamard_order_ok(m):
            return f"kron-square small m={m}"
        if (ell, a, b) == (m, m, 0) and _hadamard_order_ok(m):
            return f"gram m={m}"
    if (ell, a, b) == (n - 2, 0, -2) and _hadamard_order_ok(n):
        return "two-row"
    if a == 0 and b < 0:
        k = -b
        if n % k == 0 and ell == n - k and n // k >= 2:
            if _hadamard_order_ok(k) and _hadamard_order_ok(n // k):
                return f"core-tensor k={k}"
    if a == ell and b == -1 and n == a * (a + 1) and a % 4 == 3:
        from .gf import is_prime_power

        if is_prime_power(a):
            return f"skew-core q={a}"
    if _depth == 0:
        # one all-ones-delete step back: (n, L, c, -c) with L = n - ell - 1, c = a + 1
        c = a + 1
        if b == -a - 2 and c >= 1:
            parent = witness_for(n, n - ell - 1, c, -c, _depth=1)
            if parent:
                return f"delete from {parent}"
            comp = witness_for(n, ell + 1, c, -c, _depth=1)
            if comp:
                return f"delete from complement of {comp}"
    return None


def _hadamard_order_ok(m: int) -> bool:
    return m == 1 or m == 2 or m % 4 == 0
