"""Analysis of balanced splits.

A split of a Hadamard matrix H of order n is a row subset H1 (size ell)
whose column Gram matrix G = H1t H1 has at most two distinct off-diagonal
values a >= b. The 0/1 matrix A marks the a-positions. Such a G satisfies
G^2 = nG, which forces A to be strongly regular and pins b to one of three
branches:

  seidel: b = -a, with ell^2 + a^2 (n-1) = n ell;
  case-a: b = ell (ell - a - n) / (a (n-1) + ell), split rows sum to zero;
  case-b: b = (ell - a)(ell - n) / (a (n-1) + ell - n).

Reports carry the branch, the derived graph, and verification flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .core import HadamardMatrix, HadsplitError, IntMatrix, isqrt_exact
from .search import max_clique

__all__ = [
    "NotSplittable",
    "InvalidSingleValue",
    "NonIntegral",
    "InfeasibleSeidel",
    "MissingAllOnesRow",
    "BoundInapplicable",
    "NotUnbiasedCase",
    "WrongParameters",
    "NotDiagonalized",
    "BudgetExceeded",
    "SplitParams",
    "SrgParams",
    "SplitReport",
    "SeidelDerivation",
    "EquiangularReport",
    "SpectrumLayout",
    "direct_srg_params",
    "check_split",
    "derive_seidel",
    "derive_srg_case_a",
    "derive_srg_case_b",
    "general_srg_from_b",
    "verify_seidel_matrix",
    "complement_split",
    "delete_allones_transform",
    "equiangular_report",
    "unbiased_partner",
    "regular_hadamard_normalize",
    "diagonalize_by_hadamard",
    "split_from_diagonalizable_srg",
    "search_splits",
    "classify_srg16",
]


class NotSplittable(HadsplitError):
    """More than two distinct off-diagonal Gram values."""


class InvalidSingleValue(HadsplitError):
    """Single Gram value outside the allowed (ell, a) set."""


class NonIntegral(HadsplitError):
    """A derived parameter is not an integer."""


class InfeasibleSeidel(HadsplitError):
    """ell^2 + a^2 (n-1) = n ell fails, or b != -a where required."""


class MissingAllOnesRow(HadsplitError):
    """No constant-sign row available outside the split."""


class BoundInapplicable(HadsplitError):
    """Line bound denominator vanishes or is negative."""


class NotUnbiasedCase(HadsplitError):
    """Parameters are not (n, (n +- sqrt n)/2, sqrt(n)/2, -sqrt(n)/2)."""


class WrongParameters(HadsplitError):
    """Parameters are not (4m^2, 2m^2 - m, m, -m)."""


class NotDiagonalized(HadsplitError):
    """H A Ht is not n times an integer diagonal matrix."""

    def __init__(self, message: str, witness: tuple[int, int, int]):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(HadsplitError):
    """Subset count above the search budget."""


@dataclass(frozen=True)
class SplitParams:
    n: int
    ell: int
    a: int
    b: int

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.ell, self.a, self.b)


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def identity_ok(self) -> bool:
        """Counting identity k(k - lam - 1) = (v - k - 1) mu."""
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu

    def complement(self) -> "SrgParams":
        v, k = self.v, self.k
        return SrgParams(v, v - k - 1, v - 2 * k + self.mu - 2, v - 2 * k + self.lam)


@dataclass(frozen=True)
class SplitReport:
    params: SplitParams
    rows: tuple[int, ...]
    adjacency: IntMatrix | None
    branch: str  # "seidel" | "case-a" | "case-b" | "single-value" | "unclassified"
    srg: SrgParams | None
    checks: dict[str, bool]
    alt_branch: str | None = None

    def as_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "ell": p.ell,
            "a": p.a,
            "b": p.b,
            "rows": list(self.rows),
            "branch": self.branch,
            "alt_branch": self.alt_branch,
            "srg": None if self.srg is None else list(self.srg.astuple()),
            "checks": dict(self.checks),
        }


@dataclass(frozen=True)
class SeidelDerivation:
    params: SplitParams
    srg: SrgParams
    # (eigenvalue, multiplicity) of S = (G - ell I)/a
    s_spectrum: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class EquiangularReport:
    m: int
    alpha_sq: Fraction
    bound: Fraction
    attained: bool


@dataclass(frozen=True)
class SpectrumLayout:
    # eigenvalue carried by each row of the diagonalizing matrix, in order
    per_row: tuple[int, ...]

    @property
    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.per_row:
            out[v] = out.get(v, 0) + 1
        return out


def direct_srg_params(a: IntMatrix) -> SrgParams | None:
    """Read (v,k,lam,mu) off an adjacency matrix, or None if not an SRG.

    Imprimitive cases (disjoint cliques, complete multipartite) are accepted;
    a missing edge class fixes the corresponding constant as 0.
    """
    v = a.nrows
    if not a.is_square or not a.is_symmetric():
        return None
    arr = np.array(a.tolist(), dtype=np.int64)
    if not np.all((arr == 0) | (arr == 1)) or np.any(np.diagonal(arr)):
        return None
    sums = arr.sum(axis=1)
    if not np.all(sums == sums[0]):
        return None
    k = int(sums[0])
    sq = arr @ arr
    edge = arr == 1
    nonedge = (arr == 0) & ~np.eye(v, dtype=bool)
    lam = int(sq[edge][0]) if edge.any() else 0
    mu = int(sq[nonedge][0]) if nonedge.any() else 0
    expect = k * np.eye(v, dtype=np.int64) + lam * arr + mu * (1 - arr - np.eye(v, dtype=np.int64))
    if not np.array_equal(sq, expect):
        return None
    return SrgParams(v, k, lam, mu)


def _case_a_b(n: int, ell: int, a: int) -> Fraction:
    return Fraction(ell * (ell - a - n), a * (n - 1) + ell)


def _case_b_b(n: int, ell: int, a: int) -> Fraction | None:
    den = a * (n - 1) + ell - n
    if den == 0:
        return None
    return Fraction((ell - a) * (ell - n), den)


def check_split(h: HadamardMatrix, row_subset: Iterable[int]) -> SplitReport:
    """Validate a row subset as a balanced split and classify its branch."""
    n = h.order
    requested = [int(i) for i in row_subset]
    rows = tuple(sorted(set(requested)))
    if not rows:
        raise ValueError("empty row subset")
    if len(rows) != len(requested):
        raise ValueError("duplicate row indices")
    if rows[0] < 0 or rows[-1] >= n:
        raise ValueError("row index out of range")
    ell = len(rows)
    h1 = h.take_rows(rows)
    gram = h1.T @ h1
    values = sorted(gram.offdiag_values())

    if len(values) > 2:
        raise NotSplittable(f"off-diagonal Gram values {values}")

    checks: dict[str, bool] = {}
    checks["rowsum_zero"] = all(s == 0 for s in h1.row_sums())

    if len(values) == 1:
        a = values[0]
        if (ell, a) not in {(1, 1), (n - 1, -1), (n, 0)}:
            raise InvalidSingleValue(f"single value {a} with ell={ell} not allowed")
        checks["gram_ok"] = gram == _two_value_gram(n, ell, a, a, None)
        return SplitReport(
            params=SplitParams(n, ell, a, a),
            rows=rows,
            adjacency=None,
            branch="single-value",
            srg=None,
            checks=checks,
        )

    a, b = values[1], values[0]
    garr = np.array(gram.tolist(), dtype=np.int64)
    amask = (garr == a) & ~np.eye(n, dtype=bool)
    adjacency = IntMatrix(amask.astype(np.int64).tolist())
    checks["gram_ok"] = gram == _two_value_gram(n, ell, a, b, adjacency) and (
        gram @ gram == n * gram
    )

    branch = "unclassified"
    alt = None
    matches = []
    if b == -a:
        matches.append("seidel")
    if Fraction(b) == _case_a_b(n, ell, a):
        matches.append("case-a")
    bb = _case_b_b(n, ell, a)
    if bb is not None and Fraction(b) == bb:
        matches.append("case-b")
    if matches:
        branch = matches[0]
        if len(matches) > 1:
            alt = matches[1]

    srg = direct_srg_params(adjacency)
    if branch == "seidel":
        checks["seidel_ok"] = _seidel_identity_holds(gram, n, ell, a)

    return SplitReport(
        params=SplitParams(n, ell, a, b),
        rows=rows,
        adjacency=adjacency,
        branch=branch,
        srg=srg,
        checks=checks,
        alt_branch=alt,
    )


def _two_value_gram(n: int, ell: int, a: int, b: int, adjacency: IntMatrix | None) -> IntMatrix:
    eye = IntMatrix.identity(n)
    j = IntMatrix.ones(n)
    if adjacency is None:
        return ell * eye + a * (j - eye)
    return ell * eye + a * adjacency + b * (j - adjacency - eye)


def _seidel_identity_holds(gram: IntMatrix, n: int, ell: int, a: int) -> bool:
    # S = (G - ell I)/a has entries 0 on the diagonal and +-1 elsewhere
    eye = IntMatrix.identity(n)
    try:
        s = (gram - ell * eye).scaled_exact(1, a)
    except ValueError:
        return False
    return a * a * (s @ s) == a * (n - 2 * ell) * s + (ell * (n - ell)) * eye


def derive_seidel(n: int, ell: int, a: int) -> SeidelDerivation:
    """Graph parameters forced on the a-marked graph when b = -a.

    Raises InfeasibleSeidel when the order identity fails and NonIntegral
    when the forced parameters are not integers.
    """
    if a < 1:
        raise InfeasibleSeidel("a must be positive when b = -a")
    if ell * ell + a * a * (n - 1) != n * ell:
        raise InfeasibleSeidel(f"ell^2 + a^2(n-1) != n ell for {(n, ell, a)}")
    if ell == a * a:
        # forced ell = 1, a = 1: the graph is two disjoint cliques of size n/2
        if n % 2:
            raise NonIntegral("odd order in the degenerate branch")
        k = (n - 2) // 2
        srg = SrgParams(n, k, k - 1, 0)
        s_pos = Fraction(n - ell, a)
        s_neg = Fraction(-ell, a)
    else:
        den = 2 * a * (ell - a * a)
        k = Fraction((a - 1) * ell * (a + ell), den)
        lam = Fraction((a + ell) * (3 * a * a + a * ell - a - 3 * ell), 2 * den)
        mu = Fraction((a - 1) * (ell * ell - a * a), 2 * den)
        for name, val in (("k", k), ("lambda", lam), ("mu", mu)):
            if val.denominator != 1:
                raise NonIntegral(f"{name} = {val} is not an integer")
        srg = SrgParams(n, int(k), int(lam), int(mu))
        s_pos = Fraction(n - ell, a)
        s_neg = Fraction(-ell, a)
    if s_pos.denominator != 1 or s_neg.denominator != 1:
        raise NonIntegral(f"Seidel spectrum {s_pos}, {s_neg} not integral")
    return SeidelDerivation(
        params=SplitParams(n, ell, a, -a),
        srg=srg,
        s_spectrum=((int(s_pos), ell), (int(s_neg), n - ell)),
    )


def general_srg_from_b(n: int, ell: int, a: int, b: int | Fraction) -> tuple[Fraction, ...]:
    """Exact (k, lam, mu) for a two-value split with the given b.

    Valid whenever a^2 != b^2. Shared by both b-branches.
    """
    b = Fraction(b)
    if a * a == b * b:
        raise NonIntegral("a^2 = b^2 has no two-value derivation here")
    k = (n * ell - ell * ell - b * b * (n - 1)) / (a * a - b * b)
    den = (a - b) ** 2 * (a + b)
    lam = (
        n * (a * a - a * (b - 1) * b + b**3 - 2 * b * ell)
        + 2 * (b - ell) * (a * a + a * b - b * (b + ell))
    ) / den
    mu = (b * n * (-a * b + a + b * b + b - 2 * ell) + 2 * b * (a - ell) * (b - ell)) / den
    return (k, lam, mu)


def _integral_srg(n: int, kfrac: Fraction, lamfrac: Fraction, mufrac: Fraction) -> SrgParams:
    for name, val in (("k", kfrac), ("lambda", lamfrac), ("mu", mufrac)):
        if val.denominator != 1:
            raise NonIntegral(f"{name} = {val} is not an integer")
    return SrgParams(n, int(kfrac), int(lamfrac), int(mufrac))


def derive_srg_case_a(n: int, ell: int, a: int) -> tuple[int, SrgParams]:
    """b and the a-marked graph parameters on the zero-row-sum branch."""
    bfrac = _case_a_b(n, ell, a)
    if bfrac.denominator != 1:
        raise NonIntegral(f"b = {bfrac} is not an integer")
    b = int(bfrac)
    k, lam, mu = general_srg_from_b(n, ell, a, b)
    return b, _integral_srg(n, k, lam, mu)


def derive_srg_case_b(n: int, ell: int, a: int) -> tuple[int, SrgParams]:
    """b and the a-marked graph parameters on the other non-seidel branch."""
    bfrac = _case_b_b(n, ell, a)
    if bfrac is None:
        raise NonIntegral("branch denominator a(n-1) + ell - n vanishes")
    if bfrac.denominator != 1:
        raise NonIntegral(f"b = {bfrac} is not an integer")
    b = int(bfrac)
    k, lam, mu = general_srg_from_b(n, ell, a, b)
    return b, _integral_srg(n, k, lam, mu)


def verify_seidel_matrix(report: SplitReport) -> bool:
    """Check the quadratic identity of the split's Seidel matrix.

    S is the Seidel matrix oriented so S = (G - ell I)/a, i.e. +1 on
    a-positions. The identity, cleared of denominators, is
    a^2 S^2 = a(n - 2 ell) S + ell(n - ell) I.
    """
    p = report.params
    if p.b != -p.a:
        raise InfeasibleSeidel("report is not on the b = -a branch")
    if report.adjacency is None:
        raise InfeasibleSeidel("no adjacency available")
    n, ell, a = p.n, p.ell, p.a
    eye = IntMatrix.identity(n)
    j = IntMatrix.ones(n)
    # S = 2A + I - J coincides with (G - ell I)/a on the b = -a branch
    s = 2 * report.adjacency + eye - j
    return a * a * (s @ s) == a * (n - 2 * ell) * s + (ell * (n - ell)) * eye


def complement_split(report: SplitReport) -> SplitParams:
    """Parameters carried by the complementary row set."""
    p = report.params
    return SplitParams(p.n, p.n - p.ell, -p.b, -p.a)


def _constant_sign_rows(h: HadamardMatrix) -> list[int]:
    return [i for i in range(h.order) if len(set(h.row(i))) == 1]


def delete_allones_transform(h: HadamardMatrix, report: SplitReport) -> SplitReport:
    """Drop the all-ones row from the split complement and re-split.

    For a b = -a split whose complement contains a constant-sign row, the
    remaining n - ell - 1 rows form a split with parameters
    (n, n - ell - 1, a - 1, -a - 1).
    """
    p = report.params
    if p.b != -p.a:
        raise InfeasibleSeidel("transform needs b = -a")
    outside = [i for i in _constant_sign_rows(h) if i not in report.rows]
    if not outside:
        raise MissingAllOnesRow("no constant-sign row outside the split")
    drop = outside[0]
    keep = [i for i in range(h.order) if i not in report.rows and i != drop]
    out = check_split(h, keep)
    want = SplitParams(p.n, p.n - p.ell - 1, p.a - 1, -p.a - 1)
    if out.params != want:
        raise HadsplitError(f"transform produced {out.params}, expected {want}")
    return out


def equiangular_report(params: SplitParams) -> EquiangularReport:
    """Line-count bound for the split seen as equiangular lines.

    The ell split rows span lines at common angle alpha with
    alpha^2 = (n - ell)/(ell (n - 1)); the bound m(1 - alpha^2)/(1 - m alpha^2)
    applies while m alpha^2 < 1.
    """
    n, ell = params.n, params.ell
    if params.b != -params.a:
        raise InfeasibleSeidel("equiangular analysis needs b = -a")
    alpha_sq = Fraction(n - ell, ell * (n - 1))
    denom = 1 - ell * alpha_sq
    if denom <= 0:
        raise BoundInapplicable(f"m alpha^2 = {ell * alpha_sq} >= 1")
    bound = Fraction(ell) * (1 - alpha_sq) / denom
    return EquiangularReport(m=ell, alpha_sq=alpha_sq, bound=bound, attained=bound == n)


def unbiased_partner(h: HadamardMatrix, report: SplitReport) -> HadamardMatrix:
    """Hadamard matrix K with H Kt entries all +-sqrt(n).

    Exists for b = -a splits with n = 4a^2 and ell = (n +- sqrt n)/2;
    K = (2G - nI) / (2a).
    """
    p = report.params
    n, ell, a = p.n, p.ell, p.a
    root = isqrt_exact(n)
    if p.b != -a or root is None or root != 2 * a or 2 * ell not in (n - root, n + root):
        raise NotUnbiasedCase(f"{p} is not an unbiased-partner case")
    h1 = h.take_rows(report.rows)
    gram = h1.T @ h1
    k = (2 * gram - n * IntMatrix.identity(n)).scaled_exact(1, 2 * a)
    partner = HadamardMatrix.from_matrix(k)
    prod = h @ partner.T
    if any(abs(v) != root for row in prod.tolist() for v in row):
        raise HadsplitError("partner failed the unbiasedness check")
    return partner


def regular_hadamard_normalize(h: HadamardMatrix, report: SplitReport) -> HadamardMatrix:
    """Sign-normalize a (4m^2, 2m^2 - m, m, -m) split to constant sums 2m.

    Rows outside the split are negated, then columns are flipped to make
    every column sum +2m; row sums become +2m automatically.
    """
    p = report.params
    m = p.a
    if p.b != -m or p.n != 4 * m * m or p.ell != 2 * m * m - m:
        raise WrongParameters(f"{p} is not of the form (4m^2, 2m^2 - m, m, -m)")
    arr = np.array(h.tolist(), dtype=np.int64)
    inside = np.zeros(p.n, dtype=bool)
    inside[list(report.rows)] = True
    arr[~inside] *= -1
    sums = arr.sum(axis=0)
    if not np.all(np.abs(sums) == 2 * m):
        raise HadsplitError("column sums are not +-2m after row flips")
    arr[:, sums < 0] *= -1
    out = HadamardMatrix(arr.tolist())
    assert all(s == 2 * m for s in out.col_sums())
    assert all(s == 2 * m for s in out.row_sums())
    return out


def diagonalize_by_hadamard(a: IntMatrix, h: HadamardMatrix) -> SpectrumLayout:
    """Eigenvalues read off D = H A Ht when it is n times a diagonal."""
    n = h.order
    if a.shape != (n, n):
        raise ValueError("shape mismatch")
    d = h @ a @ h.T
    arr = np.array(d.tolist(), dtype=object)
    for i in range(n):
        for j in range(n):
            if i != j and arr[i][j] != 0:
                raise NotDiagonalized(
                    f"off-diagonal entry at ({i}, {j})", witness=(i, j, int(arr[i][j]))
                )
    per_row = []
    for i in range(n):
        q, r = divmod(int(arr[i][i]), n)
        if r:
            raise NotDiagonalized(f"diagonal entry at ({i}, {i}) not divisible by {n}",
                                  witness=(i, i, int(arr[i][i])))
        per_row.append(q)
    return SpectrumLayout(per_row=tuple(per_row))


def split_from_diagonalizable_srg(a: IntMatrix, h: HadamardMatrix) -> SplitReport:
    """Recover a split from an SRG diagonalized by H (all-ones row last)."""
    n = h.order
    if set(h.row(n - 1)) != {1}:
        raise MissingAllOnesRow("the last row of h must be all-ones")
    srg = direct_srg_params(a)
    if srg is None:
        raise ValueError("input is not a strongly regular graph")
    layout = diagonalize_by_hadamard(a, h)
    if layout.per_row[n - 1] != srg.k:
        raise HadsplitError("last row does not carry the valency eigenvalue")
    others = sorted({v for i, v in enumerate(layout.per_row) if i != n - 1})
    if len(others) != 2:
        raise HadsplitError(f"expected two non-valency eigenvalues, got {others}")
    theta = others[1]
    rows = [i for i in range(n - 1) if layout.per_row[i] == theta]
    return check_split(h, rows)


def search_splits(h: HadamardMatrix, ell: int, budget: int = 10**7) -> list[SplitReport]:
    """All balanced ell-row splits, deduplicated by parameter tuple.

    Subsets are scanned in lexicographic order and the first representative
    of each parameter tuple is kept, so output is deterministic. Raises
    BudgetExceeded when C(n, ell) exceeds the budget.
    """
    n = h.order
    if not 1 <= ell <= n:
        raise ValueError("ell out of range")
    count = math.comb(n, ell)
    if count > budget:
        raise BudgetExceeded(f"C({n}, {ell}) = {count} exceeds budget {budget}")
    arr = np.array(h.tolist(), dtype=np.int64)
    seen: set[tuple[int, int, int, int]] = set()
    out: list[SplitReport] = []
    eye = np.eye(n, dtype=bool)
    for rows in combinations(range(n), ell):
        sub = arr[list(rows), :]
        gram = sub.T @ sub
        vals = np.unique(gram[~eye])
        if len(vals) > 2:
            continue
        report = check_split(h, rows)
        key = report.params.astuple()
        if key not in seen:
            seen.add(key)
            out.append(report)
    return out


def classify_srg16(a: IntMatrix) -> str:
    """Distinguish the two SRG(16, 6, 2, 2) graphs by clique number."""
    srg = direct_srg_params(a)
    if srg is None or srg.astuple() != (16, 6, 2, 2):
        raise ValueError("input is not an SRG(16, 6, 2, 2)")
    masks = []
    for i in range(16):
        m = 0
        for j in range(16):
            if a[i, j]:
                m |= 1 << j
        masks.append(m)
    size, _ = max_clique(masks)
    if size == 4:
        return "lattice"
    if size == 3:
        return "shrikhande"
    raise AssertionError(f"impossible clique number {size}")  # pragma: no cover
