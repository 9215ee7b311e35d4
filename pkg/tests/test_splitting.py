from fractions import Fraction

import numpy as np
import pytest

from hadsplit.core import HadamardMatrix, IntMatrix, sylvester
from hadsplit.splitting import (
    BoundInapplicable,
    BudgetExceeded,
    InfeasibleSeidel,
    MissingAllOnesRow,
    NonIntegral,
    NotDiagonalized,
    NotSplittable,
    NotUnbiasedCase,
    SplitParams,
    SrgParams,
    WrongParameters,
    check_split,
    classify_srg16,
    complement_split,
    delete_allones_transform,
    derive_seidel,
    derive_srg_case_a,
    derive_srg_case_b,
    diagonalize_by_hadamard,
    direct_srg_params,
    equiangular_report,
    general_srg_from_b,
    regular_hadamard_normalize,
    search_splits,
    split_from_diagonalizable_srg,
    unbiased_partner,
    verify_seidel_matrix,
)


def _load(name):
    from hadsplit.cli import bundled_data

    return bundled_data(name)


# ------------------------------------------------------------- check_split


def test_twin_split_is_seidel_branch(twin16):
    rep = twin16.reports[1]
    assert rep.params.astuple() == (16, 6, 2, -2)
    assert rep.branch == "seidel"
    assert rep.alt_branch == "case-a"
    assert rep.srg.astuple() == (16, 6, 2, 2)
    assert rep.checks["rowsum_zero"]
    assert rep.checks["gram_ok"]
    assert rep.checks["seidel_ok"]


def test_block_split_is_case_b(twin16):
    rep = twin16.reports[0]
    assert rep.params.astuple() == (16, 4, 4, 0)
    assert rep.branch == "case-b"
    assert rep.adjacency is not None


def test_deleted_split_is_case_a(split_16_9):
    assert split_16_9.params.astuple() == (16, 9, 1, -3)
    assert split_16_9.branch == "case-a"
    assert split_16_9.srg.astuple() == (16, 9, 4, 6)
    assert split_16_9.checks["rowsum_zero"]


def test_single_row_splits():
    h = sylvester(4)
    constant = check_split(h, [0])
    assert constant.params.astuple() == (16, 1, 1, 1)
    assert constant.branch == "single-value"
    signed = check_split(h, [3])
    assert signed.params.astuple() == (16, 1, 1, -1)
    assert signed.branch == "seidel"


def test_whole_matrix_and_complements():
    h = sylvester(4)
    assert check_split(h, range(16)).params.astuple() == (16, 16, 0, 0)
    assert check_split(h, range(1, 16)).params.astuple() == (16, 15, -1, -1)


def test_not_splittable_three_gram_values():
    with pytest.raises(NotSplittable):
        check_split(sylvester(4), [0, 1, 2])


def test_check_split_input_validation():
    h = sylvester(2)
    with pytest.raises(ValueError):
        check_split(h, [0, 9])
    with pytest.raises(ValueError):
        check_split(h, [0, 0])
    with pytest.raises(ValueError):
        check_split(h, [])


def test_gram_square_identity_always_checked(twin16):
    # G^2 = nG holds for every report this library emits
    for rep in twin16.reports:
        rows = np.array(twin16.h.tolist())[list(rep.rows)]
        g = rows.T @ rows
        assert np.array_equal(g @ g, 16 * g)


# ------------------------------------------------------------- derivations


def test_srg_params_identity_and_complement():
    p = SrgParams(16, 6, 2, 2)
    assert p.identity_ok()
    assert p.complement().astuple() == (16, 9, 4, 6)
    assert p.complement().complement() == p


def test_direct_srg_params_on_bundled_graphs():
    assert direct_srg_params(_load("lattice-4x4")).astuple() == (16, 6, 2, 2)
    assert direct_srg_params(_load("shrikhande")).astuple() == (16, 6, 2, 2)
    assert direct_srg_params(_load("srg-36-10-4-2")).astuple() == (36, 10, 4, 2)
    assert direct_srg_params(IntMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])) is None


def test_derive_seidel_canonical():
    der = derive_seidel(16, 6, 2)
    assert der.params.astuple() == (16, 6, 2, -2)
    assert der.srg.astuple() == (16, 6, 2, 2)
    assert der.s_spectrum == ((5, 6), (-3, 10))


def test_derive_seidel_degenerate_single_line():
    der = derive_seidel(16, 1, 1)
    assert der.srg.astuple() == (16, 7, 6, 0)
    assert der.s_spectrum == ((15, 1), (-1, 15))


def test_derive_seidel_rejects_broken_trace_identity():
    with pytest.raises(InfeasibleSeidel):
        derive_seidel(16, 7, 2)
    with pytest.raises(InfeasibleSeidel):
        derive_seidel(16, 6, -2)


def test_derive_case_a_rows():
    assert derive_srg_case_a(16, 9, 1) == (-3, SrgParams(16, 9, 4, 6))
    assert derive_srg_case_a(16, 5, 1) == (-3, SrgParams(16, 10, 6, 6))
    assert derive_srg_case_a(36, 10, 4) == (-2, SrgParams(36, 10, 4, 2))
    assert derive_srg_case_a(64, 14, 6) == (-2, SrgParams(64, 14, 6, 2))


def test_derive_case_a_rejects_seidel_overlap():
    with pytest.raises(NonIntegral):
        derive_srg_case_a(16, 6, 2)


def test_derive_case_b():
    # four disjoint 4-cliques: the imprimitive block split
    b, srg = derive_srg_case_b(16, 4, 4)
    assert b == 0
    assert srg.astuple() == (16, 3, 2, 0)
    assert srg.identity_ok()


def test_general_srg_from_b_is_exact():
    k, lam, mu = general_srg_from_b(16, 9, 1, -3)
    assert (k, lam, mu) == (Fraction(9), Fraction(4), Fraction(6))
    k, lam, mu = general_srg_from_b(64, 21, 5, -3)
    assert (k, lam, mu) == (Fraction(21), Fraction(8), Fraction(6))


def test_verify_seidel_matrix(twin16):
    assert verify_seidel_matrix(twin16.reports[1])


def test_complement_split_is_involutive(twin16):
    rep = twin16.reports[1]
    comp = complement_split(rep)
    assert comp.astuple() == (16, 10, 2, -2)
    again = complement_split(check_split(twin16.h, sorted(set(range(16)) - set(rep.rows))))
    assert again == rep.params


def test_delete_transform(twin16, split_16_9):
    assert split_16_9.params.astuple() == (16, 9, 1, -3)
    assert 0 not in split_16_9.rows
    with pytest.raises(InfeasibleSeidel):
        delete_allones_transform(twin16.h, twin16.reports[0])


def test_delete_requires_constant_row(twin16):
    # flipping one column destroys the unique constant-sign row
    sign = np.ones(16, dtype=np.int64)
    sign[0] = -1
    arr = np.array(twin16.h.tolist()) * sign[None, :]
    flipped = HadamardMatrix(arr.tolist())
    rep = check_split(flipped, twin16.h2_rows)
    assert rep.params.astuple() == (16, 6, 2, -2)
    with pytest.raises(MissingAllOnesRow):
        delete_allones_transform(flipped, rep)


# ------------------------------------------------------------- transforms


def test_equiangular_reports():
    rep = equiangular_report(SplitParams(16, 6, 2, -2))
    assert rep.m == 6
    assert rep.alpha_sq == Fraction(1, 9)
    assert rep.bound == 16
    assert rep.attained
    rep = equiangular_report(SplitParams(64, 28, 4, -4))
    assert rep.alpha_sq == Fraction(1, 49)
    assert rep.bound == 64
    assert rep.attained


def test_equiangular_inapplicable():
    with pytest.raises(BoundInapplicable):
        equiangular_report(SplitParams(4, 1, 1, -1))
    with pytest.raises(InfeasibleSeidel):
        equiangular_report(SplitParams(16, 9, 1, -3))


def test_unbiased_partner(twin16):
    partner = unbiased_partner(twin16.h, twin16.reports[1])
    prod = np.array((twin16.h @ partner.T).tolist())
    assert set(np.abs(prod).ravel().tolist()) == {4}


def test_unbiased_rejects_other_branches(twin16, split_16_9):
    with pytest.raises(NotUnbiasedCase):
        unbiased_partner(twin16.h, split_16_9)


def test_regular_normal_form(twin16):
    reg = regular_hadamard_normalize(twin16.h, twin16.reports[1])
    assert set(reg.row_sums()) == {4}
    assert set(reg.col_sums()) == {4}
    with pytest.raises(WrongParameters):
        regular_hadamard_normalize(twin16.h, twin16.reports[0])


def test_diagonalize_by_hadamard(twin16):
    layout = diagonalize_by_hadamard(_load("lattice-4x4"), twin16.h)
    assert layout.multiplicities == {6: 1, 2: 6, -2: 9}
    with pytest.raises(NotDiagonalized) as err:
        diagonalize_by_hadamard(_load("shrikhande"), twin16.h)
    assert err.value.witness == (10, 15, 32)


def test_split_from_diagonalizable_srg(twin16):
    with pytest.raises(MissingAllOnesRow):
        split_from_diagonalizable_srg(_load("lattice-4x4"), twin16.h)
    arr = np.array(twin16.h.tolist())
    reordered = HadamardMatrix(arr[list(range(1, 16)) + [0]].tolist())
    rep = split_from_diagonalizable_srg(_load("lattice-4x4"), reordered)
    assert rep.params.astuple() == (16, 6, 2, -2)
    assert rep.branch == "seidel"


def test_search_splits(twin16):
    found = search_splits(twin16.h, 6)
    assert found
    assert all(r.params.astuple() == (16, 6, 2, -2) for r in found)
    with pytest.raises(BudgetExceeded):
        search_splits(twin16.h, 6, budget=10)


def test_classify_srg16():
    assert classify_srg16(_load("lattice-4x4")) == "lattice"
    assert classify_srg16(_load("shrikhande")) == "shrikhande"
    with pytest.raises(ValueError):
        classify_srg16(_load("srg-36-10-4-2"))
