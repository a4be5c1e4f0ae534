from math import comb

import pytest

from grmjacobi import (
    COLLINEAR_TRIPLE,
    GENERIC,
    TClass,
    blocks_of_shell,
    count_blocks_containing,
    design_check_bruteforce,
    design_check_jacobi,
    generalized_design_params,
)

from conftest import get_code


# ---------------------------------------------------------
# Block multisets
# ---------------------------------------------------------


def test_blocks_of_shell(code_3_2):
    blocks = blocks_of_shell(code_3_2, 6)
    assert len(blocks) == 24
    assert all(len(b) == 6 for b in blocks.blocks)
    full = blocks_of_shell(code_3_2, 9)
    assert len(full) == 2
    assert all(b == frozenset(range(9)) for b in full.blocks)


# ---------------------------------------------------------
# Pair designs
# ---------------------------------------------------------


def test_middle_shell_is_2_design_with_lambda_10(code_3_2):
    jac = design_check_jacobi(code_3_2, 6, 2)
    blk = design_check_bruteforce(code_3_2, 6, 2)
    for report in (jac, blk):
        assert report.is_t_design and not report.trivial
        assert report.lambdas() == (10,)
        assert report.block_count == 24
        assert sum(report.class_counts.values()) == 36
    assert jac.lambda_by_class == blk.lambda_by_class


def test_full_shell_is_flagged_trivial(code_3_2):
    report = design_check_bruteforce(code_3_2, 9, 2)
    assert report.trivial and report.is_t_design
    assert report.lambdas() == (2,)  # the q-1 repeated full blocks


@pytest.mark.parametrize("p,k,m", [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3)])
def test_every_nontrivial_shell_is_a_2_design(p, k, m):
    code = get_code(p, k, m)
    ell = (code.q - 1) * code.q ** (code.m - 1)
    jac = design_check_jacobi(code, ell, 2)
    blk = design_check_bruteforce(code, ell, 2)
    assert jac.is_t_design and blk.is_t_design
    assert jac.lambda_by_class == blk.lambda_by_class


# ---------------------------------------------------------
# Triple designs
# ---------------------------------------------------------


def test_not_a_3_design_at_q3_m2(code_3_2):
    jac = design_check_jacobi(code_3_2, 6, 3)
    blk = design_check_bruteforce(code_3_2, 6, 3)
    for report in (jac, blk):
        assert not report.is_t_design
        assert report.lambda_by_class[TClass(3, 2)] == 6
        assert report.lambda_by_class[TClass(3, 1)] == 4
    assert jac.lambda_by_class == blk.lambda_by_class


def test_binary_shells_are_3_designs():
    # over GF(2) the rank-1 triple class is empty, so one count remains
    code = get_code(2, 1, 3)
    jac = design_check_jacobi(code, 4, 3)
    blk = design_check_bruteforce(code, 4, 3)
    assert jac.is_t_design and blk.is_t_design
    assert jac.lambdas() == blk.lambdas() == (1,)


@pytest.mark.parametrize("p,k,m", [(3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3)])
def test_no_3_design_when_q_at_least_3(p, k, m):
    code = get_code(p, k, m)
    ell = (code.q - 1) * code.q ** (code.m - 1)
    jac = design_check_jacobi(code, ell, 3)
    blk = design_check_bruteforce(code, ell, 3)
    assert not jac.is_t_design and not blk.is_t_design
    assert jac.lambda_by_class == blk.lambda_by_class
    assert len(jac.lambdas()) == 2


# ---------------------------------------------------------
# Quadruple designs and double counting
# ---------------------------------------------------------


@pytest.mark.parametrize("p,k,m", [(2, 1, 3), (3, 1, 2), (2, 2, 2)])
def test_routes_agree_for_quads(p, k, m):
    code = get_code(p, k, m)
    ell = (code.q - 1) * code.q ** (code.m - 1)
    if ell < 4:
        pytest.skip("middle shell smaller than 4")
    jac = design_check_jacobi(code, ell, 4)
    blk = design_check_bruteforce(code, ell, 4)
    assert jac.lambda_by_class == blk.lambda_by_class
    assert jac.is_t_design == blk.is_t_design


@pytest.mark.parametrize("t", [2, 3, 4])
def test_double_counting(code_3_2, t):
    ell = 6
    report = design_check_bruteforce(code_3_2, ell, t)
    total = sum(
        report.lambda_by_class[cls] * count for cls, count in report.class_counts.items()
    )
    assert total == report.block_count * comb(ell, t)


def test_count_blocks_containing_matches_report(code_3_2):
    shell = code_3_2.shell(6)
    report = design_check_bruteforce(code_3_2, 6, 3)
    pts = code_3_2.points()
    from grmjacobi import classify_T

    for T in (((0, 0), (1, 0), (0, 1)), ((0, 0), (1, 0), (2, 0))):
        cls = classify_T(code_3_2, T)
        assert count_blocks_containing(code_3_2, shell, T) == report.lambda_by_class[cls]


# ---------------------------------------------------------
# Errors
# ---------------------------------------------------------


def test_empty_shell_rejected(code_3_2):
    with pytest.raises(ValueError):
        design_check_jacobi(code_3_2, 5, 2)
    with pytest.raises(ValueError):
        design_check_bruteforce(code_3_2, 5, 2)


def test_bad_t_rejected(code_3_2):
    with pytest.raises(ValueError):
        design_check_jacobi(code_3_2, 6, 5)


def test_budget_guard(code_3_2):
    with pytest.raises(ValueError):
        design_check_bruteforce(code_3_2, 6, 3, budget=10)


# ---------------------------------------------------------
# Generalized design parameters
# ---------------------------------------------------------


def test_generalized_params_t3_q3_m2(code_3_2):
    params = generalized_design_params(code_3_2, 6, 3)
    assert (params.v, params.k) == (9, 6)
    assert params.lambdas() == (6, 4)
    assert params.applicable()


def test_generalized_params_t3_q5_m2():
    params = generalized_design_params(get_code(5, 1, 2), 20, 3)
    assert (params.v, params.k) == (25, 20)
    assert params.lambdas() == (60, 56)


def test_generalized_params_t4_q3_m3_flags_impossible_class():
    code = get_code(3, 1, 3)
    params = generalized_design_params(code, 18, 4)
    by_class = {c.tclass: c for c in params.classes}
    rank1 = by_class[TClass(4, 1)]
    assert rank1.lam == -2  # the formula goes negative at q = 3
    assert not rank1.nonempty  # and indeed no rank-1 quadruple exists
    assert not params.applicable()


def test_generalized_params_t4_q4_m3_applicable():
    code = get_code(2, 2, 3)
    params = generalized_design_params(code, 48, 4)
    assert params.applicable()
    assert params.lambdas() == (78, 69, 81, 45)
    order = [c.tclass for c in params.classes]
    assert order == [
        TClass(4, 3),
        TClass(4, 2, COLLINEAR_TRIPLE),
        TClass(4, 2, GENERIC),
        TClass(4, 1),
    ]


def test_generalized_params_validation(code_3_2):
    with pytest.raises(ValueError):
        generalized_design_params(code_3_2, 9, 3)  # not the middle shell
    with pytest.raises(ValueError):
        generalized_design_params(code_3_2, 6, 2)  # unsupported t
