from itertools import combinations

import pytest

from grmjacobi import (
    COLLINEAR_TRIPLE,
    GENERIC,
    Codeword,
    Field,
    GrmCode,
    TClass,
    class_witness,
    classify_T,
    reachable_classes,
    t_class_census,
    translate_T,
)
from grmjacobi.jacobi import closed_weight_distribution

from conftest import get_code


# ---------------------------------------------------------
# Coordinates and codewords
# ---------------------------------------------------------


def test_point_order_q2_m2(code_2_2):
    assert code_2_2.points() == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_point_order_q3_m1():
    code = get_code(3, 1, 1)
    assert code.points() == [(0,), (1,), (2,)]


def test_point_order_q3_m2(code_3_2):
    pts = code_3_2.points()
    assert len(pts) == 9
    assert pts[0] == (0, 0) and pts[-1] == (2, 2)
    assert all(code_3_2.point_index(p) == i for i, p in enumerate(pts))


def test_codeword_counts(code_2_2, code_3_2):
    assert sum(1 for _ in code_2_2.codewords()) == 8
    words = list(code_3_2.codewords())
    assert len(words) == 27
    constants = [c for c in words if not any(c.lam)]
    assert len(constants) == 3


def test_weight_distribution_matches_three_shell_pattern(code_3_2):
    assert code_3_2.weight_distribution() == closed_weight_distribution(3, 2)
    assert closed_weight_distribution(3, 2) == {0: 1, 6: 24, 9: 2}


def test_weights_and_supports(code_3_2):
    zero = Codeword((0, 0), 0)
    const = Codeword((0, 0), 2)
    affine = Codeword((1, 0), 1)
    assert code_3_2.weight(zero) == 0
    assert code_3_2.weight(const) == 9
    assert code_3_2.weight(affine) == 6
    assert code_3_2.support(affine) == frozenset(
        i for i, p in enumerate(code_3_2.points()) if (p[0] + 1) % 3 != 0
    )


@pytest.mark.parametrize("p,k,m", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (3, 1, 3)])
def test_weight_formula_matches_position_scan(p, k, m):
    code = get_code(p, k, m)
    for c in code.codewords():
        assert code.weight(c) == code.weight_by_formula(c)


def test_shells(code_3_2):
    assert len(code_3_2.shell(6)) == 24
    assert len(code_3_2.shell(9)) == 2
    assert code_3_2.shell(5) == []
    with pytest.raises(ValueError):
        code_3_2.shell(10)


def test_value_table_budget_guard():
    big = GrmCode(Field(2), 24)
    with pytest.raises(MemoryError):
        big.value_table()


# ---------------------------------------------------------
# Classification
# ---------------------------------------------------------


def test_classify_examples(code_3_2):
    assert classify_T(code_3_2, ((0, 0), (1, 0), (2, 0))) == TClass(3, 1)
    assert classify_T(code_3_2, ((0, 0), (1, 0), (0, 1))) == TClass(3, 2)
    assert classify_T(code_3_2, ((0, 0), (1, 0))) == TClass(2, 1)
    # dependency coefficients (1, 1): 1+1 = 2 != 1 and 1*1 != 0 in GF(3)
    assert classify_T(code_3_2, ((0, 0), (1, 0), (0, 1), (1, 1))) == TClass(4, 2, GENERIC)
    assert classify_T(code_3_2, ((0, 0), (1, 0), (0, 1), (2, 0))) == TClass(
        4, 2, COLLINEAR_TRIPLE
    )


def test_classify_errors(code_3_2):
    with pytest.raises(ValueError):
        classify_T(code_3_2, (((0, 0)),))  # |T| = 1
    with pytest.raises(ValueError):
        classify_T(code_3_2, tuple(code_3_2.points()[:5]))  # |T| = 5
    with pytest.raises(ValueError):
        classify_T(code_3_2, ((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        classify_T(code_3_2, ((0, 0), (3, 0)))  # out of range


def test_q2_triples_never_have_rank_1():
    for m in (2, 3):
        code = get_code(2, 1, m)
        census = t_class_census(code, 3)
        assert TClass(3, 1) not in census
        assert set(census) == {TClass(3, 2)}


def test_triple_census_q3_m2(code_3_2):
    # AG(2,3) has 12 lines of 3 points each: 12 collinear triples
    census = t_class_census(code_3_2, 3)
    assert census == {TClass(3, 1): 12, TClass(3, 2): 72}


def test_quad_census_q3_m2(code_3_2):
    # a 4-set with a collinear triple = line (12) plus an outside point (6);
    # two distinct collinear triples cannot share a 4-set, so no overcount
    census = t_class_census(code_3_2, 4)
    assert census == {
        TClass(4, 2, COLLINEAR_TRIPLE): 72,
        TClass(4, 2, GENERIC): 54,
    }


def test_quad_census_q2_m3():
    # AG(3,2): the 14 affine planes are the only rank-2 4-sets
    code = get_code(2, 1, 3)
    census = t_class_census(code, 4)
    assert census == {TClass(4, 3): 56, TClass(4, 2, GENERIC): 14}


def test_census_limit_guard(code_3_2):
    with pytest.raises(ValueError):
        t_class_census(code_3_2, 4, limit=10)


def test_witnesses_match_census_reachability():
    for p, k, m in ((2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3)):
        code = get_code(p, k, m)
        for t in (2, 3, 4):
            if code.n < t:
                continue
            census = set(t_class_census(code, t, limit=10**5))
            assert census == set(reachable_classes(code, t))


def test_witness_classifies_as_requested(code_3_2):
    for cls in reachable_classes(code_3_2, 4):
        witness = class_witness(code_3_2, cls)
        assert classify_T(code_3_2, witness) == cls
    assert class_witness(code_3_2, TClass(4, 1)) is None  # needs q >= 4
    assert class_witness(code_3_2, TClass(4, 3)) is None  # needs m >= 3


def test_rank1_quads_need_q_at_least_4():
    assert class_witness(get_code(5, 1, 2), TClass(4, 1)) is not None
    assert class_witness(get_code(2, 2, 2), TClass(4, 1)) is not None
    assert class_witness(get_code(3, 1, 3), TClass(4, 1)) is None


def test_collinear_triple_subcase_empty_at_q2():
    code = get_code(2, 1, 3)
    assert class_witness(code, TClass(4, 2, COLLINEAR_TRIPLE)) is None
    assert class_witness(code, TClass(4, 2, GENERIC)) is not None


# ---------------------------------------------------------
# Translation
# ---------------------------------------------------------


def test_translate_identity_and_singleton(code_3_2):
    f = code_3_2.field
    T = ((0, 0), (1, 2))
    assert translate_T(f, T, (0, 0)) == T
    assert translate_T(f, ((1, 2),), (2, 2)) == ((0, 1),)


def test_classification_invariant_under_translation(code_3_2):
    f = code_3_2.field
    points = code_3_2.points()
    for T in combinations(points[:6], 3):
        expected = classify_T(code_3_2, T)
        for v in points:
            assert classify_T(code_3_2, translate_T(f, T, v)) == expected
