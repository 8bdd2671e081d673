import pytest
from hypothesis import given
from hypothesis import strategies as st

from q8mackey.linalg import (
    AbelianGroup,
    IntegerMatrix,
    cokernel,
    determinant,
    invariant_factors,
    matrix_columns,
    rank,
    smith_normal_form,
    sparse_invariant_factors,
    unimodular_inverse,
)
from q8mackey.verify import naive_invariant_factors, snf_violations

from strategies import abelian_groups, matrices


def test_snf_of_small_example():
    res = smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]]))
    assert res.invariant_factors == (2, 4)


def test_snf_of_zero_and_empty():
    assert smith_normal_form(IntegerMatrix.zeros(3, 2)).invariant_factors == ()
    assert smith_normal_form(IntegerMatrix.zeros(0, 4)).invariant_factors == ()


def test_cokernel_of_multiplication_by_eight():
    assert cokernel(IntegerMatrix.from_rows([[8]])) == AbelianGroup.cyclic(8)


@given(matrices())
def test_snf_properties(M):
    assert snf_violations(M) == []


@given(matrices(max_dim=3, min_dim=1))
def test_snf_matches_minor_gcds(M):
    assert invariant_factors(M) == naive_invariant_factors(M.to_rows())


@given(matrices())
def test_sparse_factors_match_dense(M):
    assert sparse_invariant_factors(matrix_columns(M), M.rows) == invariant_factors(M)


@given(matrices())
def test_rank_matches_factor_count(M):
    assert rank(M) == len(invariant_factors(M)) == rank(M.T)


@given(matrices(), st.integers(-3, 3))
def test_invariant_factors_transpose_and_scale(M, c):
    assert invariant_factors(M) == invariant_factors(M.T)
    scaled = invariant_factors(M.scale(c))
    assert scaled == tuple(abs(c) * d for d in invariant_factors(M)) if c else scaled == ()


@given(matrices(min_dim=1, max_dim=4))
def test_unimodular_inverse_of_snf_transform(M):
    U = smith_normal_form(M).U
    assert U @ unimodular_inverse(U) == IntegerMatrix.identity(U.rows)


def test_unimodular_inverse_rejects_singular():
    with pytest.raises(ValueError):
        unimodular_inverse(IntegerMatrix.from_rows([[2, 0], [0, 1]]))


def test_determinant():
    assert determinant(IntegerMatrix.from_rows([[1, 2], [3, 4]])) == -2


@given(abelian_groups())
def test_group_text_and_json_round_trip(G):
    assert AbelianGroup.parse(str(G)) == G
    assert AbelianGroup.from_json(G.to_json()) == G


@given(abelian_groups(), abelian_groups())
def test_group_sum_is_canonical(G, H):
    S = G + H
    assert S.free_rank == G.free_rank + H.free_rank
    assert all(b % a == 0 for a, b in zip(S.torsion, S.torsion[1:]))
    if not S.free_rank:
        assert S.order == G.order * H.order


def test_group_canonical_forms():
    assert AbelianGroup.from_orders(0, [2, 3]) == AbelianGroup.cyclic(6)
    assert str(AbelianGroup.from_orders(1, [4, 2])) == "Z + Z/2 + Z/4"
    assert AbelianGroup.parse("Z^2 + Z/2 + Z/2").to_json() == {"rank": 2, "torsion": [2, 2]}
    assert str(AbelianGroup()) == "0"


@pytest.mark.parametrize("bad", [(2, 3), (1,), (4, 2)])
def test_group_rejects_non_chain(bad):
    with pytest.raises(ValueError):
        AbelianGroup(0, bad)
