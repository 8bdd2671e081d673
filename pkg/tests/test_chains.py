import pytest
from hypothesis import given
from hypothesis import strategies as st

from q8mackey.chains import (
    ChainComplexError,
    LadderDiagram,
    ZComplex,
    direct_sum,
    dual,
    homology,
    quotient_by_acyclic,
    shift,
    totalize,
)
from q8mackey.linalg import AbelianGroup, IntegerMatrix
from q8mackey.verify import universal_coefficients_ok

Z, Z2 = AbelianGroup.Z(), AbelianGroup.cyclic(2)


def M(rows, cols=None):
    return IntegerMatrix.from_rows(rows, cols=cols)


def two_term(a: int) -> ZComplex:
    return ZComplex({0: 1, 1: 1}, {1: M([[a]])})


@st.composite
def complexes(draw):
    """Random bounded complexes built as d = A·B with B·A's product zero by construction."""
    lo = draw(st.integers(-2, 2))
    length = draw(st.integers(1, 4))
    ranks = {lo + i: draw(st.integers(0, 3)) for i in range(length)}
    diffs = {}
    prev = None
    for q in range(lo + 1, lo + length):
        r_src, r_tgt = ranks[q], ranks[q - 1]
        rows = [[draw(st.integers(-3, 3)) for _ in range(r_src)] for _ in range(r_tgt)]
        D = M(rows, cols=r_src)
        if prev is not None and not (prev @ D).is_zero():
            D = IntegerMatrix.zeros(r_tgt, r_src)
        diffs[q] = D
        prev = D
    return ZComplex(ranks, diffs)


def test_multiplication_complex():
    C = two_term(2)
    assert homology(C, 0) == Z2 and homology(C, 1).is_zero()


def test_rejects_bad_shape_and_nonzero_square():
    with pytest.raises(ChainComplexError):
        ZComplex({0: 1, 1: 2}, {1: M([[1]])})
    with pytest.raises(ChainComplexError):
        ZComplex({0: 1, 1: 1, 2: 1}, {1: M([[1]]), 2: M([[1]])})


def test_quotient_by_trivial_acyclic_span():
    C = direct_sum([ZComplex({0: 1, 1: 1}, {1: M([[1]])}), two_term(3)])
    Q = quotient_by_acyclic(C, {0: M([[1], [0]]), 1: M([[1], [0]])})
    assert Q.ranks == {0: 1, 1: 1}
    assert homology(Q, 0) == AbelianGroup.cyclic(3)


def test_quotient_rejects_non_acyclic_and_non_subcomplex():
    C = two_term(2)
    with pytest.raises(ChainComplexError):
        quotient_by_acyclic(C, {0: M([[1]])})
    with pytest.raises(ChainComplexError):
        quotient_by_acyclic(C, {1: M([[1]])})


@given(complexes(), st.integers(-3, 3))
def test_shift_moves_homology(C, t):
    S = shift(C, t)
    assert all(homology(S, q + t) == homology(C, q) for q in range(-4, 7))


@given(complexes())
def test_dual_universal_coefficients(C):
    assert universal_coefficients_ok(C) == []


@given(complexes())
def test_double_dual_is_identity(C):
    assert dual(dual(C)) == C


@given(complexes(), complexes())
def test_direct_sum_adds_homology(A, B):
    S = direct_sum([A, B])
    assert all(homology(S, q) == homology(A, q) + homology(B, q) for q in range(-3, 7))


@given(complexes())
def test_euler_characteristic(C):
    chi = sum((-1) ** q * r for q, r in C.ranks.items())
    assert chi == sum((-1) ** q * homology(C, q).free_rank for q in range(-3, 7))


def test_totalize_mapping_cone_of_identity_is_acyclic():
    Zc = ZComplex({0: 1})
    L = LadderDiagram([Zc, Zc], [{1: M([[1]])}], [1, 0])
    T = totalize(L)
    assert all(homology(T, q).is_zero() for q in range(-1, 3))


def test_totalize_cone_of_two():
    Zc = ZComplex({0: 1})
    T = totalize(LadderDiagram([Zc, Zc], [{1: M([[2]])}], [1, 0]))
    assert homology(T, 0) == Z2
