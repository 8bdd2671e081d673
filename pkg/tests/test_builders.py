import pytest
from hypothesis import given
from hypothesis import strategies as st

from q8mackey.builders import (
    Grading,
    assemble_theorem,
    build_A,
    build_A_smashed,
    build_C,
    build_C0m,
    build_fixed_complex,
    build_lemma_sum,
    build_snrho_complex,
    build_theta,
    canonicalize,
    coefficient,
    reduce_fixed_complex,
    theorem_piece_list,
)
from q8mackey.chains import homology
from q8mackey.groups import CPRIME, TRIVIAL, GroupRingElement
from q8mackey.linalg import AbelianGroup
from q8mackey.modules import fixed_points_z2, fixed_points_z4, kronecker_dual, tensor_coefficients

Z, Z2, Z8 = AbelianGroup.Z(), AbelianGroup.cyclic(2), AbelianGroup.cyclic(8)
Z2Z2 = AbelianGroup.from_orders(0, [2, 2])


def cp(text):
    return GroupRingElement.parse(CPRIME, text)


def fixed_h(C, q):
    return homology(fixed_points_z2(C), q)


def test_snrho_ranks():
    S = build_snrho_complex(1)
    assert [S.rank(q) for q in range(4)] == [1, 3, 4, 2]


@pytest.mark.parametrize("n", range(1, 7))
def test_snrho_is_a_complex(n):
    S = build_snrho_complex(n)
    S.validate()
    assert [S.rank(q) for q in range(4 * n)] == [1, 3, 4, 2] * n


def test_snrho_twisted_degree_one():
    assert homology(tensor_coefficients(build_snrho_complex(2), TRIVIAL), 1) == Z2Z2


def test_snrho_c1_boundary():
    S = build_snrho_complex(1)
    col = S.column(2, S.label(2).index("c_{1,1}"))
    assert col["b_{1,1}"] == GroupRingElement.parse(S.group, "1")
    assert col["b_{1,2}"] == GroupRingElement.parse(S.group, "-1")
    assert col["b_{1,3}"] == GroupRingElement.parse(S.group, "-j")


def test_fixed_list_cells():
    F = build_fixed_complex(2)
    assert F.column(1, F.label(1).index("b_{1,1}")) == {}
    col = F.column(4, F.label(4).index("a_{2,1}"))
    assert col["d_{1,1}"] == cp("4 + 4σ") and col["d_{1,2}"] == cp("-4 - 4σ")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fixed_list_matches_fixed_points_in_homology(n):
    a, b = fixed_points_z4(build_snrho_complex(n)), build_fixed_complex(n)
    assert all(fixed_h(a, q) == fixed_h(b, q) for q in range(-1, 4 * n + 1))


def test_C0_and_its_minus_variant():
    C = build_C(0, "plus", 2)
    assert C.label(2) == ["c_{1,2}"] and C.label(0) == ["-a_{1,1}"]
    assert C.entry(2, 0, 0) == cp("1 + σ") and C.entry(1, 0, 0) == cp("1 - σ")
    M = build_C(0, "minus", 2)
    assert M.entry(2, 0, 0) == cp("1 - σ") and M.entry(1, 0, 0) == cp("1 + σ")


def test_Cn_has_three_terms():
    C = build_C(3, "plus", 3)
    assert C.degrees == [9, 10, 11]
    assert C.label(9) == ["b_{3,2}-b_{3,3}"]


@pytest.mark.parametrize("r,n", [(-1, 2), (3, 2), (0, 0)])
def test_C_rejects_bad_index(r, n):
    with pytest.raises(ValueError):
        build_C(r, "plus", n)


def test_A_examples():
    assert build_A(0, "plus").degrees == [0]
    assert fixed_h(build_A(0, "plus"), 0) == Z
    assert fixed_h(build_A(3, "minus"), 3) == Z and fixed_h(build_A(3, "minus"), 1) == Z2
    dual2 = kronecker_dual(build_A(2, "plus"))
    assert fixed_h(dual2, -2) == Z and fixed_h(dual2, -1) == Z2


def test_A_smashed_cases():
    assert build_A_smashed(3, "plus", 0) == build_A(3, "plus")
    assert build_A_smashed(1, "plus", -3) == kronecker_dual(build_A(2, "plus"))
    assert build_A_smashed(2, "minus", 3) == build_A(5, "minus")


@given(st.integers(0, 6), st.sampled_from(["plus", "minus"]))
def test_A_ranks(s, sign):
    U = build_A(s, sign).underlying()
    assert U.ranks == {0: 1, **{q: 2 for q in range(1, s + 1)}}


@given(st.integers(-6, 6), st.sampled_from(["plus", "minus"]))
def test_C0m_is_free_and_a_complex(m, sign):
    C = build_C0m(m, sign)
    C.validate()
    assert all(mod.is_free for q in C.degrees for mod in C.module_list(q))


def test_theta_examples():
    T = fixed_points_z2(build_theta(2, 0, "plus"))
    assert homology(T, 0) == Z and homology(T, 1) == Z2Z2 == homology(T, 5) and homology(T, 3) == Z8
    for n in (1, 2, 3):
        M = fixed_points_z2(build_theta(n, 2, "minus"))
        for q in range(-3, 4 * n + 1):
            expected = Z2 if -1 <= q <= 4 * n - 3 and q % 4 in (0, 2, 3) else AbelianGroup()
            assert homology(M, q) == expected, (n, q)


def test_theta_2_minus_2_size():
    T = build_theta(2, -2, "plus")
    assert sum(T.rank(q) for q in T.degrees) == 14


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_reduction_reaches_theta(n):
    R, T = reduce_fixed_complex(n), fixed_points_z2(build_theta(n, 0, "plus"))
    assert sum(R.ranks.values()) == sum(T.ranks.values())
    assert all(homology(R, q) == homology(T, q) for q in range(-1, 4 * n + 1))


@given(st.integers(1, 3), st.integers(-3, 3), st.sampled_from(["plus", "minus"]))
def test_negative_theta_is_dual(n, m, sign):
    assert build_theta(-n, m, sign) == kronecker_dual(build_theta(n, m, sign))


# ------------------------------------------------------------ gradings

def test_canonicalize_examples():
    canon, cert = canonicalize(Grading(3, 5, -1, 2))
    assert canon == Grading(5, 3, -1, 2) and cert.permutation == (1, 0, 2) and cert.mode == "homology"
    canon, cert = canonicalize(Grading(-2, -4, 1, 3, 6))
    assert canon == Grading(4, 2, -1, -3, -6) and cert.global_sign_flip and cert.mode == "cohomology"
    g = Grading(2, 1, 7, 0, 3)
    assert canonicalize(Grading(7, 2, 1, 0, 3))[0] == Grading(7, 2, 1, 0, 3)
    assert canonicalize(g)[0].is_canonical()


gradings = st.builds(Grading, *(st.integers(-6, 6) for _ in range(5)))


@given(gradings, st.sampled_from(["homology", "cohomology"]))
def test_canonicalize_round_trip(g, mode):
    canon, cert = canonicalize(g, mode)
    assert canon.is_canonical()
    assert cert.apply(canon) == g
    assert canonicalize(canon, cert.mode)[0] == canon


def test_theorem_pieces_examples():
    pieces = theorem_piece_list(Grading(0, 0, 0, 3))
    assert [(p.kind, p.sign, p.index, p.second) for p in pieces] == [("Theta", "minus", 3, 0)]
    pieces = theorem_piece_list(Grading(1, 0, 0, 0))
    assert [p.name for p in pieces] == ["A^+_0(0)[0]", "Θ^+_{0,0}[0]"]
    assert theorem_piece_list(Grading(2, 1, 1, -2))[-1].second == 0


def test_theorem_rejects_non_canonical():
    with pytest.raises(ValueError):
        assemble_theorem(Grading(0, 1, 0, 0))


def test_engines_at_origin():
    # H̃₀(S⁰) = ℤ; the literal decomposition selects Θ⁻_{0,0} instead.
    assert coefficient(Grading(0, 0, 0, 0, 0), engine="cellular") == Z
    assert coefficient(Grading(0, 0, 0, 0, 0), engine="theorem") == Z2


def test_lemma_sum_ranks():
    L = build_lemma_sum(7, 5).underlying()
    assert sum(L.ranks.values()) == 1 + 7 + 5 + 2 * 7 * 5
