import pytest
from hypothesis import given
from hypothesis import strategies as st

from q8mackey.builders import build_A, build_snrho_complex, build_theta
from q8mackey.chains import dual, homology
from q8mackey.groups import (
    ALPHA,
    BETA,
    C_SIGN,
    CPRIME,
    GAMMA,
    Q8,
    TRIVIAL,
    GroupRingElement,
    q8_automorphism,
)
from q8mackey.modules import (
    eq_dual,
    eq_shift,
    fixed_points_z2,
    fixed_points_z4,
    kronecker_dual,
    relabel,
    tensor_coefficients,
)

elements = st.integers(0, 7)
ring_elements = st.lists(st.integers(-3, 3), min_size=8, max_size=8).map(lambda c: GroupRingElement(Q8, c))


def test_q8_relations():
    i, j, minus_one = Q8.index("i"), Q8.index("j"), Q8.index("-1")
    assert Q8.mul(i, i) == minus_one == Q8.mul(j, j)
    assert Q8.mul(Q8.mul(i, j), Q8.mul(i, j)) == minus_one
    assert Q8.mul(i, j) == Q8.index("ij") and Q8.mul(j, i) == Q8.index("-ij")


@given(elements, elements, elements)
def test_q8_associative(a, b, c):
    assert Q8.mul(Q8.mul(a, b), c) == Q8.mul(a, Q8.mul(b, c))


@pytest.mark.parametrize("chi,gen", [(ALPHA, "i"), (BETA, "j"), (GAMMA, "ij")])
def test_character_kernels(chi, gen):
    assert chi.kernel == Q8.generated([Q8.index(gen)])
    assert len(chi.kernel) == 4


def test_character_products():
    assert ALPHA * BETA == GAMMA and GAMMA * GAMMA == TRIVIAL


@given(elements, elements)
def test_characters_are_homomorphisms(a, b):
    for chi in (ALPHA, BETA, GAMMA):
        assert chi(Q8.mul(a, b)) == chi(a) * chi(b)


@given(ring_elements, ring_elements, ring_elements)
def test_group_ring_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(ring_elements, ring_elements)
def test_characters_are_ring_maps(x, y):
    for chi in (TRIVIAL, ALPHA, GAMMA):
        assert (x * y).evaluate(chi) == x.evaluate(chi) * y.evaluate(chi)


def test_parse_group_ring():
    e = GroupRingElement.parse(CPRIME, "1 - σ")
    assert e.evaluate(C_SIGN) == 2 and e.augmentation() == 0


def test_automorphism_swapping_i_and_ij():
    auto = q8_automorphism("ij", "i")
    assert sorted(auto.images) == list(range(8))
    assert {auto(g) for g in ALPHA.kernel} == GAMMA.kernel


def test_automorphism_rejects_non_generators():
    with pytest.raises(ValueError):
        q8_automorphism("i", "-i")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fixed_points_commute_with_relabelling(n):
    S = build_snrho_complex(n)
    auto = q8_automorphism("ij", "i")
    assert fixed_points_z4(relabel(S, auto)) == fixed_points_z4(S, kernel=ALPHA)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trivial_twist_is_fixed_point_route(n):
    S = build_snrho_complex(n)
    A = tensor_coefficients(S, TRIVIAL)
    B = fixed_points_z2(fixed_points_z4(S))
    assert all(homology(A, q) == homology(B, q) for q in range(-1, 4 * n + 1))


@pytest.mark.parametrize("s", range(5))
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_kronecker_dual_commutes_with_fixed_points(s, sign):
    A = build_A(s, sign)
    lhs, rhs = fixed_points_z2(kronecker_dual(A)), dual(fixed_points_z2(A))
    assert all(homology(lhs, q) == homology(rhs, q) for q in range(-s - 2, 3))


@pytest.mark.parametrize("s", range(4))
def test_kronecker_dual_is_an_involution(s):
    A = build_A(s, "plus")
    assert kronecker_dual(kronecker_dual(A)) == A


@pytest.mark.parametrize("n,m", [(1, 0), (2, -1), (1, 2)])
def test_duals_agree_on_underlying_complex(n, m):
    T = build_theta(n, m, "plus")
    a, b = eq_dual(T).underlying(), kronecker_dual(T).underlying()
    assert a.ranks == b.ranks


def test_shift_and_underlying():
    A = build_A(2, "plus")
    S = eq_shift(A, 3)
    assert S.degrees == [d + 3 for d in A.degrees]
    assert S.underlying().ranks == {q + 3: r for q, r in A.underlying().ranks.items()}
