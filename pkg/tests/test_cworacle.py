import pytest

from q8mackey.chains import homology
from q8mackey.cworacle import (
    BudgetExceeded,
    SmashSpec,
    build_rep_sphere,
    build_sphere_nrho,
    build_sphere_nrho_plus,
    fixed_under_kernel,
    homology_table,
    mono_dual,
    oracle_coefficient,
    oracle_fixed_complex,
    smash,
    sphere_complex,
    total_fixed_points,
    verify_decomposition,
    verify_lemma,
)
from q8mackey.groups import ALPHA, BETA, GAMMA
from q8mackey.linalg import AbelianGroup

Z, Z2, Z8 = AbelianGroup.Z(), AbelianGroup.cyclic(2), AbelianGroup.cyclic(8)
Z2Z2 = AbelianGroup.from_orders(0, [2, 2])
ZERO = AbelianGroup()


def table(C):
    return {q: str(v) for q, v in homology_table(total_fixed_points(C)).items() if not v.is_zero()}


@pytest.mark.parametrize("chi", [ALPHA, BETA, GAMMA])
@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_rep_sphere_is_a_sphere(chi, t):
    S = build_rep_sphere(chi, t)
    S.validate()
    U = S.to_zcomplex()
    assert {q: homology(U, q) for q in range(-1, t + 2) if not homology(U, q).is_zero()} == {t: Z}


def test_sphere_alpha_fixed():
    assert table(build_rep_sphere(ALPHA, 1)) == {0: "Z/2"}


def test_smash_alpha_beta_fixed():
    assert table(smash([build_rep_sphere(ALPHA, 1), build_rep_sphere(BETA, 1)])) == {0: "Z/2", 1: "Z/2"}


def test_snrho_plus_fixed():
    assert table(build_sphere_nrho_plus(2)) == {0: "Z", 1: "Z/2 + Z/2", 3: "Z/8", 5: "Z/2 + Z/2", 7: "Z"}


def test_sphere_rho_fixed_and_underlying():
    S = build_sphere_nrho(1)
    S.validate()
    assert table(S) == {0: "Z/8", 2: "Z/2 + Z/2", 4: "Z"}
    U = S.to_zcomplex()
    assert [q for q in range(-1, 6) if not homology(U, q).is_zero()] == [4]


@pytest.mark.parametrize("chi,t", [(ALPHA, 2), (GAMMA, 3)])
def test_dual_sphere_has_negative_top_class(chi, t):
    U = mono_dual(build_rep_sphere(chi, t)).to_zcomplex()
    assert homology(U, -t) == Z


def test_smash_degrees_add():
    X = sphere_complex(2, 1, 1, 0)
    U = X.to_zcomplex()
    assert homology(U, 4) == Z and sum(homology(U, q).free_rank for q in range(-1, 6)) == 1


def test_kernel_fixed_points_over_cprime():
    mid = fixed_under_kernel(build_rep_sphere(ALPHA, 1), GAMMA)
    assert len(mid.group) == 2
    assert homology(mid.to_zcomplex(), 0) == Z2


def test_origin_and_cohomology():
    assert oracle_coefficient(0, 0, 0, 0, 0) == Z
    assert oracle_coefficient(0, 0, 0, 0, 0, mode="cohomology") == Z
    assert oracle_coefficient(0, 0, 0, 1, 4) == Z


def test_negative_weights_use_duals():
    # S(α)₊ → S⁰ is an isomorphism on H⁰ with constant ℤ, so S^{-α} is acyclic.
    assert all(oracle_coefficient(-1, 0, 0, 0, q).is_zero() for q in range(-2, 2))
    Zc = oracle_fixed_complex(0, 0, 0, -1)
    assert homology(Zc, -4) == Z


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        sphere_complex(6, 6, 6, 3, budget=100)


def test_smash_spec_rejects_negative():
    with pytest.raises(ValueError):
        SmashSpec(-1, 0, 0, 0)


def test_free_route_report():
    rep = verify_decomposition(SmashSpec(1, 1, 0, 1, include_cofiber=False))
    assert rep["pass"] and rep["route"] == "twisted-free"
    assert any("table" in row for row in rep["degrees"])


def test_theorem_report_carries_forensics():
    rep = verify_decomposition(SmashSpec(0, 0, 0, 0))
    bad = [row for row in rep["degrees"] if not row["match"]]
    assert bad and all("forensics" in row for row in bad)


def test_lemma_report_rank_count():
    rep = verify_lemma(7, 5)
    assert rep["ranks_match"]
    assert verify_lemma(0, 0)["pass"]
