"""The construction pipeline: B system, eigenvectors, g realisation,
solutions, residuals, the Frobenius oracle and the equivariant machinery."""

from fractions import Fraction

import pytest

from modschwarz import closed_forms
from modschwarz.modforms import Group, delta, eisenstein, seed_t0, theta_fourth
from modschwarz.series import LaurentSeries, NonzeroConstantTerm
from modschwarz.solver import (
    DegenerateEntries,
    ZeroDerivative,
    anharmonic_images,
    build_B,
    build_g,
    classify_theta_cross_ratio,
    cross_ratio,
    equivariant_offset,
    frobenius_oracle,
    minimum_order,
    n0_for,
    solve_eigen,
    solve_ode,
    theta_offsets,
)


@pytest.fixture(scope="module")
def solved():
    return {r: solve_ode(r, 40) for r in range(1, 7)}


def as_ints(xs):
    return [int(x) for x in xs]


# ---------------------------------------------------------------------------
# B system and eigenvectors
# ---------------------------------------------------------------------------


def test_b_matrix_r3():
    B = build_B(3)
    assert B.matrix == (
        (Fraction(9), Fraction(0), Fraction(2160)),
        (Fraction(0), Fraction(9, 4), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    )


def test_b_matrix_r4():
    B = build_B(4)
    assert B.matrix == (
        (Fraction(4), Fraction(960)),
        (Fraction(0), Fraction(1)),
    )


def test_b_matrix_r1_and_r2_are_unit():
    assert build_B(1).matrix == ((Fraction(1),),)
    assert build_B(2).matrix == ((Fraction(1),),)


@pytest.mark.parametrize("r", range(1, 13))
def test_b_diagonal_law(r):
    B = build_B(r)
    a = 2 // B.m
    for k in range(1, B.size + 1):
        assert B.matrix[k - 1][k - 1] == Fraction(r * r, a * a * k * k)
    assert B.matrix[-1][-1] == 1
    for k in range(1, B.size):
        assert B.matrix[k - 1][k - 1] != 1


def test_b_matrix_is_upper_triangular():
    B = build_B(9)
    for k in range(B.size):
        for l in range(k):
            assert B.matrix[k][l] == 0


def test_eigenvector_goldens():
    assert as_ints(solve_eigen(build_B(3))) == [-270, 0, 1]
    assert as_ints(solve_eigen(build_B(4))) == [-320, 1]
    assert as_ints(solve_eigen(build_B(1))) == [1]
    assert as_ints(solve_eigen(build_B(2))) == [1]


@pytest.mark.parametrize("r", [3, 5, 7, 9, 11])
def test_eigenvector_parity_zeros_for_odd_r(r):
    X = solve_eigen(build_B(r))
    # Component i holds a_{-(i+1)}; on lattice 2 the even-depth entries
    # vanish because E4 has no odd p-coefficients there.
    for i, x in enumerate(X):
        if (i + 1) % 2 == 0:
            assert x == 0


def test_eigenvector_satisfies_bx_equals_x():
    for r in (5, 6, 7, 8):
        B = build_B(r)
        X = solve_eigen(B)
        for k in range(B.size):
            lhs = sum(B.matrix[k][l] * X[l] for l in range(B.size))
            assert lhs == X[k], (r, k)


# ---------------------------------------------------------------------------
# g realisation
# ---------------------------------------------------------------------------


def test_build_g_r1_is_the_seed_form():
    g = build_g((Fraction(1),), Group.SQUARES, 30)
    assert g.matches(seed_t0(Group.SQUARES, 30), min_overlap=25)


def test_build_g_r2_is_the_seed_form():
    g = build_g((Fraction(1),), Group.FULL, 30)
    assert g.matches(seed_t0(Group.FULL, 30), min_overlap=25)


def test_build_g_hits_prescribed_principal_part():
    X = solve_eigen(build_B(3))
    g = build_g(X, Group.SQUARES, 25)
    assert dict(g.principal_part().items()) == {-3: Fraction(1), -1: Fraction(-270)}
    X4 = solve_eigen(build_B(4))
    g4 = build_g(X4, Group.FULL, 25)
    assert dict(g4.principal_part().items()) == {-2: Fraction(1), -1: Fraction(-320)}


def test_g_closed_forms(solved):
    assert solved[3].g.matches(closed_forms.g3(solved[3].g.N), min_overlap=30)
    assert solved[4].g.matches(closed_forms.g4(solved[4].g.N), min_overlap=30)


def test_g3_misprinted_coefficient_is_rejected():
    # The 1226 variant yields principal part p^-3 - 230 p^-1, which the
    # eigenvector (-270) rules out; recorded here rather than patched.
    wrong = closed_forms.g3(12, closed_forms.G3_MISPRINT)
    assert wrong.coeff(-1) == 996 - 1226 == -230
    res = solve_ode(3, 20)
    assert res.g.coeff(-1) == -270
    assert not res.g.matches(wrong, min_overlap=10)


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------


def test_solve_rejects_bad_arguments():
    with pytest.raises(ValueError):
        solve_ode(0, 40)
    with pytest.raises(ValueError):
        solve_ode(6, minimum_order(6) - 1)


@pytest.mark.parametrize("r", range(1, 7))
def test_residuals_vanish_on_full_windows(r, solved):
    res = solved[r]
    assert res.ode_residual.is_zero()
    assert res.schwarz_residual.is_zero()


@pytest.mark.parametrize("r", range(1, 7))
def test_structure_shapes(r, solved):
    res = solved[r]
    n0 = n0_for(r)
    assert res.g.order == n0
    assert res.g.leading_coefficient == 1
    assert res.S.order == -n0
    assert res.S.coeff(0) == 0
    assert res.R.order == 2 * n0
    assert res.R.leading_coefficient != 0
    assert res.c_over_u == 0
    assert res.trusted_order >= 40


@pytest.mark.parametrize("r", range(1, 7))
def test_g_times_e4_has_zero_constant_term(r, solved):
    res = solved[r]
    e4 = eisenstein(4, res.g.N + (-n0_for(r)), res.m)
    assert (res.g * e4).coeff(0) == 0


@pytest.mark.parametrize("r", [1, 3, 5])
def test_translation_invariance_for_odd_r(r, solved):
    # h(tau+1) = h(tau)+1 on lattice 2 means R only carries even exponents.
    res = solved[r]
    assert all(n % 2 == 0 for n, _ in res.R.items())


@pytest.mark.parametrize("r", range(1, 9))
def test_oracle_equivalence(r):
    res = solve_ode(r, 40)
    oracle = frobenius_oracle(r, res.S.N)
    assert (res.S * (1 / res.S.leading_coefficient)).matches(
        oracle, min_overlap=40
    )


def test_frobenius_oracle_r1_first_terms():
    # One recurrence step: (9-1) alpha_3 = b_2 alpha_1 = 240, so alpha_3 = 30;
    # (25-1) alpha_5 = b_4 + 30 b_2 = 2160 + 7200, so alpha_5 = 390.
    orc = frobenius_oracle(1, 6)
    assert dict(orc.items()) == {1: Fraction(1), 3: Fraction(30), 5: Fraction(390)}


def test_frobenius_oracle_argument_checks():
    with pytest.raises(ValueError):
        frobenius_oracle(0, 10)
    with pytest.raises(ValueError):
        frobenius_oracle(4, 1)


def test_theta_antider_raises_on_nonzero_constant():
    bad = LaurentSeries.from_terms(1, {0: 3, 1: 1}, 4)
    with pytest.raises(NonzeroConstantTerm):
        bad.theta_antider()


# ---------------------------------------------------------------------------
# closed-form goldens for S and R
# ---------------------------------------------------------------------------


def test_s_closed_form_r1(solved):
    res = solved[1]
    assert res.S.matches(closed_forms.s1(res.S.N), min_overlap=30)
    assert res.S.leading_coefficient == -240


def test_s_closed_form_r2(solved):
    res = solved[2]
    assert res.S.matches(closed_forms.s2(res.S.N), min_overlap=30)


def test_antiderivative_identity_r1(solved):
    res = solved[1]
    e4 = eisenstein(4, res.g.N + 1, 2)
    lhs = (res.g * e4).theta_antider()
    assert lhs.matches(closed_forms.antider_identity_1(res.g.N), min_overlap=30)


def test_r_closed_form_r1(solved):
    res = solved[1]
    assert res.R.matches(closed_forms.r1(res.R.N), min_overlap=30)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_r_closed_forms_from_h_denominators(r, solved):
    res = solved[r]
    assert res.R.matches(
        closed_forms.r_from_h_denominator(r, res.R.N), min_overlap=30
    )


def test_f1_closed_form_r3(solved):
    res = solved[3]
    assert res.S.matches(closed_forms.f1_body_3(res.S.N), min_overlap=30)


def test_f1_closed_form_r4_needs_both_corrections(solved):
    res = solved[4]
    assert res.S.matches(closed_forms.f1_body_4(res.S.N), min_overlap=30)
    uncorrected = closed_forms.f1_body_4(res.S.N, corrected=False)
    assert not res.S.matches(uncorrected, min_overlap=30)
    # The uncorrected variant differs by exactly the integration constant.
    assert (res.S - closed_forms.F1_4_CONSTANT).matches(uncorrected, min_overlap=30)


# ---------------------------------------------------------------------------
# equivariant offsets and cross-ratios
# ---------------------------------------------------------------------------


def test_offset_of_delta_is_six_over_e2():
    off = equivariant_offset(delta(20), 12)
    assert off.e == -1
    # 12*Delta/Delta' = 6/(u*E2) by the Delta Ramanujan identity.
    assert (off.body * eisenstein(2, 18)).matches(
        LaurentSeries.one(1, 16) * 6, min_overlap=15
    )
    assert [off.body.coeff(n) for n in range(3)] == [6, 144, 3888]


def test_offset_of_e4_via_ramanujan():
    e4 = eisenstein(4, 20)
    off = equivariant_offset(e4, 4)
    # body * (E2 E4 - E6) == 6 E4, i.e. body = 2 E4 / theta(E4).
    e2, e6 = eisenstein(2, 20), eisenstein(6, 20)
    assert (off.body * (e2 * e4 - e6)).matches(e4 * 6, min_overlap=15)


def test_offset_rejects_constant_form():
    with pytest.raises(ZeroDerivative):
        equivariant_offset(LaurentSeries.one(1, 10), 4)


def test_offset_golden_matches_solver_r1(solved):
    # tau + 4 E4/E4' must be the r=1 equivariant solution.
    off = equivariant_offset(eisenstein(4, 40), 4)
    assert solved[1].R.matches(off.body.align(2), min_overlap=30)


def test_cross_ratio_j_identity():
    N = 40
    pad = N + 6
    w2 = equivariant_offset(eisenstein(4, pad), 4).body
    w3 = equivariant_offset(delta(pad), 12).body
    w4 = equivariant_offset(eisenstein(6, pad), 6).body
    cross = cross_ratio(LaurentSeries.zero(1, pad), w2, w3, w4)
    j_inv = eisenstein(4, pad) ** 3 * delta(pad + 2).inverse() * Fraction(1, 1728)
    assert cross.matches(j_inv, min_overlap=N)


def test_cross_ratio_invariant_under_common_scaling():
    N = 16
    w2, w3, w4 = theta_offsets(N)
    base = cross_ratio(LaurentSeries.zero(2, N), w2, w3, w4)
    scaled = cross_ratio(
        LaurentSeries.zero(2, N), w2 * 7, w3 * 7, w4 * 7
    )
    assert base.matches(scaled)


def test_cross_ratio_degenerate_entries():
    one = LaurentSeries.one(1, 8)
    with pytest.raises(DegenerateEntries):
        cross_ratio(one, one, one * 2, one * 3)


def test_theta_cross_ratio_is_classical_lambda():
    # The cross-ratio [tau, h_theta2, h_theta3, h_theta4] equals
    # mu = theta2^4/theta3^4 itself (16p - 128p^2 + ...), not one of the
    # other five anharmonic images.
    label, cross = classify_theta_cross_ratio(30)
    assert label == "mu"
    assert cross.coeff(1) == 16
    assert cross.coeff(2) == -128


def test_anharmonic_images_are_distinct():
    mu = theta_fourth(2, 20) * theta_fourth(3, 20).inverse()
    images = anharmonic_images(mu)
    labels = list(images)
    for i, la in enumerate(labels):
        for lb in labels[i + 1:]:
            assert not images[la].matches(images[lb], min_overlap=6), (la, lb)
