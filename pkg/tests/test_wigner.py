"""Phase-space function tests: elements, quasi-probabilities, marginals,
probability extraction, pairings, reconstruction, and bounds."""

import io
from math import pi

import numpy as np
import pytest

from cylwigner.specfun import bessel_i, gauss_legendre_rule, sinc_pi
from cylwigner.states import (
    DensityMatrix,
    FourierState,
    basis_state,
    cat_state,
    evaluate_wavefunction,
    pure_density,
    von_mises_state,
)
from cylwigner.wigner import (
    CardinalSeries,
    PhasePoint,
    WignerGrid,
    angle_marginal_via_swap,
    angular_momentum_operator,
    cosine_operator,
    expectation_via_phase_space,
    extract_probability,
    extract_probability_via_quadrature,
    identity_operator,
    marginal_angle,
    marginal_momentum,
    momentum_marginal_via_quadrature,
    moyal_function,
    moyal_grid,
    overlap_from_wigner,
    reconstruct_density,
    rescale_hbar,
    sine_operator,
    total_integral,
    total_integral_via_quadrature,
    uncertainty_product,
    wigner_density,
    wigner_function,
    wigner_grid,
    wigner_matrix_element,
    wigner_pair_integral,
    write_grid_csv,
)

TWO_PI = 2 * pi


def moyal_by_quadrature(bra, ket, theta, p, order=128):
    """Independent oracle: the half-angle correlation integral."""
    rule = gauss_legendre_rule(order)
    nodes = pi * rule.nodes
    weights = pi * rule.weights
    left = np.conj(evaluate_wavefunction(bra, theta - nodes / 2))
    right = evaluate_wavefunction(ket, theta + nodes / 2)
    integrand = np.exp(-1j * p * nodes) * left * right
    return np.sum(weights * integrand) / (TWO_PI**2)


class TestMatrixElement:
    def test_diagonal_peak(self):
        for theta in (0.0, 1.1, -2.0):
            assert wigner_matrix_element(0, 0, 0.0, (theta, 0.0)) == pytest.approx(
                1 / TWO_PI, abs=1e-15
            )

    def test_half_integer_midpoint(self):
        assert wigner_matrix_element(0, 1, 0.0, (0.0, 0.5)) == pytest.approx(1 / TWO_PI, abs=1e-15)

    def test_conjugate_transposition(self):
        a = wigner_matrix_element(1, 0, 0.0, (pi / 2, 0.0))
        b = wigner_matrix_element(0, 1, 0.0, (pi / 2, 0.0))
        assert a == pytest.approx(np.conj(b), abs=1e-16)
        # direct closed form at this point
        assert a == pytest.approx(np.exp(-1j * pi / 2) * sinc_pi(-0.5) / TWO_PI, abs=1e-15)

    def test_hermiticity_random(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            m, n = rng.integers(-8, 9, size=2)
            delta = float(rng.uniform(0, 1))
            pt = (float(rng.uniform(-pi, pi)), float(rng.uniform(-9, 9)))
            v = wigner_matrix_element(int(m), int(n), delta, pt)
            w = wigner_matrix_element(int(n), int(m), delta, pt)
            assert abs(v - np.conj(w)) <= 1e-16
            assert abs(v) <= 1 / TWO_PI + 1e-16

    def test_index_translation_covariance(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            m, n = (int(v) for v in rng.integers(-5, 6, size=2))
            delta = float(rng.uniform(0, 1))
            theta = float(rng.uniform(-pi, pi))
            p = float(rng.uniform(-6, 6))
            a = wigner_matrix_element(m, n, delta, (theta, p))
            b = wigner_matrix_element(m + 1, n + 1, delta, (theta, p + 1.0))
            assert abs(a - b) <= 1e-14

    def test_covering_domain_error(self):
        with pytest.raises(ValueError):
            wigner_matrix_element(0, 0, 1.2, (0.0, 0.0))


class TestPhasePoint:
    def test_angle_reduction(self):
        assert PhasePoint(pi, 0.0).theta == pytest.approx(-pi)
        assert PhasePoint(3 * pi / 2, 0.0).theta == pytest.approx(-pi / 2)
        assert PhasePoint(-pi, 2.0).theta == -pi

    def test_momentum_unrestricted(self):
        assert PhasePoint(0.0, 123.5).p == 123.5

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            PhasePoint(float("nan"), 0.0)


class TestMoyalFunction:
    def test_basis_diagonal_is_sinc_profile(self):
        st = basis_state(2)
        for theta in (0.0, 0.9, -2.2):
            for p in (0.0, 1.7, 2.0):
                got = moyal_function(st, st, (theta, p))
                assert got == pytest.approx(sinc_pi(p - 2) / TWO_PI, abs=1e-15)

    def test_distant_window_cross_element(self):
        got = moyal_function(basis_state(5), basis_state(-5), (0.3, 0.9))
        want = wigner_matrix_element(5, -5, 0.0, (0.3, 0.9))
        assert got == pytest.approx(want, abs=1e-16)

    @pytest.mark.parametrize(
        "bra_fn,ket_fn",
        [
            (lambda: cat_state(0.0), lambda: cat_state(0.0)),
            (lambda: cat_state(0.7), lambda: basis_state(1)),
            (lambda: von_mises_state(0.5, 0.0), lambda: von_mises_state(0.5, 0.0)),
        ],
    )
    def test_against_correlation_integral(self, bra_fn, ket_fn):
        bra, ket = bra_fn(), ket_fn()
        for theta, p in ((0.0, 0.0), (0.8, 1.3), (-1.9, -0.4), (2.5, 3.1)):
            got = moyal_function(bra, ket, (theta, p))
            want = moyal_by_quadrature(bra, ket, theta, p)
            assert got == pytest.approx(want, abs=1e-10)

    def test_fractional_covering_against_integral(self):
        state = von_mises_state(0.5, 0.6)
        for theta, p in ((0.4, 0.6), (-1.0, 1.6), (2.0, -0.9)):
            got = moyal_function(state, state, (theta, p))
            want = moyal_by_quadrature(state, state, theta, p)
            assert got == pytest.approx(want, abs=1e-10)

    def test_diagonal_case_is_real(self):
        st = von_mises_state(1.0, 0.3)
        val = moyal_function(st, st, (0.7, 1.1))
        assert abs(val.imag) <= 1e-12

    def test_covering_mismatch_rejected(self):
        with pytest.raises(ValueError):
            moyal_function(basis_state(0, 0.0), basis_state(0, 0.5), (0.0, 0.0))


class TestWignerFunction:
    def test_cat_interference_structure(self):
        cat = cat_state(0.0)
        for theta in np.linspace(-pi, pi, 19):
            for p in (0.0, 0.6, 1.0, -1.0, 2.3):
                got = TWO_PI * wigner_function(cat, (float(theta), p))
                want = np.cos(2 * theta) * sinc_pi(p) + 0.5 * (sinc_pi(p + 1) + sinc_pi(p - 1))
                assert got == pytest.approx(want, abs=1e-13)

    def test_cat_phase_shifts_interference_term(self):
        alpha = 1.3
        cat = cat_state(alpha)
        for theta in (0.0, 0.5, -1.1):
            got = TWO_PI * wigner_function(cat, (theta, 0.0))
            assert got == pytest.approx(np.cos(2 * theta + alpha), abs=1e-13)

    def test_von_mises_quarter_turn_profile(self):
        s = 0.5
        vm = von_mises_state(s, 0.0)
        for theta in (pi / 2, -pi / 2):
            for dp in np.linspace(-4, 4, 17):
                got = wigner_function(vm, (theta, float(dp)))
                want = sinc_pi(dp) / (TWO_PI * bessel_i(0, 2 * s))
                assert got == pytest.approx(want, abs=1e-9)

    def test_von_mises_integral_representation(self):
        # oracle: the single-integral closed form of the summed profile,
        # (2 pi)^-2 I_0(2s)^-1 \int exp(-i(p - pe) x + 2 s cos(theta) cos(x/2)) dx
        s, pe = 0.5, 0.6
        vm = von_mises_state(s, pe)
        rule = gauss_legendre_rule(128)
        nodes, weights = pi * rule.nodes, pi * rule.weights
        for theta in (0.0, 0.7, pi / 2, -2.1, pi):
            for p in (pe, pe + 0.4, pe - 1.3, pe + 3.0):
                integrand = np.exp(
                    -1j * (p - pe) * nodes + 2 * s * np.cos(theta) * np.cos(nodes / 2)
                )
                oracle = np.sum(weights * integrand).real / (4 * pi**2 * bessel_i(0, 2 * s))
                assert wigner_function(vm, (theta, p)) == pytest.approx(oracle, abs=1e-9)

    def test_bounded_by_inverse_pi(self):
        rng = np.random.default_rng(29)
        states = [basis_state(1), cat_state(0.0), von_mises_state(0.5, 0.6)]
        for _ in range(300):
            st = states[int(rng.integers(0, 3))]
            pt = (float(rng.uniform(-pi, pi)), float(rng.uniform(-8, 8)))
            assert abs(wigner_function(st, pt)) <= 1 / pi + 1e-12


class TestWignerDensity:
    def test_diagonal_mixture_profile(self):
        lam = np.array([1 / 3, 1 / 3, 1 / 3])
        rho = DensityMatrix(delta=0.0, n_min=-1, entries=np.diag(lam.astype(complex)))
        for p in (-0.4, 0.0, 1.2):
            got = wigner_density(rho, (0.7, p))
            want = (sinc_pi(p + 1) + sinc_pi(p) + sinc_pi(p - 1)) / (6 * pi)
            assert got == pytest.approx(want, abs=1e-14)

    def test_pure_state_consistency(self):
        st = cat_state(0.9)
        rho = pure_density(st)
        for pt in ((0.0, 0.0), (1.2, -0.7), (-2.0, 1.4)):
            assert wigner_density(rho, pt) == pytest.approx(wigner_function(st, pt), abs=1e-12)


class TestMarginals:
    def test_basis_angle_marginal_uniform(self):
        st = basis_state(3)
        thetas = np.linspace(-pi, pi, 11)
        assert np.allclose(marginal_angle(st, thetas), 1 / TWO_PI, atol=1e-14)

    def test_cat_angle_marginal(self):
        cat = cat_state(0.0)
        thetas = np.linspace(-pi, pi, 31)
        want = (1 + np.cos(2 * thetas)) / TWO_PI
        assert np.max(np.abs(marginal_angle(cat, thetas) - want)) <= 1e-13

    def test_von_mises_angle_marginal(self):
        s = 0.5
        vm = von_mises_state(s, 0.7)
        thetas = np.linspace(-pi, pi, 41)
        want = np.exp(2 * s * np.cos(thetas)) / (TWO_PI * bessel_i(0, 2 * s))
        assert np.max(np.abs(marginal_angle(vm, thetas) - want)) <= 1e-9

    def test_density_route_matches_state_route(self):
        st = von_mises_state(0.8, 0.3)
        rho = pure_density(st)
        thetas = np.linspace(-pi, pi, 23)
        assert np.allclose(marginal_angle(st, thetas), marginal_angle(rho, thetas), atol=1e-12)

    def test_angle_marginal_nonnegative(self):
        thetas = np.linspace(-pi, pi, 101)
        for st in (basis_state(0), cat_state(0.3), von_mises_state(1.0, 0.2)):
            assert np.min(marginal_angle(st, thetas)) >= -1e-12

    def test_swap_route_agrees(self):
        thetas = np.linspace(-pi, pi, 29)
        for st in (cat_state(0.0), von_mises_state(0.5, 0.6)):
            a = marginal_angle(st, thetas)
            b = angle_marginal_via_swap(st, thetas)
            assert np.max(np.abs(a - b)) <= 1e-9

    def test_momentum_marginal_samples(self):
        st = basis_state(2)
        series = marginal_momentum(st)
        for p in (-1.0, 0.0, 1.5, 2.0, 3.7):
            assert series(p) == pytest.approx(sinc_pi(p - 2), abs=1e-14)

    def test_cat_momentum_marginal(self):
        series = marginal_momentum(cat_state(0.0))
        for p in np.linspace(-3, 3, 25):
            want = 0.5 * (sinc_pi(p + 1) + sinc_pi(p - 1))
            assert series(float(p)) == pytest.approx(want, abs=1e-14)

    def test_von_mises_momentum_samples(self):
        s, pe = 0.5, 0.0
        series = marginal_momentum(von_mises_state(s, pe))
        for m in range(-4, 5):
            want = bessel_i(m, s) ** 2 / bessel_i(0, 2 * s)
            assert extract_probability(series, m) == pytest.approx(want, abs=1e-9)

    def test_momentum_marginal_against_angle_quadrature(self):
        rng = np.random.default_rng(31)
        for st in (cat_state(0.0), von_mises_state(0.5, 0.6)):
            series = marginal_momentum(st)
            for p in rng.uniform(-4, 4, size=20):
                quad = momentum_marginal_via_quadrature(st, float(p))
                assert quad == pytest.approx(series(float(p)), abs=1e-9)

    def test_marginal_total_masses(self):
        for st in (cat_state(0.2), von_mises_state(1.0, 0.4)):
            series = marginal_momentum(st)
            assert np.sum(series.b) == pytest.approx(1.0, abs=1e-10)
            assert total_integral(st) == pytest.approx(1.0, abs=1e-10)
            assert total_integral_via_quadrature(st) == pytest.approx(1.0, abs=1e-10)


class TestCardinalSeries:
    def test_interpolation_property_exact_for_representable_offset(self):
        # offsets with exact binary representation make p - (k + delta)
        # an exact integer, so the snapped sinc zeros give b_m bit-exactly
        series = CardinalSeries(delta=0.25, m_min=-2, b=np.array([0.1, 0.2, 0.4, 0.2, 0.1]))
        for m in range(-2, 3):
            assert series(m + 0.25) == extract_probability(series, m)

    def test_interpolation_property_general_offset(self):
        # non-representable offsets leave half-ulp noise in the argument
        series = CardinalSeries(delta=0.3, m_min=-2, b=np.array([0.1, 0.2, 0.4, 0.2, 0.1]))
        for m in range(-2, 3):
            assert series(m + 0.3) == pytest.approx(extract_probability(series, m), abs=1e-15)

    def test_json_round_trip(self):
        series = CardinalSeries(delta=0.25, m_min=0, b=np.array([0.5, 0.5]))
        data = series.to_dict()
        assert set(data) == {"delta", "m_min", "b"}
        back = CardinalSeries.from_dict(data)
        assert back.delta == series.delta and back.m_min == series.m_min
        assert np.array_equal(back.b, series.b)

    def test_negative_samples_rejected(self):
        with pytest.raises(ValueError):
            CardinalSeries(delta=0.0, m_min=0, b=np.array([0.9, -0.1]))


class TestExtractProbability:
    def test_basis_orthonormality(self):
        series = marginal_momentum(basis_state(3))
        assert extract_probability(series, 3) == 1.0
        assert extract_probability(series, 2) == 0.0
        assert extract_probability(series, 99) == 0.0

    def test_cat_components(self):
        series = marginal_momentum(cat_state(0.0))
        assert extract_probability(series, 1) == pytest.approx(0.5, abs=1e-15)
        assert extract_probability(series, -1) == pytest.approx(0.5, abs=1e-15)
        assert extract_probability(series, 0) == 0.0

    def test_quadrature_route_agreement(self):
        for st in (cat_state(0.0), von_mises_state(0.5, 0.6)):
            series = marginal_momentum(st)
            for m in range(series.m_min, series.m_max + 1):
                direct = extract_probability(series, m)
                swapped = extract_probability_via_quadrature(series, m)
                assert swapped == pytest.approx(direct, abs=1e-10)


class TestOverlap:
    def test_self_overlap(self):
        for st in (basis_state(0), cat_state(0.0), von_mises_state(0.5, 0.0)):
            assert overlap_from_wigner(st, st) == pytest.approx(1.0, abs=1e-10)

    def test_orthogonal_states(self):
        assert overlap_from_wigner(basis_state(0), basis_state(1)) == 0.0

    def test_cat_basis_component(self):
        assert overlap_from_wigner(cat_state(0.0), basis_state(1)) == pytest.approx(0.5, abs=1e-10)

    def test_matches_direct_inner_product(self):
        a = von_mises_state(0.5, 0.0)
        b = von_mises_state(1.5, 0.0, window_half_width=a.coeffs.size // 2)
        n_min = min(a.n_min, b.n_min)
        size = max(a.n_max, b.n_max) - n_min + 1
        ca = np.zeros(size, complex)
        cb = np.zeros(size, complex)
        ca[a.n_min - n_min : a.n_max - n_min + 1] = a.coeffs
        cb[b.n_min - n_min : b.n_max - n_min + 1] = b.coeffs
        assert overlap_from_wigner(a, b) == pytest.approx(abs(np.vdot(ca, cb)) ** 2, abs=1e-12)

    def test_covering_mismatch_rejected(self):
        with pytest.raises(ValueError):
            overlap_from_wigner(basis_state(0, 0.0), basis_state(0, 0.3))


class TestPairOrthogonality:
    def test_five_index_window(self):
        idx = range(-2, 3)
        for k in idx:
            for l in idx:
                for m in idx:
                    for n in idx:
                        got = wigner_pair_integral(k, l, m, n)
                        want = 1.0 if (k == n and l == m) else 0.0
                        assert abs(got - want) <= 1e-10

    def test_covering_independent(self):
        assert wigner_pair_integral(1, 0, 0, 1, delta=0.6) == pytest.approx(1.0, abs=1e-10)
        assert wigner_pair_integral(1, 0, 1, 0, delta=0.6) == pytest.approx(0.0, abs=1e-10)


class TestTraceIdentityPartialSums:
    @pytest.mark.parametrize("N", [50, 200, 800])
    @pytest.mark.parametrize("delta", [0.0, 0.37])
    def test_partial_sums_approach_one(self, N, delta):
        n = np.arange(-N, N + 1)
        for p in np.linspace(-0.5, 0.5, 11):
            total = float(np.sum(sinc_pi(p - n - delta)))
            assert abs(total - 1.0) <= 2.0 / (pi * N)


class TestReconstruction:
    def test_basis_projector(self):
        rho = pure_density(basis_state(0))
        rebuilt = reconstruct_density(lambda pt: wigner_density(rho, pt), 0, 0, 0.0)
        assert rebuilt.entries[0, 0] == pytest.approx(1.0, abs=1e-10)

    def test_cat_off_diagonal(self):
        rho = pure_density(cat_state(0.0))
        rebuilt = reconstruct_density(lambda pt: wigner_density(rho, pt), -1, 1, 0.0)
        assert rebuilt.entries[2, 0] == pytest.approx(0.5, abs=1e-8)
        assert np.max(np.abs(rebuilt.entries - rho.entries)) <= 1e-8

    def test_fractional_covering_round_trip(self):
        st = von_mises_state(0.5, 0.6, window_half_width=8)
        rho = pure_density(st)
        rebuilt = reconstruct_density(
            lambda pt: wigner_density(rho, pt), rho.n_min, rho.n_max, rho.delta
        )
        assert np.max(np.abs(rebuilt.entries - rho.entries)) <= 1e-8

    def test_small_window_reports_trace_deficit(self):
        rho = pure_density(cat_state(0.0))
        with pytest.warns(RuntimeWarning, match="trace deficit"):
            rebuilt = reconstruct_density(lambda pt: wigner_density(rho, pt), 0, 1, 0.0)
        assert rebuilt.trace() == pytest.approx(0.5, abs=1e-8)

    def test_empty_window_rejected(self):
        with pytest.raises(ValueError):
            reconstruct_density(lambda pt: 0.0, 2, 1, 0.0)


class TestExpectationViaPhaseSpace:
    def test_identity_gives_trace(self):
        rho = pure_density(von_mises_state(0.5, 0.0))
        op = identity_operator(rho.n_min, rho.n_max)
        assert expectation_via_phase_space(rho, op) == pytest.approx(1.0, abs=1e-10)

    def test_momentum_observable(self):
        st = von_mises_state(1.0, 2.3)
        rho = pure_density(st)
        op = angular_momentum_operator(rho.n_min, rho.n_max, rho.delta)
        assert expectation_via_phase_space(rho, op) == pytest.approx(2.3, abs=1e-8)

    def test_cosine_observable(self):
        s = 0.5
        rho = pure_density(von_mises_state(s, 0.0))
        op = cosine_operator(rho.n_min, rho.n_max)
        want = bessel_i(1, 2 * s) / bessel_i(0, 2 * s)
        assert expectation_via_phase_space(rho, op) == pytest.approx(want, abs=1e-10)

    def test_non_hermitian_rejected(self):
        rho = pure_density(cat_state(0.0))
        op = np.zeros((3, 3), complex)
        op[0, 1] = 1.0
        with pytest.raises(ValueError):
            expectation_via_phase_space(rho, op)

    def test_window_mismatch_rejected(self):
        rho = pure_density(cat_state(0.0))
        with pytest.raises(ValueError):
            expectation_via_phase_space(rho, np.eye(5))


class TestUncertainty:
    @pytest.mark.parametrize("s", [0.25, 0.5, 1.0, 2.0])
    def test_minimal_uncertainty_saturation(self, s):
        u = uncertainty_product(von_mises_state(s, 0.7))
        assert u.lhs == pytest.approx(u.rhs, abs=1e-8)
        assert u.lhs > 0.0

    def test_momentum_eigenstate_degenerates(self):
        u = uncertainty_product(basis_state(2))
        assert u.lhs == pytest.approx(0.0, abs=1e-15)
        assert u.rhs == pytest.approx(0.0, abs=1e-15)

    def test_cat_is_strictly_above_bound(self):
        # window {-1, 0, 1}: var S = 1/4, var L = 1, both covariance terms vanish
        u = uncertainty_product(cat_state(0.0))
        assert u.lhs == pytest.approx(0.25, abs=1e-12)
        assert u.rhs == pytest.approx(0.0, abs=1e-15)

    def test_inequality_always_holds(self):
        rng = np.random.default_rng(37)
        for _ in range(25):
            size = int(rng.integers(2, 6))
            coeffs = rng.normal(size=size) + 1j * rng.normal(size=size)
            coeffs /= np.linalg.norm(coeffs)
            st = FourierState(delta=float(rng.uniform(0, 1)), n_min=int(rng.integers(-3, 1)), coeffs=coeffs)
            u = uncertainty_product(st)
            assert u.lhs >= u.rhs - 1e-10


class TestOperatorMatrices:
    def test_sine_cosine_hermitian_tridiagonal(self):
        S = sine_operator(-2, 2)
        C = cosine_operator(-2, 2)
        assert np.max(np.abs(S - S.conj().T)) == 0.0
        assert np.max(np.abs(C - C.conj().T)) == 0.0
        assert S[1, 0] == -0.5j and S[0, 1] == 0.5j
        assert C[1, 0] == 0.5 and C[0, 1] == 0.5

    def test_commutation_with_momentum(self):
        # [S, L] = i C on the interior of any window
        n_min, n_max = -4, 4
        S = sine_operator(n_min, n_max)
        C = cosine_operator(n_min, n_max)
        L = angular_momentum_operator(n_min, n_max)
        comm = S @ L - L @ S
        interior = slice(1, -1)
        assert np.max(np.abs(comm[interior, interior] - 1j * C[interior, interior])) <= 1e-14


class TestRescaleHbar:
    def test_reduces_at_unit_scale(self):
        for p in (-1.3, 0.0, 2.0, 0.4):
            assert rescale_hbar(p, 1.0, 1) == sinc_pi(p - 1)

    def test_peak_at_scaled_index(self):
        for hbar in (1.0, 0.1, 0.01):
            assert rescale_hbar(hbar * 3, hbar, 3) == 1.0

    def test_mass_concentration(self):
        from cylwigner.specfun import integrate_interval

        masses = []
        for hbar in (1.0, 0.3, 0.1, 0.03, 0.01):
            mass = integrate_interval(
                lambda p, h=hbar: rescale_hbar(p, h, 1) / h,
                hbar * 1 - 0.05,
                hbar * 1 + 0.05,
                order=64,
            )
            masses.append(mass)
        assert all(a < b for a, b in zip(masses, masses[1:]))
        assert masses[-1] >= 0.95

    def test_domain_error(self):
        with pytest.raises(ValueError):
            rescale_hbar(0.0, 0.0, 1)
        with pytest.raises(ValueError):
            rescale_hbar(0.0, -1.0, 1)


class TestGrids:
    def test_default_axes(self):
        grid = wigner_grid(cat_state(0.0))
        assert grid.theta_axis.size == 181 and grid.p_axis.size == 401
        assert grid.theta_axis[0] == -pi and grid.theta_axis[-1] == pi
        assert grid.p_axis[0] == -5.0 and grid.p_axis[-1] == 5.0
        assert grid.values.shape == (181, 401)
        assert not np.iscomplexobj(grid.values)
        assert np.max(np.abs(grid.values)) <= 1 / pi + 1e-12

    def test_grid_matches_pointwise(self):
        st = von_mises_state(0.5, 0.6)
        thetas = np.array([-1.0, 0.0, 2.0])
        ps = np.array([-0.7, 0.4, 1.9])
        grid = wigner_grid(st, thetas, ps)
        for i, th in enumerate(thetas):
            for j, p in enumerate(ps):
                assert grid.values[i, j] == pytest.approx(
                    wigner_function(st, (float(th), float(p))), abs=1e-13
                )

    def test_moyal_grid_complex(self):
        grid = moyal_grid(cat_state(0.0), basis_state(1), np.array([0.3]), np.array([0.2, 1.0]))
        assert np.iscomplexobj(grid.values)
        assert grid.values[0, 0] == pytest.approx(
            moyal_function(cat_state(0.0), basis_state(1), (0.3, 0.2)), abs=1e-14
        )

    def test_density_grid(self):
        rho = pure_density(cat_state(0.0))
        grid = wigner_grid(rho, np.array([0.0]), np.array([0.0]))
        assert grid.values[0, 0] == pytest.approx(wigner_density(rho, (0.0, 0.0)), abs=1e-14)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            WignerGrid(theta_axis=np.zeros(2), p_axis=np.zeros(3), values=np.zeros((3, 2)))


class TestConcurrency:
    def test_parallel_point_evaluation_matches_serial(self):
        # evaluation functions are pure; threads must see identical values
        from concurrent.futures import ThreadPoolExecutor

        st = von_mises_state(0.5, 0.6)
        rng = np.random.default_rng(79)
        points = [
            (float(rng.uniform(-pi, pi)), float(rng.uniform(-5, 5))) for _ in range(64)
        ]
        serial = [wigner_function(st, pt) for pt in points]
        with ThreadPoolExecutor(max_workers=8) as pool:
            threaded = list(pool.map(lambda pt: wigner_function(st, pt), points))
        assert threaded == serial


class TestGridCsv:
    def test_format_and_determinism(self):
        grid = wigner_grid(cat_state(0.0), np.array([0.0, 0.5]), np.array([-1.0, 0.0, 1.0]))
        buf1, buf2 = io.StringIO(), io.StringIO()
        write_grid_csv(grid, buf1)
        write_grid_csv(grid, buf2)
        text = buf1.getvalue()
        assert text == buf2.getvalue()
        lines = text.strip().split("\n")
        assert lines[0] == "theta,p,value"
        assert len(lines) == 1 + 2 * 3
        first = lines[1].split(",")
        assert float(first[0]) == 0.0 and float(first[1]) == -1.0

    def test_row_major_order(self):
        grid = wigner_grid(basis_state(0), np.array([0.0, 1.0]), np.array([0.0, 0.5]))
        buf = io.StringIO()
        write_grid_csv(grid, buf)
        rows = [line.split(",") for line in buf.getvalue().strip().split("\n")[1:]]
        # theta varies slowest
        assert [r[0] for r in rows] == ["0", "0", "1", "1"]

    def test_complex_grid_rejected(self):
        grid = moyal_grid(cat_state(0.0), basis_state(1), np.array([0.0]), np.array([0.0]))
        with pytest.raises(ValueError):
            write_grid_csv(grid, io.StringIO())
