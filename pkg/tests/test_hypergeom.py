import math

import mpmath
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from models.halfint import HalfInt
from models.schemas import JacobiParams, SolutionBasis
from services import hypergeom
from utils.errors import GammaPoleError, InvalidParameterError, SeriesDivergenceError, UnsupportedRegionError

H = HalfInt.parse


def params(lam1, lam2, lam):
    return JacobiParams(lam=H(lam), lam1=H(lam1), lam2=H(lam2))


def mp_hyp2f1(a, b, c, z):
    with mpmath.workdps(40):
        return float(mpmath.re(mpmath.hyp2f1(float(a), float(b), float(c), z)))


class TestSeries:
    def test_at_zero(self):
        assert hypergeom.hyp2f1_series(H("1/2"), H("3/2"), H("5/2"), 0.0) == 1.0

    def test_a_zero(self):
        for z in (-0.9, -0.3, 0.5, 0.99):
            assert hypergeom.hyp2f1_series(H("0"), H("7/2"), H("3/2"), z) == 1.0

    def test_degree_one(self):
        b, c = H("5/2"), H("3/2")
        for z in (-0.7, 0.2, 0.8):
            expected = 1 - float(b) / float(c) * z
            assert hypergeom.hyp2f1_series(H("-1"), b, c, z) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("z", [-0.95, -0.5, 0.1, 0.6, 0.9])
    def test_matches_scipy(self, z):
        value = hypergeom.hyp2f1_series(H("1/2"), H("3/2"), H("3"), z)
        assert value == pytest.approx(special.hyp2f1(0.5, 1.5, 3.0, z), rel=1e-13)

    def test_outside_disc(self):
        with pytest.raises(SeriesDivergenceError):
            hypergeom.hyp2f1_series(H("1/2"), H("1/2"), H("3/2"), -1.5)

    def test_c_pole(self):
        with pytest.raises(GammaPoleError):
            hypergeom.hyp2f1_series(H("1/2"), H("1/2"), H("-1"), 0.1)


class TestRealLine:
    @pytest.mark.parametrize("z", [-50.0, -10.0, -4.5, -4.0, -2.0, -0.6, -0.5, -0.1, 0.3, 0.85, 0.95, 0.99])
    def test_arctan_closed_form(self, z):
        # 2F1(1/2, 1; 3/2; z) = arctan(sqrt(-z)) / sqrt(-z) for z < 0, arctanh(sqrt(z)) / sqrt(z) for z > 0
        if z < 0:
            expected = math.atan(math.sqrt(-z)) / math.sqrt(-z)
        else:
            expected = math.atanh(math.sqrt(z)) / math.sqrt(z)
        value = hypergeom.hyp2f1_real(H("1/2"), H("1"), H("3/2"), z)
        assert value == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "a,b,c",
        [("1/2", "1", "2"), ("3/2", "5/2", "1/2"), ("-3", "1/2", "3/2"), ("1", "3/2", "7/2"), ("1/2", "1/2", "1")],
    )
    def test_matches_mpmath(self, a, b, c):
        z = np.array([-20.0, -5.0, -3.0, -1.0, -0.2, 0.5, 0.95])
        values = hypergeom.hyp2f1_real(H(a), H(b), H(c), z)
        expected = [mp_hyp2f1(H(a), H(b), H(c), zi) for zi in z]
        assert_allclose(values, expected, rtol=1e-11)

    def test_scalar_in_scalar_out(self):
        assert isinstance(hypergeom.hyp2f1_real(H("1/2"), H("1"), H("3/2"), -0.2), float)

    def test_rejects_z_at_one(self):
        with pytest.raises(SeriesDivergenceError):
            hypergeom.hyp2f1_real(H("1/2"), H("1"), H("2"), 1.0)

    def test_polynomial_anywhere(self):
        assert hypergeom.hyp2f1_real(H("-1"), H("3"), H("3/2"), 5.0) == pytest.approx(1 - 2 * 5.0, rel=1e-15)

    def test_seams_agree(self):
        assert hypergeom.seam_continuity(H("1/2"), H("1"), H("2")) <= 1e-11
        assert hypergeom.seam_continuity(H("3/2"), H("1"), H("5/2")) <= 1e-11


class TestJacobi:
    def test_phi_at_zero(self):
        assert hypergeom.jacobi_phi(params("2", "1/2", "1/2"), 0.0) == 1.0

    def test_phi_is_even(self):
        p = params("3/2", "1/2", "1")
        t = np.linspace(0.0, 3.0, 13)
        assert_allclose(hypergeom.jacobi_phi(p, -t), hypergeom.jacobi_phi(p, t), rtol=1e-12)

    def test_polynomial_case(self):
        # a = -1, b = 3, c = 3/2
        p = params("1/2", "1/2", "4")
        t = np.linspace(0.0, 4.0, 9)
        assert_allclose(hypergeom.jacobi_phi(p, t), 1.0 + 2.0 * np.sinh(t) ** 2, rtol=1e-13)

    def test_compact_at_zero(self):
        assert hypergeom.jacobi_phi_compact(params("1", "1/2", "3/2"), 0.0) == 1.0

    def test_compact_terminating_up_to_right_angle(self):
        # Chu-Vandermonde: 2F1(-1, 3; 3/2; 1) = -1
        assert hypergeom.jacobi_phi_compact(params("1/2", "1/2", "4"), math.pi / 2) == pytest.approx(-1.0)

    def test_compact_symmetric_in_lambda(self):
        theta = np.linspace(0.0, 1.5, 7)
        plus = hypergeom.jacobi_phi_compact(params("1", "1/2", "3/2"), theta)
        minus = hypergeom.jacobi_phi_compact(params("1", "1/2", "-3/2"), theta)
        assert_allclose(plus, minus, rtol=1e-13)

    def test_compact_domain(self):
        with pytest.raises(InvalidParameterError):
            hypergeom.jacobi_phi_compact(params("1", "1/2", "3/2"), 2.0)


class TestBases:
    def test_u1_at_zero(self):
        assert hypergeom.basis_eval(SolutionBasis.U1_AT_0, params("1", "1/2", "3/2"), 0.0) == 1.0

    def test_u2_limit(self):
        t = 1e-4
        value = hypergeom.basis_eval(SolutionBasis.U2_AT_0, params("1", "1/2", "3/2"), t)
        assert t ** 1.0 * value == pytest.approx(1.0, abs=1e-3)

    def test_u2_needs_fractional_lambda2(self):
        with pytest.raises(UnsupportedRegionError):
            hypergeom.basis_eval(SolutionBasis.U2_AT_0, params("1", "1", "1"), 0.5)

    @pytest.mark.parametrize("triple", [("1", "1/2", "3/2"), ("2", "3/2", "1/2"), ("2", "1/2", "1/2")])
    def test_u_inf_minus_normalization(self, triple):
        p = params(*triple)
        t = 20.0
        exponent = float(p.lam1) + float(p.lam2) + 1.0 + float(p.lam)
        value = hypergeom.basis_eval(SolutionBasis.U_INF_MINUS, p, t)
        assert math.sinh(t) ** exponent * value == pytest.approx(1.0, rel=1e-12)

    def test_u_inf_plus_needs_non_integer_lambda(self):
        with pytest.raises(UnsupportedRegionError):
            hypergeom.basis_eval(SolutionBasis.U_INF_PLUS, params("1/2", "1/2", "1"), 2.0)

    def test_u_inf_at_lambda_zero(self):
        with pytest.raises(UnsupportedRegionError):
            hypergeom.basis_eval(SolutionBasis.U_INF_MINUS, params("1/2", "1/2", "0"), 2.0)

    def test_u_inf_needs_positive_t(self):
        with pytest.raises(UnsupportedRegionError):
            hypergeom.basis_eval(SolutionBasis.U_INF_MINUS, params("1", "1/2", "3/2"), 0.0)


class TestConnection:
    def test_kummer_b_terminating(self):
        assert hypergeom.kummer_b(params("2", "1/2", "1/2")) == 0.0

    def test_kummer_b_generic(self):
        # Gamma(1/2) Gamma(2) / (Gamma(1) Gamma(3/2))
        assert hypergeom.kummer_b(params("1/2", "1/2", "1")) == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.parametrize(
        "triple,terminating",
        [
            (("2", "1/2", "1/2"), True),
            (("9/2", "1/2", "1"), True),
            (("3", "1/2", "1/2"), False),
            (("1/2", "3/2", "1"), False),
            (("6", "3/2", "3/2"), True),
        ],
    )
    def test_kummer_b_vanishes_exactly_on_terminating_set(self, triple, terminating):
        p = params(*triple)
        assert (p.lam1 - p.lam2 - p.lam - 1).in_two_n() is terminating
        assert (hypergeom.kummer_b(p) == 0.0) is terminating

    def test_kummer_a_is_reflected_b(self):
        p = params("1/2", "1/2", "1")
        assert hypergeom.kummer_a(p) == hypergeom.kummer_b(p.with_lam2(-p.lam2))
        assert hypergeom.kummer_a(p) == pytest.approx(-2.0, rel=1e-15)

    def test_kummer_a_needs_fractional_lambda2(self):
        with pytest.raises(UnsupportedRegionError):
            hypergeom.kummer_a(params("1", "1", "1"))

    @pytest.mark.parametrize("triple", [("1/2", "1/2", "1"), ("1", "1/2", "5/2"), ("2", "5/2", "3/2"), ("2", "1/2", "1/2")])
    def test_connection_residual(self, triple):
        z = np.linspace(-0.81, -0.04, 40)
        assert hypergeom.connection_residual(params(*triple), z) <= 1e-10

    def test_connection_grid_domain(self):
        with pytest.raises(InvalidParameterError):
            hypergeom.connection_residual(params("1/2", "1/2", "1"), [-0.5, 0.0])

    def test_coefficients_match_least_squares_fit(self):
        p = params("3/2", "1/2", "1")
        a, b, c, lam = (float(x) for x in (p.a, p.b, p.c, p.lam))
        z = np.linspace(-0.8, -0.1, 12)

        def g_inf(zi):
            # decaying solution at infinity, expanded in 1/z
            return (-zi) ** (-b) * mp_hyp2f1(b, b - c + 1, 1 + lam, 1 / zi)

        lhs = np.array([g_inf(zi) for zi in z])
        g1 = np.array([mp_hyp2f1(a, b, c, zi) for zi in z])
        g2 = np.array([(-zi) ** (-float(p.lam2)) * mp_hyp2f1(a - c + 1, b - c + 1, 2 - c, zi) for zi in z])
        fit, *_ = np.linalg.lstsq(np.column_stack([g1, g2]), lhs, rcond=None)

        assert_allclose(fit, [hypergeom.kummer_a(p), hypergeom.kummer_b(p)], rtol=1e-8)


class TestOdeResidual:
    @pytest.mark.parametrize(
        "basis,start,stop",
        [
            (SolutionBasis.U1_AT_0, 0.1, 3.0),
            (SolutionBasis.U2_AT_0, 0.25, 3.0),
            (SolutionBasis.U_INF_MINUS, 1.5, 5.0),
            (SolutionBasis.U_INF_PLUS, 1.5, 5.0),
            (SolutionBasis.PHI_COMPACT, 0.1, 1.4),
        ],
    )
    def test_residual_is_small(self, basis, start, stop):
        grid = np.linspace(start, stop, 40)
        assert hypergeom.ode_residual(params("1", "1/2", "3/2"), basis, grid) <= 1e-5

    def test_wrong_equation_is_detected(self):
        # phi of one parameter set does not solve the equation of another
        grid = np.linspace(0.5, 3.0, 20)
        right = params("1", "1/2", "3/2")
        wrong = params("1", "1/2", "5/2")

        def residual(p, phi):
            value, first, second = hypergeom._stencil(phi, grid)
            drift = (2 * float(p.lam1) + 1) * np.tanh(grid) + (2 * float(p.lam2) + 1) / np.tanh(grid)
            eigen = (float(p.lam1) + float(p.lam2) + 1) ** 2 - float(p.lam) ** 2
            return np.max(np.abs(second + drift * first + eigen * value))

        phi = lambda t: hypergeom.jacobi_phi(right, t)  # noqa: E731
        assert residual(right, phi) <= 1e-5
        assert residual(wrong, phi) > 1e-2

    def test_grid_must_avoid_origin(self):
        with pytest.raises(InvalidParameterError):
            hypergeom.ode_residual(params("1", "1/2", "3/2"), SolutionBasis.U1_AT_0, [0.001, 0.5])


class TestSTransform:
    def test_identity(self):
        t = np.array([0.3, 1.0, 2.5])
        phi = np.array([1.5, -0.2, 3.0])
        assert_allclose(hypergeom.s_transform(H("3/2"), H("1/2"), H("3/2"), H("1/2"), phi, t), phi)

    def test_unit_sinh(self):
        t = math.asinh(1.0)
        value = hypergeom.s_transform(H("5/2"), H("3"), H("1/2"), H("1"), 1.0, t)
        assert value == pytest.approx(math.sqrt(2.0) ** 2, rel=1e-14)

    def test_composition(self):
        t = np.linspace(0.2, 2.0, 5)
        phi = np.cos(t)
        rho1, rho2 = H("1/2"), H("1")
        inner = hypergeom.s_transform(H("2"), H("3/2"), rho1, rho2, phi, t)
        twice = hypergeom.s_transform(H("1"), H("5/2"), rho1, rho2, inner, t)
        once = hypergeom.s_transform(H("5/2"), H("3"), rho1, rho2, phi, t)
        assert_allclose(twice, once, rtol=1e-13)

    def test_needs_positive_t(self):
        with pytest.raises(InvalidParameterError):
            hypergeom.s_transform(H("1"), H("1"), H("0"), H("0"), 1.0, 0.0)
