# tests/test_specfun.py
import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coulombxs.core.errors import BranchError, DomainError, OverflowGuard, PoleError
from coulombxs.schemas import RegimeTag, Sign
from coulombxs.specfun import (
    asymptotic_coefficients,
    complex_digamma,
    complex_gamma,
    coulomb_f,
    coulomb_u,
    g1,
    g2,
    kummer_m,
    log_gamma,
    reciprocal_gamma,
    tricomi_u,
    u1_u2,
)


def _rel(a, b) -> float:
    return abs(complex(a) - complex(b)) / abs(complex(b))


# ==========================================
# 1. GAMMA AND DIGAMMA
# ==========================================
@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.01, max_value=5.0))
def test_gamma_modulus_identity(y):
    expected = math.pi * y / math.sinh(math.pi * y)
    assert abs(abs(complex_gamma(1 + 1j * y)) ** 2 / expected - 1) <= 1e-12


@pytest.mark.parametrize("w", [0.5, 3.0, 1 + 1j, 0.3 - 2j, -2.5 + 0.1j, 12 + 7j, -0.5 - 4j])
def test_gamma_matches_mpmath(w):
    assert _rel(complex_gamma(w), mpmath.gamma(w)) <= 1e-12


@pytest.mark.parametrize("w", [1 + 1j, 0.3 - 2j, -2.5 + 0.1j, 10 + 3j, 2.0])
def test_digamma_matches_mpmath(w):
    assert _rel(complex_digamma(w), mpmath.digamma(w)) <= 1e-12


def test_digamma_shift_parameter_does_not_change_value():
    w = 0.7 + 2.2j
    assert _rel(complex_digamma(w, shift_to=25.0), complex_digamma(w)) <= 1e-13


@pytest.mark.parametrize("w", [2 + 1j, 50 + 3j, -3.3 + 0.5j])
def test_log_gamma_is_a_logarithm_of_gamma(w):
    value = log_gamma(w)
    assert abs(value.real - float(mpmath.re(mpmath.loggamma(w)))) <= 1e-12 * max(1.0, abs(value.real))
    assert _rel(cmath.exp(value), mpmath.gamma(w)) <= 1e-11


def test_real_argument_gives_real_gamma():
    assert complex_gamma(4.0) == pytest.approx(6.0, rel=1e-14)
    assert complex_gamma(4.0).imag == 0.0


@pytest.mark.parametrize("w", [0.0, -1.0, -3.0])
def test_poles(w):
    with pytest.raises(PoleError):
        complex_gamma(w)
    with pytest.raises(PoleError):
        complex_digamma(w)
    assert reciprocal_gamma(w) == 0


def test_reciprocal_gamma_off_poles():
    w = 0.25 + 1.5j
    assert _rel(reciprocal_gamma(w) * complex_gamma(w), 1.0) <= 1e-14


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-3.4, max_value=6.0), st.floats(min_value=0.1, max_value=5.0))
def test_gamma_and_digamma_conjugation(x, y):
    w = complex(x, y)
    assert _rel(complex_gamma(w.conjugate()), complex_gamma(w).conjugate()) <= 1e-13
    assert _rel(complex_digamma(w.conjugate()), complex_digamma(w).conjugate()) <= 1e-13


# ==========================================
# 2. KUMMER M
# ==========================================
@pytest.mark.parametrize("a, b, t", [
    (0.5j, 1.0, 3j),
    (1 + 1j, 1.0, 5j),
    (-0.3 + 0.2j, 2.5, 1.5 - 0.5j),
    (2.0, 3.0, -4.0),
])
def test_kummer_matches_mpmath(a, b, t):
    assert _rel(kummer_m(a, b, t), mpmath.hyp1f1(a, b, t)) <= 1e-11


@pytest.mark.parametrize("a, t", [(1j, 20j), (-2j, 15j), (1 + 0.5j, 30j), (0.5j, -25j)])
def test_kummer_connection_branch_matches_mpmath(a, t):
    assert _rel(kummer_m(a, 1.0, t), mpmath.hyp1f1(a, 1, t)) <= 1e-8


@pytest.mark.parametrize("a, b, t", [
    (1 + 1j, 2.0, 20j),
    (1 + 1j, 2.0, 30j),
    (1 + 1j, 2.0, 50j),
    (2j, 2.0, 40j),
    (0.5j, 3.0, 40j),
    (1 + 0.5j, 3.0, -20j),
    (0.3 - 1j, 2.0, -50j),
])
def test_kummer_far_from_origin_matches_mpmath(a, b, t):
    assert _rel(kummer_m(a, b, t), mpmath.hyp1f1(a, b, t)) <= 1e-9


@pytest.mark.parametrize("a, b, t", [
    (0.5, 3.0, -40.0),
    (0.5 - 0.3j, 2.5, -30 + 10j),
    (1 - 1j, 2.0, 20 + 15j),
    (-2.0, 3.0, -30j),
    (1.5, 1.5, -25.0),
])
def test_kummer_transformation_and_series_sides(a, b, t):
    assert _rel(kummer_m(a, b, t), mpmath.hyp1f1(a, b, t)) <= 1e-11


def test_kummer_parameter_recurrence_on_random_points():
    rng = np.random.default_rng(20240611)
    for _ in range(100):
        alpha = complex(rng.uniform(0.0, 0.5), rng.uniform(0.1, 1.5))
        gamma = float(rng.integers(1, 4))
        t = 1j * rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 50.0)
        lhs = kummer_m(alpha + 1, gamma + 1, t)
        upper = gamma / t * kummer_m(alpha + 1, gamma, t)
        lower = gamma / t * kummer_m(alpha, gamma, t)
        scale = max(abs(lhs), abs(upper), abs(lower))
        assert abs(lhs - (upper - lower)) <= 1e-9 * scale, (alpha, gamma, t)


def test_kummer_at_origin_and_zero_parameter():
    assert kummer_m(1 + 1j, 1.0, 0.0) == 1
    assert kummer_m(0.0, 2.0, 7j) == 1


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.1, max_value=3.0), st.floats(min_value=0.1, max_value=10.0))
def test_kummer_contiguous_recurrence(y, z):
    a, b, t = 1j * y, 1.0, 1j * z
    m_minus, m_0, m_plus = kummer_m(a - 1, b, t), kummer_m(a, b, t), kummer_m(a + 1, b, t)
    terms = [(b - a) * m_minus, (2 * a - b + t) * m_0, -a * m_plus]
    scale = sum(abs(term) for term in terms)
    assert abs(sum(terms)) <= 1e-9 * scale


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.1, max_value=2.0),
       st.sampled_from([1.0, 2.0, 2.5]),
       st.floats(min_value=0.5, max_value=40.0))
def test_kummer_conjugation(y, b, z):
    a, t = complex(0.3, y), 1j * z
    value = kummer_m(a, b, t)
    assert _rel(kummer_m(a.conjugate(), b, t.conjugate()), value.conjugate()) <= 1e-10


def test_kummer_pole_in_b():
    with pytest.raises(PoleError):
        kummer_m(0.5, -2.0, 1.0)


def test_kummer_overflow_guard_and_coulomb_f_past_it():
    with pytest.raises(OverflowGuard):
        kummer_m(1j, 1.0, 2e4j)
    value = coulomb_f(1j, 2e4)
    assert np.isfinite(value)
    assert abs(value) < 10.0


@pytest.mark.parametrize("z", [0.5, 5.0, 20.0])
def test_coulomb_f_agrees_with_kummer(z):
    assert _rel(coulomb_f(1j, z), kummer_m(1j, 1.0, 1j * z)) <= 1e-10


# ==========================================
# 3. TRICOMI U
# ==========================================
@pytest.mark.parametrize("a, t", [
    (1 + 1j, 0.5j),
    (1 + 1j, 5j),
    (1 + 1j, 40j),
    (0.5j, 3j),
    (1 - 2j, 1.5 + 0.5j),
    (1 + 1j, 2.0),
    (1 - 1j, -8j),
])
def test_tricomi_matches_mpmath(a, t):
    assert _rel(tricomi_u(a, t), mpmath.hyperu(a, 1, t)) <= 1e-9


@pytest.mark.parametrize("t", [0.5, 5.0, 12.0, 40.0])
def test_tricomi_at_unit_parameter_is_the_exponential_integral(t):
    expected = mpmath.exp(t) * mpmath.e1(t)
    assert _rel(tricomi_u(1.0, t), expected) <= 1e-10


@pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("modulus", [1.0, 2.0, 3.0])
def test_series_and_integral_regimes_overlap(xi, modulus):
    a, t = 1 + 1j * xi, 1j * modulus
    series = tricomi_u(a, t, RegimeTag.NEAR_ZONE_SERIES)
    integral = tricomi_u(a, t, RegimeTag.INTEGRAL_REP)
    assert _rel(series, integral) <= 1e-8


@pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("modulus", [30.0, 40.0, 60.0])
def test_integral_and_asymptotic_regimes_overlap(xi, modulus):
    a, t = 1 - 1j * xi, 1j * modulus
    asymptotic = tricomi_u(a, t, RegimeTag.ASYMPTOTIC)
    integral = tricomi_u(a, t, RegimeTag.INTEGRAL_REP)
    assert _rel(asymptotic, integral) <= 1e-8


def test_tricomi_keeps_array_shape():
    t = 1j * np.array([[0.5, 5.0, 50.0], [1.0, 10.0, 100.0]])
    out = tricomi_u(1 + 1j, t)
    assert out.shape == (2, 3)
    assert _rel(out[1, 1], tricomi_u(1 + 1j, 10j)) <= 1e-13


def test_tricomi_domain_errors():
    with pytest.raises(DomainError):
        tricomi_u(1 + 1j, 0.0)
    with pytest.raises(BranchError):
        tricomi_u(1 + 1j, -2.0)
    with pytest.raises(DomainError):
        tricomi_u(-1.5, 5j, RegimeTag.INTEGRAL_REP)


def test_asymptotic_coefficients():
    c = 1 + 2j
    coeffs = asymptotic_coefficients(c, 3)
    assert coeffs[0] == 1
    assert _rel(coeffs[1], c ** 2) <= 1e-15
    assert _rel(coeffs[2], (c * (c + 1)) ** 2 / 2) <= 1e-14
    assert _rel(coeffs[3], (c * (c + 1) * (c + 2)) ** 2 / 6) <= 1e-14


# ==========================================
# 4. COULOMB PAIR AND KERNELS
# ==========================================
@pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
@pytest.mark.parametrize("z", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0])
def test_decomposition_identity(xi, sign, z):
    a = 1j * sign.s * xi
    u1, u2 = u1_u2(xi, sign, z)
    f = kummer_m(a, 1.0, 1j * z)
    rebuilt = u1 * reciprocal_gamma(a) + u2 * reciprocal_gamma(1 - a)
    assert abs(f - rebuilt) / abs(f) <= 1e-8


def test_decomposition_identity_against_mpmath():
    a, z = 1j, 3.0
    u1, u2 = u1_u2(1.0, Sign.ATTRACT, z)
    rebuilt = u1 / complex_gamma(a) + u2 / complex_gamma(1 - a)
    assert _rel(rebuilt, mpmath.hyp1f1(a, 1, 1j * z)) <= 1e-9


@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
@pytest.mark.parametrize("z", [0.5, 2.0, 10.0])
def test_kernels_rebuild_the_pair(sign, z):
    xi = 1.0
    a = 1j * sign.s * xi
    u1, u2 = u1_u2(xi, sign, z)
    phase = cmath.exp(1j * math.pi * a / 2)
    u2_from_g2 = phase * z ** (-a) * g2(xi, sign, z) * reciprocal_gamma(a)
    u1_from_g1 = cmath.exp(1j * z) * z ** a * phase * g1(xi, sign, z) * reciprocal_gamma(1 - a)
    assert _rel(u2_from_g2, u2) <= 1e-8
    assert _rel(u1_from_g1, u1) <= 1e-8


@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
def test_intermediate_pair_comes_from_the_kernels(sign):
    xi, z = 1.0, 5.0
    a = 1j * sign.s * xi
    u1, u2 = u1_u2(xi, sign, z)
    phase = cmath.exp(1j * math.pi * a / 2)
    assert _rel(phase * z ** (-a) * g2(xi, sign, z) * reciprocal_gamma(a), u2) <= 1e-10
    assert _rel(cmath.exp(1j * z) * z ** a * phase * g1(xi, sign, z) * reciprocal_gamma(1 - a), u1) <= 1e-10


@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
def test_g1_tends_to_the_spherical_wave_coefficient(sign):
    xi, z = 1.0, 1e3
    expected = complex_gamma(1 - 1j * sign.s * xi) / (1j * z)
    assert _rel(g1(xi, sign, z), expected) <= 2.01 / z


def test_pair_accepts_arrays():
    z = np.array([0.5, 5.0, 50.0])
    u1, u2 = u1_u2(1.0, Sign.ATTRACT, z)
    assert u1.shape == u2.shape == (3,)
    for i, zi in enumerate(z):
        one, two = u1_u2(1.0, Sign.ATTRACT, float(zi))
        assert _rel(u1[i], one) <= 1e-12
        assert _rel(u2[i], two) <= 1e-12


def test_coulomb_u_is_vectorized_and_signed():
    z = np.array([0.5, 5.0, 50.0])
    out = coulomb_u(1.0, Sign.REPEL, z)
    assert out.shape == (3,)
    assert _rel(out[1], tricomi_u(1 - 1j, 5j)) <= 1e-13


@pytest.mark.parametrize("xi, z", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_coulomb_u_domain(xi, z):
    with pytest.raises(DomainError):
        coulomb_u(xi, Sign.ATTRACT, z)
