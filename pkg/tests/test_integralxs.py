# tests/test_integralxs.py
import math

import numpy as np
import pytest

from coulombxs.core.errors import DomainError
from coulombxs.integralxs import (
    sigma_total,
    sigma_tr_prime,
    sigma_transport,
    tail_coefficients,
    total_remainder,
    transport_decomposition,
    universal_total,
    universal_totals,
    universal_transport,
    weighted_modulus,
)
from coulombxs.schemas import CoulombInteraction, Sign, XsMethod


# ==========================================
# 1. TAIL COEFFICIENTS
# ==========================================
@pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
def test_leading_tail_coefficients(xi, sign):
    p = tail_coefficients(xi, sign)
    assert p[0] == pytest.approx(1.0, abs=1e-15)
    assert p[1] == pytest.approx(-4.0 * sign.s * xi, rel=1e-14)


def test_second_tail_coefficient():
    assert tail_coefficients(1.0, Sign.ATTRACT)[2] == pytest.approx(12.0, rel=1e-13)


@pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
def test_integrand_follows_its_tail_law(xi, sign):
    p = tail_coefficients(xi, sign)
    bound = 2.0 * abs(p[3]) + 1.0
    for z in (200.0, 400.0):
        scaled = z ** 2 * float(weighted_modulus(xi, sign, np.array([z]))[0])
        remainder = scaled - (p[0] + p[1] / z + p[2] / z ** 2)
        assert abs(remainder) <= bound / z ** 3


# ==========================================
# 2. UNIVERSAL TOTALS
# ==========================================
@pytest.mark.parametrize("xi", [
    0.5,
    1.0,
    pytest.param(2.0, marks=pytest.mark.slow),
])
@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
def test_universal_total_is_stable_in_the_cut(xi, sign):
    near = universal_total(xi, sign, z_cut=1e3)
    far = universal_total(xi, sign, z_cut=2e3)
    assert abs(near - far) <= 1e-8 * abs(far)


def test_attraction_and_repulsion_differ():
    totals = universal_totals(1.0)
    assert totals.I_attract > 0 and totals.I_repel > 0
    assert abs(totals.I_attract - totals.I_repel) >= 0.05 * max(totals.I_attract, totals.I_repel)
    assert totals.I_attract == universal_total(1.0, Sign.ATTRACT)
    assert totals.err >= 0


@pytest.mark.parametrize("xi", [0.0, 6.0])
def test_universal_total_domain(xi):
    with pytest.raises(DomainError):
        universal_total(xi, Sign.ATTRACT)


# ==========================================
# 3. TOTAL CROSS-SECTION
# ==========================================
@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
def test_regularized_minus_direct_is_the_remainder(sign):
    ci = CoulombInteraction(xi=1.0, sign=sign)
    r = 1e4
    regularized = sigma_total(ci, r, XsMethod.REGULARIZED).value
    direct = sigma_total(ci, r, XsMethod.DIRECT).value
    assert regularized - direct == pytest.approx(total_remainder(ci), rel=1e-2)


def test_regularized_total_is_linear_in_r(attract_one):
    one = sigma_total(attract_one, 1e4, XsMethod.REGULARIZED)
    two = sigma_total(attract_one, 2e4, XsMethod.REGULARIZED)
    assert two.value == pytest.approx(2.0 * one.value, rel=1e-14)
    assert two.r_used == 2e4


def test_method_is_chosen_from_kr(attract_one):
    assert sigma_total(attract_one, 10.0).method is XsMethod.DIRECT
    assert sigma_total(attract_one, 1e4).method is XsMethod.REGULARIZED
    assert sigma_transport(attract_one, 10.0).method is XsMethod.DIRECT


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_non_positive_distance(attract_one, r):
    with pytest.raises(DomainError):
        sigma_total(attract_one, r)
    with pytest.raises(DomainError):
        sigma_transport(attract_one, r)


def test_xi_above_limit_is_a_domain_error():
    ci = CoulombInteraction(xi=6.0, sign=Sign.ATTRACT)
    with pytest.raises(DomainError):
        sigma_total(ci, 10.0)
    with pytest.raises(DomainError):
        sigma_total(ci, 1e4)


# ==========================================
# 4. TRANSPORT CROSS-SECTION
# ==========================================
@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
@pytest.mark.parametrize("kr", [1e2, pytest.param(1e3, marks=pytest.mark.slow)])
def test_regularized_transport_matches_direct(sign, kr):
    direct = sigma_tr_prime(1.0, sign, kr, XsMethod.DIRECT)
    regularized = sigma_tr_prime(1.0, sign, kr, XsMethod.REGULARIZED)
    assert abs(direct - regularized) <= 10.0 / kr


@pytest.mark.slow
@pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
@pytest.mark.parametrize("kr", [1e4, 1e5])
def test_regularized_transport_at_large_distance(xi, sign, kr):
    direct = sigma_tr_prime(xi, sign, kr, XsMethod.DIRECT)
    regularized = sigma_tr_prime(xi, sign, kr, XsMethod.REGULARIZED)
    assert abs(direct - regularized) <= 10.0 / kr * abs(direct)


@pytest.mark.parametrize("sign", [Sign.ATTRACT, Sign.REPEL])
def test_transport_grows_logarithmically(sign):
    growth = sigma_tr_prime(1.0, sign, 1e4) - sigma_tr_prime(1.0, sign, 1e3)
    assert growth == pytest.approx(math.log(10.0), rel=0.05)


def test_universal_transport_is_the_decomposition_limit():
    decomposition = transport_decomposition(1.0, Sign.ATTRACT)
    assert decomposition.universal() == universal_transport(1.0, Sign.ATTRACT)
    assert decomposition.log_coeff == pytest.approx(math.exp(math.pi))


def test_universal_transport_against_a_large_distance(attract_one):
    kr = 1e4
    k2_sigma = attract_one.k ** 2 * sigma_transport(attract_one, kr, XsMethod.DIRECT).value
    limit = k2_sigma - 2.0 * math.pi * attract_one.xi ** 2 * math.log(2.0 * kr)
    assert limit == pytest.approx(universal_transport(1.0, Sign.ATTRACT), abs=5e-3)


def test_transport_domain():
    with pytest.raises(DomainError):
        sigma_tr_prime(1.0, Sign.ATTRACT, 0.0)
    with pytest.raises(DomainError):
        sigma_tr_prime(6.0, Sign.ATTRACT, 10.0)
