import math

import numpy as np
import pytest

from bfspec import closed_form as cf
from bfspec.errors import NotUnstable, SingularKappa


def test_zero_kappa_coefficients_are_all_one():
    e11, e22, e12 = cf.coeffs_e(0.0)
    assert e11 == pytest.approx(1.0, abs=1e-15)
    assert e22 == pytest.approx(1.0, abs=1e-15)
    assert e12 == pytest.approx(1.0, abs=1e-15)
    assert cf.whitham_benjamin(0.0) == pytest.approx(1.0, abs=1e-15)
    assert cf.phase_speed(0.0) == 1.0
    assert cf.breve_c(0.0) == 1.0


def test_product_identity_on_random_kappas():
    rng = np.random.default_rng(0)
    for k in rng.uniform(0.0, 2.0, size=50):
        if abs(k - 0.5) < 1e-3:
            continue
        e11, e22, _ = cf.coeffs_e(float(k))
        assert e11 * e22 == pytest.approx(cf.whitham_benjamin(float(k)),
                                          rel=1e-12)


def test_critical_kappa_is_a_zero():
    assert cf.whitham_benjamin(cf.KAPPA_CRITICAL) == pytest.approx(0.0,
                                                                   abs=1e-12)


def test_classification_atlas():
    assert cf.classify(0.05) is cf.RegionLabel.UNSTABLE
    assert cf.classify(0.3) is cf.RegionLabel.STABLE
    assert cf.classify(0.8) is cf.RegionLabel.UNSTABLE
    assert cf.classify(0.5) is cf.RegionLabel.SINGULAR
    assert cf.classify(1.0 / 3.0) is cf.RegionLabel.RESONANT
    assert cf.classify(cf.KAPPA_CRITICAL) is cf.RegionLabel.CRITICAL
    with pytest.raises(ValueError):
        cf.classify(-0.1)


def test_pole_raises():
    with pytest.raises(SingularKappa):
        cf.coeffs_e(0.5)
    with pytest.raises(SingularKappa):
        cf.whitham_benjamin(0.5 + 1e-9)


def test_mu_bar_leading_reference_value():
    assert cf.mu_bar_leading(0.0, 0.01) == pytest.approx(0.0282843, rel=1e-5)
    with pytest.raises(NotUnstable):
        cf.mu_bar_leading(0.3, 0.01)


def test_lambda1_leading_regimes():
    kappa, eps = 0.0, 0.01
    mu_bar = cf.mu_bar_leading(kappa, eps)
    inside = cf.lambda1_leading(kappa, 0.5 * mu_bar, eps)
    assert inside.regime is cf.SplitRegime.REAL_SPLIT
    assert inside.value_plus.real > 0.0
    assert inside.value_plus == pytest.approx(-inside.value_minus.conjugate())
    outside = cf.lambda1_leading(kappa, 1.5 * mu_bar, eps)
    assert outside.regime is cf.SplitRegime.IMAGINARY_SPLIT
    assert outside.value_plus.real == 0.0
    assert outside.value_minus.real == 0.0


def test_lambda1_center_orientation():
    low = cf.lambda1_leading(0.8, 0.01, 0.005)
    high = cf.lambda1_leading(1.5, 0.01, 0.005)
    center = lambda p: 0.5 * (p.value_plus.imag + p.value_minus.imag)
    assert center(low) > 0.0
    assert center(high) < 0.0


def test_lambda0_leading():
    p, m = cf.lambda0_leading(0.3, 0.04)
    c = cf.phase_speed(0.3)
    assert p == pytest.approx(1j * (0.04 * c - math.sqrt(0.04)))
    assert m == pytest.approx(1j * (0.04 * c + math.sqrt(0.04)))


def test_flat_eigenvalue_is_imaginary_and_odd_in_mode():
    for k_mode in (1, 2, 5):
        for sign in (1, -1):
            lam = cf.flat_eigenvalue(0.3, k_mode, sign, 0.0)
            assert lam.real == 0.0
            mirror = cf.flat_eigenvalue(0.3, k_mode, -sign, 0.0)
            assert mirror == pytest.approx(-lam)
