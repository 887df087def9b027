import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_converter import AtomConfig, channel_splitting, dressed_pair
from photon_converter.errors import DegenerateDriveError


def atom(detuning, rabi):
    return AtomConfig.from_detuning(0.9, detuning=detuning, rabi=rabi)


def eigh_oracle(detuning, rabi):
    """Dressed energies straight from a 2x2 eigensolve of the {g, f} block."""
    return np.linalg.eigvalsh(np.array([[0.0, rabi], [rabi, detuning]]))


def test_resonant_drive():
    pair = dressed_pair(atom(0.0, 0.1))
    assert pair.theta == pytest.approx(math.pi / 2)
    assert pair.nu_plus == pytest.approx(0.1)
    assert pair.nu_minus == pytest.approx(-0.1)


def test_undriven_reduces_to_bare_basis():
    pair = dressed_pair(atom(0.3, 0.0))
    assert pair.theta == 0.0
    assert pair.nu_plus == pytest.approx(0.3)
    assert pair.nu_minus == 0.0
    np.testing.assert_array_equal(pair.coeffs, [[0.0, 1.0], [-1.0, 0.0]])


def test_undriven_negative_detuning_is_theta_pi_limit():
    pair = dressed_pair(atom(-0.3, 0.0))
    assert pair.theta == pytest.approx(math.pi)
    assert pair.nu_minus == pytest.approx(-0.3)
    assert pair.nu_plus == 0.0


def test_detuned_drive_hand_values():
    pair = dressed_pair(atom(0.15, 0.1))
    lo, hi = eigh_oracle(0.15, 0.1)
    assert pair.nu_plus == pytest.approx(0.2, abs=1e-15)
    assert pair.nu_minus == pytest.approx(-0.05, abs=1e-15)
    assert (pair.nu_minus, pair.nu_plus) == pytest.approx((lo, hi), abs=1e-15)
    assert pair.theta == pytest.approx(math.atan(4 / 3), abs=1e-15)
    assert pair.theta == pytest.approx(0.92730, abs=5e-6)


@pytest.mark.parametrize(
    "detuning, rabi, expected",
    [(0.0, 0.1, 0.2), (0.15, 0.1, 0.25), (0.3, 0.0, 0.3)],
)
def test_channel_splitting(detuning, rabi, expected):
    assert channel_splitting(dressed_pair(atom(detuning, rabi))) == pytest.approx(expected, abs=1e-15)


def test_degenerate_drive_rejected():
    with pytest.raises(DegenerateDriveError):
        atom(0.0, 0.0)


def test_negative_rabi_rejected():
    with pytest.raises(ValueError):
        atom(0.1, -0.1)


def test_coefficients_are_eigenvectors():
    d, eta = 0.15, 0.1
    pair = dressed_pair(atom(d, eta))
    block = np.array([[0.0, eta], [eta, d]])
    np.testing.assert_allclose(block @ pair.coeffs[0], pair.nu_plus * pair.coeffs[0], atol=1e-15)
    np.testing.assert_allclose(block @ pair.coeffs[1], pair.nu_minus * pair.coeffs[1], atol=1e-15)


# keep clear of the degenerate corner; omega_f - nu loses sub-ulp detunings
drives = st.tuples(
    st.floats(-5, 5, allow_nan=False),
    st.floats(0, 5, allow_nan=False),
).filter(lambda p: abs(p[0]) > 1e-9 or p[1] > 1e-9)


@given(drives)
@settings(max_examples=300)
def test_sum_and_product_rules(p):
    a = atom(*p)
    d, eta = a.detuning, a.rabi
    pair = dressed_pair(a)
    scale = max(abs(d), 2 * eta) ** 2
    assert pair.nu_plus >= pair.nu_minus
    assert pair.nu_plus + pair.nu_minus == pytest.approx(d, rel=1e-12, abs=1e-12 * math.sqrt(scale))
    assert pair.nu_plus * pair.nu_minus == pytest.approx(-eta * eta, rel=1e-12, abs=1e-12 * scale)


@given(drives)
@settings(max_examples=300)
def test_coefficients_orthonormal(p):
    m = dressed_pair(atom(*p)).coeffs
    np.testing.assert_allclose(m @ m.T, np.eye(2), atol=1e-12)


@given(st.floats(0.01, 2), st.floats(-2, 2))
def test_theta_continuous_along_detuning(eta, d):
    step = 1e-7
    t0 = dressed_pair(atom(d, eta)).theta
    t1 = dressed_pair(atom(d + step, eta)).theta
    # |d theta / d Delta| = 2 eta / (Delta^2 + 4 eta^2) <= 1 / (2 eta)
    assert abs(t1 - t0) <= step / (2 * eta) * 1.01 + 1e-15
    assert 0 < t0 < math.pi
