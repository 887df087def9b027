import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_converter import (
    AtomConfig,
    CRWConfig,
    LinearConfig,
    dressed_pair,
    partner_wavevector_linear,
    peak_transfer,
    scatter_crw_at,
    scatter_linear,
)
from photon_converter.errors import DegenerateDriveError, DomainError

CFG = LinearConfig(v_g=1.0, L=1.0, J=0.3)


def resonant(rabi, omega_e=0.9):
    return AtomConfig.resonant(omega_e, rabi)


def test_partner_wavevector():
    pair = dressed_pair(resonant(0.2))
    assert partner_wavevector_linear(1.1, pair, CFG) == pytest.approx(0.7, abs=1e-15)
    assert partner_wavevector_linear(0.4, pair, CFG) is None
    assert partner_wavevector_linear(0.3, pair, CFG) is None
    with pytest.raises(DomainError):
        partner_wavevector_linear(0.0, pair, CFG)


def test_undriven_partner_exists_but_no_transfer():
    atom = AtomConfig.from_detuning(0.9, 0.3, 0.0)
    q = partner_wavevector_linear(1.0, dressed_pair(atom), CFG)
    assert q == pytest.approx(0.7)
    res = scatter_linear(1.0, atom, CFG)
    assert res.transfer_open and res.flow_tr == 0.0


def test_resonance_values():
    res = scatter_linear(1.1, resonant(0.2), CFG)
    assert res.r_minus == pytest.approx(-0.5, abs=1e-15)
    assert res.t_minus == pytest.approx(0.5, abs=1e-15)
    assert res.flow_tr == pytest.approx(0.5, abs=1e-15)


def test_far_off_resonance_transmits():
    res = scatter_linear(2.0, resonant(0.2), CFG)
    assert res.flow_r == pytest.approx(0.002025 / 0.8181, rel=1e-12)
    assert res.flow_r == pytest.approx(0.002475, abs=5e-7)
    assert res.flow_t > 0.99


def test_below_threshold():
    res = scatter_linear(0.3, resonant(0.2), CFG)
    assert not res.transfer_open and res.status == "channel_closed"
    assert res.flow_tr == 0.0
    assert res.flow_r == pytest.approx(0.003154, abs=5e-7)
    assert res.flow_r + res.flow_t == pytest.approx(1.0, abs=1e-14)


def test_threshold_point_is_closed():
    res = scatter_linear(0.4, resonant(0.2), CFG)
    assert not res.transfer_open and res.flow_tr == 0.0


def test_just_above_threshold_flagged():
    res = scatter_linear(0.4 + 1e-8, resonant(0.2), CFG)
    assert res.transfer_open and res.status == "band_edge_guard"
    assert res.flow_sum == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("rabi", [0.05, 0.2, 1.0, 10.0])
def test_ceiling_independent_of_drive(rabi):
    # the resonance must sit above threshold: omega_e > eta
    atom = resonant(rabi, omega_e=rabi + 0.9)
    w, flow = peak_transfer(atom, CFG)
    assert w == pytest.approx(atom.omega_e + rabi)
    assert flow == pytest.approx(0.5, abs=1e-12)
    grid = np.linspace(max(2 * rabi, w - 2), w + 2, 4001)
    assert max(scatter_linear(x, atom, CFG).flow_tr for x in grid) <= 0.5 + 1e-12


@pytest.mark.parametrize("rabi", [1.0, 10.0])
def test_resonance_below_threshold_when_drive_exceeds_omega_e(rabi):
    atom = resonant(rabi)
    with pytest.raises(DomainError):
        peak_transfer(atom, CFG)
    res = scatter_linear(atom.omega_e + rabi, atom, CFG)
    assert res.flow_tr == 0.0
    # a closed-channel resonance reflects completely
    assert res.flow_r == pytest.approx(1.0, abs=1e-15)


def test_detuned_peak():
    atom = AtomConfig.from_detuning(0.9, 0.15, 0.1)
    w, flow = peak_transfer(atom, CFG)
    assert w == pytest.approx(0.95, abs=1e-15)
    assert flow == pytest.approx(0.32, abs=1e-12)
    grid = np.linspace(0.26, 2.0, 3481)
    flows = [scatter_linear(x, atom, CFG).flow_tr for x in grid]
    assert grid[int(np.argmax(flows))] == pytest.approx(0.95, abs=1e-9)


def test_peak_without_drive_is_zero():
    atom = AtomConfig.from_detuning(0.9, 0.3, 0.0)
    assert peak_transfer(atom, CFG)[1] == 0.0


def test_degenerate_and_domain_errors():
    with pytest.raises(DegenerateDriveError):
        scatter_linear(1.0, AtomConfig.from_detuning(0.9, 0.0, 0.0), CFG)
    with pytest.raises(DomainError):
        scatter_linear(0.0, resonant(0.2), CFG)
    with pytest.raises(ValueError):
        LinearConfig(v_g=0.0)
    with pytest.raises(ValueError):
        LinearConfig(L=-1.0)
    with pytest.raises(ValueError):
        LinearConfig(J=-0.1)


def test_no_total_reflection():
    atom = resonant(0.2)
    grid = np.linspace(1e-4, 3, 30001)
    assert max(scatter_linear(x, atom, CFG).flow_r for x in grid) < 1


@pytest.mark.parametrize("model_position", [0.0, 5.0, 17.0, -3.3])
def test_position_independence(model_position):
    atom = resonant(0.2)
    base = scatter_linear(1.3, atom, CFG)
    res = scatter_linear(1.3, atom, LinearConfig(atom_position=model_position))
    assert (res.flow_r, res.flow_t, res.flow_tr) == pytest.approx(
        (base.flow_r, base.flow_t, base.flow_tr), abs=1e-12
    )


def test_matches_crw_near_band_centre():
    # narrow resonance at the centre of a wide lattice band with a small splitting
    xi, J_crw, eta = 0.2, 0.05, 0.01
    atom = resonant(eta, omega_e=0.99)
    crw = CRWConfig(omega=1.0, xi=xi, J=J_crw)
    lin = LinearConfig(v_g=1.0, L=1.0, J=math.sqrt(J_crw**2 / (2 * xi)))
    gamma = J_crw**2 / (2 * xi)
    centre = atom.omega_e + eta
    for w in np.linspace(centre - 6 * gamma, centre + 6 * gamma, 61):
        a = scatter_crw_at(w, atom, crw)
        b = scatter_linear(w, atom, lin)
        assert abs(a.flow_r - b.flow_r) < 0.01
        assert abs(a.flow_tr - b.flow_tr) < 0.01


draws = st.fixed_dictionaries(
    {
        "omega_k": st.floats(1e-3, 5.0),
        "omega_e": st.floats(0.1, 3.0),
        "detuning": st.floats(-1.0, 1.0),
        "rabi": st.floats(1e-3, 1.0),
        "J": st.floats(0.0, 2.0),
        "v_g": st.floats(0.1, 5.0),
        "L": st.floats(0.1, 5.0),
        "a": st.floats(-50, 50),
    }
)


@given(draws)
@settings(max_examples=500)
def test_flow_conservation(p):
    atom = AtomConfig.from_detuning(p["omega_e"], p["detuning"], p["rabi"])
    cfg = LinearConfig(v_g=p["v_g"], L=p["L"], J=p["J"], atom_position=p["a"])
    res = scatter_linear(p["omega_k"], atom, cfg)
    assert abs(res.flow_sum - 1) < 1e-10
    # no total reflection while the positive channel opens below omega_e
    if dressed_pair(atom).nu_plus < atom.omega_e:
        assert res.flow_r < 1
    if not res.transfer_open:
        assert res.flow_tr == 0
