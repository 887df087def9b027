"""Single-photon scattering in an optical waveguide with linear dispersion.

Photons obey ``omega_k = v_g |k|`` in both channels, so the channels only differ
by their lower bound: ``nu_-`` and ``nu_+`` in total energy. A photon incident
in the negative channel can convert once ``omega_k`` exceeds the splitting
``nu_+ - nu_-``. Both channels share the same group velocity, so the transfer
flow is simply ``2 |t_+|^2``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .crw import EDGE_GUARD, Branch, PartnerWavevector, ScatteringResult
from .dressed import AtomConfig, DressedPair, channel_splitting, dressed_pair
from .errors import DomainError

__all__ = [
    "LinearConfig",
    "partner_wavevector_linear",
    "peak_transfer",
    "scatter_linear",
]


@dataclass(frozen=True)
class LinearConfig:
    """Optical waveguide of length ``L`` with an atom at ``atom_position``."""

    v_g: float = 1.0
    L: float = 1.0
    J: float = 0.3
    atom_position: float = 0.0

    def __post_init__(self):
        if not self.v_g > 0:
            raise ValueError(f"group velocity must be > 0, got {self.v_g}")
        if not self.L > 0:
            raise ValueError(f"waveguide length must be > 0, got {self.L}")
        if not self.J >= 0:
            raise ValueError(f"coupling J must be >= 0, got {self.J}")


def partner_wavevector_linear(k, pair: DressedPair, cfg: LinearConfig):
    """``|q| = k - (nu_+ - nu_-) / v_g``, or ``None`` when the positive channel is closed.

    The threshold ``v_g k = nu_+ - nu_-`` itself counts as closed.
    """
    if not k > 0:
        raise DomainError(f"wavevector must be > 0, got {k}")
    q = k - channel_splitting(pair) / cfg.v_g
    return q if q > 0 else None


def scatter_linear(omega_k, atom: AtomConfig, cfg: LinearConfig) -> ScatteringResult:
    """Reflection, transmission and transfer for negative-channel incidence.

    With ``D = i v_g (E - omega_e) / L - J^2`` and ``E = omega_k + nu_-``::

        r_- = J^2 c^2 / D
        t_+ = J^2 e^{i(|q|-k)a} c s / D

    Below threshold the positive channel contributes no decay, so the
    denominator becomes ``i v_g (E - omega_e) / L - J^2 c^2`` and ``t_+ = 0``.
    """
    if not omega_k > 0:
        raise DomainError(f"incident frequency must be > 0, got {omega_k}")
    pair = dressed_pair(atom)
    k = omega_k / cfg.v_g
    q = partner_wavevector_linear(k, pair, cfg)
    s, c = pair.sin_half, pair.cos_half
    J2 = cfg.J**2
    detuning = cfg.v_g * (omega_k + pair.nu_minus - atom.omega_e) / cfg.L

    if q is None:
        r = 0j if J2 == 0 else J2 * c * c / (1j * detuning - J2 * c * c)
        t_plus = 0j
        partner = None
        status = "channel_closed"
    else:
        denom = 1j * detuning - J2
        r = 0j if J2 == 0 else J2 * c * c / denom
        phase = cmath.exp(1j * (q - k) * cfg.atom_position)
        t_plus = 0j if J2 == 0 else J2 * phase * c * s / denom
        partner = PartnerWavevector(Branch.PROPAGATING, q)
        status = "band_edge_guard" if q < EDGE_GUARD else "ok"

    t_minus = 1 + r
    return ScatteringResult(
        omega_k=omega_k,
        k=k,
        r_minus=r,
        t_minus=t_minus,
        t_plus=t_plus,
        flow_r=abs(r) ** 2,
        flow_t=abs(t_minus) ** 2,
        flow_tr=2 * abs(t_plus) ** 2,
        partner=partner,
        transfer_open=q is not None,
        status=status,
    )


def peak_transfer(atom: AtomConfig, cfg: LinearConfig):
    """Resonant incident frequency ``omega_e - nu_-`` and the transfer flow there.

    Returns
    -------
    omega_peak : float
    flow_tr : float
        ``sin(theta)^2 / 2``; equals 0.5 for a resonant drive.

    Raises
    ------
    DomainError
        If the resonance lies at or below the conversion threshold.
    """
    pair = dressed_pair(atom)
    omega_peak = atom.omega_e - pair.nu_minus
    if not omega_peak > channel_splitting(pair):
        raise DomainError(
            f"resonance omega_k={omega_peak} is not above the conversion threshold "
            f"{channel_splitting(pair)}"
        )
    return omega_peak, scatter_linear(omega_peak, atom, cfg).flow_tr
