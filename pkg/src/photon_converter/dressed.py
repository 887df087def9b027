"""Driven V-type atom and its dressed ground doublet.

The classical field couples |g> and |f>. In the frame rotating at the drive
frequency the {|g>, |f>} block reads ``[[0, eta], [eta, Delta]]`` with
``Delta = omega_f - nu``. Its eigenvectors are the dressed states

    |phi_+> =  sin(theta/2) |g> + cos(theta/2) |f>
    |phi_-> = -cos(theta/2) |g> + sin(theta/2) |f>

with ``tan(theta) = 2 eta / Delta``. Each dressed state labels one scattering
channel of the waveguide photon.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDriveError

__all__ = [
    "AtomConfig",
    "Channel",
    "DressedPair",
    "channel_splitting",
    "dressed_pair",
]


class Channel(enum.Enum):
    """Which dressed ground state the atom occupies."""

    NEGATIVE = "negative"
    POSITIVE = "positive"


@dataclass(frozen=True)
class AtomConfig:
    """Bare parameters of the V-type atom and its drive (hbar = 1, omega_g = 0).

    Parameters
    ----------
    omega_e : float
        Energy of the excited state |e>, coupled to the waveguide.
    omega_f : float
        Energy of the intermediate state |f>, driven classically.
    drive_frequency : float
        Frequency ``nu`` of the classical field.
    rabi : float
        Rabi frequency ``eta >= 0``.
    """

    omega_e: float
    omega_f: float
    drive_frequency: float
    rabi: float

    def __post_init__(self):
        if not self.rabi >= 0:
            raise ValueError(f"rabi frequency must be >= 0, got {self.rabi}")
        if self.rabi == 0 and self.detuning == 0:
            raise DegenerateDriveError(
                "rabi = 0 with zero detuning leaves the dressed basis undefined"
            )

    @property
    def detuning(self) -> float:
        """Drive detuning ``omega_f - nu``."""
        return self.omega_f - self.drive_frequency

    @classmethod
    def resonant(cls, omega_e, rabi, omega_f=0.6):
        """Atom driven exactly on the g-f transition (zero detuning)."""
        return cls(omega_e=omega_e, omega_f=omega_f, drive_frequency=omega_f, rabi=rabi)

    @classmethod
    def from_detuning(cls, omega_e, detuning, rabi, omega_f=0.6):
        return cls(
            omega_e=omega_e,
            omega_f=omega_f,
            drive_frequency=omega_f - detuning,
            rabi=rabi,
        )


@dataclass(frozen=True)
class DressedPair:
    """Dressed ground doublet of a driven atom.

    ``coeffs`` holds the dressed states as rows in the {|g>, |f>} basis:
    row 0 is |phi_+>, row 1 is |phi_->.
    """

    theta: float
    nu_plus: float
    nu_minus: float
    coeffs: np.ndarray

    @property
    def sin_half(self) -> float:
        return math.sin(self.theta / 2)

    @property
    def cos_half(self) -> float:
        return math.cos(self.theta / 2)

    def energy(self, channel: Channel) -> float:
        return self.nu_plus if channel is Channel.POSITIVE else self.nu_minus


def dressed_pair(atom: AtomConfig) -> DressedPair:
    """Diagonalise the driven {|g>, |f>} block.

    The mixing angle is ``theta = atan2(2 eta, Delta)``, which lies in
    ``[0, pi]`` and makes |phi_+> follow the upper dressed level continuously.
    The value ``pi`` is only reached in the undriven limit with ``Delta < 0``.

    Examples
    --------
    >>> pair = dressed_pair(AtomConfig.from_detuning(0.9, detuning=0.15, rabi=0.1))
    >>> round(pair.nu_plus, 12), round(pair.nu_minus, 12)
    (0.2, -0.05)
    """
    eta = float(atom.rabi)
    delta = float(atom.detuning)
    if eta == 0 and delta == 0:
        raise DegenerateDriveError("rabi = 0 and detuning = 0")
    root = math.hypot(delta, 2 * eta)
    # pick the non-cancelling root first, recover the other from nu_+ nu_- = -eta^2
    if delta >= 0:
        nu_plus = 0.5 * (delta + root)
        nu_minus = -eta * eta / nu_plus
    else:
        nu_minus = 0.5 * (delta - root)
        nu_plus = -eta * eta / nu_minus
    theta = math.atan2(2 * eta, delta)
    s, c = math.sin(theta / 2), math.cos(theta / 2)
    coeffs = np.array([[s, c], [-c, s]])
    coeffs.setflags(write=False)
    return DressedPair(theta=theta, nu_plus=nu_plus, nu_minus=nu_minus, coeffs=coeffs)


def channel_splitting(pair: DressedPair) -> float:
    """Frequency shift ``nu_+ - nu_-`` carried off by a converted photon."""
    return pair.nu_plus - pair.nu_minus
