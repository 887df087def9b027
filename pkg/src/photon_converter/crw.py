"""Single-photon scattering in a coupled-resonator waveguide (CRW).

The waveguide is a tight-binding chain with cavity frequency ``omega``,
hopping ``xi`` and lattice constant 1, so the photon dispersion is
``omega_k = omega - 2 xi cos k`` with group velocity ``2 xi sin k``. The atom
sits in resonator ``a`` and couples to it with strength ``J``.

A photon enters in the negative channel (atom in |phi_->) with wavevector
``0 < k < pi``. Total energy is conserved, so a converted photon leaves in the
positive channel at ``omega_q = omega_k - (nu_+ - nu_-)``. When ``omega_q``
falls outside the cosine band the positive channel is closed and only
contributes an evanescent, real self-energy.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .dressed import AtomConfig, DressedPair, channel_splitting, dressed_pair
from .errors import BandEdgeError, DomainError, OutOfBandError, RootFindingError

__all__ = [
    "EDGE_GUARD",
    "BandConfiguration",
    "BandStructure",
    "Branch",
    "CRWConfig",
    "PartnerWavevector",
    "ScatteringResult",
    "band_structure",
    "bound_state_energies",
    "closed_channel_resonance",
    "dispersion",
    "group_velocity",
    "partner_wavevector",
    "scatter_crw",
    "scatter_crw_at",
    "self_energy",
    "wavevector_for_frequency",
]

#: Width of the excluded zone around band edges, in wavevector units.
EDGE_GUARD = 1e-6

#: Bisection settings for the bound-state / resonance searches.
ROOT_TOL = 1e-12
ROOT_MAX_STEPS = 200


@dataclass(frozen=True)
class CRWConfig:
    """Coupled-resonator waveguide with an atom in resonator ``atom_site``."""

    omega: float = 1.0
    xi: float = 0.2
    J: float = 0.3
    atom_site: int = 0

    def __post_init__(self):
        if not self.xi > 0:
            raise ValueError(f"hopping xi must be > 0, got {self.xi}")
        if not self.J >= 0:
            raise ValueError(f"coupling J must be >= 0, got {self.J}")
        if int(self.atom_site) != self.atom_site:
            raise ValueError(f"atom_site must be an integer, got {self.atom_site}")


class Branch(enum.Enum):
    PROPAGATING = "propagating"
    EVANESCENT_BELOW = "evanescent_below"
    EVANESCENT_ABOVE = "evanescent_above"


@dataclass(frozen=True)
class PartnerWavevector:
    """Positive-channel wavevector fixed by energy conservation.

    ``value`` is ``q`` in ``(0, pi)`` on the propagating branch and the decay
    constant ``kappa > 0`` on the two evanescent branches.
    """

    branch: Branch
    value: float

    @property
    def is_open(self) -> bool:
        return self.branch is Branch.PROPAGATING

    def sin(self) -> complex:
        """``sin q`` continued off the band (retarded branch).

        Below the band ``sin q -> i sinh kappa``, above it ``sin q -> -i sinh kappa``.
        """
        if self.branch is Branch.PROPAGATING:
            return complex(math.sin(self.value))
        sh = math.sinh(self.value)
        return 1j * sh if self.branch is Branch.EVANESCENT_BELOW else -1j * sh


@dataclass(frozen=True)
class ScatteringResult:
    """Amplitudes and flows for a photon incident in the negative channel.

    Flows are in units of the incident flow. ``status`` is ``"ok"``,
    ``"channel_closed"`` or ``"band_edge_guard"``; the latter marks results
    whose partner wavevector sits within :data:`EDGE_GUARD` of a band edge and
    were therefore evaluated in the edge limit.
    """

    omega_k: float
    k: float
    r_minus: complex
    t_minus: complex
    t_plus: complex
    flow_r: float
    flow_t: float
    flow_tr: float
    partner: PartnerWavevector | None
    transfer_open: bool
    status: str = "ok"

    @property
    def flow_sum(self) -> float:
        return self.flow_r + self.flow_t + self.flow_tr


class BandConfiguration(enum.Enum):
    PARTIAL_OVERLAP = "partial_overlap"
    SEPARATED = "separated"
    # bands coincide; only reachable as the eta, Delta -> 0 limit
    NESTED_DEGENERATE = "nested_degenerate"


@dataclass(frozen=True)
class BandStructure:
    """Single-excitation continua of the two channels, in total energy."""

    negative_band: tuple[float, float]
    positive_band: tuple[float, float]
    overlap: tuple[float, float] | None
    configuration: BandConfiguration


def dispersion(k, cfg: CRWConfig):
    """Photon frequency ``omega - 2 xi cos k`` for ``0 < k < pi``."""
    if not 0 < k < math.pi:
        raise DomainError(f"wavevector must lie in (0, pi), got {k}")
    return cfg.omega - 2 * cfg.xi * math.cos(k)


def group_velocity(k, cfg: CRWConfig):
    return 2 * cfg.xi * math.sin(k)


def wavevector_for_frequency(omega_k, cfg: CRWConfig):
    """Invert the cosine dispersion; band edges are excluded."""
    lo, hi = cfg.omega - 2 * cfg.xi, cfg.omega + 2 * cfg.xi
    if not lo < omega_k < hi:
        raise OutOfBandError(f"omega_k={omega_k} outside the open band ({lo}, {hi})")
    return math.acos(min(1.0, max(-1.0, (cfg.omega - omega_k) / (2 * cfg.xi))))


def _partner_from_frequency(omega_q, cfg: CRWConfig) -> PartnerWavevector:
    x = (cfg.omega - omega_q) / (2 * cfg.xi)
    if -1 < x < 1:
        return PartnerWavevector(Branch.PROPAGATING, math.acos(x))
    if x >= 1:
        return PartnerWavevector(Branch.EVANESCENT_BELOW, math.acosh(x))
    return PartnerWavevector(Branch.EVANESCENT_ABOVE, math.acosh(-x))


def partner_wavevector(k, pair: DressedPair, cfg: CRWConfig) -> PartnerWavevector:
    """Positive-channel partner of incident wavevector ``k``.

    Exactly at a band edge the evanescent branch is returned with ``kappa = 0``.
    """
    omega_q = dispersion(k, cfg) - channel_splitting(pair)
    return _partner_from_frequency(omega_q, cfg)


def _near_edge(partner: PartnerWavevector) -> bool:
    if partner.is_open:
        return partner.value < EDGE_GUARD or partner.value > math.pi - EDGE_GUARD
    return partner.value < EDGE_GUARD


def scatter_crw(k, atom: AtomConfig, cfg: CRWConfig) -> ScatteringResult:
    """Reflection, transmission and transfer for negative-channel incidence.

    Parameters
    ----------
    k : float
        Incident wavevector in ``(0, pi)``, away from the edges by more than
        :data:`EDGE_GUARD`.
    atom : AtomConfig
    cfg : CRWConfig

    Returns
    -------
    ScatteringResult

    Notes
    -----
    With ``c = cos(theta/2)``, ``s = sin(theta/2)`` and the total energy
    ``E = omega_k + nu_-``::

        r_-  = c^2 / (2i xi (dE/J^2 + i s^2 / (2 xi sin q)) sin k - c^2)
        t_+  = e^{i(|q|-k)a} c s / (2i xi (dE/J^2 + i c^2 / (2 xi sin k)) sin q - s^2)

    where ``dE = E - omega_e``. For a closed positive channel ``sin q`` is
    continued to ``+-i sinh kappa`` and ``t_+`` vanishes.
    """
    if not 0 < k < math.pi:
        raise DomainError(f"wavevector must lie in (0, pi), got {k}")
    if k < EDGE_GUARD or k > math.pi - EDGE_GUARD:
        raise BandEdgeError(f"k={k} within {EDGE_GUARD} of a band edge")
    pair = dressed_pair(atom)
    omega_k = dispersion(k, cfg)
    partner = partner_wavevector(k, pair, cfg)
    is_open = partner.is_open
    status = "ok" if is_open else "channel_closed"
    s, c = pair.sin_half, pair.cos_half
    s2, c2 = s * s, c * c
    sin_k = math.sin(k)
    xi, J = cfg.xi, cfg.J

    if J == 0:
        r = 0j
        t_plus = 0j
    elif _near_edge(partner) and s2 > 0:
        # the positive-channel self-energy diverges at its band edge: r -> 0, t_+ -> 0
        status = "band_edge_guard"
        r = 0j
        t_plus = 0j
    else:
        sin_q = partner.sin()
        # both closed forms multiplied through by J^2 so tiny couplings stay finite
        J2 = J * J
        d_e = omega_k + pair.nu_minus - atom.omega_e
        r = J2 * c2 / (2j * xi * (d_e + 1j * J2 * s2 / (2 * xi * sin_q)) * sin_k - J2 * c2)
        if is_open:
            q = partner.value
            phase = cmath.exp(1j * (abs(q) - k) * cfg.atom_site)
            t_plus = phase * J2 * c * s / (
                2j * xi * (d_e + 1j * J2 * c2 / (2 * xi * sin_k)) * sin_q.real - J2 * s2
            )
        else:
            t_plus = 0j

    t_minus = 1 + r
    flow_tr = 2 * abs(t_plus) ** 2 * math.sin(partner.value) / sin_k if is_open else 0.0
    return ScatteringResult(
        omega_k=omega_k,
        k=k,
        r_minus=r,
        t_minus=t_minus,
        t_plus=t_plus,
        flow_r=abs(r) ** 2,
        flow_t=abs(t_minus) ** 2,
        flow_tr=flow_tr,
        partner=partner,
        transfer_open=is_open,
        status=status,
    )


def scatter_crw_at(omega_k, atom: AtomConfig, cfg: CRWConfig) -> ScatteringResult:
    """:func:`scatter_crw` addressed by incident frequency instead of wavevector."""
    return scatter_crw(wavevector_for_frequency(omega_k, cfg), atom, cfg)


def band_structure(pair: DressedPair, cfg: CRWConfig) -> BandStructure:
    """Negative and positive continua and their overlap, in total energy."""
    w = 2 * cfg.xi
    neg = (cfg.omega + pair.nu_minus - w, cfg.omega + pair.nu_minus + w)
    pos = (cfg.omega + pair.nu_plus - w, cfg.omega + pair.nu_plus + w)
    split = channel_splitting(pair)
    if split >= 4 * cfg.xi:
        return BandStructure(neg, pos, None, BandConfiguration.SEPARATED)
    config = BandConfiguration.NESTED_DEGENERATE if split == 0 else BandConfiguration.PARTIAL_OVERLAP
    return BandStructure(neg, pos, (pos[0], neg[1]), config)


def _sinh_kappa(distance, xi):
    """``sinh kappa`` for a level ``distance >= 0`` outside a band of half-width ``2 xi``."""
    # cosh kappa = 1 + d; sinh = sqrt((cosh - 1)(cosh + 1)) keeps precision near the edge
    d = distance / (2 * xi)
    return math.sqrt(d * (d + 2))


def self_energy(E, centre, cfg: CRWConfig):
    """Real self-energy of one channel at total energy ``E`` outside its band.

    ``centre`` is the band centre ``omega + nu_n``. Below the band the shift is
    ``-J^2 / (2 xi sinh kappa)``, above it ``+J^2 / (2 xi sinh kappa)``.
    """
    offset = E - centre
    w = 2 * cfg.xi
    if abs(offset) <= w:
        raise DomainError(f"E={E} lies inside the band centred at {centre}")
    sh = _sinh_kappa(abs(offset) - w, cfg.xi)
    return math.copysign(cfg.J**2 / (2 * cfg.xi * sh), offset)


def _bisect(f, lo, hi, tol):
    flo = f(lo)
    for _ in range(ROOT_MAX_STEPS):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        fmid = f(mid)
        if fmid == 0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    if hi - lo <= tol:
        return 0.5 * (lo + hi)
    raise RootFindingError(f"bisection stalled on [{lo}, {hi}] after {ROOT_MAX_STEPS} steps")


def _edge_offset(cfg: CRWConfig):
    # far enough inside the evanescent side that sinh(kappa) > 0 in floating point
    return 1e-14 * max(1.0, abs(cfg.omega) + 4 * cfg.xi)


def closed_channel_resonance(atom: AtomConfig, cfg: CRWConfig):
    """Incident frequency of complete reflection, or ``None``.

    Inside the negative band but below the positive band, the positive
    channel supports an evanescent (bound) state. Where its energy equals the
    total energy, ``r_- = -1``. The root of

        E - omega_e + sin^2(theta/2) J^2 / (2 xi sinh kappa(E)) = 0

    is located by bisection and returned as ``omega_k = E - nu_-``.

    Raises
    ------
    DomainError
        If the bands do not partially overlap.
    """
    pair = dressed_pair(atom)
    bands = band_structure(pair, cfg)
    if bands.configuration is not BandConfiguration.PARTIAL_OVERLAP:
        raise DomainError(f"requires partially overlapping bands, got {bands.configuration.value}")
    if cfg.J == 0:
        return None
    s2 = pair.sin_half**2
    pos_centre = cfg.omega + pair.nu_plus

    def residual(E):
        return E - atom.omega_e - s2 * self_energy(E, pos_centre, cfg)

    eps = _edge_offset(cfg)
    lo = bands.negative_band[0] + eps
    hi = min(bands.negative_band[1], bands.positive_band[0]) - eps
    if not lo < hi or residual(lo) * residual(hi) > 0:
        return None
    E = _bisect(residual, lo, hi, ROOT_TOL * cfg.xi)
    return E - pair.nu_minus


def _bound_residual(pair: DressedPair, atom: AtomConfig, cfg: CRWConfig):
    s2, c2 = pair.sin_half**2, pair.cos_half**2
    centres = (cfg.omega + pair.nu_plus, cfg.omega + pair.nu_minus)

    def residual(E):
        total = 0.0
        for weight, centre in zip((s2, c2), centres):
            if weight:
                total += weight * self_energy(E, centre, cfg)
        return E - atom.omega_e - total

    return residual


def bound_state_energies(atom: AtomConfig, cfg: CRWConfig) -> list[float]:
    """Total energies of photon-atom bound states lying outside both bands.

    Solves ``E - omega_e = s^2 Sigma_+(E) + c^2 Sigma_-(E)`` on every interval
    of the real axis not covered by a band (below, above and, for separated
    bands, in the gap). The residual is monotone on each interval, so each
    holds at most one root.

    Raises
    ------
    RootFindingError
        If bisection does not reach ``1e-12 xi`` within 200 steps.
    """
    if not cfg.J > 0:
        raise DomainError("bound states need J > 0")
    pair = dressed_pair(atom)
    bands = band_structure(pair, cfg)
    residual = _bound_residual(pair, atom, cfg)
    eps = _edge_offset(cfg)
    tol = ROOT_TOL * cfg.xi
    lo_edge = min(bands.negative_band[0], bands.positive_band[0])
    hi_edge = max(bands.negative_band[1], bands.positive_band[1])

    intervals = []
    # semi-infinite intervals: widen outward until the residual changes sign
    span = max(4 * cfg.xi, abs(atom.omega_e - lo_edge), abs(atom.omega_e - hi_edge)) + cfg.J
    intervals.append((lo_edge - 2 * span - 1.0, lo_edge - eps))
    intervals.append((hi_edge + eps, hi_edge + 2 * span + 1.0))
    if bands.overlap is None:
        intervals.append((bands.negative_band[1] + eps, bands.positive_band[0] - eps))

    roots = []
    for lo, hi in intervals:
        if not lo < hi:
            continue
        flo, fhi = residual(lo), residual(hi)
        if flo == 0:
            roots.append(lo)
        elif fhi == 0:
            roots.append(hi)
        elif flo * fhi < 0:
            roots.append(_bisect(residual, lo, hi, tol))
    return sorted(roots)
