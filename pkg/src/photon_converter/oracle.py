"""Brute-force check of the closed-form amplitudes on a finite resonator chain.

The single-excitation sector of the driven atom + CRW is a (2N+1)-dimensional
Hermitian matrix in the dressed basis::

    [ |1,phi_->, ..., |N,phi_->, |1,phi_+>, ..., |N,phi_+>, |vac,e> ]

A Gaussian wavepacket is launched in the negative channel, evolved with a
Chebyshev propagator, and the scattered probability is read off by channel and
side of the atom. Nothing here uses the analytic amplitudes.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp
from scipy.special import jv

from .crw import EDGE_GUARD, CRWConfig, ScatteringResult, band_structure, dispersion
from .dressed import AtomConfig, Channel, DressedPair, dressed_pair
from .errors import (
    BandEdgeError,
    ParameterMismatchError,
    PrematureMeasurementError,
    PropagationError,
)

__all__ = [
    "FlowComparison",
    "LatticeModel",
    "OracleFlows",
    "WavepacketSpec",
    "build_lattice",
    "compare_flows",
    "dump_state",
    "flow_convergence",
    "initial_state",
    "load_state",
    "measure_flows",
    "oracle_bound_states",
    "propagate",
]

MIN_SITES = 200
NORM_BUDGET = 1e-8
RESIDUAL_LIMIT = 1e-4
# half-width of a packet, in units of sigma_x
PACKET_HALF_WIDTH = 5.0


@dataclass(frozen=True)
class LatticeModel:
    """Single-excitation Hamiltonian of the driven atom on an ``N``-site chain.

    Sites are labelled ``1..N``; the atom sits in resonator ``atom_site``.
    """

    N: int
    atom_site: int
    atom: AtomConfig
    cfg: CRWConfig
    pair: DressedPair
    matrix: sp.csr_matrix = field(repr=False)

    @property
    def dim(self) -> int:
        return 2 * self.N + 1

    @property
    def atom_index(self) -> int:
        return 2 * self.N

    def channel_slice(self, channel: Channel) -> slice:
        if channel is Channel.NEGATIVE:
            return slice(0, self.N)
        return slice(self.N, 2 * self.N)

    def site_index(self, site, channel: Channel) -> int:
        return self.channel_slice(channel).start + site - 1


def build_lattice(atom: AtomConfig, cfg: CRWConfig, N: int, atom_site=None) -> LatticeModel:
    """Assemble the sparse single-excitation Hamiltonian with hard-wall ends.

    Both photon channels hop with ``-xi``; channel ``n`` carries on-site energy
    ``omega + nu_n``. The excited state ``omega_e`` couples to site ``a`` of the
    positive channel with ``J sin(theta/2)`` and of the negative channel with
    ``-J cos(theta/2)``.
    """
    N = int(N)
    if N < MIN_SITES:
        raise ValueError(f"need at least {MIN_SITES} sites, got {N}")
    a = math.ceil(N / 2) if atom_site is None else int(atom_site)
    if not 1 <= a <= N:
        raise ValueError(f"atom site {a} outside 1..{N}")
    pair = dressed_pair(atom)
    dim = 2 * N + 1

    diag = np.empty(dim)
    diag[:N] = cfg.omega + pair.nu_minus
    diag[N:2 * N] = cfg.omega + pair.nu_plus
    diag[2 * N] = atom.omega_e

    hop = np.full(N - 1, -cfg.xi)
    rows = [np.arange(N - 1), np.arange(N, 2 * N - 1)]
    cols = [r + 1 for r in rows]
    vals = [hop, hop]
    atom_idx = 2 * N
    coupling_rows = np.array([a - 1, N + a - 1])
    coupling_vals = np.array([-cfg.J * pair.cos_half, cfg.J * pair.sin_half])
    rows.append(coupling_rows)
    cols.append(np.full(2, atom_idx))
    vals.append(coupling_vals)

    r = np.concatenate(rows)
    c = np.concatenate(cols)
    v = np.concatenate(vals)
    upper = sp.coo_matrix((v, (r, c)), shape=(dim, dim))
    H = (upper + upper.T + sp.diags(diag)).tocsr()
    return LatticeModel(N=N, atom_site=a, atom=atom, cfg=cfg, pair=pair, matrix=H)


@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian packet launched towards the atom.

    ``|psi(x)|^2`` has standard deviation ``sigma_x`` sites. ``x0`` defaults to
    ``7.5 sigma_x`` left of the atom. ``t_final`` defaults to the time at which
    the packet centre has passed the atom by ``clearance`` packet widths.
    ``dt`` is the Chebyshev step; ``None`` picks one from the spectral width.
    """

    k0: float
    sigma_x: float = 40.0
    x0: float | None = None
    channel: Channel = Channel.NEGATIVE
    t_final: float | None = None
    dt: float | None = None
    clearance: float = PACKET_HALF_WIDTH

    def centre(self, model: LatticeModel) -> float:
        if self.x0 is not None:
            return self.x0
        return model.atom_site - 7.5 * self.sigma_x

    def velocity(self, model: LatticeModel) -> float:
        return 2 * model.cfg.xi * math.sin(self.k0)

    def final_time(self, model: LatticeModel) -> float:
        if self.t_final is not None:
            return self.t_final
        travel = model.atom_site - self.centre(model) + self.clearance * self.sigma_x
        return travel / self.velocity(model)

    def validate(self, model: LatticeModel):
        """Check that the packet starts left of the atom and never reaches a wall."""
        if not EDGE_GUARD < self.k0 < math.pi - EDGE_GUARD:
            raise BandEdgeError(f"carrier k0={self.k0} too close to a band edge")
        if self.channel is not Channel.NEGATIVE:
            raise ValueError("only negative-channel incidence is supported")
        x0 = self.centre(model)
        half = PACKET_HALF_WIDTH * self.sigma_x
        if x0 - half < 1 or x0 + half >= model.atom_site:
            raise ValueError(
                f"packet support [{x0 - half}, {x0 + half}] must lie in [1, {model.atom_site})"
            )
        v = self.velocity(model)
        t_hit = (model.atom_site - x0) / v
        # all outgoing packets share the incident duration sigma_x / v, so their
        # spatial extent scales with their own speed
        v_out = max(v, _partner_velocity(model, self.k0))
        reach = v_out * (max(self.final_time(model) - t_hit, 0.0) + half / v)
        if model.atom_site - reach < 1 or model.atom_site + reach > model.N:
            raise ValueError(
                f"scattered packets reach the chain ends by t={self.final_time(model):.1f}; "
                "increase N or shorten t_final"
            )


def _partner_velocity(model: LatticeModel, k0) -> float:
    """Group velocity of the converted photon, or 0 when that channel is closed."""
    cfg = model.cfg
    omega_q = dispersion(k0, cfg) - (model.pair.nu_plus - model.pair.nu_minus)
    x = (cfg.omega - omega_q) / (2 * cfg.xi)
    return 2 * cfg.xi * math.sqrt(1 - x * x) if abs(x) < 1 else 0.0


@dataclass(frozen=True)
class OracleFlows:
    """Probabilities read off a scattered wavepacket."""

    p_reflect: float
    p_transmit: float
    p_transfer: float
    p_atom_residual: float
    p_leak: float

    @property
    def total(self) -> float:
        return self.p_reflect + self.p_transmit + self.p_transfer + self.p_atom_residual + self.p_leak


def initial_state(model: LatticeModel, spec: WavepacketSpec) -> np.ndarray:
    x = np.arange(1, model.N + 1, dtype=float)
    x0 = spec.centre(model)
    amp = np.exp(-((x - x0) ** 2) / (4 * spec.sigma_x**2) + 1j * spec.k0 * x)
    psi = np.zeros(model.dim, dtype=complex)
    psi[model.channel_slice(spec.channel)] = amp
    return psi / np.linalg.norm(psi)


def _spectral_bounds(H):
    # Gershgorin discs
    H = sp.csr_matrix(H)
    d = H.diagonal()
    radius = np.asarray(abs(H).sum(axis=1)).ravel() - np.abs(d)
    return float((d - radius).min()), float((d + radius).max())


def _chebyshev_step(H_scaled, psi, tau, tol):
    """Apply ``exp(-i tau H_scaled)`` for a matrix with spectrum in [-1, 1]."""
    n_max = int(tau + 10 * tau ** (1 / 3) + 40)
    coeffs = jv(np.arange(n_max + 1), tau)
    above = np.nonzero(np.abs(coeffs) > tol)[0]
    order = int(above[-1]) + 1 if above.size else 1
    phi_prev = psi
    result = coeffs[0] * psi
    if order == 1:
        return result
    phi = H_scaled @ psi
    result = result + 2 * (-1j) * coeffs[1] * phi
    phase = -1j
    for n in range(2, order):
        phi_prev, phi = phi, 2 * (H_scaled @ phi) - phi_prev
        phase *= -1j
        result = result + 2 * phase * coeffs[n] * phi
    return result


def propagate(model: LatticeModel, spec: WavepacketSpec, tol=1e-15, norm_budget=NORM_BUDGET):
    """Evolve the launched packet to ``spec.t_final``.

    Uses a Chebyshev expansion of ``exp(-i H dt)`` on each step, truncated
    where the Bessel coefficients fall below ``tol``.

    Raises
    ------
    PropagationError
        If the final norm deviates from 1 by more than ``norm_budget``.
    """
    spec.validate(model)
    psi = initial_state(model, spec)
    e_min, e_max = _spectral_bounds(model.matrix)
    centre = 0.5 * (e_max + e_min)
    half = 0.5 * (e_max - e_min) * (1 + 1e-9)
    H_scaled = (model.matrix - centre * sp.identity(model.dim, format="csr")) / half
    t_final = spec.final_time(model)
    dt = spec.dt if spec.dt is not None else 100.0 / half
    n_steps = max(1, math.ceil(t_final / dt))
    dt = t_final / n_steps
    phase = np.exp(-1j * centre * dt)
    for _ in range(n_steps):
        psi = phase * _chebyshev_step(H_scaled, psi, half * dt, tol)
    err = abs(np.linalg.norm(psi) - 1)
    if err > norm_budget:
        raise PropagationError("norm not conserved", err)
    return psi


def measure_flows(model: LatticeModel, state, spec: WavepacketSpec) -> OracleFlows:
    """Split the scattered probability by channel and side of the atom.

    Sites within ``5 sigma_x`` of either chain end form guard zones and are
    reported as leakage. The atom's own resonator is counted as transmitted.

    Raises
    ------
    PrematureMeasurementError
        If more than ``1e-4`` of the probability is still on the atom.
    """
    prob = np.abs(np.asarray(state)) ** 2
    p_atom = float(prob[model.atom_index])
    if p_atom >= RESIDUAL_LIMIT:
        raise PrematureMeasurementError(f"atom still excited with probability {p_atom:.2e}")
    neg = prob[model.channel_slice(Channel.NEGATIVE)]
    pos = prob[model.channel_slice(Channel.POSITIVE)]
    sites = np.arange(1, model.N + 1)
    guard = math.ceil(PACKET_HALF_WIDTH * spec.sigma_x)
    inside = (sites > guard) & (sites <= model.N - guard)
    left = inside & (sites < model.atom_site)
    right = inside & (sites >= model.atom_site)
    return OracleFlows(
        p_reflect=float(neg[left].sum()),
        p_transmit=float(neg[right].sum()),
        p_transfer=float(pos[inside].sum()),
        p_atom_residual=p_atom,
        p_leak=float(neg[~inside].sum() + pos[~inside].sum()),
    )


def flow_convergence(model: LatticeModel, spec: WavepacketSpec, dt=None):
    """Largest flow change when the propagator step is halved.

    Returns the pair ``(coarse_flows, max_abs_change)``.
    """
    if dt is None:
        e_min, e_max = _spectral_bounds(model.matrix)
        dt = 200.0 / (e_max - e_min)
    coarse_spec = replace(spec, dt=dt)
    fine_spec = replace(spec, dt=dt / 2)
    coarse = measure_flows(model, propagate(model, coarse_spec), coarse_spec)
    fine = measure_flows(model, propagate(model, fine_spec), fine_spec)
    change = max(
        abs(coarse.p_reflect - fine.p_reflect),
        abs(coarse.p_transmit - fine.p_transmit),
        abs(coarse.p_transfer - fine.p_transfer),
    )
    return coarse, change


def oracle_bound_states(model: LatticeModel) -> list[float]:
    """Eigenvalues of the finite chain lying outside both bands.

    A margin of ``10 xi / N^2`` keeps the band-edge standing waves out. For an
    uncoupled atom (``J = 0``) the bare level ``omega_e`` is a trivial
    eigenvalue and is not reported.
    """
    try:
        evals = np.linalg.eigvalsh(model.matrix.toarray())
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver failed: {exc}") from exc
    bands = band_structure(model.pair, model.cfg)
    margin = 10 * model.cfg.xi / model.N**2
    outside = np.ones(evals.shape, dtype=bool)
    for lo, hi in (bands.negative_band, bands.positive_band):
        outside &= (evals < lo - margin) | (evals > hi + margin)
    found = evals[outside]
    if model.cfg.J == 0:
        found = found[np.abs(found - model.atom.omega_e) > 1e-12]
    return sorted(float(e) for e in found)


@dataclass(frozen=True)
class FlowComparison:
    deviations: dict
    tolerance: float
    passed: bool
    analytic: dict
    oracle: dict


def compare_flows(
    analytic: ScatteringResult,
    oracle: OracleFlows,
    spec: WavepacketSpec,
    flow_slope=0.0,
    velocity=None,
    c=2.0,
) -> FlowComparison:
    """Compare wavepacket probabilities with closed-form flows.

    The tolerance is ``max(0.02, c * sigma_k * |d flow / d omega| * v_g)`` with
    ``sigma_k = 1 / (2 sigma_x)`` the packet's wavevector spread;
    ``flow_slope`` is the largest of the three flow slopes near ``omega_k``.
    """
    if not EDGE_GUARD < spec.k0 < math.pi - EDGE_GUARD or analytic.status == "band_edge_guard":
        raise BandEdgeError(f"k0={spec.k0} lies in the band-edge guard zone")
    if abs(analytic.k - spec.k0) > 1e-12:
        raise ParameterMismatchError(
            f"packet carrier k0={spec.k0} differs from analytic k={analytic.k}"
        )
    if velocity is None:
        velocity = 0.0
    sigma_k = 1 / (2 * spec.sigma_x)
    tol = max(0.02, c * sigma_k * abs(flow_slope) * velocity)
    deviations = {
        "flow_r": abs(oracle.p_reflect - analytic.flow_r),
        "flow_t": abs(oracle.p_transmit - analytic.flow_t),
        "flow_tr": abs(oracle.p_transfer - analytic.flow_tr),
    }
    return FlowComparison(
        deviations=deviations,
        tolerance=tol,
        passed=all(d < tol for d in deviations.values()),
        analytic={"flow_r": analytic.flow_r, "flow_t": analytic.flow_t, "flow_tr": analytic.flow_tr},
        oracle={
            "p_reflect": oracle.p_reflect,
            "p_transmit": oracle.p_transmit,
            "p_transfer": oracle.p_transfer,
            "p_atom_residual": oracle.p_atom_residual,
            "p_leak": oracle.p_leak,
        },
    )


def dump_state(path, model: LatticeModel, state):
    """Write amplitudes as CSV with columns ``site,channel,re,im``.

    ``channel`` is ``negative``, ``positive`` or ``atom``; the atom row carries
    the atom's resonator index as its site.
    """
    state = np.asarray(state)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["site", "channel", "re", "im"])
        for channel in (Channel.NEGATIVE, Channel.POSITIVE):
            block = state[model.channel_slice(channel)]
            for site, amp in enumerate(block, start=1):
                writer.writerow([site, channel.value, repr(float(amp.real)), repr(float(amp.imag))])
        amp = state[model.atom_index]
        writer.writerow([model.atom_site, "atom", repr(float(amp.real)), repr(float(amp.imag))])


def load_state(path, model: LatticeModel) -> np.ndarray:
    state = np.zeros(model.dim, dtype=complex)
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            amp = complex(float(row["re"]), float(row["im"]))
            if row["channel"] == "atom":
                state[model.atom_index] = amp
            else:
                state[model.site_index(int(row["site"]), Channel(row["channel"]))] = amp
    return state

