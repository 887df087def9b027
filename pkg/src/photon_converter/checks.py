"""Oracle comparison runs and bound-state reports for the CRW model."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

from .crw import band_structure, bound_state_energies, closed_channel_resonance, scatter_crw_at
from .dressed import dressed_pair
from .errors import ConfigError, DomainError, ParameterMismatchError
from .oracle import (
    WavepacketSpec,
    build_lattice,
    compare_flows,
    measure_flows,
    oracle_bound_states,
    propagate,
)
from .sweep import build_configs, parse_params

__all__ = ["DEFAULT_FREQUENCIES", "DEFAULT_PACKET", "bound_state_report", "run_oracle_check"]

#: Incident frequencies spread across the band overlap of the default parameters.
DEFAULT_FREQUENCIES = (0.9, 1.0, 1.1, 1.2, 1.3)
DEFAULT_PACKET = {"N": 1200, "sigma_x": 40.0, "x0": None, "k0": None, "dt": None}

EXIT_OK = 0
EXIT_ORACLE_FAILED = 3


def _flow_slope(omega_k, atom, cfg):
    """Largest ``|d flow / d omega|`` of the three flows, by central differences."""
    h = 1e-5 * cfg.xi
    lo = scatter_crw_at(omega_k - h, atom, cfg)
    hi = scatter_crw_at(omega_k + h, atom, cfg)
    return max(
        abs(hi.flow_r - lo.flow_r),
        abs(hi.flow_t - lo.flow_t),
        abs(hi.flow_tr - lo.flow_tr),
    ) / (2 * h)


def _packet_options(packet, n_freq):
    opts = dict(DEFAULT_PACKET)
    for key, value in (packet or {}).items():
        if key not in opts:
            raise ConfigError(f"packet.{key}: unknown option; choose from {sorted(opts)}")
        opts[key] = value
    k0 = opts["k0"]
    if k0 is not None and not isinstance(k0, list):
        k0 = [k0] * n_freq
    if k0 is not None and len(k0) != n_freq:
        raise ConfigError(f"packet.k0: expected {n_freq} values, got {len(k0)}")
    opts["k0"] = k0
    return opts


def run_oracle_check(params=None, frequencies=DEFAULT_FREQUENCIES, packet=None, threads=1):
    """Compare wavepacket probabilities with the closed-form CRW flows.

    Parameters
    ----------
    params : dict, optional
        CRW parameters overriding the defaults (see :data:`sweep.DEFAULTS`).
    frequencies : sequence of float
        Incident frequencies to test.
    packet : dict, optional
        Overrides for ``N``, ``sigma_x``, ``x0``, ``dt`` and ``k0``. A ``k0``
        override that disagrees with the incident frequency is rejected.
    threads : int
        Number of oracle runs executed concurrently.

    Returns
    -------
    report : dict
        JSON-serialisable comparison report.
    status : int
        0 when every comparison passed, 3 otherwise.
    """
    params = parse_params("crw", params)
    atom, cfg = build_configs("crw", params)
    frequencies = [float(w) for w in frequencies]
    if not frequencies:
        raise ConfigError("omega_k: need at least one frequency")
    opts = _packet_options(packet, len(frequencies))
    model = build_lattice(atom, cfg, opts["N"])

    def one(i):
        omega_k = frequencies[i]
        analytic = scatter_crw_at(omega_k, atom, cfg)
        k0 = analytic.k if opts["k0"] is None else float(opts["k0"][i])
        spec = WavepacketSpec(k0=k0, sigma_x=opts["sigma_x"], x0=opts["x0"], dt=opts["dt"])
        if abs(k0 - analytic.k) > 1e-12:
            raise ParameterMismatchError(
                f"omega_k={omega_k}: packet k0={k0} differs from analytic k={analytic.k}"
            )
        oracle = measure_flows(model, propagate(model, spec), spec)
        comparison = compare_flows(
            analytic,
            oracle,
            spec,
            flow_slope=_flow_slope(omega_k, atom, cfg),
            velocity=2 * cfg.xi * math.sin(k0),
        )
        return {
            "omega_k": omega_k,
            "k0": k0,
            "analytic": comparison.analytic,
            "oracle": comparison.oracle,
            "deviations": comparison.deviations,
            "tolerance": comparison.tolerance,
            "passed": comparison.passed,
        }

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(len(frequencies))))
    else:
        results = [one(i) for i in range(len(frequencies))]

    passed = all(r["passed"] for r in results)
    report = {
        "model": "crw",
        "params": params,
        "packet": {"N": opts["N"], "sigma_x": opts["sigma_x"], "x0": opts["x0"], "dt": opts["dt"]},
        "results": results,
        "max_deviation": max(max(r["deviations"].values()) for r in results),
        "passed": passed,
    }
    return report, EXIT_OK if passed else EXIT_ORACLE_FAILED


def bound_state_report(params=None, oracle_N=None):
    """Bands, bound-state energies and the complete-reflection frequency.

    With ``oracle_N`` set, finite-chain eigenvalues outside the bands are
    listed alongside for comparison.
    """
    params = parse_params("crw", params)
    atom, cfg = build_configs("crw", params)
    bands = band_structure(dressed_pair(atom), cfg)
    try:
        resonance = closed_channel_resonance(atom, cfg)
    except DomainError:
        resonance = None
    report = {
        "model": "crw",
        "params": params,
        "negative_band": list(bands.negative_band),
        "positive_band": list(bands.positive_band),
        "overlap": list(bands.overlap) if bands.overlap else None,
        "configuration": bands.configuration.value,
        "bound_states": bound_state_energies(atom, cfg) if cfg.J > 0 else [],
        "complete_reflection_omega_k": resonance,
    }
    if oracle_N is not None:
        report["oracle_N"] = int(oracle_N)
        report["oracle_bound_states"] = oracle_bound_states(build_lattice(atom, cfg, oracle_N))
    return report
