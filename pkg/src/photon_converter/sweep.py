"""Parameter sweeps over the closed-form scattering models.

A sweep is described by a JSON document::

    {
      "model": "crw",
      "params": {"omega_e": 0.9, "rabi": 0.1},
      "axis1": {"name": "omega_k", "start": 0.6, "stop": 1.4, "count": 2001},
      "axis2": {"name": "rabi", "values": [0.05, 0.1, 0.2]},
      "outputs": ["flow_r", "flow_t", "flow_tr"]
    }

Parameters not given in ``params`` take the defaults in :data:`DEFAULTS`.
Every grid point produces one row; points that violate a model precondition
are kept and carry a status code instead of numbers.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .crw import CRWConfig, scatter_crw_at
from .dressed import AtomConfig
from .errors import BandEdgeError, ConfigError, DomainError
from .linear import LinearConfig, scatter_linear

__all__ = [
    "DEFAULTS",
    "OUTPUTS",
    "STATUS_CODES",
    "SweepAxis",
    "SweepSpec",
    "SweepTable",
    "build_configs",
    "evaluate_point",
    "load_sweep_spec",
    "parse_sweep_spec",
    "run_sweep",
]

MODELS = ("crw", "linear")

ATOM_PARAMS = ("omega_e", "omega_f", "drive_frequency", "rabi")
WAVEGUIDE_PARAMS = {
    "crw": ("omega", "xi", "J", "atom_site"),
    "linear": ("v_g", "L", "J", "atom_position"),
}

DEFAULTS = {
    "crw": {
        "omega_k": 1.0, "omega_e": 0.9, "omega_f": 0.6, "drive_frequency": 0.6,
        "rabi": 0.1, "omega": 1.0, "xi": 0.2, "J": 0.3, "atom_site": 0,
    },
    "linear": {
        "omega_k": 1.1, "omega_e": 0.9, "omega_f": 0.6, "drive_frequency": 0.6,
        "rabi": 0.2, "v_g": 1.0, "L": 1.0, "J": 0.3, "atom_position": 0.0,
    },
}

# atom_site is integer-valued and therefore fixed-only
SWEEPABLE = {
    "crw": ("omega_k",) + ATOM_PARAMS + ("omega", "xi", "J"),
    "linear": ("omega_k",) + ATOM_PARAMS + ("v_g", "L", "J", "atom_position"),
}

OUTPUTS = {
    "flow_r": lambda r: r.flow_r,
    "flow_t": lambda r: r.flow_t,
    "flow_tr": lambda r: r.flow_tr,
    "flow_r_plus_t": lambda r: r.flow_r + r.flow_t,
    "flow_sum": lambda r: r.flow_sum,
    "total": lambda r: r.flow_sum,
    "amp_r_re": lambda r: r.r_minus.real,
    "amp_r_im": lambda r: r.r_minus.imag,
    "amp_t_re": lambda r: r.t_minus.real,
    "amp_t_im": lambda r: r.t_minus.imag,
    "amp_tp_re": lambda r: r.t_plus.real,
    "amp_tp_im": lambda r: r.t_plus.imag,
    "k": lambda r: r.k,
    "partner": lambda r: r.partner.value if r.partner is not None else math.nan,
}

STATUS_CODES = (
    "ok",
    "channel_closed",
    "band_edge_guard",
    "out_of_band",
    "invalid_parameters",
)

UNITS = {
    "crw": "hbar = 1; frequencies and couplings in units of the cavity frequency omega; "
           "wavevectors in inverse lattice constants",
    "linear": "hbar = 1; frequencies and couplings in units of v_g / L",
}


@dataclass(frozen=True)
class SweepAxis:
    """One sweep dimension: a linear grid, or an explicit list of ``values``."""

    name: str
    start: float | None = None
    stop: float | None = None
    count: int | None = None
    spacing: str = "linear"
    values: tuple | None = None

    def grid(self) -> np.ndarray:
        if self.values is not None:
            return np.asarray(self.values, dtype=float)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    model: str
    params: dict
    axis1: SweepAxis
    axis2: SweepAxis | None = None
    outputs: tuple = ("flow_r", "flow_t", "flow_tr", "flow_sum")

    @property
    def columns(self) -> list[str]:
        axes = [self.axis1.name] if self.axis2 is None else [self.axis2.name, self.axis1.name]
        return axes + list(self.outputs) + ["status"]

    def points(self):
        """Parameter dicts in row order (axis2-major)."""
        outer = [None] if self.axis2 is None else self.axis2.grid()
        for v2 in outer:
            for v1 in self.axis1.grid():
                p = dict(self.params)
                if v2 is not None:
                    p[self.axis2.name] = float(v2)
                p[self.axis1.name] = float(v1)
                yield p


@dataclass
class SweepTable:
    model: str
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def column(self, name) -> np.ndarray:
        i = self.columns.index(name)
        if name == "status":
            return np.array([row[i] for row in self.rows])
        return np.array([row[i] for row in self.rows], dtype=float)

    def to_csv(self) -> str:
        """CSV text with ``#`` header comments; floats use shortest round-trip repr."""
        buf = io.StringIO()
        buf.write(f"# model: {self.model}\n")
        buf.write(f"# units: {UNITS[self.model]}\n")
        for key, value in self.meta.items():
            buf.write(f"# {key}: {value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "model": self.model,
            "units": UNITS[self.model],
            "meta": self.meta,
            "columns": self.columns,
            "rows": [[_json_value(v) for v in row] for row in self.rows],
        }
        return json.dumps(payload, indent=1)

    def write(self, path, fmt="csv"):
        text = self.to_csv() if fmt == "csv" else self.to_json()
        path = Path(path)
        try:
            path.write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write sweep output to {path}: {exc}") from exc
        return path


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def build_configs(model, params):
    """Split a flat parameter dict into atom and waveguide configurations."""
    atom = AtomConfig(**{name: params[name] for name in ATOM_PARAMS})
    wg = {name: params[name] for name in WAVEGUIDE_PARAMS[model]}
    cfg = CRWConfig(**wg) if model == "crw" else LinearConfig(**wg)
    return atom, cfg


def evaluate_point(model, params):
    """Scatter at one grid point; returns ``(status, ScatteringResult | None)``."""
    try:
        atom, cfg = build_configs(model, params)
        if model == "crw":
            result = scatter_crw_at(params["omega_k"], atom, cfg)
        else:
            result = scatter_linear(params["omega_k"], atom, cfg)
    except BandEdgeError:
        return "band_edge_guard", None
    except DomainError:
        return "out_of_band", None
    except ValueError:
        return "invalid_parameters", None
    return result.status, result


def _row(args):
    spec, params = args
    status, result = evaluate_point(spec.model, params)
    axes = [params[spec.axis1.name]]
    if spec.axis2 is not None:
        axes.insert(0, params[spec.axis2.name])
    if result is None:
        values = [math.nan] * len(spec.outputs)
    else:
        values = [float(OUTPUTS[name](result)) for name in spec.outputs]
    return tuple(axes + values + [status])


def run_sweep(spec: SweepSpec, threads=1) -> SweepTable:
    """Evaluate every grid point of ``spec``.

    With ``threads > 1`` points are farmed out to a process pool; row order is
    the same as the serial run.
    """
    jobs = [(spec, p) for p in spec.points()]
    if threads > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (4 * threads))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_row, jobs, chunksize=chunk))
    else:
        rows = [_row(job) for job in jobs]
    return SweepTable(model=spec.model, columns=spec.columns, rows=rows)


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where}: must be finite")
    return value


def _parse_axis(raw, model, where):
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = set(raw) - {"name", "start", "stop", "count", "spacing", "values"}
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    name = raw.get("name")
    if name not in SWEEPABLE[model]:
        raise ConfigError(
            f"{where}.name: {name!r} is not sweepable for model {model!r}; "
            f"choose from {list(SWEEPABLE[model])}"
        )
    if "values" in raw:
        values = raw["values"]
        if not isinstance(values, list) or not values:
            raise ConfigError(f"{where}.values: expected a non-empty list")
        values = tuple(float(_number(v, f"{where}.values[{i}]")) for i, v in enumerate(values))
        return SweepAxis(name=name, values=values)
    for key in ("start", "stop", "count"):
        if key not in raw:
            raise ConfigError(f"{where}.{key}: missing")
    start = float(_number(raw["start"], f"{where}.start"))
    stop = float(_number(raw["stop"], f"{where}.stop"))
    count = raw["count"]
    if isinstance(count, bool) or not isinstance(count, int) or count < 2:
        raise ConfigError(f"{where}.count: must be an integer >= 2, got {count!r}")
    if not start < stop:
        raise ConfigError(f"{where}: start ({start}) must be < stop ({stop})")
    spacing = raw.get("spacing", "linear")
    if spacing != "linear":
        raise ConfigError(f"{where}.spacing: only 'linear' is supported, got {spacing!r}")
    return SweepAxis(name=name, start=start, stop=stop, count=count)


def parse_params(model, raw, where="params"):
    """Merge user parameters over the model defaults, validating names and types."""
    if model not in MODELS:
        raise ConfigError(f"model: expected one of {list(MODELS)}, got {model!r}")
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    params = dict(DEFAULTS[model])
    for key, value in raw.items():
        if key not in params:
            raise ConfigError(f"{where}.{key}: unknown parameter for model {model!r}")
        value = _number(value, f"{where}.{key}")
        if key == "atom_site":
            if int(value) != value:
                raise ConfigError(f"{where}.atom_site: must be an integer")
            value = int(value)
        params[key] = value
    return params


def parse_sweep_spec(raw) -> SweepSpec:
    """Build a :class:`SweepSpec` from a decoded JSON document."""
    if not isinstance(raw, dict):
        raise ConfigError("top level: expected an object")
    unknown = set(raw) - {"model", "params", "axis1", "axis2", "outputs"}
    if unknown:
        raise ConfigError(f"top level: unknown keys {sorted(unknown)}")
    model = raw.get("model")
    params = parse_params(model, raw.get("params"))
    if "axis1" not in raw:
        raise ConfigError("axis1: missing")
    axis1 = _parse_axis(raw["axis1"], model, "axis1")
    axis2 = None
    if raw.get("axis2") is not None:
        axis2 = _parse_axis(raw["axis2"], model, "axis2")
        if axis2.name == axis1.name:
            raise ConfigError("axis2.name: must differ from axis1.name")
    outputs = raw.get("outputs", list(SweepSpec.outputs))
    if not isinstance(outputs, list) or not outputs:
        raise ConfigError("outputs: expected a non-empty list")
    for i, name in enumerate(outputs):
        if name not in OUTPUTS:
            raise ConfigError(f"outputs[{i}]: unknown quantity {name!r}; choose from {sorted(OUTPUTS)}")
    return SweepSpec(model=model, params=params, axis1=axis1, axis2=axis2, outputs=tuple(outputs))


def load_sweep_spec(path) -> SweepSpec:
    """Read and validate a sweep config file.

    Raises
    ------
    ConfigError
        With the line/column of a JSON syntax error or the path of the bad field.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return parse_sweep_spec(raw)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

