"""Command-line interface: ``eombias {estimate,predict,sweep-amplitude,black-level}``.

Settings resolve in three layers: built-in defaults, then a ``--config`` file
of ``key=value`` lines (keys are the flag names without dashes prefix, e.g.
``s0-sqrt=5e-11``), then flags given on the command line. Every CSV starts with
a ``#`` line holding the fully resolved settings in the same ``key=value`` form,
which :func:`config_from_provenance` turns back into a :class:`RunConfig`.
"""

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import NamedTuple

from .analysis import predicted_error_variance
from .eom_model import EomParams
from .estimator import DegenerateDenominator, estimate_delta_v_norm
from .photodetector import DetectorConfig, simulate_burst
from .pilot_signal import PilotConfig, SamplingError
from .sim_harness import Scenario, sweep_amplitude, sweep_black_level

COMMANDS = ("estimate", "predict", "sweep-amplitude", "black-level")
DB_FLOOR = -200.0
DEFAULT_F_GRID = (1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2)
DEFAULT_DV_GRID = (0.0, 0.002)

# key -> (RunConfig attribute, parser)
_KEYS = {
    "pin": ("pin", float),
    "fib": ("fib", float),
    "vpi": ("vpi", float),
    "v0": ("v0", float),
    "C": ("c", float),
    "s0-sqrt": ("s0_sqrt", float),
    "fs": ("fs", float),
    "fd": ("fd", float),
    "periods": ("periods", int),
    "vd": ("vd", float),
    "F": ("f", float),
    "dv-norm": ("dv_norm", float),
    "trials": ("trials", int),
    "seed": ("seed", int),
    "f-grid": ("f_grid", None),
    "dv-grid": ("dv_grid", None),
}


class UsageError(Exception):
    pass


class PredictRow(NamedTuple):
    F: float
    dv_norm: float
    sigma2: float
    sigma: float


class EstimateRow(NamedTuple):
    dv_norm_true: float
    dv_norm_est: float
    F: float
    seed: int


@dataclass
class RunConfig:
    command: str = "predict"
    pin: float = 1.0
    fib: float = 0.5
    vpi: float = 1.0
    v0: float = 0.0
    c: float = 0.1
    s0_sqrt: float = 50e-12
    fs: float = 5e6
    fd: float = 0.5e6
    periods: int = 25
    vd: float | None = None
    f: float | None = 1e-3
    dv_norm: float = 0.002
    trials: int = 2000
    seed: int = 0
    f_grid: tuple = DEFAULT_F_GRID
    dv_grid: tuple = DEFAULT_DV_GRID
    out: str | None = None
    workers: int = 1

    @property
    def v_d(self):
        return self.vd if self.vd is not None else self.f * self.vpi

    @property
    def amplitude(self):
        return self.v_d / self.vpi

    def eom(self):
        return EomParams(p_in=self.pin, v_pi=self.vpi, v_0=self.v0, f_ib=self.fib)

    def detector(self):
        return DetectorConfig(c=self.c, s_0=self.s0_sqrt**2, f_s=self.fs)

    def scenario(self):
        pilot = PilotConfig(v_d=self.v_d, f_d=self.fd, n_periods=self.periods)
        return Scenario(self.eom(), pilot, self.detector(), self.dv_norm, self.seed)

    def provenance(self):
        parts = [f"command={self.command}"]
        for key, (attr, _) in _KEYS.items():
            value = getattr(self, attr)
            if value is None:
                continue
            if isinstance(value, tuple):
                value = ",".join(repr(float(v)) for v in value)
            elif isinstance(value, float):
                value = repr(value)
            parts.append(f"{key}={value}")
        return "# eombias " + " ".join(parts)


def _parse_grid(text):
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"invalid grid {text!r}: expected comma-separated numbers") from None
    if not values:
        raise UsageError("grid must not be empty")
    return values


def _convert(key, raw):
    if key not in _KEYS:
        raise UsageError(f"unknown setting {key!r}")
    attr, kind = _KEYS[key]
    if kind is None:
        return attr, _parse_grid(raw)
    try:
        return attr, kind(raw)
    except ValueError:
        unit = "integer" if kind is int else "plain number in SI base units"
        raise UsageError(f"invalid value {raw!r} for {key}: expected a {unit}") from None


def _normalize_key(key):
    key = key.strip().lstrip("-")
    if key in _KEYS:
        return key
    alt = key.replace("_", "-")
    if alt in _KEYS:
        return alt
    lowered = {k.lower(): k for k in _KEYS}
    return lowered.get(alt.lower(), key)


def parse_key_values(pairs):
    """Turn ``key=value`` strings into ``{attribute: value}``."""
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise UsageError(f"expected key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        attr, value = _convert(_normalize_key(key), raw.strip())
        out[attr] = value
    return out


def read_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    pairs = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    return parse_key_values(pairs)


def config_from_provenance(line):
    """Rebuild the :class:`RunConfig` recorded in a CSV provenance comment."""
    tokens = line.lstrip("#").split()
    if tokens and tokens[0] == "eombias":
        tokens = tokens[1:]
    command = None
    rest = []
    for tok in tokens:
        if tok.startswith("command="):
            command = tok.split("=", 1)[1]
        else:
            rest.append(tok)
    values = parse_key_values(rest)
    if command not in COMMANDS:
        raise UsageError(f"provenance line has no valid command: {line!r}")
    return _resolve(command, {}, values)


def _apply_layer(base, layer, source):
    if "vd" in layer and "f" in layer:
        raise UsageError(f"--vd and --F are mutually exclusive ({source})")
    merged = dict(base)
    if "vd" in layer or "f" in layer:
        merged.pop("vd", None)
        merged.pop("f", None)
    merged.update(layer)
    return merged


def _resolve(command, file_layer, flag_layer):
    values = {"f": RunConfig.f}
    values = _apply_layer(values, file_layer, "config file")
    values = _apply_layer(values, flag_layer, "command line")
    values.setdefault("vd", None)
    values.setdefault("f", None)
    cfg = RunConfig(command=command, **values)
    _check(cfg)
    return cfg


def _check(cfg):
    try:
        cfg.eom()
        cfg.detector()
        if cfg.trials < 2:
            raise ValueError(f"trials must be at least 2, got {cfg.trials}")
        if cfg.workers < 1:
            raise ValueError(f"workers must be at least 1, got {cfg.workers}")
        if cfg.v_d < 0:
            raise ValueError("pilot amplitude must be >= 0")
        if cfg.command == "sweep-amplitude" and any(not f > 0 for f in cfg.f_grid):
            raise ValueError("f-grid values must be positive")
        if any(not f >= 0 for f in cfg.f_grid):
            raise ValueError("f-grid values must be non-negative")
        # sampling is validated before anything runs
        cfg.scenario()
    except SamplingError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="eombias",
        description="Pilot-tone estimation of an EOM's offset from its minimum bias point.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    common.add_argument("--config", default=None, help="key=value settings file")
    common.add_argument("--pin", default=sup, help="optical input power [W] (1)")
    common.add_argument("--fib", default=sup, help="optical imbalance factor (0.5)")
    common.add_argument("--vpi", default=sup, help="half-wave voltage [V] (1)")
    common.add_argument("--v0", default=sup, help="zero-field voltage [V] (0)")
    common.add_argument("--C", dest="C", default=sup, help="conversion factor [V/W] (0.1)")
    common.add_argument("--s0-sqrt", default=sup, help="noise density [V/sqrt(Hz)] (50e-12)")
    common.add_argument("--fs", default=sup, help="sampling frequency [Hz] (5e6)")
    common.add_argument("--fd", default=sup, help="pilot frequency [Hz] (0.5e6)")
    common.add_argument("--periods", default=sup, help="pilot periods per burst (25)")
    amp = common.add_mutually_exclusive_group()
    amp.add_argument("--vd", default=sup, help="pilot amplitude [V]")
    amp.add_argument("--F", dest="F", default=sup, help="pilot amplitude / V_pi (1e-3)")
    common.add_argument("--dv-norm", default=sup, help="true offset / V_pi (0.002)")
    common.add_argument("--trials", default=sup, help="Monte Carlo trials (2000)")
    common.add_argument("--seed", default=sup, help="random seed (0)")
    common.add_argument("--f-grid", default=sup, help="comma-separated F values")
    common.add_argument("--dv-grid", default=sup, help="comma-separated offset values")
    common.add_argument("--out", default=None, help="CSV output path (stdout if omitted)")
    common.add_argument("--workers", type=int, default=1, help="worker threads (1)")
    helps = {
        "estimate": "estimate the offset from one simulated noisy burst",
        "predict": "closed-form standard deviation of the estimate",
        "sweep-amplitude": "Monte Carlo error vs. pilot amplitude",
        "black-level": "pilot-induced black level vs. amplitude and offset",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def parse_config(argv=None, parser=None):
    """Resolve defaults, config file and flags into a :class:`RunConfig`."""
    parser = parser or build_parser()
    ns = parser.parse_args(argv)
    given = vars(ns)
    flag_pairs = [
        f"{key}={given[key.replace('-', '_')]}"
        for key in _KEYS
        if key.replace("-", "_") in given
    ]
    file_layer = read_config_file(ns.config) if ns.config else {}
    cfg = _resolve(ns.command, file_layer, parse_key_values(flag_pairs))
    cfg.out = ns.out
    cfg.workers = ns.workers
    _check(cfg)
    return cfg


def _cell(value):
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def render_csv(table, provenance=None):
    if not table:
        raise ValueError("table must not be empty")
    buf = io.StringIO()
    if provenance:
        buf.write(provenance.rstrip("\n") + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(type(table[0])._fields)
    for row in table:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def emit_csv(table, output_path, provenance=None):
    """Write rows (named tuples) as UTF-8 CSV with 17 significant digits.

    ``output_path`` of ``None`` or ``"-"`` writes to stdout.
    """
    text = render_csv(table, provenance)
    if output_path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {output_path}: {exc.strerror}") from exc


def clamp_db(value):
    if value == -math.inf:
        return value
    return max(value, DB_FLOOR)


def _run(cfg):
    if cfg.command == "predict":
        sc = cfg.scenario()
        pred = predicted_error_variance(sc.eom, sc.detector, cfg.amplitude, sc.pilot.t_d, cfg.dv_norm)
        print(f"sigma_dv_norm_est = {pred.sigma:.17g}")
        print(f"sigma2_dv_norm_est = {pred.sigma2:.17g}")
        if cfg.out:
            emit_csv([PredictRow(cfg.amplitude, cfg.dv_norm, pred.sigma2, pred.sigma)], cfg.out, cfg.provenance())
    elif cfg.command == "estimate":
        sc = cfg.scenario()
        trace = simulate_burst(sc.eom, sc.pilot, sc.detector, sc.v_hat_min, cfg.seed)
        est = estimate_delta_v_norm(trace, cfg.amplitude, cfg.fd)
        print(f"dv_norm_est = {est:.17g}")
        print(f"dv_norm_true = {cfg.dv_norm:.17g}")
        if cfg.out:
            emit_csv([EstimateRow(cfg.dv_norm, est, cfg.amplitude, cfg.seed)], cfg.out, cfg.provenance())
    elif cfg.command == "sweep-amplitude":
        rows = sweep_amplitude(cfg.scenario(), cfg.f_grid, cfg.trials, workers=cfg.workers)
        emit_csv(rows, cfg.out, cfg.provenance())
    elif cfg.command == "black-level":
        rows = sweep_black_level(cfg.eom(), cfg.dv_grid, cfg.f_grid)
        rows = [r._replace(p_bl_rel_db=clamp_db(r.p_bl_rel_db)) for r in rows]
        emit_csv(rows, cfg.out, cfg.provenance())


def main(argv=None):
    parser = build_parser()
    try:
        cfg = parse_config(argv, parser)
    except UsageError as exc:
        parser.error(str(exc))
    try:
        _run(cfg)
    except (DegenerateDenominator, OSError, ValueError, ArithmeticError) as exc:
        print(f"eombias: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
