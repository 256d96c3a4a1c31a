"""JSON design configuration files.

A config fully determines a run: filter specification, sweep grid, stub
placement (fixed ``placed`` stubs and/or optimizer ``bounds``), objective,
optimizer budget and seed. Unknown keys are rejected. ``null`` stands for an
unbounded (infinite) zero frequency.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .optimizer import ObjectiveSpec, StubBounds
from .prototype import Family, PrototypeSpec
from .response import Stub, StubConfig, SweepConfig
from .synthesis import FilterSpec

DEFAULT_CONFIG = {
    "filter": {
        "f0": 2e9,
        "delta": 0.1,
        "z0": 50.0,
        "order": 3,
        "family": "equal-ripple",
        "ripple_db": 0.5,
    },
    "sweep": {"f_start": 1e8, "f_stop": 7e9, "n_points": 691, "spacing": "linear"},
    "stubs": {
        "bounds": [
            {"zt": [20.0, 150.0], "fz": [3.6e9, 4.4e9], "sites": None, "symmetric": True},
            {"zt": [20.0, 150.0], "fz": [5.4e9, 6.6e9], "sites": None, "symmetric": True},
        ]
    },
    "objective": {
        "w_pass": 100.0,
        "w_h2": 1.0,
        "w_h3": 1.0,
        "passband_il_budget_db": 1.0,
        "harmonic_window": 0.1,
        "suppression_target_db": -100.0,
    },
    "optimizer": {"budget": 2000},
    "seed": 42,
}

_TOP = {"filter", "sweep", "stubs", "objective", "optimizer", "seed"}
_FILTER = {"f0", "delta", "z0", "order", "family", "ripple_db"}
_SWEEP = {"f_start", "f_stop", "n_points", "spacing"}
_STUBS = {"placed", "bounds"}
_PLACED = {"zt", "fz", "site"}
_BOUNDS = {"zt", "fz", "sites", "symmetric"}
_OBJECTIVE = {
    "w_pass", "w_h2", "w_h3", "passband_il_budget_db", "harmonic_window", "suppression_target_db",
}
_OPTIMIZER = {"budget"}


class ConfigError(ValueError):
    """Invalid configuration; ``field`` is the dotted path of the culprit."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class DesignConfig:
    filter: FilterSpec
    sweep: SweepConfig
    stubs: StubConfig | None
    stub_bounds: tuple[StubBounds, ...] | None
    objective: ObjectiveSpec
    budget: int
    seed: int

    def with_stubs(self, stubs: StubConfig) -> "DesignConfig":
        return replace(self, stubs=stubs)

    def to_dict(self) -> dict:
        f = self.filter
        out = {
            "filter": {
                "f0": f.f0,
                "delta": f.delta,
                "z0": f.z0,
                "order": f.prototype.order,
                "family": f.prototype.family.value,
                "ripple_db": f.prototype.ripple_db,
            },
            "sweep": {
                "f_start": self.sweep.f_start,
                "f_stop": self.sweep.f_stop,
                "n_points": self.sweep.n_points,
                "spacing": self.sweep.spacing,
            },
            "objective": {
                "w_pass": self.objective.w_pass,
                "w_h2": self.objective.w_h2,
                "w_h3": self.objective.w_h3,
                "passband_il_budget_db": self.objective.passband_il_budget_db,
                "harmonic_window": self.objective.harmonic_window,
                "suppression_target_db": self.objective.suppression_target_db,
            },
            "optimizer": {"budget": self.budget},
            "seed": self.seed,
        }
        stubs = {}
        if self.stubs is not None:
            stubs["placed"] = [
                {"zt": s.zt, "fz": _finite_or_none(s.fz), "site": s.site} for s in self.stubs
            ]
        if self.stub_bounds is not None:
            stubs["bounds"] = [
                {
                    "zt": list(b.zt),
                    "fz": [b.fz[0], _finite_or_none(b.fz[1])],
                    "sites": None if b.sites is None else list(b.sites),
                    "symmetric": b.symmetric,
                }
                for b in self.stub_bounds
            ]
        if stubs:
            out["stubs"] = stubs
        return out


def _finite_or_none(x: float):
    return None if math.isinf(x) else x


def _section(d, path: str, allowed: set[str], required=()) -> dict:
    if not isinstance(d, dict):
        raise ConfigError(path, f"expected an object, got {type(d).__name__}")
    unknown = sorted(set(d) - allowed)
    if unknown:
        raise ConfigError(_join(path, unknown[0]), "unknown key")
    for key in required:
        if key not in d:
            raise ConfigError(_join(path, key), "missing required key")
    return d


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _number(d: dict, key: str, path: str, default=None, allow_null=False) -> float:
    v = d.get(key, default)
    if v is None and allow_null:
        return math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(_join(path, key), f"expected a finite number, got {v!r}")
    return float(v)


def _integer(d: dict, key: str, path: str, default=None) -> int:
    v = d.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(_join(path, key), f"expected an integer, got {v!r}")
    return v


def _pair(d: dict, key: str, path: str, default, allow_null_hi=False) -> tuple[float, float]:
    v = d.get(key, default)
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ConfigError(_join(path, key), f"expected a [low, high] pair, got {v!r}")
    lo = _number({"lo": v[0]}, "lo", f"{path}.{key}")
    hi = _number({"hi": v[1]}, "hi", f"{path}.{key}", allow_null=allow_null_hi)
    return lo, hi


def _build(path: str, factory, *args, fields=(), **kwargs):
    try:
        return factory(*args, **kwargs)
    except ValueError as exc:
        msg = str(exc)
        head = msg.split(" ", 1)[0]
        raise ConfigError(_join(path, head) if head in fields else path, msg) from None


def parse_config(data: dict) -> DesignConfig:
    data = _section(data, "", _TOP, required=("filter",))

    fd = _section(data["filter"], "filter", _FILTER, required=("f0", "delta"))
    family = fd.get("family", "equal-ripple")
    if family not in {f.value for f in Family}:
        raise ConfigError("filter.family", f"expected one of {[f.value for f in Family]}, got {family!r}")
    proto = _build(
        "filter",
        PrototypeSpec,
        _integer(fd, "order", "filter", 3),
        family,
        _number(fd, "ripple_db", "filter", 0.5),
        fields=_FILTER,
    )
    filt = _build(
        "filter",
        FilterSpec,
        _number(fd, "f0", "filter"),
        _number(fd, "delta", "filter"),
        _number(fd, "z0", "filter", 50.0),
        proto,
        fields=_FILTER,
    )

    sd = _section(data.get("sweep", {}), "sweep", _SWEEP)
    spacing = sd.get("spacing", "linear")
    if spacing != "linear":
        raise ConfigError("sweep.spacing", f"only 'linear' is supported, got {spacing!r}")
    sweep = _build(
        "sweep",
        SweepConfig,
        _number(sd, "f_start", "sweep", 1e8),
        _number(sd, "f_stop", "sweep", 7e9),
        _integer(sd, "n_points", "sweep", 691),
        spacing,
        fields=_SWEEP,
    )

    stubs = bounds = None
    st = _section(data.get("stubs", {}), "stubs", _STUBS)
    if "placed" in st:
        if not isinstance(st["placed"], list):
            raise ConfigError("stubs.placed", "expected a list of stubs")
        placed = []
        for i, item in enumerate(st["placed"]):
            p = f"stubs.placed[{i}]"
            item = _section(item, p, _PLACED, required=("zt", "fz", "site"))
            placed.append(
                _build(
                    p,
                    Stub,
                    _number(item, "zt", p),
                    _number(item, "fz", p, allow_null=True),
                    _integer(item, "site", p),
                )
            )
        stubs = StubConfig(tuple(placed))
        _build("stubs.placed", stubs.validate, filt)
    if "bounds" in st:
        if not isinstance(st["bounds"], list) or not st["bounds"]:
            raise ConfigError("stubs.bounds", "expected a non-empty list of stub groups")
        groups = []
        for i, item in enumerate(st["bounds"]):
            p = f"stubs.bounds[{i}]"
            item = _section(item, p, _BOUNDS)
            sites = item.get("sites")
            if sites is not None and (
                not isinstance(sites, list)
                or any(isinstance(s, bool) or not isinstance(s, int) for s in sites)
            ):
                raise ConfigError(f"{p}.sites", f"expected a list of integers or null, got {sites!r}")
            symmetric = item.get("symmetric", True)
            if not isinstance(symmetric, bool):
                raise ConfigError(f"{p}.symmetric", f"expected true/false, got {symmetric!r}")
            g = _build(
                p,
                StubBounds,
                _pair(item, "zt", p, [20.0, 150.0]),
                _pair(item, "fz", p, [0.0, None], allow_null_hi=True),
                None if sites is None else tuple(sites),
                symmetric,
            )
            _build(p, g.placements, filt.order)
            groups.append(g)
        bounds = tuple(groups)

    od = _section(data.get("objective", {}), "objective", _OBJECTIVE)
    defaults = ObjectiveSpec()
    objective = _build(
        "objective",
        ObjectiveSpec,
        **{k: _number(od, k, "objective", getattr(defaults, k)) for k in sorted(_OBJECTIVE)},
    )

    opt = _section(data.get("optimizer", {}), "optimizer", _OPTIMIZER)
    budget = _integer(opt, "budget", "optimizer", 2000)
    if budget < 50:
        raise ConfigError("optimizer.budget", f"must be >= 50, got {budget}")
    seed = _integer(data, "seed", "", 0)
    return DesignConfig(filt, sweep, stubs, bounds, objective, budget, seed)


def load_config(path) -> DesignConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_config(data)


def default_config() -> DesignConfig:
    return parse_config(copy.deepcopy(DEFAULT_CONFIG))


def dump_config(cfg: DesignConfig, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")
    return path
