"""Filter network assembly, frequency sweeps and band metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

import numpy as np

from .network import Flag, TwoPortABCD, abcd_to_s, cascade, coupled_section, shunt_open_stub
from .synthesis import FilterSpec, SectionDesign

EPS_F = 10.0  # Hz
DB_FLOOR = -200.0
ZT_RANGE = (20.0, 150.0)


class CoverageError(ValueError):
    """The trace does not span the bands a metric needs."""


@dataclass(frozen=True)
class Stub:
    """Open stub of impedance ``zt`` that is a quarter wave long at ``fz``,
    shunted across junction ``site`` (0 = input port, N+1 = output port)."""

    zt: float
    fz: float
    site: int

    def __post_init__(self):
        lo, hi = ZT_RANGE
        if not lo <= self.zt <= hi:
            raise ValueError(f"stub zt must lie in [{lo}, {hi}] ohm, got {self.zt}")
        if not self.fz > 0:
            raise ValueError(f"stub fz must be > 0, got {self.fz}")
        if isinstance(self.site, bool) or int(self.site) != self.site or self.site < 0:
            raise ValueError(f"stub site must be a non-negative integer, got {self.site!r}")

    @property
    def degenerate(self) -> bool:
        return math.isinf(self.fz)


@dataclass(frozen=True)
class StubConfig:
    stubs: tuple[Stub, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "stubs", tuple(self.stubs))

    def __iter__(self):
        return iter(self.stubs)

    def __len__(self):
        return len(self.stubs)

    def validate(self, spec: FilterSpec) -> None:
        n_junctions = spec.order + 2
        for s in self.stubs:
            if s.site >= n_junctions:
                raise ValueError(
                    f"stub site {s.site} out of range 0..{n_junctions - 1} for order {spec.order}"
                )
            if not s.fz > spec.f0:
                raise ValueError(f"stub fz={s.fz} must exceed f0={spec.f0}")


@dataclass(frozen=True)
class SweepConfig:
    f_start: float = 0.1e9
    f_stop: float = 7e9
    n_points: int = 691
    spacing: str = "linear"

    def __post_init__(self):
        if not 0 < self.f_start < self.f_stop:
            raise ValueError(
                f"need 0 < f_start < f_stop, got f_start={self.f_start}, f_stop={self.f_stop}"
            )
        if isinstance(self.n_points, bool) or int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError(f"n_points must be an integer >= 2, got {self.n_points!r}")
        if self.spacing != "linear":
            raise ValueError(f"unsupported spacing {self.spacing!r}")

    def frequencies(self) -> np.ndarray:
        return np.linspace(self.f_start, self.f_stop, int(self.n_points))


@dataclass(frozen=True, eq=False)
class ResponseTrace:
    freqs: np.ndarray
    s11: np.ndarray
    s21: np.ndarray
    s12: np.ndarray
    s22: np.ndarray
    flags: np.ndarray
    z_ref: float = 50.0

    def __post_init__(self):
        n = len(self.freqs)
        if any(len(x) != n for x in (self.s11, self.s21, self.s12, self.s22, self.flags)):
            raise ValueError("trace columns must have equal length")
        if n > 1 and not np.all(np.diff(self.freqs) > 0):
            raise ValueError("trace frequencies must be strictly increasing")

    def __len__(self):
        return len(self.freqs)

    @property
    def ok(self) -> np.ndarray:
        return self.flags == Flag.OK


@dataclass(frozen=True)
class BandMetrics:
    passband_il_db: float
    passband_rl_db: float
    suppression_2f0_db: float
    suppression_3f0_db: float


def db20(x, floor: float = DB_FLOOR) -> np.ndarray:
    """``20*log10|x|`` clipped from below at ``floor`` (exact zeros map to it)."""
    mag = np.abs(np.asarray(x))
    with np.errstate(divide="ignore"):
        out = 20.0 * np.log10(mag)
    return np.maximum(out, floor)


def electrical_length_at(f, f0: float):
    """Electrical length of a line that is a quarter wave long at ``f0``."""
    return (np.pi / 2.0) * (np.asarray(f, dtype=float) / f0)


def _sections_at(sections: Sequence[SectionDesign], theta) -> list[TwoPortABCD]:
    return [coupled_section(s.z0e, s.z0o, theta) for s in sections]


def build_traditional(sections: Sequence[SectionDesign], f, spec: FilterSpec) -> TwoPortABCD:
    if not sections:
        raise ValueError("need at least one coupled section")
    return cascade(_sections_at(sections, electrical_length_at(f, spec.f0)))


def build_proposed(
    sections: Sequence[SectionDesign], stubs: StubConfig, f, spec: FilterSpec
) -> TwoPortABCD:
    """Traditional cascade with open stubs shunted across the chosen junctions."""
    if not sections:
        raise ValueError("need at least one coupled section")
    stubs = stubs if isinstance(stubs, StubConfig) else StubConfig(stubs)
    n_junctions = len(sections) + 1
    for s in stubs:
        if not 0 <= s.site < n_junctions:
            raise ValueError(f"stub site {s.site} out of range 0..{n_junctions - 1}")
    by_site: dict[int, list[Stub]] = {}
    for s in stubs:
        by_site.setdefault(s.site, []).append(s)

    f = np.asarray(f, dtype=float)
    parts = _sections_at(sections, electrical_length_at(f, spec.f0))
    elements = []
    for site in range(n_junctions):
        for s in by_site.get(site, ()):
            elements.append(shunt_open_stub(s.zt, electrical_length_at(f, s.fz)))
        if site < len(parts):
            elements.append(parts[site])
    return cascade(elements)


def traditional_builder(sections, spec: FilterSpec) -> Callable:
    return partial(build_traditional, sections, spec=spec)


def proposed_builder(sections, stubs, spec: FilterSpec) -> Callable:
    return partial(build_proposed, sections, stubs, spec=spec)


def sweep(builder: Callable, cfg: SweepConfig, z_ref: float = 50.0) -> ResponseTrace:
    """Evaluate ``builder`` over the sweep grid and convert to S-parameters."""
    return evaluate_response(builder, cfg.frequencies(), z_ref)


def evaluate_response(builder: Callable, freqs, z_ref: float = 50.0) -> ResponseTrace:
    """S-parameters of ``builder(freqs)`` at strictly increasing ``freqs``.

    Degenerate points are re-evaluated ``EPS_F`` above (then below) their
    frequency and keep their flag. Points carrying a hard zero keep exactly
    zero transmission even when they also needed the offset evaluation.
    """
    f = np.asarray(freqs, dtype=float)
    s = abcd_to_s(builder(f), z_ref)
    flags = np.array(np.broadcast_to(s.flag, f.shape), dtype=np.uint8)
    cols = [np.array(np.broadcast_to(x, f.shape), dtype=complex) for x in (s.s11, s.s21, s.s12, s.s22)]

    pending = np.flatnonzero(flags & Flag.DEGENERATE)
    for offset in (EPS_F, -EPS_F):
        if pending.size == 0:
            break
        alt = abcd_to_s(builder(f[pending] + offset), z_ref)
        good = np.broadcast_to((alt.flag & Flag.DEGENERATE) == 0, pending.shape)
        idx = pending[good]
        for col, x in zip(cols, (alt.s11, alt.s21, alt.s12, alt.s22)):
            col[idx] = np.broadcast_to(x, pending.shape)[good]
        pending = pending[~good]

    s11, s21, s12, s22 = cols
    both = (flags & Flag.HARD_ZERO).astype(bool) & (flags & Flag.DEGENERATE).astype(bool)
    if np.any(both):
        s21[both] = 0.0
        s12[both] = 0.0
        s11[both] /= np.abs(s11[both])
        s22[both] /= np.abs(s22[both])
    return ResponseTrace(f, s11, s21, s12, s22, flags, z_ref)


def _window(freqs, lo, hi):
    tol = 1e-9 * hi
    return (freqs >= lo - tol) & (freqs <= hi + tol)


def band_metrics(
    trace: ResponseTrace, f0: float, delta: float, harmonic_window: float = 0.1
) -> BandMetrics:
    f = trace.freqs
    need_lo, need_hi = f0 * (1 - delta), 3 * f0 * (1 + harmonic_window)
    tol = 1e-9 * need_hi
    if f[0] > need_lo + tol or f[-1] < need_hi - tol:
        raise CoverageError(
            f"trace spans {f[0]:.6g}..{f[-1]:.6g} Hz but metrics need "
            f"{need_lo:.6g}..{need_hi:.6g} Hz"
        )
    s21_db = db20(trace.s21)
    s11_db = db20(trace.s11)
    pb = _window(f, f0 * (1 - delta / 2), f0 * (1 + delta / 2))
    h2 = _window(f, 2 * f0 * (1 - harmonic_window), 2 * f0 * (1 + harmonic_window))
    h3 = _window(f, 3 * f0 * (1 - harmonic_window), 3 * f0 * (1 + harmonic_window))
    if not (pb.any() and h2.any() and h3.any()):
        raise CoverageError("sweep grid has no points inside one of the bands")
    return BandMetrics(
        passband_il_db=float(np.nanmax(-s21_db[pb])) + 0.0,
        passband_rl_db=float(np.nanmin(-s11_db[pb])) + 0.0,
        suppression_2f0_db=float(np.nanmax(s21_db[h2])),
        suppression_3f0_db=float(np.nanmax(s21_db[h3])),
    )
