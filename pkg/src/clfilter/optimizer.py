"""Circuit-level tuning of open stubs for spurious-passband suppression.

Each stub group has an impedance ``zt`` and a zero frequency ``fz``. The
search runs in a unit box per group; ``fz`` is parametrized by its
reciprocal ``f0/fz`` so that an unbounded upper limit (``fz = inf``, a
zero-length stub) sits at a finite corner of the box. Attachment sites are
enumerated exhaustively and every site combination gets an equal share of
the evaluation budget, spread over restarts of a downhill simplex.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import qmc

from .response import (
    DB_FLOOR,
    ZT_RANGE,
    BandMetrics,
    ResponseTrace,
    Stub,
    StubConfig,
    SweepConfig,
    band_metrics,
    proposed_builder,
    sweep,
    traditional_builder,
)
from .synthesis import FilterSpec, SectionDesign

__all__ = [
    "ObjectiveSpec",
    "OptimizationResult",
    "Stub",
    "StubBounds",
    "StubConfig",
    "nelder_mead",
    "objective",
    "optimize_stubs",
]

N_RESTARTS = 8
SCREEN_POINTS = 32
MIN_BUDGET = 50


@dataclass(frozen=True)
class ObjectiveSpec:
    w_pass: float = 10.0
    w_h2: float = 1.0
    w_h3: float = 1.0
    passband_il_budget_db: float = 0.5
    harmonic_window: float = 0.1
    suppression_target_db: float = DB_FLOOR

    def __post_init__(self):
        weights = (self.w_pass, self.w_h2, self.w_h3)
        if any(not w >= 0 for w in weights):
            raise ValueError(f"objective weights must be >= 0, got {weights}")
        if not any(w > 0 for w in weights):
            raise ValueError("at least one objective weight must be > 0")
        if not 0 < self.harmonic_window < 0.5:
            raise ValueError(f"harmonic_window must lie in (0, 0.5), got {self.harmonic_window}")


def score_metrics(m: BandMetrics, spec: ObjectiveSpec) -> float:
    excess = max(0.0, m.passband_il_db - spec.passband_il_budget_db)
    return (
        spec.w_pass * excess
        + spec.w_h2 * max(m.suppression_2f0_db, spec.suppression_target_db)
        + spec.w_h3 * max(m.suppression_3f0_db, spec.suppression_target_db)
    )


def objective(trace: ResponseTrace, spec: ObjectiveSpec, f0: float, delta: float) -> float:
    """Scalar score, lower is better.

    ``w_pass * max(0, IL - budget) + w_h2 * S2 + w_h3 * S3`` where ``IL`` is
    the worst passband insertion loss and ``S2``/``S3`` the worst
    transmission (dB, floored) in the harmonic windows. ``S2``/``S3`` are
    clipped from below at ``suppression_target_db``; at the default (the dB
    floor) the clip is a no-op and the score is linear in both.
    """
    return score_metrics(band_metrics(trace, f0, delta, spec.harmonic_window), spec)


@dataclass(frozen=True)
class StubBounds:
    """Search range for one stub group.

    With ``symmetric`` the group places a stub at a site and another at its
    mirror junction (one stub when the site is the midline itself).
    """

    zt: tuple[float, float] = ZT_RANGE
    fz: tuple[float, float] = (0.0, math.inf)
    sites: tuple[int, ...] | None = None
    symmetric: bool = True

    def __post_init__(self):
        object.__setattr__(self, "zt", tuple(float(v) for v in self.zt))
        object.__setattr__(self, "fz", tuple(float(v) for v in self.fz))
        if self.sites is not None:
            object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))
        lo, hi = self.zt
        if not ZT_RANGE[0] <= lo <= hi <= ZT_RANGE[1]:
            raise ValueError(f"zt bounds {self.zt} must be ordered within {ZT_RANGE}")
        lo, hi = self.fz
        if not (0 <= lo <= hi) or math.isnan(hi):
            raise ValueError(f"fz bounds {self.fz} must be ordered and non-negative")

    def placements(self, order: int) -> list[tuple[int, ...]]:
        last = order + 1
        sites = range(last + 1) if self.sites is None else self.sites
        for s in sites:
            if not 0 <= s <= last:
                raise ValueError(f"site {s} out of range 0..{last} for order {order}")
        if not self.symmetric:
            return [(s,) for s in dict.fromkeys(sites)]
        pairs = (tuple(sorted({s, last - s})) for s in sites)
        return list(dict.fromkeys(pairs))


@dataclass(frozen=True)
class OptimizationResult:
    best: StubConfig
    score: float
    metrics_before: BandMetrics
    metrics_after: BandMetrics
    evaluations: int
    exhausted: bool = False
    history: tuple[float, ...] = field(default=(), repr=False)


def nelder_mead(
    func, x0, max_evals, step=0.25, lower=0.0, upper=1.0, xtol=1e-7, ftol=1e-10, f_x0=None
):
    """Bounded downhill simplex; candidate points are clipped into the box.

    Returns ``(x_best, f_best, n_evals)``. ``func`` is never called more
    than ``max_evals`` times; a known ``f_x0`` saves the first call.
    """
    x0 = np.clip(np.asarray(x0, dtype=float), lower, upper)
    dim = x0.size
    evals = 0

    def f(x):
        nonlocal evals
        evals += 1
        return func(x)

    simplex = [x0]
    for i in range(dim):
        x = x0.copy()
        x[i] = x[i] + step if x[i] + step <= upper else x[i] - step
        simplex.append(np.clip(x, lower, upper))
    values = [] if f_x0 is None else [f_x0]
    for x in simplex[len(values):]:
        if evals >= max_evals:
            break
        values.append(f(x))
    simplex = simplex[: len(values)]
    if len(simplex) < dim + 1:
        i = int(np.argmin(values))
        return simplex[i], values[i], evals

    while evals < max_evals:
        order = np.argsort(values, kind="stable")
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        spread = max(np.max(np.abs(x - simplex[0])) for x in simplex[1:])
        if spread < xtol and values[-1] - values[0] < ftol:
            break

        centroid = np.mean(simplex[:-1], axis=0)
        xr = np.clip(centroid + (centroid - simplex[-1]), lower, upper)
        fr = f(xr)
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[0]:
            if evals >= max_evals:
                simplex[-1], values[-1] = xr, fr
                break
            xe = np.clip(centroid + 2.0 * (centroid - simplex[-1]), lower, upper)
            fe = f(xe)
            simplex[-1], values[-1] = (xe, fe) if fe < fr else (xr, fr)
            continue
        if evals >= max_evals:
            break
        if fr < values[-1]:
            xc = np.clip(centroid + 0.5 * (xr - centroid), lower, upper)
        else:
            xc = np.clip(centroid + 0.5 * (simplex[-1] - centroid), lower, upper)
        fc = f(xc)
        if fc < min(fr, values[-1]):
            simplex[-1], values[-1] = xc, fc
            continue
        if fr < values[-1]:
            simplex[-1], values[-1] = xr, fr
        for i in range(1, len(simplex)):
            if evals >= max_evals:
                break
            simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
            values[i] = f(simplex[i])

    i = int(np.argmin(values))
    return simplex[i], values[i], evals


class _Decoder:
    """Maps a unit-box vector onto a concrete :class:`StubConfig`."""

    def __init__(self, groups: Sequence[StubBounds], placement, f0: float):
        self.groups = groups
        self.placement = placement
        self.f0 = f0
        self.slots = []  # (group, "zt" | "r", lo, hi)
        for k, g in enumerate(groups):
            if g.zt[0] < g.zt[1]:
                self.slots.append((k, "zt", g.zt[0], g.zt[1]))
            r_lo, r_hi = self._r_range(g)
            if r_lo < r_hi:
                self.slots.append((k, "r", r_lo, r_hi))

    def _r_range(self, g):
        lo, hi = g.fz
        return (self.f0 / hi if hi > 0 else math.inf), (self.f0 / lo if lo > 0 else math.inf)

    @property
    def dim(self) -> int:
        return len(self.slots)

    def __call__(self, u) -> StubConfig:
        zt = [g.zt[0] for g in self.groups]
        r = [self._r_range(g)[0] for g in self.groups]
        for (k, name, lo, hi), x in zip(self.slots, u):
            v = lo + float(x) * (hi - lo)
            if name == "zt":
                zt[k] = v
            else:
                r[k] = v
        stubs = []
        for k, sites in enumerate(self.placement):
            fz = self.f0 / r[k] if r[k] > 0 else math.inf
            stubs += [Stub(zt[k], fz, s) for s in sites]
        return StubConfig(tuple(sorted(stubs, key=lambda s: s.site)))


def _placements(groups, order):
    options = [g.placements(order) for g in groups]
    out = []
    for combo in itertools.product(*options):
        flat = [s for sites in combo for s in sites]
        if len(flat) == len(set(flat)):
            out.append(combo)
    return out


def optimize_stubs(
    base: Sequence[SectionDesign],
    template: Sequence[StubBounds],
    spec: FilterSpec,
    obj: ObjectiveSpec | None = None,
    budget: int = 2000,
    seed: int = 0,
    sweep_cfg: SweepConfig | None = None,
    z_ref: float | None = None,
) -> OptimizationResult:
    obj = obj or ObjectiveSpec()
    sweep_cfg = sweep_cfg or SweepConfig()
    z_ref = spec.z0 if z_ref is None else z_ref
    if isinstance(template, StubBounds):
        template = [template]
    template = list(template)
    if budget < MIN_BUDGET:
        raise ValueError(f"budget must be >= {MIN_BUDGET}, got {budget}")
    if not template:
        raise ValueError("stub template is empty")
    for g in template:
        if not g.fz[1] > spec.f0:
            raise ValueError(f"fz bounds {g.fz} leave no zero frequency above f0={spec.f0}")
    template = [
        g if g.fz[0] > spec.f0 else StubBounds(g.zt, (math.nextafter(spec.f0, math.inf), g.fz[1]), g.sites, g.symmetric)
        for g in template
    ]
    placements = _placements(template, spec.order)
    if not placements:
        raise ValueError("no placement of the stub groups uses distinct junctions")

    def evaluate(stubs: StubConfig) -> float:
        trace = sweep(proposed_builder(base, stubs, spec), sweep_cfg, z_ref)
        return objective(trace, obj, spec.f0, spec.delta)

    history: list[float] = []
    best_score, best_cfg = math.inf, None
    used = 0

    def record(score, cfg):
        nonlocal best_score, best_cfg
        if score < best_score:
            best_score, best_cfg = score, cfg
        history.append(best_score)

    exhausted = False
    candidates = []
    per_placement = max(1, min(SCREEN_POINTS, budget // (4 * len(placements))))
    for p_idx, placement in enumerate(placements):
        decoder = _Decoder(template, placement, spec.f0)
        starts = (
            qmc.Halton(decoder.dim, scramble=True, seed=seed).random(per_placement)
            if decoder.dim
            else np.zeros((1, 0))
        )
        for k, x0 in enumerate(starts):
            if used >= budget:
                exhausted = True
                break
            cfg = decoder(x0)
            score = evaluate(cfg)
            used += 1
            record(score, cfg)
            if decoder.dim:
                candidates.append((score, p_idx, k, x0, decoder))

    candidates.sort(key=lambda c: c[:3])
    candidates = candidates[:N_RESTARTS]
    for i, (score, _, _, x0, decoder) in enumerate(candidates):
        share = (budget - used) // (len(candidates) - i)
        if share < 1:
            exhausted = True
            continue

        def func(u, decoder=decoder):
            cfg = decoder(u)
            s = evaluate(cfg)
            record(s, cfg)
            return s

        _, _, n = nelder_mead(func, x0, share, f_x0=score)
        used += n
        exhausted = exhausted or n >= share

    before = band_metrics(
        sweep(traditional_builder(base, spec), sweep_cfg, z_ref),
        spec.f0, spec.delta, obj.harmonic_window,
    )
    after = band_metrics(
        sweep(proposed_builder(base, best_cfg, spec), sweep_cfg, z_ref),
        spec.f0, spec.delta, obj.harmonic_window,
    )
    return OptimizationResult(
        best=best_cfg,
        score=score_metrics(after, obj),
        metrics_before=before,
        metrics_after=after,
        evaluations=used,
        exhausted=exhausted,
        history=tuple(history),
    )
