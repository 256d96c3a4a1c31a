"""Admittance-inverter synthesis of parallel coupled-line bandpass filters."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .prototype import PrototypeSpec, PrototypeValues, lowpass_prototype


class RealizabilityWarning(UserWarning):
    """Coupling too tight (or too loose) to build comfortably in microstrip."""


@dataclass(frozen=True)
class FilterSpec:
    f0: float
    delta: float
    z0: float = 50.0
    prototype: PrototypeSpec = field(default_factory=lambda: PrototypeSpec(3))

    def __post_init__(self):
        if not self.f0 > 0:
            raise ValueError(f"f0 must be > 0, got {self.f0}")
        if not self.z0 > 0:
            raise ValueError(f"z0 must be > 0, got {self.z0}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")

    @property
    def order(self) -> int:
        return self.prototype.order


@dataclass(frozen=True)
class SectionDesign:
    index: int
    jz0: float
    z0e: float
    z0o: float


def admittance_inverters(spec: FilterSpec, g: PrototypeValues) -> list[float]:
    """Normalized inverter constants ``Z0*J_n`` for the N+1 coupled sections."""
    if not 0 < spec.delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {spec.delta}")
    n = spec.order
    if len(g) != n + 2:
        raise ValueError(f"expected {n + 2} prototype values for order {n}, got {len(g)}")
    w = math.pi * spec.delta / 2.0
    jz0 = [math.sqrt(w / g[1])]
    jz0 += [w / math.sqrt(g[k - 1] * g[k]) for k in range(2, n + 1)]
    jz0.append(math.sqrt(w / (g[n] * g[n + 1])))
    return jz0


def even_odd_impedances(jz0: float, z0: float) -> tuple[float, float]:
    if not jz0 >= 0:
        raise ValueError(f"jz0 must be >= 0, got {jz0}")
    if not z0 > 0:
        raise ValueError(f"z0 must be > 0, got {z0}")
    if jz0 >= 1:
        warnings.warn(
            f"inverter constant jz0={jz0:.4g} >= 1 is outside the narrowband regime",
            RealizabilityWarning,
            stacklevel=2,
        )
    z0e = z0 * (1.0 + jz0 + jz0 * jz0)
    z0o = z0 * (1.0 - jz0 + jz0 * jz0)
    if z0o <= 0:
        raise ValueError(f"jz0={jz0} gives non-positive odd-mode impedance")
    return z0e, z0o


def check_realizable(
    sections, z0: float, z0e_max: float = 2.5, z0o_min: float = 0.4
) -> list[int]:
    """Warn about sections whose mode impedances fall outside the given
    multiples of ``z0``; return their indices."""
    bad = [s.index for s in sections if s.z0e > z0e_max * z0 or s.z0o < z0o_min * z0]
    if bad:
        warnings.warn(
            f"sections {bad} exceed the coupling window "
            f"(z0e > {z0e_max}*z0 or z0o < {z0o_min}*z0)",
            RealizabilityWarning,
            stacklevel=2,
        )
    return bad


def synthesize(spec: FilterSpec, g: PrototypeValues | None = None) -> list[SectionDesign]:
    if g is None:
        g = lowpass_prototype(spec.prototype)
    sections = []
    for n, j in enumerate(admittance_inverters(spec, g), start=1):
        z0e, z0o = even_odd_impedances(j, spec.z0)
        sections.append(SectionDesign(n, j, z0e, z0o))
    check_realizable(sections, spec.z0)
    return sections
