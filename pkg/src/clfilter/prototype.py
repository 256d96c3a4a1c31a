"""Low-pass prototype element values and order estimation.

Maximally-flat (Butterworth) and equal-ripple (Chebyshev type I) ladder
prototypes, normalized to a 1 ohm source and unit cutoff frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

MAX_ORDER = 15

# 10*log10(coth^2(x)) = ripple  ->  x = ripple / (40 / ln 10)
_DB_PER_NEPER_X4 = 40.0 / math.log(10.0)


class Family(str, Enum):
    MAXIMALLY_FLAT = "maximally-flat"
    EQUAL_RIPPLE = "equal-ripple"


@dataclass(frozen=True)
class PrototypeSpec:
    order: int
    family: Family = Family.EQUAL_RIPPLE
    ripple_db: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if isinstance(self.order, bool) or int(self.order) != self.order:
            raise ValueError(f"order must be an integer, got {self.order!r}")
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if self.order > MAX_ORDER:
            raise ValueError(f"order must be <= {MAX_ORDER}, got {self.order}")
        if self.family is Family.EQUAL_RIPPLE and not self.ripple_db > 0:
            raise ValueError(
                f"equal-ripple prototype needs ripple_db > 0, got {self.ripple_db}"
            )


@dataclass(frozen=True)
class PrototypeValues:
    """Element values ``g[0] .. g[N+1]``; ``g[0]`` is the source, ``g[N+1]`` the load."""

    g: tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.g) - 2

    def __getitem__(self, k):
        return self.g[k]

    def __len__(self):
        return len(self.g)


def lowpass_prototype(spec: PrototypeSpec) -> PrototypeValues:
    n = spec.order
    if spec.family is Family.MAXIMALLY_FLAT:
        g = [1.0]
        g += [2.0 * math.sin((2 * k - 1) * math.pi / (2 * n)) for k in range(1, n + 1)]
        g.append(1.0)
        return PrototypeValues(tuple(g))

    beta = math.log(1.0 / math.tanh(spec.ripple_db / _DB_PER_NEPER_X4))
    gamma = math.sinh(beta / (2 * n))
    a = [math.sin((2 * k - 1) * math.pi / (2 * n)) for k in range(1, n + 1)]
    b = [gamma**2 + math.sin(k * math.pi / n) ** 2 for k in range(1, n + 1)]

    g = [1.0, 2.0 * a[0] / gamma]
    for k in range(2, n + 1):
        g.append(4.0 * a[k - 2] * a[k - 1] / (b[k - 2] * g[k - 1]))
    if n % 2:
        g.append(1.0)
    else:
        g.append(1.0 / math.tanh(beta / 4.0) ** 2)
    return PrototypeValues(tuple(g))


def attenuation_db(omega: float, order: int, family, passband_ripple_db: float = 0.5) -> float:
    """Prototype insertion loss at normalized frequency ``omega``.

    Maximally-flat prototypes use the 3 dB cutoff convention, so
    ``passband_ripple_db`` only matters for equal-ripple.
    """
    family = Family(family)
    if family is Family.MAXIMALLY_FLAT:
        return 10.0 * math.log10(1.0 + omega ** (2 * order))
    eps2 = 10.0 ** (passband_ripple_db / 10.0) - 1.0
    if abs(omega) <= 1.0:
        t = math.cos(order * math.acos(omega))
    else:
        t = math.cosh(order * math.acosh(abs(omega)))
    return 10.0 * math.log10(1.0 + eps2 * t * t)


def required_order(
    passband_ripple_db: float,
    stopband_atten_db: float,
    normalized_stop_freq: float,
    family,
) -> int:
    """Smallest order whose attenuation at ``normalized_stop_freq`` reaches the target.

    ``normalized_stop_freq == 1`` is accepted: it asks for the attenuation at
    the cutoff itself.
    """
    family = Family(family)
    if not normalized_stop_freq >= 1.0:
        raise ValueError(
            f"normalized_stop_freq must be >= 1, got {normalized_stop_freq}"
        )
    if not stopband_atten_db > 0:
        raise ValueError(f"stopband_atten_db must be > 0, got {stopband_atten_db}")
    if family is Family.EQUAL_RIPPLE and not passband_ripple_db > 0:
        raise ValueError(f"passband_ripple_db must be > 0, got {passband_ripple_db}")
    for n in range(1, MAX_ORDER + 1):
        if attenuation_db(normalized_stop_freq, n, family, passband_ripple_db) >= stopband_atten_db:
            return n
    raise ValueError(
        f"{stopband_atten_db} dB at {normalized_stop_freq} needs order > {MAX_ORDER}"
    )
