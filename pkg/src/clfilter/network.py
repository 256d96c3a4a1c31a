"""Ideal lossless TEM two-port elements in chain (ABCD) form.

Every constructor accepts scalar or array electrical lengths and returns a
:class:`TwoPortABCD` whose entries broadcast over them, so a whole frequency
sweep is one cascade of array-valued matrices.

Singular points are flagged rather than raised:

* ``HARD_ZERO``: an open stub is a quarter wave long (an ideal short at its
  plane). The network keeps the partial cascades in front of the first short
  (``lead``) and behind the last one (``trail``) so that the port reflections
  stay exact while ``s21`` is forced to exactly zero.
* ``DEGENERATE``: a coupled section is a multiple of a half wave long, or the
  S-parameter denominator vanishes. Entries are NaN at those points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

EPS_STUB = 1e-9  # radians


class Flag(enum.IntFlag):
    OK = 0
    HARD_ZERO = 1
    DEGENERATE = 2


def flag_name(flag: int) -> str:
    # an exact transmission zero outranks the offset evaluation it may also need
    if flag & Flag.HARD_ZERO:
        return "hard-zero"
    if flag & Flag.DEGENERATE:
        return "degenerate"
    return "ok"


def _mul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


def _where(mask, x, y):
    return tuple(np.where(mask, p, q) for p, q in zip(x, y))


def _as_complex(v):
    return np.asarray(v, dtype=complex)


@dataclass(frozen=True, eq=False)
class TwoPortABCD:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    flag: np.ndarray = np.uint8(0)
    lead: tuple | None = None
    trail: tuple | None = None

    @property
    def abcd(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def hard_zero(self):
        return (np.asarray(self.flag) & Flag.HARD_ZERO).astype(bool)

    @property
    def degenerate(self):
        return (np.asarray(self.flag) & Flag.DEGENERATE).astype(bool)

    def matrix(self) -> np.ndarray:
        """Entries stacked as an array of shape ``(..., 2, 2)``."""
        a, b, c, d = np.broadcast_arrays(*map(_as_complex, self.abcd))
        return np.stack([np.stack([a, b], -1), np.stack([c, d], -1)], -2)

    def _lead(self):
        return self.abcd if self.lead is None else self.lead

    def _trail(self):
        return self.abcd if self.trail is None else self.trail

    def __matmul__(self, other: "TwoPortABCD") -> "TwoPortABCD":
        with np.errstate(invalid="ignore", over="ignore"):
            m = _mul(self.abcd, other.abcd)
            flag = np.bitwise_or(self.flag, other.flag)
            if not (np.any(self.hard_zero) or np.any(other.hard_zero)):
                return TwoPortABCD(*m, flag=flag)
            lead = _where(self.hard_zero, self._lead(), _mul(self.abcd, other._lead()))
            trail = _where(other.hard_zero, other._trail(), _mul(self._trail(), other.abcd))
        return TwoPortABCD(*m, flag=flag, lead=lead, trail=trail)


def identity() -> TwoPortABCD:
    return TwoPortABCD(*map(_as_complex, (1, 0, 0, 1)))


def cascade(elements) -> TwoPortABCD:
    """Left-to-right chain product of two-ports."""
    elements = list(elements)
    if not elements:
        raise ValueError("cannot cascade an empty sequence of two-ports")
    out = elements[0]
    for e in elements[1:]:
        out = out @ e
    return out


def _distance_to_grid(theta, offset, period):
    theta = np.asarray(theta, dtype=float)
    k = np.round((theta - offset) / period)
    return np.abs(theta - offset - k * period)


def tline(zc: float, theta) -> TwoPortABCD:
    """Uniform line of characteristic impedance ``zc`` and electrical length ``theta``."""
    if not zc > 0:
        raise ValueError(f"zc must be > 0, got {zc}")
    theta = np.asarray(theta, dtype=float)
    cos, sin = np.cos(theta), np.sin(theta)
    return TwoPortABCD(
        _as_complex(cos), 1j * zc * sin, 1j * sin / zc, _as_complex(cos)
    )


def shunt_open_stub(zt: float, theta_t) -> TwoPortABCD:
    """Open-circuited stub in shunt; quarter-wave points are flagged as hard zeros."""
    if not zt > 0:
        raise ValueError(f"zt must be > 0, got {zt}")
    theta_t = np.asarray(theta_t, dtype=float)
    zero = _distance_to_grid(theta_t, np.pi / 2, np.pi) < EPS_STUB
    one = np.ones_like(theta_t, dtype=complex)
    nil = np.zeros_like(theta_t, dtype=complex)
    c = 1j * np.tan(theta_t) / zt
    if not np.any(zero):
        return TwoPortABCD(one, nil, c, one)
    short = (one, nil, nil, one)
    lead = _where(zero, short, (one, nil, c, one))
    flag = np.where(zero, np.uint8(Flag.HARD_ZERO), np.uint8(0))
    return TwoPortABCD(one, nil, c, one, flag=flag, lead=lead, trail=lead)


def inverter(j: float) -> TwoPortABCD:
    """Ideal admittance inverter, reciprocal form (``b = -i/J``, ``c = -i*J``)."""
    if not j > 0:
        raise ValueError(f"inverter constant must be > 0, got {j}")
    return TwoPortABCD(_as_complex(0), _as_complex(-1j / j), _as_complex(-1j * j), _as_complex(0))


def coupled_section(z0e: float, z0o: float, theta) -> TwoPortABCD:
    """Parallel-coupled line pair with the two diagonally opposite ports open."""
    if not z0e > z0o > 0:
        raise ValueError(f"need z0e > z0o > 0, got z0e={z0e}, z0o={z0o}")
    theta = np.asarray(theta, dtype=float)
    diff, total = z0e - z0o, z0e + z0o
    deg = _distance_to_grid(theta, 0.0, np.pi) < EPS_STUB
    cos, sin = np.cos(theta), np.sin(theta)
    sin = np.where(deg, np.nan, sin)
    with np.errstate(invalid="ignore"):
        a = _as_complex(total / diff * cos)
        a = np.where(deg, np.nan, a)
        b = 1j * (diff**2 - total**2 * cos**2) / (2.0 * diff * sin)
        c = 2j * sin / diff
    flag = np.where(deg, np.uint8(Flag.DEGENERATE), np.uint8(0))
    return TwoPortABCD(a, b, c, a.copy(), flag=flag)


def t_shaped_section(zc: float, zt: float, theta_c, theta_t, j: float) -> TwoPortABCD:
    """Coupled-line unit loaded by two open stubs flanking its inverter."""
    line = tline(zc, theta_c)
    stub = shunt_open_stub(zt, theta_t)
    return cascade([line, stub, inverter(j), stub, line])


@dataclass(frozen=True, eq=False)
class SMatrix:
    s11: np.ndarray
    s12: np.ndarray
    s21: np.ndarray
    s22: np.ndarray
    z_ref: float
    flag: np.ndarray = np.uint8(0)


def abcd_to_s(m: TwoPortABCD, z_ref: float) -> SMatrix:
    """Scattering parameters with both ports referenced to the real ``z_ref``."""
    if not z_ref > 0:
        raise ValueError(f"z_ref must be > 0, got {z_ref}")
    a, b, c, d = np.broadcast_arrays(*map(_as_complex, m.abcd))
    flag = np.broadcast_to(np.asarray(m.flag, dtype=np.uint8), a.shape).copy()
    zero = (flag & Flag.HARD_ZERO).astype(bool)
    bz, cz = b / z_ref, c * z_ref
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        den = a + bz + cz + d
        bad = ~zero & (~np.isfinite(den) | (den == 0))
        den = np.where(bad, np.nan, den)
        s11 = (a + bz - cz - d) / den
        s12 = 2.0 * (a * d - b * c) / den
        s21 = 2.0 / den
        s22 = (-a + bz - cz + d) / den
        if np.any(zero):
            la, lb, lc, ld = np.broadcast_arrays(*map(_as_complex, m._lead()))
            ta, tb, tc, td = np.broadcast_arrays(*map(_as_complex, m._trail()))
            s11 = np.where(zero, (lb - z_ref * ld) / (lb + z_ref * ld), s11)
            s22 = np.where(zero, (tb - z_ref * ta) / (tb + z_ref * ta), s22)
            s21 = np.where(zero, 0j, s21)
            s12 = np.where(zero, 0j, s12)
    flag[bad] |= np.uint8(Flag.DEGENERATE)
    return SMatrix(s11, s12, s21, s22, z_ref, flag if flag.ndim else flag[()])
