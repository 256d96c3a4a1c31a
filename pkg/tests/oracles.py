"""Independent reference computations used by the tests.

None of these share code with the package; they re-derive the quantities
from different formulations.
"""

import numpy as np


def chebyshev_g_by_ladder_expansion(n, ripple_db):
    """Equal-ripple g-values from a continued-fraction (Cauer) expansion.

    Builds the reflection coefficient S11 = N(s)/D(s) of the Chebyshev
    response from its poles and reflection zeros, forms the input impedance
    (D + N)/(D - N) and peels off the ladder elements by polynomial division.
    """
    eps = np.sqrt(10 ** (ripple_db / 10) - 1)
    a = np.arcsinh(1 / eps) / n
    theta = (2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n)
    poles = -np.sinh(a) * np.sin(theta) + 1j * np.cosh(a) * np.cos(theta)
    zeros = 1j * np.cos(theta)
    d = np.real(np.poly(poles))
    nn = np.real(np.poly(zeros))
    num = np.polyadd(d, nn)
    den = np.polysub(d, nn)
    den = np.trim_zeros(np.where(np.abs(den) < 1e-12 * np.abs(den).max(), 0.0, den), "f")

    g = [1.0]
    for _ in range(n):
        q, r = np.polydiv(num, den)
        g.append(q[0])
        r = np.trim_zeros(np.where(np.abs(r) < 1e-10 * np.abs(num).max(), 0.0, r), "f")
        if r.size == 0:
            last = q[1] if q.size > 1 else 0.0
            break
        num, den = den, r
    else:  # pragma: no cover
        raise RuntimeError("expansion did not terminate")
    # The constant left in the final quotient is the load immittance seen by
    # the last element; prototype tables store its dual (resistance after a
    # shunt capacitor, conductance after a series inductor).
    g.append(1.0 / last)
    return np.array(g)


def butterworth_attenuation_db(omega, n):
    return 10 * np.log10(1 + omega ** (2 * n))


def chebyshev_attenuation_db(omega, n, ripple_db):
    eps2 = 10 ** (ripple_db / 10) - 1
    t = np.polynomial.chebyshev.chebval(omega, [0] * n + [1])
    return 10 * np.log10(1 + eps2 * t * t)


def smallest_order(atten_fn, target_db, n_max=40):
    for n in range(1, n_max + 1):
        if atten_fn(n) >= target_db:
            return n
    raise ValueError("not reachable")


def abcd_tline(z, theta):
    return np.array([[np.cos(theta), 1j * z * np.sin(theta)],
                     [1j * np.sin(theta) / z, np.cos(theta)]])


def abcd_shunt(y):
    return np.array([[1, 0], [y, 1]], dtype=complex)


def abcd_inverter(j):
    return np.array([[0, -1j / j], [-1j * j, 0]])


def s_from_abcd(m, z0):
    """Via impedance parameters rather than the direct ABCD->S formulas."""
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    z = np.array([[a / c, (a * d - b * c) / c], [1 / c, d / c]])
    eye = np.eye(2)
    return (z - z0 * eye) @ np.linalg.inv(z + z0 * eye)


def abcd_coupled_from_z(z0e, z0o, theta):
    """Coupled-line bandpass section from its open-circuit impedance matrix
    (ports 2 and 4 open): Z11 = Z22 = -j/2 (Ze + Zo) cot, Z21 = -j/2 (Ze - Zo) csc."""
    z11 = -0.5j * (z0e + z0o) / np.tan(theta)
    z21 = -0.5j * (z0e - z0o) / np.sin(theta)
    return np.array([[z11 / z21, (z11 * z11 - z21 * z21) / z21],
                     [1 / z21, z11 / z21]])


def filter_response(sections, f, f0, z0, stubs=()):
    """|S| of a coupled-line filter by explicit 2x2 products at one frequency.

    ``sections`` holds (z0e, z0o) pairs, ``stubs`` (zt, fz, site) triples.
    """
    theta = np.pi / 2 * f / f0
    m = np.eye(2, dtype=complex)
    for site in range(len(sections) + 1):
        for zt, fz, s in stubs:
            if s == site:
                m = m @ abcd_shunt(1j * np.tan(np.pi / 2 * f / fz) / zt)
        if site < len(sections):
            m = m @ abcd_coupled_from_z(*sections[site], theta)
    return s_from_abcd(m, z0)
