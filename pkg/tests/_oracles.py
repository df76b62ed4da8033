"""Independent oracles used to freeze expected values.

Everything here is deliberately computed by a different route than the
library: exact-rational series, high-precision ascending series, telescoped
digamma sums, composite Gauss-Legendre brute force.  None of it calls back
into nlscd.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp
import numpy as np

EULER_GAMMA = 0.5772156649015328606065120900824024


def gamma_recursion_oracle(x: float) -> float:
    """Gamma(x) for x = n + 1/2 or integer x, by recursion from Gamma(1/2) and Gamma(1)."""
    if x == math.floor(x):
        n = int(x)
        assert n >= 1
        out = 1.0
        for k in range(2, n):
            out *= k
        return out
    assert (x - 0.5) == math.floor(x - 0.5)
    out = math.sqrt(math.pi)
    t = 0.5
    while t < x:
        out *= t
        t += 1.0
    return out


def digamma_series_oracle(x: float, terms: int = 2_000_000) -> float:
    """psi(x) = -gamma + sum_k (1/(k+1) - 1/(k+x)), telescoped tail correction.

    The truncated tail equals psi(terms + x) - psi(terms + 1), estimated by the
    two-term asymptotic expansion; the total error is O(terms^-3).
    """
    k = np.arange(terms, dtype=float)
    s = float(np.sum(1.0 / (k + 1.0) - 1.0 / (k + x)))
    kk = float(terms)
    tail = math.log((kk + x) / (kk + 1.0)) + 0.5 / (kk + x) - 0.5 / (kk + 1.0)
    return -EULER_GAMMA + s + tail


def kummer_rational_series_oracle(a_num: int, a_den: int, z_num: int, z_den: int,
                                  terms: int = 200) -> float:
    """M(a, 1, z) by an exact-rational ascending series, 200 terms."""
    a = Fraction(a_num, a_den)
    z = Fraction(z_num, z_den)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(terms):
        term = term * (a + k) * z / ((k + 1) * (k + 1))
        total += term
    return float(total)


def tricomi_gl_oracle(a: float, z: float, panels: int = 200_000, order: int = 10) -> float:
    """Gamma(a) U(a,1,z) / Gamma(a) by brute-force composite Gauss-Legendre.

    Integrates exp(-z t) t^(a-1) (1+t)^(-a) over (0, T) with the substitution
    t = y^(1/a) on (0,1) and plain t on (1, T), T chosen so the discarded tail
    is below 1e-16 of the value.
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)

    def composite(f, lo, hi, n_panels):
        edges = np.linspace(lo, hi, n_panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
        half = 0.5 * (edges[1:] - edges[:-1])[:, None]
        x = mid + half * nodes[None, :]
        return float(np.sum(half * weights[None, :] * f(x)))

    inv_a = 1.0 / a

    def inner(y):
        t = np.power(np.maximum(y, 1e-300), inv_a)
        return np.exp(-z * t) * np.power(1.0 + t, -a)

    t_max = max(3.0, 60.0 / z)
    def outer(t):
        return np.exp(-z * t) / t * np.power(t / (1.0 + t), a)

    val = composite(inner, 0.0, 1.0, panels // 2) / a
    val += composite(outer, 1.0, t_max, panels // 2)
    return val / float(mp.gamma(a))


def bessel_k0_series_oracle(x: float, dps: int = 50) -> float:
    """K0(x) by its ascending log series at high precision (not mp.besselk).

    K0 = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} (x^2/4)^k / (k!)^2 * H_k.
    """
    with mp.workdps(dps):
        xx = mp.mpf(x)
        q = xx * xx / 4
        i0 = mp.mpf(1)
        term = mp.mpf(1)
        ssum = mp.mpf(0)
        h = mp.mpf(0)
        for k in range(1, 200):
            term = term * q / (k * k)
            i0 += term
            h += mp.mpf(1) / k
            ssum += term * h
            if term < mp.mpf(10) ** (-dps - 10) * (1 + i0):
                break
        val = -(mp.log(xx / 2) + mp.euler) * i0 + ssum
        return float(val)


def k0_squared_integral_oracle() -> float:
    """int_0^infty K0(r)^2 r dr by high-precision quadrature (known value 1/2)."""
    with mp.workdps(30):
        v = mp.quad(lambda r: mp.besselk(0, r) ** 2 * r, [0, 1, 5, 40])
        return float(v)


def ladder_dense_scan_oracle(nu: float, alpha: float, theta_fn, n_grid: int = 400_000):
    """Sign changes of alpha + theta(lam) on a dense log grid of shifts.

    Returns the eigenvalues -lam at every (-,+) crossing, coarse (grid-limited)
    but independent of the bracketing logic under test.
    """
    lams = np.geomspace(nu * nu * 1e-4, nu * nu * 1e4, n_grid)
    vals = np.array([alpha + theta_fn(l, nu) for l in lams])
    roots = []
    for i in range(len(lams) - 1):
        if vals[i] < 0.0 < vals[i + 1]:
            roots.append(-0.5 * (lams[i] + lams[i + 1]))
    roots.sort()
    return roots
