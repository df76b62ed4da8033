"""Spectral function theta, point-interaction eigenvalues, and the resolvent.

The scalar function

    theta(lam, nu) = (1/2 pi) [ psi(1/2 + nu/(2 sqrt(lam))) + 2 EulerGamma
                                + ln(2 sqrt(lam)) ]

is strictly increasing in lam on (nu^2, inf) and sweeps all of R there, so the
extension condition alpha + theta = 0 has a unique root omega_nu above nu^2;
below nu^2 it sweeps all of R again between consecutive digamma poles, which
produces the infinite ladder of eigenvalues E_k = -lam_k accumulating at 0.
The poles themselves sit exactly at the hydrogenic ladder -nu^2/(1+2n)^2 of
the Friedrichs extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .grid import RadialFunction, RadialGrid
from .specfun import (
    DEFAULT_CFG,
    GreenParams,
    SpecFunConfig,
    digamma,
    f_kernel_scaled,
    phi_kernel_scaled,
    wronskian,
)

__all__ = [
    "PhysParams",
    "SpectralReport",
    "theta",
    "theta_bounds",
    "solve_omega_nu",
    "eigenvalue_ladder",
    "friedrichs_eigenvalues",
    "detect_theta_poles",
    "resolvent_apply",
    "small_r_log_fit",
    "build_spectral_report",
]

_EULER_GAMMA = 0.5772156649015328606
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysParams:
    """Problem constants: charge nu, extension parameter alpha, power p, and
    exactly one of mass mu (fixed-mass mode) or frequency omega (fixed-frequency
    mode)."""

    nu: float
    alpha: float
    p: float
    mu: float | None = None
    omega: float | None = None

    def __post_init__(self):
        if not self.p > 2.0:
            raise ValueError("nonlinearity power must satisfy p > 2")
        if (self.mu is None) == (self.omega is None):
            raise ValueError("exactly one of mu (mass mode) or omega (frequency mode) required")
        if self.mu is not None and not self.mu > 0.0:
            raise ValueError("mass mu must be positive")
        for name in ("nu", "alpha", "p"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def mode(self) -> str:
        return "mass" if self.mu is not None else "frequency"

    def with_omega(self, omega: float) -> "PhysParams":
        return PhysParams(self.nu, self.alpha, self.p, mu=None, omega=omega)

    def with_mu(self, mu: float) -> "PhysParams":
        return PhysParams(self.nu, self.alpha, self.p, mu=mu, omega=None)


@dataclass
class SpectralReport:
    """Principal eigenvalue, point-interaction ladder, and Friedrichs ladder."""

    omega_nu: float
    ladder: list[float]
    friedrichs: list[float]
    residuals: list[float] = field(default_factory=list)
    brackets: list[tuple[float, float]] = field(default_factory=list)


def _tricomi_a(lam: float, nu: float) -> float:
    return 0.5 + nu / (2.0 * math.sqrt(lam))


def theta(lam: float, nu: float, cfg: SpecFunConfig = DEFAULT_CFG) -> float:
    """The spectral function; +inf sentinel exactly on a digamma pole.

    Finite for every lam > 0 with 1/2 + nu/(2 sqrt(lam)) off the nonpositive
    integers; the sentinel is the left-in-lam limit (theta -> +inf as lam
    increases into a pole).
    """
    if not lam > 0.0:
        raise ValueError("theta requires lam > 0")
    a = _tricomi_a(lam, nu)
    if a <= 0.0 and a == math.floor(a):
        return math.inf
    return (digamma(a, cfg) + 2.0 * _EULER_GAMMA + math.log(2.0 * math.sqrt(lam))) / _TWO_PI


def theta_bounds(lam: float, nu: float) -> tuple[float, float]:
    """Elementary sandwich for theta from 1/(2x) <= ln x - psi(x) <= 1/x."""
    if not lam > nu * nu:
        raise ValueError("theta_bounds requires lam > nu^2")
    s = math.sqrt(lam)
    lower = (math.log(s + nu) - 2.0 * s / (s + nu) + 2.0 * _EULER_GAMMA) / _TWO_PI
    upper = (math.log(s + nu) - s / (s + nu) + 2.0 * _EULER_GAMMA) / _TWO_PI
    return lower, upper


def solve_omega_nu(params: PhysParams, cfg: SpecFunConfig = DEFAULT_CFG) -> float:
    """Unique root lam > nu^2 of alpha + theta(lam, nu) = 0 for nu <= 0.

    theta is strictly increasing from -inf to +inf on (nu^2, inf), so a sign
    bracket always exists; refined by Brent to |alpha + theta| < 1e-12.
    """
    nu, alpha = params.nu, params.alpha
    if nu > 0.0:
        raise ValueError("omega_nu requires an attractive (or zero) charge nu <= 0")

    def f(lam):
        return alpha + theta(lam, nu, cfg)

    nu2 = nu * nu
    if nu < 0.0:
        lo = nu2 * (1.0 + 1e-9)
    else:
        lo = 1.0
        while f(lo) >= 0.0:
            lo /= 64.0
            if lo < 1e-280:
                raise RuntimeError("bracketing failure on the low side")
    if f(lo) >= 0.0:
        raise RuntimeError("bracketing failure: alpha + theta >= 0 at the lower edge")
    hi = max(1.0, 4.0 * nu2)
    while f(hi) <= 0.0:
        hi *= 8.0
        if hi > 1e300:
            raise RuntimeError("bracketing failure on the high side")
    root = brentq(f, lo, hi, xtol=1e-14, rtol=4.0 * np.finfo(float).eps)
    if abs(f(root)) > 1e-12:
        raise RuntimeError(f"omega_nu root residual {abs(f(root)):.2e} exceeds 1e-12")
    return float(root)


def friedrichs_eigenvalues(nu: float, n_max: int) -> list[float]:
    """Hydrogenic ladder E_n = -nu^2/(1+2n)^2, n = 0..n_max; empty unless nu < 0."""
    if nu >= 0.0:
        return []
    return [-(nu * nu) / (1 + 2 * n) ** 2 for n in range(n_max + 1)]


def _pole_lambdas(nu: float, n_max: int) -> list[float]:
    return [nu * nu / (1 + 2 * n) ** 2 for n in range(n_max + 1)]


def eigenvalue_ladder(
    params: PhysParams, count: int, cfg: SpecFunConfig = DEFAULT_CFG
) -> list[float]:
    """The `count` lowest eigenvalues E_k < 0 of alpha + theta(-E, nu) = 0.

    E_0 = -omega_nu is the unique root below -nu^2; each subsequent root is
    bracketed inside one digamma-pole interval (lam between consecutive values
    of nu^2/(1+2n)^2), where theta again spans all of R monotonically.
    """
    nu, alpha = params.nu, params.alpha
    if not nu < 0.0:
        raise ValueError("the eigenvalue ladder requires nu < 0")
    if count < 1:
        raise ValueError("count must be >= 1")
    out = [-solve_omega_nu(params, cfg)]
    poles = _pole_lambdas(nu, count)

    def f(lam):
        return alpha + theta(lam, nu, cfg)

    for k in range(1, count):
        lo = poles[k] * (1.0 + 1e-9)
        hi = poles[k - 1] * (1.0 - 1e-9)
        flo, fhi = f(lo), f(hi)
        if not (flo < 0.0 < fhi):
            raise RuntimeError(
                f"bracketing failure in pole interval {k}: f({lo})={flo}, f({hi})={fhi}"
            )
        root = brentq(f, lo, hi, xtol=1e-15 * max(1.0, hi), rtol=4.0 * np.finfo(float).eps)
        if abs(f(root)) > 1e-12:
            raise RuntimeError(f"ladder root {k} residual {abs(f(root)):.2e} exceeds 1e-12")
        out.append(-root)
    return out


def detect_theta_poles(
    nu: float, n_max: int, cfg: SpecFunConfig = DEFAULT_CFG, scan_points: int = 6000
) -> list[float]:
    """Numerically locate the poles of theta(-E, nu), returned as energies E_n.

    Scans theta on a log grid of shifts: inside each pole interval theta is
    increasing, so a sign change + -> - between neighbouring samples can only
    be a pole (a - -> + change is a zero); each pole bracket is then refined
    on 1/theta, which crosses zero continuously there.
    """
    if not nu < 0.0:
        raise ValueError("theta poles require nu < 0")
    nu2 = nu * nu
    lam_lo = 0.9 * nu2 / (2 * n_max + 3) ** 2
    lam_hi = 1.1 * nu2
    lams = np.geomspace(lam_lo, lam_hi, scan_points)
    vals = np.array([theta(l, nu, cfg) for l in lams])
    poles = []
    for i in range(len(lams) - 1):
        if vals[i] > 0.0 > vals[i + 1]:  # jump +inf -> -inf: a pole
            inv = lambda lam: 1.0 / theta(lam, nu, cfg)
            root = brentq(
                inv, lams[i], lams[i + 1], xtol=1e-15 * max(1.0, lams[i + 1]),
                rtol=4.0 * np.finfo(float).eps,
            )
            poles.append(root)
    poles.sort(reverse=True)  # descending shift = ascending ladder index
    return [-p for p in poles[: n_max + 1]]


def small_r_log_fit(
    f: RadialFunction, n_fit: int = 20
) -> tuple[float, float]:
    """Least-squares coefficients (g0, g1) of v = -g0 sqrt(r) ln r + g1 sqrt(r).

    Fit on the n_fit smallest nodes; a third basis element r^{3/2} ln r mops up
    the leading remainder of form-domain functions, which would otherwise bias
    g1 at the 1e-4 level on micro-radius nodes.
    """
    r = f.grid.r[:n_fit]
    v = f.values[:n_fit]
    basis = np.column_stack(
        [np.sqrt(r) * np.log(r), np.sqrt(r), r**1.5 * np.log(r)]
    )
    coef, *_ = np.linalg.lstsq(basis, v, rcond=None)
    return float(-coef[0]), float(coef[1])


def resolvent_apply(
    gp: GreenParams,
    g: RadialFunction,
    grid: RadialGrid,
    cfg: SpecFunConfig = DEFAULT_CFG,
) -> RadialFunction:
    """Resolvent of the s-wave operator through the two-point Green kernel.

    (R g)(r) = (1/W) [ Phi(r) int_0^r F g drho + F(r) int_r^inf Phi g drho ]
    with plain line-measure cumulative trapezoids.  Products are accumulated
    through the exponentially rescaled kernels Phi*e^{+sr}, F*e^{-sr}
    (s = sqrt(lam)), so no intermediate overflows even when F alone would.
    """
    if g.grid is not grid:
        raise ValueError("g must live on the supplied grid")
    r = grid.r
    n = grid.n
    s = gp.sqrt_lam
    phat = np.array([phi_kernel_scaled(gp, ri, cfg) for ri in r])
    fhat = np.array([f_kernel_scaled(gp, ri, cfg) for ri in r])
    gv = np.asarray(g.values, dtype=float)

    # C_i = Phi(r_i) * int_0^{r_i} F g, forward recurrence; the mixed products
    # obey Phi(r_i) F(rho) = phat_i fhat_rho e^{-s (r_i - rho)} with rho <= r_i,
    # so every exponential factor is <= 1.
    c = np.zeros(n)
    c[0] = 0.5 * r[0] * phat[0] * fhat[0] * gv[0]  # F(0) = 0 closes the first panel
    for i in range(1, n):
        h = r[i] - r[i - 1]
        decay = math.exp(-s * h)
        carry = (phat[i] / phat[i - 1]) * decay * c[i - 1]
        panel = 0.5 * h * (
            phat[i] * fhat[i - 1] * gv[i - 1] * decay + phat[i] * fhat[i] * gv[i]
        )
        c[i] = carry + panel
    # P_i = F(r_i) * int_{r_i}^{rmax} Phi g, backward recurrence
    p = np.zeros(n)
    for i in range(n - 2, -1, -1):
        h = r[i + 1] - r[i]
        decay = math.exp(-s * h)
        carry = (fhat[i] / fhat[i + 1]) * decay * p[i + 1]
        panel = 0.5 * h * (
            fhat[i] * phat[i] * gv[i]
            + fhat[i] * phat[i + 1] * gv[i + 1] * decay
        )
        p[i] = carry + panel
    out = (c + p) / wronskian(gp, cfg)
    return RadialFunction(grid, out, "generic")


def build_spectral_report(
    params: PhysParams,
    count: int = 6,
    cfg: SpecFunConfig = DEFAULT_CFG,
) -> SpectralReport:
    """Principal root, ladder, Friedrichs list, and per-root residuals."""
    ladder = eigenvalue_ladder(params, count, cfg)
    residuals = [abs(params.alpha + theta(-e, params.nu, cfg)) for e in ladder]
    return SpectralReport(
        omega_nu=-ladder[0],
        ladder=ladder,
        friedrichs=friedrichs_eigenvalues(params.nu, count - 1),
        residuals=residuals,
    )
