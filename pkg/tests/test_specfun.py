import math
import warnings

import numpy as np
import pytest

from nlscd.specfun import (
    DEFAULT_CFG,
    GreenParams,
    SpecFunConfig,
    digamma,
    f_kernel,
    f_kernel_scaled,
    gamma,
    green_norm,
    green_value,
    green_values,
    kummer_m,
    phi_kernel,
    tricomi_u,
    wronskian,
)

from _oracles import EULER_GAMMA, bessel_k0_series_oracle, k0_squared_integral_oracle

# frozen oracle values (see _oracles.py for the derivations)
GAMMA_25 = 1.329340388179137          # recursion from Gamma(1/2) = sqrt(pi)
DIGAMMA_37 = 1.1671535393608388       # telescoped series, error < 1e-12
KUMMER_075_2 = 5.195503173672033      # 200-term exact-rational series
TRICOMI_06_13 = 0.7170369679949725    # composite Gauss-Legendre, 2e5 panels


def test_gamma_half_and_one():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)


def test_gamma_recursion_oracle_value():
    assert gamma(2.5) == pytest.approx(GAMMA_25, rel=1e-13)


def test_gamma_functional_equation():
    for x in (0.3, 1.7, 4.2, -0.4, -2.6):
        assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)


def test_gamma_pole():
    with pytest.raises(ValueError):
        gamma(0.0)
    with pytest.raises(ValueError):
        gamma(-3.0)


def test_digamma_half():
    assert digamma(0.5) == pytest.approx(-2.0 * math.log(2.0) - EULER_GAMMA, abs=1e-13)


def test_digamma_recurrence():
    for x in (0.2, 1.3, 7.9, 23.0, -1.5, -6.3):
        assert digamma(x + 1.0) - digamma(x) == pytest.approx(1.0 / x, rel=1e-11)


def test_digamma_series_oracle_value():
    assert digamma(3.7) == pytest.approx(DIGAMMA_37, abs=5e-12)


def test_digamma_pole():
    with pytest.raises(ValueError):
        digamma(-2.0)


def test_kummer_at_zero_and_exponential():
    assert kummer_m(0.37, 0.0) == 1.0
    for z in (0.5, 3.0, 12.0):
        assert kummer_m(1.0, z) == pytest.approx(math.exp(z), rel=1e-10)


def test_kummer_rational_series_value():
    assert kummer_m(0.75, 2.0) == pytest.approx(KUMMER_075_2, rel=1e-10)


def test_kummer_overflow():
    with pytest.raises(OverflowError):
        kummer_m(0.5, 800.0)


def test_tricomi_gl_oracle_value():
    assert tricomi_u(0.6, 1.3) == pytest.approx(TRICOMI_06_13, rel=1e-10)


def test_tricomi_domain():
    with pytest.raises(ValueError):
        tricomi_u(-0.2, 1.0)
    with pytest.raises(ValueError):
        tricomi_u(0.5, 0.0)


def test_tricomi_asymptotic_branch_consistency():
    # values straddling the switch radius must agree through the K0 identity
    cfg = SpecFunConfig(rel_tol=1e-10, asympt_switch_radius=30.0)
    for z in (29.0, 31.0, 60.0):
        # U(1/2, 1, 2x) = e^x K0(x) / sqrt(pi)
        x = 0.5 * z
        expected = math.exp(x) * bessel_k0_series_oracle(x) / math.sqrt(math.pi)
        assert tricomi_u(0.5, z, cfg) == pytest.approx(expected, rel=1e-9)


def test_green_matches_bessel_oracle():
    for lam in (1.0, 4.0):
        gp = GreenParams(lam, 0.0)
        for r in np.geomspace(1e-3, 10.0, 12):
            expected = bessel_k0_series_oracle(math.sqrt(lam) * r) / (2.0 * math.pi)
            assert green_value(gp, r) == pytest.approx(expected, rel=1e-9)


def test_green_small_r_slope():
    # G(r) + ln(r)/(2 pi) -> -(psi(a) + 2 gamma + ln(2 sqrt(lam)))/(2 pi)
    gp = GreenParams(2.0, -0.7)
    a = gp.a
    limit = -(digamma(a) + 2.0 * EULER_GAMMA + math.log(2.0 * math.sqrt(2.0))) / (
        2.0 * math.pi
    )
    for r in (1e-6, 1e-7):
        val = green_value(gp, r) + math.log(r) / (2.0 * math.pi)
        assert val == pytest.approx(limit, abs=5e-6)


def test_green_positive_decreasing():
    for lam, nu in ((1.0, -0.5), (4.0, -1.5), (2.0, 0.3)):
        gp = GreenParams(lam, nu)
        r = np.geomspace(1e-6, 50.0, 120)
        vals = green_values(gp, r)
        assert np.all(vals > 0.0)
        assert np.all(np.diff(vals) < 0.0)


def test_green_params_admissibility():
    with pytest.raises(ValueError):
        GreenParams(0.5, -1.0)  # lam <= nu^2
    GreenParams(1.0001, -1.0)  # just admissible
    GreenParams(0.5, 0.7)  # any lam > 0 for repulsive charge


def test_phi_kernel_is_scaled_green():
    gp = GreenParams(3.0, -1.2)
    for r in (0.01, 0.5, 2.0):
        assert phi_kernel(gp, r) == pytest.approx(
            math.sqrt(2.0 * math.pi * r) * green_value(gp, r), rel=1e-12
        )


def test_phi_asymptotics_coefficients():
    # Phi = -sqrt(r/(2 pi)) [ln r + psi(a) + 2 gamma + ln(2 sqrt(lam)) + nu r ln r] + O(r^{3/2})
    gp = GreenParams(2.0, -1.0)
    a = gp.a
    const = digamma(a) + 2.0 * EULER_GAMMA + math.log(2.0 * math.sqrt(2.0))
    rr = np.geomspace(1e-7, 1e-5, 12)
    resid = np.array(
        [
            -phi_kernel(gp, r) / math.sqrt(r / (2.0 * math.pi)) - (math.log(r) + const)
            for r in rr
        ]
    )
    basis = np.column_stack([rr * np.log(rr), rr])
    coef, *_ = np.linalg.lstsq(basis, resid, rcond=None)
    assert coef[0] == pytest.approx(gp.nu, rel=1e-2)


def test_f_asymptotics_leading_coefficient():
    # F(r) ~ sqrt(2 pi)/Gamma(a)^2 sqrt(r) (1 + nu r)
    gp = GreenParams(2.0, -0.8)
    lead = math.sqrt(2.0 * math.pi) / gamma(gp.a) ** 2
    for r in (1e-7, 1e-6):
        assert f_kernel(gp, r) / math.sqrt(r) == pytest.approx(
            lead * (1.0 + gp.nu * r), rel=1e-5
        )


def test_f_kernel_overflow_guard():
    gp = GreenParams(4.0, -1.0)
    with pytest.raises(OverflowError):
        f_kernel(gp, 400.0)
    # the scaled variant stays finite at the same radius
    assert math.isfinite(f_kernel_scaled(gp, 400.0))


def test_wronskian_constant_in_r():
    # central-difference Wronskian Phi F' - Phi' F, which for the printed kernel
    # normalizations equals 1/Gamma(a)^2
    gp = GreenParams(2.0, -0.7)
    expected = wronskian(gp)
    h = 1e-6
    vals = []
    for r in np.geomspace(0.01, 5.0, 12):
        dphi = (phi_kernel(gp, r + h) - phi_kernel(gp, r - h)) / (2.0 * h)
        df = (f_kernel(gp, r + h) - f_kernel(gp, r - h)) / (2.0 * h)
        vals.append(phi_kernel(gp, r) * df - dphi * f_kernel(gp, r))
    vals = np.array(vals)
    assert np.all(np.abs(vals - expected) < 1e-6 * abs(expected) + 1e-10)
    assert float(np.max(vals) - np.min(vals)) < 1e-6


def test_green_norm_bessel_value(grid2000):
    # nu = 0, lam = 1, s = 2: (2 pi)^{-1} int K0^2 r dr = 1/(4 pi)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val = green_norm(GreenParams(1.0, 0.0), 2.0, grid2000)
    oracle = k0_squared_integral_oracle() / (2.0 * math.pi)
    assert oracle == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-12)
    assert val == pytest.approx(oracle, rel=5e-8)


def test_green_norm_decreasing_in_lam(grid2000):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        vals = [green_norm(GreenParams(lam, -0.5), 2.0, grid2000) for lam in (1.0, 2.0, 4.0)]
    assert vals[0] > vals[1] > vals[2]


def test_green_norm_tail_warning():
    short = __import__("nlscd.grid", fromlist=["RadialGrid"]).RadialGrid(
        np.geomspace(1e-6, 1.5, 300)
    )
    with pytest.warns(UserWarning, match="tail"):
        green_norm(GreenParams(1.0, -0.5), 2.0, short)


def test_specfun_config_invariants():
    with pytest.raises(ValueError):
        SpecFunConfig(rel_tol=1e-5)
    with pytest.raises(ValueError):
        SpecFunConfig(quad_max_subdiv=8)


def test_determinism():
    gp = GreenParams(3.0, -1.1)
    a = [green_value(gp, r) for r in (0.1, 1.0, 5.0)]
    b = [green_value(gp, r) for r in (0.1, 1.0, 5.0)]
    assert a == b
