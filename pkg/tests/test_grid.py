import math

import numpy as np
import pytest

from nlscd.grid import (
    DecomposedState,
    RadialFunction,
    RadialGrid,
    coulomb_term,
    grad_norm_sq,
    lp_norm,
    lp_pow,
    measure_above,
    rearrange,
)

from _oracles import k0_squared_integral_oracle


def test_grid_invariants(grid2000):
    g = grid2000
    assert np.all(g.w > 0.0)
    assert np.all(np.diff(g.r) > 0.0)
    assert g.r[0] <= 1e-5 * g.r_max
    # total weight is the disk area
    assert float(np.sum(g.w)) == pytest.approx(math.pi * g.r_max**2, rel=1e-10)


def test_quadrature_polynomial_exactness(grid2000):
    g = grid2000
    for k in range(3):
        exact = 2.0 * math.pi * g.r_max ** (k + 2) / (k + 2)
        assert float(g.w @ g.r**k) == pytest.approx(exact, rel=1e-8)


def test_bad_grids_rejected():
    with pytest.raises(ValueError):
        RadialGrid(np.linspace(0.0, 1.0, 100))  # r_1 = 0
    with pytest.raises(ValueError):
        RadialGrid(np.geomspace(1e-3, 10.0, 100))  # r_1 too large for r_max


def test_lp_constant_on_disk(grid2000):
    g = grid2000
    c = 0.7
    f = RadialFunction(g, np.full(g.n, c))
    assert lp_pow(f, 2.0) == pytest.approx(math.pi * g.r_max**2 * c**2, rel=1e-10)
    assert lp_norm(f, 2.0) == pytest.approx(
        math.sqrt(math.pi * g.r_max**2) * c, rel=1e-10
    )


def test_lp_gaussian(grid2000):
    g = grid2000
    f = RadialFunction(g, np.exp(-g.r**2))
    assert lp_pow(f, 2.0) == pytest.approx(math.pi / 2.0, rel=1e-9)


def test_lp_green_matches_bessel(grid2000):
    st = DecomposedState(
        RadialFunction(grid2000, np.zeros(grid2000.n), "h1_component"), 1.0, 1.0, 0.0
    )
    oracle = k0_squared_integral_oracle() / (2.0 * math.pi)
    assert lp_pow(st, 2.0) == pytest.approx(oracle, rel=5e-8)


def test_grad_norm_constant_and_gaussian(grid2000):
    g = grid2000
    assert grad_norm_sq(RadialFunction(g, np.full(g.n, 2.3), "h1_component")) < 1e-18
    phi = RadialFunction(g, np.exp(-0.5 * g.r**2), "h1_component")
    assert grad_norm_sq(phi) == pytest.approx(math.pi, rel=1e-9)


def test_grad_norm_grid_refinement():
    vals = []
    for n in (500, 1000, 2000):
        g = RadialGrid.default(n)
        phi = RadialFunction(g, np.exp(-0.5 * g.r**2), "h1_component")
        vals.append(grad_norm_sq(phi))
    errs = [abs(v - math.pi) for v in vals]
    assert errs[1] < errs[0] and errs[2] < errs[1]


def test_coulomb_exponential(grid2000):
    phi = RadialFunction(grid2000, np.exp(-grid2000.r), "h1_component")
    assert coulomb_term(phi) == pytest.approx(math.pi, rel=1e-9)


def test_coulomb_scaling(grid2000):
    # phi(r/s) multiplies the integral by s
    g = grid2000
    s = 2.0
    a = coulomb_term(RadialFunction(g, np.exp(-g.r), "h1_component"))
    b = coulomb_term(RadialFunction(g, np.exp(-g.r / s), "h1_component"))
    assert b == pytest.approx(s * a, rel=1e-8)


def test_decomposed_state_admissibility(grid2000):
    phi = RadialFunction(grid2000, np.zeros(grid2000.n), "h1_component")
    with pytest.raises(ValueError):
        DecomposedState(phi, 1.0, 0.5, -1.0)  # lam <= nu^2
    st = DecomposedState(phi, 1.0, 4.0, -1.0)
    assert math.isfinite(st.mass())


def test_redecompose_preserves_values(grid2000):
    rng = np.random.default_rng(0)
    phi = RadialFunction(
        grid2000, np.exp(-grid2000.r**2) * rng.uniform(0.5, 1.5), "h1_component"
    )
    st = DecomposedState(phi, 0.8, 4.0, -1.0)
    st2 = st.redecompose(8.0)
    u1 = st.assemble().values
    u2 = st2.assemble().values
    assert np.max(np.abs(u1 - u2)) < 1e-13 * np.max(np.abs(u1))


def test_nonfinite_rejected(grid2000):
    vals = np.zeros(grid2000.n)
    vals[5] = np.nan
    with pytest.raises(ValueError):
        RadialFunction(grid2000, vals)


def test_rearrange_decreasing_fixed_point(grid2000):
    g = grid2000
    f = RadialFunction(g, np.exp(-g.r))
    fs = rearrange(f)
    assert np.max(np.abs(fs.values - f.values)) < 1e-12


def test_rearrange_idempotent(grid2000):
    g = grid2000
    rng = np.random.default_rng(3)
    vals = np.exp(-((g.r - 2.0) ** 2)) + 0.4 * np.exp(-5.0 * (g.r - 0.5) ** 2)
    fs = rearrange(RadialFunction(g, vals))
    fss = rearrange(fs)
    assert np.max(np.abs(fss.values - fs.values)) <= 1e-13 * np.max(fs.values)


def test_rearrange_negative_rejected(grid2000):
    vals = -np.ones(grid2000.n)
    with pytest.raises(ValueError):
        rearrange(RadialFunction(grid2000, vals))


def test_rearrange_mass_and_norms(grid2000):
    g = grid2000
    rng = np.random.default_rng(11)
    for _ in range(5):
        vals = np.zeros(g.n)
        for _ in range(3):
            vals += rng.uniform(0.1, 1.0) * np.exp(
                -rng.uniform(0.5, 4.0) * (g.r - rng.uniform(0.0, 3.0)) ** 2
            )
        f = RadialFunction(g, vals)
        fs = rearrange(f)
        assert np.all(np.diff(fs.values) <= 0.0)
        assert float(g.w @ fs.values) == pytest.approx(float(g.w @ vals), rel=1e-13)
        for p in (2.0, 3.0):
            assert lp_pow(fs, p) == pytest.approx(lp_pow(f, p), rel=2e-4)


def test_rearrange_hardy_littlewood(grid2000):
    g = grid2000
    rng = np.random.default_rng(21)
    for _ in range(20):
        a = rng.uniform(0.2, 1.0) * np.exp(
            -rng.uniform(0.5, 3.0) * (g.r - rng.uniform(0, 3)) ** 2
        )
        b = rng.uniform(0.2, 1.0) * np.exp(
            -rng.uniform(0.5, 3.0) * (g.r - rng.uniform(0, 3)) ** 2
        )
        fa, fb = RadialFunction(g, a), RadialFunction(g, b)
        ra, rb = rearrange(fa), rearrange(fb)
        lhs = float(g.w @ (a * b))
        rhs = float(g.w @ (ra.values * rb.values))
        assert lhs <= rhs * (1.0 + 1e-12) + 1e-14


def test_measure_above(grid2000):
    g = grid2000
    f = RadialFunction(g, np.exp(-g.r))
    # {e^-r > t} is the disk of radius -ln t, up to the cell at the crossing
    for t in (0.1, 0.5):
        assert measure_above(f, t) == pytest.approx(
            math.pi * math.log(t) ** 2, rel=1e-2
        )
