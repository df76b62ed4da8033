"""Quadratic form, energy, action, Nehari functional, gradients, EL residuals.

On the decomposition u = phi + q G_{lam,nu} the quadratic form reads

    Q(u) = ||grad phi||_2^2 + nu || |x|^{-1/2} phi ||_2^2
           + lam (||phi||_2^2 - ||u||_2^2) + (alpha + theta(lam, nu)) |q|^2,

and is invariant under re-decomposing the same u at a different admissible
shift.  Energy, action and Nehari functional are

    F(u) = Q(u)/2 - ||u||_p^p / p,
    S(u) = F(u) + (omega/2) ||u||_2^2,
    I(u) = Q(u) + omega ||u||_2^2 - ||u||_p^p.

All gradients are exact derivatives of the discretized functionals with
respect to the node values of phi and to q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import (
    DecomposedState,
    RadialFunction,
    coulomb_term,
    grad_norm_sq,
    lp_pow,
)
from .specfun import DEFAULT_CFG, SpecFunConfig
from .spectral import PhysParams, theta

__all__ = [
    "FormValue",
    "q_form",
    "energy",
    "action",
    "nehari",
    "nehari_project",
    "gradient",
    "el_residual",
]


@dataclass(frozen=True)
class FormValue:
    """Assembled quadratic form and its four constituents.

    coulomb carries the sign of nu; q_form is exactly the sum of the other
    four fields.
    """

    q_form: float
    kinetic: float
    coulomb: float
    shift_term: float
    point_term: float


def _check_params(u: DecomposedState, params: PhysParams):
    if u.nu != params.nu:
        raise ValueError(
            f"state charge nu={u.nu} does not match parameter set nu={params.nu}"
        )


def q_form(
    u: DecomposedState, params: PhysParams, cfg: SpecFunConfig = DEFAULT_CFG
) -> FormValue:
    """Quadratic form of the point-interaction extension on a decomposed state."""
    _check_params(u, params)
    kin = grad_norm_sq(u.phi)
    cou = params.nu * coulomb_term(u.phi)
    m_phi = lp_pow(u.phi, 2, cfg)
    m_u = u.mass(cfg)
    shift = u.lam * (m_phi - m_u)
    point = (params.alpha + theta(u.lam, params.nu, cfg)) * abs(u.q) ** 2
    return FormValue(
        q_form=kin + cou + shift + point,
        kinetic=kin,
        coulomb=cou,
        shift_term=shift,
        point_term=point,
    )


def energy(
    u: DecomposedState, params: PhysParams, cfg: SpecFunConfig = DEFAULT_CFG
) -> float:
    """F(u) = Q(u)/2 - ||u||_p^p / p."""
    return 0.5 * q_form(u, params, cfg).q_form - lp_pow(u, params.p, cfg) / params.p


def action(
    u: DecomposedState, params: PhysParams, cfg: SpecFunConfig = DEFAULT_CFG
) -> float:
    """S(u) = F(u) + (omega/2) ||u||_2^2; frequency mode only."""
    if params.mode != "frequency":
        raise ValueError("action requires frequency-mode parameters")
    return energy(u, params, cfg) + 0.5 * params.omega * u.mass(cfg)


def nehari(
    u: DecomposedState, params: PhysParams, cfg: SpecFunConfig = DEFAULT_CFG
) -> float:
    """I(u) = Q(u) + omega ||u||_2^2 - ||u||_p^p; frequency mode only."""
    if params.mode != "frequency":
        raise ValueError("nehari requires frequency-mode parameters")
    return (
        q_form(u, params, cfg).q_form
        + params.omega * u.mass(cfg)
        - lp_pow(u, params.p, cfg)
    )


def nehari_project(
    u: DecomposedState, params: PhysParams, cfg: SpecFunConfig = DEFAULT_CFG
) -> tuple[float, DecomposedState]:
    """Radial projection beta u onto the Nehari set I = 0.

    beta = ((Q + omega m)/||u||_p^p)^(1/(p-2)); requires a positive quadratic
    part, which holds whenever omega > omega_nu and u != 0.
    """
    if params.mode != "frequency":
        raise ValueError("nehari_project requires frequency-mode parameters")
    quad = q_form(u, params, cfg).q_form + params.omega * u.mass(cfg)
    pw = lp_pow(u, params.p, cfg)
    if pw <= 0.0:
        raise ValueError("cannot project the zero state onto the Nehari set")
    if quad <= 0.0:
        raise ValueError(
            "nonpositive quadratic part Q + omega m; omega may not exceed omega_nu "
            "or the state is degenerate"
        )
    beta = (quad / pw) ** (1.0 / (params.p - 2.0))
    scaled = DecomposedState(
        RadialFunction(u.grid, beta * u.phi.values, u.phi.kind),
        beta * u.q,
        u.lam,
        u.nu,
    )
    return beta, scaled


def _gradient_arrays(
    u: DecomposedState, params: PhysParams, mode: str, cfg: SpecFunConfig
) -> tuple[np.ndarray, float]:
    _check_params(u, params)
    if np.iscomplexobj(u.phi.values) or isinstance(u.q, complex):
        raise ValueError("gradients are implemented for gauge-fixed real states")
    g = u.grid
    phi = u.phi.values
    gt = u.green(cfg)
    uv = phi + u.q * gt
    w = g.w
    lam = u.lam
    th = theta(lam, params.nu, cfg)

    # dQ/dphi_i = 2 (A phi)_i + 2 nu w_line_i phi_i - 2 lam w_i q g_i
    dq_phi = 2.0 * (g.stiffness @ phi) + 2.0 * params.nu * g.w_line * phi - 2.0 * lam * w * u.q * gt
    # dQ/dq = -2 lam <u, g>_w + 2 (alpha + theta) q
    dq_q = -2.0 * lam * float(w @ (uv * gt)) + 2.0 * (params.alpha + th) * u.q
    # dP/d. with P = ||u||_p^p / p
    nl = np.abs(uv) ** (params.p - 2.0) * uv
    dp_phi = w * nl
    dp_q = float(w @ (nl * gt))

    d_phi = 0.5 * dq_phi - dp_phi
    d_q = 0.5 * dq_q - dp_q
    if mode == "action":
        d_phi = d_phi + params.omega * w * uv
        d_q = d_q + params.omega * float(w @ (uv * gt))
    elif mode != "energy":
        raise ValueError("mode must be 'energy' or 'action'")
    return d_phi, d_q


def gradient(
    u: DecomposedState,
    params: PhysParams,
    mode: str = "energy",
    cfg: SpecFunConfig = DEFAULT_CFG,
) -> tuple[RadialFunction, float]:
    """Exact first variation of F (mode='energy') or S (mode='action').

    Returned per node value of phi, i.e. dF/dphi_i of the discrete functional
    (carries one factor of the quadrature weight), plus dF/dq.
    """
    d_phi, d_q = _gradient_arrays(u, params, mode, cfg)
    return RadialFunction(u.grid, d_phi, "generic"), d_q


def el_residual(
    u: DecomposedState,
    params: PhysParams,
    omega: float,
    cfg: SpecFunConfig = DEFAULT_CFG,
) -> tuple[float, float]:
    """Bound-state equation residuals of a candidate state at frequency omega.

    res_pde: grid L2 norm over interior nodes of
        -Lap phi + nu phi/|x| + omega phi + (omega - lam) q G - |u|^{p-2} u,
    normalized by ||u||_2, with -Lap the grid's variational radial Laplacian.
    res_bc: defect of the extension condition phi(0) = q (alpha + theta),
    with phi(0) extrapolated linearly from the ten smallest nodes.
    """
    _check_params(u, params)
    g = u.grid
    phi = u.phi.values
    gt = u.green(cfg)
    uv = phi + u.q * gt
    th = theta(u.lam, params.nu, cfg)

    el = (
        (g.stiffness @ phi) / g.w
        + params.nu * (g.w_line / g.w) * phi
        - u.lam * u.q * gt
        + omega * uv
        - np.abs(uv) ** (params.p - 2.0) * uv
    )
    interior = slice(2, g.n - 2)  # one-sided stencil rows are not a Laplacian
    mass_u = float(g.w @ np.abs(uv) ** 2)
    res_pde = math.sqrt(float(g.w[interior] @ np.abs(el[interior]) ** 2) / mass_u)

    rr = g.r[:10]
    basis = np.column_stack([np.ones_like(rr), rr])
    coef, *_ = np.linalg.lstsq(basis, phi[:10], rcond=None)
    phi0 = float(coef[0])
    res_bc = abs(phi0 - u.q * (params.alpha + th)) / max(1.0, abs(u.q))
    return res_pde, res_bc
