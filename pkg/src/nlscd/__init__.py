"""Planar focusing NLS with attractive Coulomb potential and point interaction.

Numerical library for the spectral function and Green's function of the
shifted operator, the point-interaction eigenvalue ladder, fixed-mass ground
states, Nehari action minimizers, and an executable verification suite for
the model's explicit inequalities and identities.
"""

from .specfun import (
    DEFAULT_CFG,
    GreenParams,
    SpecFunConfig,
    digamma,
    f_kernel,
    gamma,
    green_norm,
    green_value,
    green_values,
    kummer_m,
    phi_kernel,
    tricomi_u,
    wronskian,
)
from .grid import (
    DecomposedState,
    RadialFunction,
    RadialGrid,
    coulomb_term,
    grad_norm_sq,
    lp_norm,
    lp_pow,
    rearrange,
)
from .spectral import (
    PhysParams,
    SpectralReport,
    build_spectral_report,
    detect_theta_poles,
    eigenvalue_ladder,
    friedrichs_eigenvalues,
    resolvent_apply,
    small_r_log_fit,
    solve_omega_nu,
    theta,
    theta_bounds,
)
from .functionals import (
    FormValue,
    action,
    el_residual,
    energy,
    gradient,
    nehari,
    nehari_project,
    q_form,
)
from .solver import (
    CrossValidationReport,
    GroundStateReport,
    SolveConfig,
    cross_validate,
    minimize_action,
    minimize_energy,
)
from .verify import CheckResult, VerifyConfig, VerifySuiteReport, run_all

__version__ = "0.1.0"
