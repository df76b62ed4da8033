"""Command-line interface: spectrum, groundstate, actionmin, verify, kernel-dump.

All quantities are dimensionless (the model's natural units); no unit
conversion happens here.  Reports are emitted as JSON with sorted keys and
profiles as CSV with 17 significant digits, so identical configurations and
seeds produce byte-identical outputs on a fixed platform.  Exit codes:
0 success, 1 invalid arguments (the message names the violated hypothesis),
2 solver non-convergence, 3 verification-suite failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .grid import RadialGrid
from .solver import GroundStateReport, SolveConfig, minimize_action, minimize_energy
from .specfun import DEFAULT_CFG, GreenParams, f_kernel_scaled, green_values, phi_kernel_scaled
from .spectral import PhysParams, build_spectral_report, solve_omega_nu
from .verify import VerifyConfig, run_all

__all__ = ["RunConfig", "parse_and_dispatch", "main"]

_VERBS = ("spectrum", "groundstate", "actionmin", "verify", "kernel-dump")

_CITATIONS = {
    "spectrum": [
        "the extension condition alpha + theta(lam) = 0 has a unique root above nu^2",
        "eigenvalues below -nu^2 down to 0 fill the digamma-pole intervals one root each",
        "the no-interaction limit carries the hydrogenic ladder -nu^2/(1+2n)^2",
    ],
    "groundstate": [
        "fixed-mass ground states exist for attractive charge and subcritical power",
        "ground states are positive, radially decreasing, with a logarithmic singularity "
        "of slope q/(2 pi) at the origin",
        "the multiplier satisfies omega = (||u||_p^p - Q(u))/mu and exceeds the principal "
        "point-interaction eigenvalue",
    ],
    "actionmin": [
        "action minimizers on the Nehari set exist for every frequency above the "
        "principal eigenvalue, for every power p > 2",
        "on the Nehari set the action equals (p-2)/(2p) of the p-norm power",
        "the charge and the regular part of a minimizer are both nonzero",
    ],
    "verify": [
        "each check records the mathematical fact it samples in its citation field"
    ],
    "kernel-dump": [
        "the Green's function is positive, radially decreasing, and carries a "
        "-ln(r)/(2 pi) singularity at the origin",
    ],
}


@dataclass
class RunConfig:
    verb: str
    nu: float = -1.0
    alpha: float = 0.0
    p: float = 3.0
    mu: float | None = None
    omega: float | None = None
    nodes: int = 2000
    rmin: float = 1e-6
    rmax: float | None = None
    restarts: int = 3
    seed: int = 42
    tol: float = 1e-7
    json_path: str | None = None
    csv_path: str | None = None
    only: str | None = None

    def __post_init__(self):
        if self.verb not in _VERBS:
            raise ValueError(f"unknown verb {self.verb!r}; expected one of {_VERBS}")


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); keep 2 for solvers
        raise _CliError(message)


def _build_parser() -> _Parser:
    ap = _Parser(
        prog="nlscd",
        description="ground states and action minimizers of the planar focusing "
        "NLS with attractive Coulomb potential and a point interaction",
    )
    ap.add_argument("verb", choices=_VERBS)
    ap.add_argument("--config", help="JSON file with flag defaults (flags override)")
    ap.add_argument("--nu", type=float, help="Coulomb charge (attractive: nu < 0)")
    ap.add_argument("--alpha", type=float, help="point-interaction extension parameter")
    ap.add_argument("--p", type=float, help="nonlinearity power (> 2)")
    ap.add_argument("--mu", type=float, help="mass constraint (mass mode)")
    ap.add_argument("--omega", type=float, help="frequency (frequency mode; also the "
                    "shift of kernel-dump)")
    ap.add_argument("--nodes", type=int, help="radial grid nodes (default 2000)")
    ap.add_argument("--rmin", type=float, help="innermost radius (default 1e-6)")
    ap.add_argument("--rmax", type=float, help="domain radius (default 40/sqrt(lam_ref))")
    ap.add_argument("--restarts", type=int, help="randomized solver restarts (>= 3)")
    ap.add_argument("--seed", type=int, help="seed for the randomized restarts")
    ap.add_argument("--tol", type=float, help="solver projected-gradient tolerance")
    ap.add_argument("--json", dest="json_path", help="write the JSON report here")
    ap.add_argument("--csv", dest="csv_path", help="write the CSV profile here")
    ap.add_argument("--only", help="restrict the verify suite to matching check names")
    return ap


def _load_config(ns: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if ns.config:
        with open(ns.config) as fh:
            file_conf = json.load(fh)
        if not isinstance(file_conf, dict):
            raise _CliError("config file must hold a JSON object of flag values")
        values.update(file_conf)
    for key in (
        "nu", "alpha", "p", "mu", "omega", "nodes", "rmin", "rmax",
        "restarts", "seed", "tol", "json_path", "csv_path", "only",
    ):
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    values.pop("verb", None)
    return RunConfig(verb=ns.verb, **values)


def _thread_cap() -> int:
    raw = os.environ.get("NLSCD_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: str, header: str, columns: list[np.ndarray]) -> None:
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in zip(*columns):
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


def _params_payload(conf: RunConfig) -> dict:
    return {
        "nu": conf.nu,
        "alpha": conf.alpha,
        "p": conf.p,
        "mu": conf.mu,
        "omega": conf.omega,
        "nodes": conf.nodes,
        "rmin": conf.rmin,
        "rmax": conf.rmax,
        "restarts": conf.restarts,
        "seed": conf.seed,
        "tol": conf.tol,
    }


def _grid_for(conf: RunConfig, lam_ref: float) -> RadialGrid:
    return RadialGrid.default(
        nodes=conf.nodes, r_min=conf.rmin, r_max=conf.rmax, lam_ref=lam_ref
    )


def _report_payload(rep: GroundStateReport) -> dict:
    return {
        "energy": rep.energy,
        "multiplier": rep.multiplier,
        "action_at_omega": rep.action_at_omega,
        "mass": rep.mass,
        "q": rep.q,
        "lam": rep.state.lam,
        "res_pde": rep.res_pde,
        "res_bc": rep.res_bc,
        "positive": rep.positive,
        "radially_nonincreasing": rep.radially_nonincreasing,
        "log_slope": rep.log_slope,
        "log_slope_expected": rep.log_slope_expected,
        "energy_h1": rep.energy_h1,
        "action_h1": rep.action_h1,
        "d_value": rep.d_value,
        "converged": rep.converged,
        "iterations": rep.iterations,
        "pg_norm": rep.pg_norm,
        "restart_energies": rep.restart_energies,
        "q_collapsed": rep.q_collapsed,
    }


def _emit_profile(conf: RunConfig, rep: GroundStateReport) -> None:
    if not conf.csv_path:
        return
    grid = rep.state.grid
    phi = rep.state.phi.values
    green = rep.state.q * rep.state.green()
    _write_csv(conf.csv_path, "r,phi,green,u", [grid.r, phi, green, phi + green])


def _run_spectrum(conf: RunConfig) -> int:
    if conf.nu >= 0.0:
        raise _CliError("the spectrum verb requires an attractive charge nu < 0 "
                        "(no eigenvalue ladder otherwise)")
    params = PhysParams(conf.nu, conf.alpha, conf.p, omega=0.0)
    rep = build_spectral_report(params, count=6)
    payload = {
        "verb": "spectrum",
        "params": _params_payload(conf),
        "results": {
            "omega_nu": rep.omega_nu,
            "ladder": rep.ladder,
            "friedrichs": rep.friedrichs,
            "residuals": rep.residuals,
        },
        "diagnostics": {"thread_cap": _thread_cap()},
        "citations": _CITATIONS["spectrum"],
    }
    _write_json(conf.json_path, payload)
    return 0


def _run_groundstate(conf: RunConfig) -> int:
    if conf.mu is None:
        raise _CliError("groundstate requires --mu (fixed-mass mode)")
    if conf.nu >= 0.0:
        raise _CliError("ground states require an attractive charge nu < 0")
    if not (2.0 < conf.p < 4.0):
        raise _CliError("mass mode requires 2 < p < 4 (L2-subcritical nonlinearity "
                        "hypothesis for existence at every mass)")
    params = PhysParams(conf.nu, conf.alpha, conf.p, mu=conf.mu)
    grid = _grid_for(conf, lam_ref=max(1.0, conf.nu**2))
    cfg = SolveConfig(grad_tol=conf.tol, restarts=conf.restarts, seed=conf.seed)
    rep = minimize_energy(params, grid, cfg)
    payload = {
        "verb": "groundstate",
        "params": _params_payload(conf),
        "results": _report_payload(rep),
        "diagnostics": {"thread_cap": _thread_cap(), "grid_nodes": grid.n,
                        "grid_rmax": grid.r_max},
        "citations": _CITATIONS["groundstate"],
    }
    _write_json(conf.json_path, payload)
    _emit_profile(conf, rep)
    return 0 if rep.converged else 2


def _run_actionmin(conf: RunConfig) -> int:
    if conf.omega is None:
        raise _CliError("actionmin requires --omega (fixed-frequency mode)")
    if conf.nu >= 0.0:
        raise _CliError("action minimizers require an attractive charge nu < 0")
    if conf.p <= 2.0:
        raise _CliError("the nonlinearity power must satisfy p > 2")
    probe = PhysParams(conf.nu, conf.alpha, conf.p, omega=conf.omega)
    om_nu = solve_omega_nu(probe)
    if not conf.omega > om_nu:
        raise _CliError(
            f"action mode requires omega > omega_nu = {om_nu:.12g} (existence "
            "hypothesis: the frequency must exceed the principal eigenvalue)"
        )
    grid = _grid_for(conf, lam_ref=max(1.0, conf.nu**2, conf.omega))
    cfg = SolveConfig(grad_tol=conf.tol, restarts=conf.restarts, seed=conf.seed)
    rep = minimize_action(probe, grid, cfg)
    payload = {
        "verb": "actionmin",
        "params": _params_payload(conf),
        "results": _report_payload(rep),
        "diagnostics": {"thread_cap": _thread_cap(), "grid_nodes": grid.n,
                        "grid_rmax": grid.r_max, "omega_nu": om_nu},
        "citations": _CITATIONS["actionmin"],
    }
    _write_json(conf.json_path, payload)
    _emit_profile(conf, rep)
    return 0 if rep.converged else 2


def _run_verify(conf: RunConfig) -> int:
    rep = run_all(VerifyConfig(seed=conf.seed, only=conf.only))
    payload = {
        "verb": "verify",
        "params": _params_payload(conf),
        "results": rep.to_dict(),
        "diagnostics": {"thread_cap": _thread_cap()},
        "citations": _CITATIONS["verify"],
    }
    _write_json(conf.json_path, payload)
    return 0 if rep.passed else 3


def _run_kernel_dump(conf: RunConfig) -> int:
    lam = conf.omega if conf.omega is not None else max(1.0, 4.0 * conf.nu**2)
    try:
        gp = GreenParams(lam, conf.nu)
    except ValueError as exc:
        raise _CliError(str(exc)) from exc
    if not conf.csv_path:
        raise _CliError("kernel-dump requires --csv for the table")
    grid = _grid_for(conf, lam_ref=max(1.0, lam))
    g = green_values(gp, grid.r)
    phi = np.array([phi_kernel_scaled(gp, r) for r in grid.r]) * np.exp(
        -gp.sqrt_lam * grid.r
    )
    f = np.array([f_kernel_scaled(gp, r) for r in grid.r]) * np.exp(
        np.minimum(gp.sqrt_lam * grid.r, 700.0)
    )
    _write_csv(conf.csv_path, "r,G,Phi,F", [grid.r, g, phi, f])
    payload = {
        "verb": "kernel-dump",
        "params": _params_payload(conf),
        "results": {"lam": lam, "nu": conf.nu, "rows": grid.n, "csv": conf.csv_path},
        "diagnostics": {"thread_cap": _thread_cap()},
        "citations": _CITATIONS["kernel-dump"],
    }
    _write_json(conf.json_path, payload)
    return 0


_DISPATCH = {
    "spectrum": _run_spectrum,
    "groundstate": _run_groundstate,
    "actionmin": _run_actionmin,
    "verify": _run_verify,
    "kernel-dump": _run_kernel_dump,
}


def parse_and_dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        conf = _load_config(ns)
        return _DISPATCH[conf.verb](conf)
    except _CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        sys.stderr.write(parser.format_usage())
        return 1
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(parse_and_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
