"""Benchmark problems: initial data, exact-solution hooks, and diagnostics.

Six standard configurations are provided:

* ``vortex``          - isentropic vortex advected diagonally across a
                        periodic box; smooth, used for convergence studies.
* ``riemann1``        - four-quadrant Riemann problem with shocks meeting at
                        the origin (mushroom cap / Kelvin-Helmholtz roll-up).
* ``riemann2``        - four-quadrant problem with two weak shocks and two
                        contacts.
* ``dmr``             - double Mach reflection of a Mach 10 shock inclined
                        at 60 degrees over a reflecting wall.
* ``odd_even``        - Mach 6 shock running down a long duct with an
                        odd-even density perturbation on the centerline;
                        classic grid-aligned shock instability trigger.
* ``standing_shock``  - steady Mach 6 normal shock held in a short duct with
                        a single-cell seed perturbation; carbuncle trigger.

Everything case-specific (domains, states, boundary conditions, perturbation
seeds) lives here; the solver modules stay problem-agnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .boundaries import (
    BoundarySpec,
    FixedState,
    InflowWallSplit,
    MovingShockTop,
    Periodic,
    ReflectiveWall,
    SupersonicInflow,
    Transmissive,
)
from .solver import Field, Grid
from .state import (
    RHO,
    VY,
    GasModel,
    PrimitiveState,
    conserved_to_primitive,
    full_flux,
    primitive_to_conserved,
)


class ConfigError(ValueError):
    """Inconsistent or unknown case / run configuration."""


class ShapeError(ValueError):
    """Mismatched grids passed to a diagnostic."""


class DomainError(ValueError):
    """Diagnostic input outside the mathematical domain (e.g. zero norm)."""


class ShockNotFound(RuntimeError):
    """A row of an instability field has no detectable shock crossing."""


@dataclass(frozen=True)
class CaseSpec:
    """A fully resolved benchmark configuration.

    ``default_order``/``default_scheme`` record the customary choices for the
    case (the instability problems run first order); the run configuration
    may override them.  ``steps`` drives fixed-step runs, ``t_final``
    time-driven ones.
    """

    name: str
    grid: Grid
    t_final: Optional[float]
    cfl: float
    steps: Optional[int] = None
    default_order: str = "second"
    default_scheme: str = "multidimensional"
    # Vortex parameters.
    vortex_strength: float = 5.0
    # Shock-case parameters.
    shock_mach: float = 0.0
    shock_x0: float = 0.0
    seed_amplitude: float = 1e-3
    shock_interior_blend: float = 0.0  # transition state inside the front
    post_shock_side: str = "left"     # side of the shock holding post-shock gas
    rho_pre: float = 0.0
    rho_post: float = 0.0


def moving_shock_post_state(pre: PrimitiveState, mach: float, gas: GasModel) -> PrimitiveState:
    """Post-shock state behind a shock of Mach ``mach`` advancing in +x into
    quiescent gas ``pre`` (lab frame)."""
    if pre.u != 0.0 or pre.v != 0.0:
        raise ConfigError("moving-shock construction expects quiescent pre gas")
    a1 = math.sqrt(gas.gamma * pre.p / pre.rho)
    m2 = mach * mach
    rho2 = pre.rho * (gas.gamma + 1.0) * m2 / (gas.gm1 * m2 + 2.0)
    p2 = pre.p * (2.0 * gas.gamma * m2 - gas.gm1) / (gas.gamma + 1.0)
    w = mach * a1                       # shock speed
    u2 = w * (1.0 - pre.rho / rho2)     # mass conservation across the jump
    return PrimitiveState(rho2, u2, 0.0, p2)


def standing_shock_post_state(pre: PrimitiveState, gas: GasModel) -> PrimitiveState:
    """Downstream state of a steady normal shock with upstream ``pre``
    (x-velocity only)."""
    a1 = math.sqrt(gas.gamma * pre.p / pre.rho)
    mach = pre.u / a1
    if mach <= 1.0:
        raise ConfigError("steady shock requires supersonic upstream flow")
    m2 = mach * mach
    rho2 = pre.rho * (gas.gamma + 1.0) * m2 / (gas.gm1 * m2 + 2.0)
    p2 = pre.p * (2.0 * gas.gamma * m2 - gas.gm1) / (gas.gamma + 1.0)
    u2 = pre.u * pre.rho / rho2
    return PrimitiveState(rho2, u2, pre.v, p2)


def shock_jump_residual(left: PrimitiveState, right: PrimitiveState,
                        shock_speed: float, gas: GasModel) -> float:
    """Relative residual of the jump conditions across an x-normal shock.

    In the frame moving with the shock the full Euler fluxes of both states
    must coincide (conservation of mass, momentum, and energy through the
    front); this checks them independently of how the states were built.
    """
    f_l = full_flux(
        PrimitiveState(left.rho, left.u - shock_speed, left.v, left.p).as_array(), gas
    )
    f_r = full_flux(
        PrimitiveState(right.rho, right.u - shock_speed, right.v, right.p).as_array(),
        gas,
    )
    scale = max(float(np.max(np.abs(f_l))), float(np.max(np.abs(f_r))), 1.0)
    return float(np.max(np.abs(f_l - f_r))) / scale


# --- Quadrant tables for the two Riemann problems (rho, p, u, v per zone). ---

RIEMANN1_QUADRANTS = {
    "pp": PrimitiveState(rho=1.5, u=0.0, v=0.0, p=1.5),          # x>0, y>0
    "pm": PrimitiveState(rho=0.5323, u=0.0, v=1.206, p=0.3),     # x>0, y<0
    "mp": PrimitiveState(rho=0.5323, u=1.206, v=0.0, p=0.3),     # x<0, y>0
    "mm": PrimitiveState(rho=0.1379, u=1.206, v=1.206, p=0.029), # x<0, y<0
}

RIEMANN2_QUADRANTS = {
    "pp": PrimitiveState(rho=0.5313, u=0.0, v=0.0, p=0.4),
    "pm": PrimitiveState(rho=1.0, u=0.0, v=0.7276, p=1.0),
    "mp": PrimitiveState(rho=1.0, u=0.7276, v=0.0, p=1.0),
    "mm": PrimitiveState(rho=0.8, u=0.0, v=0.0, p=1.0),
}

# Double Mach reflection constants.
DMR_PRE = PrimitiveState(rho=1.4, u=0.0, v=0.0, p=1.0)
DMR_MACH = 10.0
DMR_ANGLE_DEG = 60.0
DMR_WALL_START = 1.0 / 6.0

# Odd-even decoupling duct: 800x20 cells.  The cell size is chosen so the
# Mach 6 shock (speed 6 with the rho = 1.4, p = 1 normalization) started at
# x = 60 is still inside the duct at t = 140 (final position x = 900 of 960).
ODD_EVEN_NX, ODD_EVEN_NY = 800, 20
ODD_EVEN_DX = 1.2
ODD_EVEN_PRE = PrimitiveState(rho=1.4, u=0.0, v=0.0, p=1.0)
ODD_EVEN_MACH = 6.0
ODD_EVEN_X0 = 60.0

# Standing shock duct: 50x25 unit cells, shock mid-domain, Mach 6 inflow.
# The captured front is initialized with one interior transition column,
# U = (1 - b) U_up + b U_down: a pure interface jump relaxes to a profile
# that is numerically stable for every flux variant here and triggers
# nothing, while an interior state in the sensitive range exposes the
# front instability of the two-state scheme.
STANDING_NX, STANDING_NY = 50, 25
STANDING_PRE = PrimitiveState(rho=1.4, u=6.0, v=0.0, p=1.0)
STANDING_STEPS = 10000
STANDING_BLEND = 0.4


def dmr_post_state(gas: GasModel) -> PrimitiveState:
    """Post-shock state of the Mach 10 incident shock, 60 degrees to the wall."""
    normal = moving_shock_post_state(DMR_PRE, DMR_MACH, gas)
    ang = math.radians(DMR_ANGLE_DEG)
    return PrimitiveState(
        normal.rho, normal.u * math.sin(ang), -normal.u * math.cos(ang), normal.p
    )


_CASE_DESCRIPTIONS = {
    "vortex": "isentropic vortex advection on a periodic box (convergence)",
    "riemann1": "four-quadrant Riemann problem, shock interactions",
    "riemann2": "four-quadrant Riemann problem, weak shocks and contacts",
    "dmr": "double Mach reflection of a Mach 10 shock",
    "odd_even": "odd-even decoupling of a Mach 6 duct shock (instability)",
    "standing_shock": "perturbed steady Mach 6 shock (instability)",
}


def available_cases():
    """Case names with one-line descriptions, for the CLI listing."""
    return dict(_CASE_DESCRIPTIONS)


def case_spec(name: str, nx: Optional[int] = None, ny: Optional[int] = None,
              cfl: Optional[float] = None, t_final: Optional[float] = None,
              steps: Optional[int] = None) -> CaseSpec:
    """Build the spec for a named case, with optional grid/cfl/time overrides.

    Defaults reproduce the customary setups: 2000^2 grids for the Riemann
    problems, 1920x480 for the double Mach reflection, the fixed instability
    ducts, and a 128^2 vortex.
    """
    if name == "vortex":
        n = nx or 128
        spec = CaseSpec(
            name,
            Grid.from_extent(n, ny or n, -5.0, 5.0, -5.0, 5.0),
            t_final=10.0,
            cfl=0.9,
        )
    elif name in ("riemann1", "riemann2"):
        n = nx or 2000
        spec = CaseSpec(
            name,
            Grid.from_extent(n, ny or n, -1.0, 1.0, -1.0, 1.0),
            t_final=1.05 if name == "riemann1" else 0.5,
            cfl=0.95,
        )
    elif name == "dmr":
        n = nx or 1920
        spec = CaseSpec(
            name,
            Grid.from_extent(n, ny or max(n // 4, 4), 0.0, 4.0, 0.0, 1.0),
            t_final=0.2,
            cfl=0.7,
            shock_mach=DMR_MACH,
        )
    elif name == "odd_even":
        n_x = nx or ODD_EVEN_NX
        n_y = ny or ODD_EVEN_NY
        spec = CaseSpec(
            name,
            Grid(n_x, n_y, 0.0, 0.0, ODD_EVEN_DX, ODD_EVEN_DX),
            t_final=140.0,
            cfl=0.5,
            default_order="first",
            shock_mach=ODD_EVEN_MACH,
            shock_x0=ODD_EVEN_X0,
            post_shock_side="left",
            rho_pre=ODD_EVEN_PRE.rho,
        )
        gas = GasModel()
        post = moving_shock_post_state(ODD_EVEN_PRE, ODD_EVEN_MACH, gas)
        spec = replace(spec, rho_post=post.rho)
    elif name == "standing_shock":
        n_x = nx or STANDING_NX
        n_y = ny or STANDING_NY
        spec = CaseSpec(
            name,
            Grid(n_x, n_y, 0.0, 0.0, 1.0, 1.0),
            t_final=None,
            cfl=0.5,
            steps=STANDING_STEPS,
            default_order="first",
            shock_mach=STANDING_PRE.u,  # a1 = 1 under this normalization
            shock_x0=n_x / 2.0,
            shock_interior_blend=STANDING_BLEND,
            post_shock_side="right",
            rho_pre=STANDING_PRE.rho,
        )
        gas = GasModel()
        post = standing_shock_post_state(STANDING_PRE, gas)
        spec = replace(spec, rho_post=post.rho)
    else:
        raise ConfigError(f"unknown case {name!r}")

    if cfl is not None:
        spec = replace(spec, cfl=cfl)
    if t_final is not None:
        spec = replace(spec, t_final=t_final)
    if steps is not None:
        spec = replace(spec, steps=steps)
    return spec


def _vortex_primitives(x: np.ndarray, y: np.ndarray, gas: GasModel,
                       strength: float) -> np.ndarray:
    """Isentropic vortex profile centered at the origin on base state
    (rho, p, u, v) = (1, 1, 1, 1).

    Velocity perturbation (eps/2pi) exp((1-r^2)/2) (-y, x); temperature
    perturbation dT = -(gamma-1) eps^2 / (8 gamma pi^2) exp(1-r^2); density
    and pressure follow isentropically from T = 1 + dT:
    rho = T^(1/(gamma-1)), p = rho^gamma.
    """
    r2 = x * x + y * y
    fac = strength / (2.0 * math.pi) * np.exp(0.5 * (1.0 - r2))
    du = -y * fac
    dv = x * fac
    d_temp = (
        -gas.gm1 * strength * strength / (8.0 * gas.gamma * math.pi ** 2)
    ) * np.exp(1.0 - r2)
    temp = 1.0 + d_temp
    rho = temp ** (1.0 / gas.gm1)
    p = rho ** gas.gamma
    return np.stack([rho, 1.0 + du, 1.0 + dv, p])


def _quadrant_primitives(grid: Grid, quads) -> np.ndarray:
    x = grid.x_centers()[:, None]
    y = grid.y_centers()[None, :]
    prim = np.empty((4, grid.nx, grid.ny))
    for row in range(4):
        vals = {
            k: q.as_array()[row] for k, q in quads.items()
        }
        prim[row] = np.select(
            [
                (x > 0) & (y > 0),
                (x > 0) & (y <= 0),
                (x <= 0) & (y > 0),
            ],
            [vals["pp"], vals["pm"], vals["mp"]],
            default=vals["mm"],
        )
    return prim


def init_case(spec: CaseSpec, gas: GasModel):
    """Construct the initial field and boundary conditions for a case."""
    grid = spec.grid
    if spec.name == "vortex":
        prim = _vortex_primitives(
            grid.x_centers()[:, None], grid.y_centers()[None, :], gas,
            spec.vortex_strength,
        )
        bcs = BoundarySpec(Periodic(), Periodic(), Periodic(), Periodic())
    elif spec.name in ("riemann1", "riemann2"):
        quads = RIEMANN1_QUADRANTS if spec.name == "riemann1" else RIEMANN2_QUADRANTS
        prim = _quadrant_primitives(grid, quads)
        bcs = BoundarySpec(
            Transmissive(), Transmissive(), Transmissive(), Transmissive()
        )
    elif spec.name == "dmr":
        post = dmr_post_state(gas)
        x = grid.x_centers()[:, None]
        y = grid.y_centers()[None, :]
        tan_a = math.tan(math.radians(DMR_ANGLE_DEG))
        behind = x < DMR_WALL_START + y / tan_a
        prim = np.where(behind, post.as_array()[:, None, None],
                        DMR_PRE.as_array()[:, None, None])
        bcs = BoundarySpec(
            left=FixedState(post),
            right=Transmissive(),
            bottom=InflowWallSplit(post, DMR_WALL_START),
            top=MovingShockTop(
                DMR_PRE, post, DMR_WALL_START,
                speed=DMR_MACH * math.sqrt(gas.gamma * DMR_PRE.p / DMR_PRE.rho),
                angle_deg=DMR_ANGLE_DEG, y_top=grid.y0 + grid.ny * grid.dy,
            ),
        )
    elif spec.name == "odd_even":
        post = moving_shock_post_state(ODD_EVEN_PRE, spec.shock_mach, gas)
        x = grid.x_centers()[:, None]
        prim = np.where(x < spec.shock_x0, post.as_array()[:, None, None],
                        ODD_EVEN_PRE.as_array()[:, None, None])
        prim = prim * np.ones((1, 1, grid.ny))
        # Odd-even density seed on the two centerline rows ahead of the shock.
        cols = np.arange(grid.nx)
        signs = np.where(cols % 2 == 0, 1.0, -1.0)
        ahead = grid.x_centers() > spec.shock_x0
        for j in (grid.ny // 2 - 1, grid.ny // 2):
            prim[RHO, ahead, j] += spec.seed_amplitude * signs[ahead]
        bcs = BoundarySpec(
            left=Transmissive(), right=Transmissive(),
            bottom=ReflectiveWall(), top=ReflectiveWall(),
        )
    elif spec.name == "standing_shock":
        post = standing_shock_post_state(STANDING_PRE, gas)
        x = grid.x_centers()[:, None]
        prim = np.where(x < spec.shock_x0, STANDING_PRE.as_array()[:, None, None],
                        post.as_array()[:, None, None])
        prim = prim * np.ones((1, 1, grid.ny))
        if spec.shock_interior_blend:
            # First downstream column carries the transition state; the blend
            # is convex in the conserved variables, so it stays admissible.
            b = spec.shock_interior_blend
            cons = (1.0 - b) * primitive_to_conserved(
                STANDING_PRE.as_array(), gas
            ) + b * primitive_to_conserved(post.as_array(), gas)
            icol = int(spec.shock_x0 / grid.dx)
            prim[:, icol, :] = conserved_to_primitive(cons, gas)[:, None]
        if spec.seed_amplitude:
            prim[RHO, grid.nx // 2, grid.ny // 2] *= 1.0 + spec.seed_amplitude
        bcs = BoundarySpec(
            left=SupersonicInflow(STANDING_PRE),
            right=FixedState(post),
            bottom=Periodic(), top=Periodic(),
        )
    else:
        raise ConfigError(f"unknown case {spec.name!r}")

    return Field.from_primitive(grid, prim, gas), bcs


def exact_vortex_solution(spec: CaseSpec, gas: GasModel, time: float) -> Field:
    """Exact vortex field at ``time``: the initial profile advected by (1, 1)
    with periodic wrap-around."""
    if spec.name != "vortex":
        raise ConfigError("exact solution only available for the vortex case")
    grid = spec.grid
    x = grid.x_centers()[:, None] - time
    y = grid.y_centers()[None, :] - time
    # Wrap into [-5, 5).
    x = np.mod(x + 5.0, 10.0) - 5.0
    y = np.mod(y + 5.0, 10.0) - 5.0
    prim = _vortex_primitives(x, y, gas, spec.vortex_strength)
    return Field.from_primitive(grid, prim, gas, time=time)


@dataclass(frozen=True)
class ErrorNorms:
    """Density error norms on one grid: cell-mean L1 and pointwise Linf."""

    l1: float
    linf: float
    dx: float


def error_norms(field: Field, exact: Field, gas: GasModel) -> ErrorNorms:
    """L1 (cell-averaged) and Linf norms of the density error."""
    if field.grid.shape_full != exact.grid.shape_full:
        raise ShapeError("fields live on different grids")
    diff = np.abs(field.interior[RHO] - exact.interior[RHO])
    return ErrorNorms(float(diff.mean()), float(diff.max()), field.grid.dx)


def order_of_accuracy(coarse: ErrorNorms, fine: ErrorNorms,
                      norm: str = "l1") -> float:
    """Observed convergence order between two resolutions.

    O = (log10 eta_fine - log10 eta_coarse) / (log10 dx_fine - log10 dx_coarse)
    """
    if not fine.dx < coarse.dx:
        raise DomainError("fine grid must have smaller spacing")
    e1 = getattr(coarse, norm)
    e2 = getattr(fine, norm)
    if e1 <= 0.0 or e2 <= 0.0:
        raise DomainError("error norms must be positive to measure an order")
    return (math.log10(e2) - math.log10(e1)) / (
        math.log10(fine.dx) - math.log10(coarse.dx)
    )


@dataclass(frozen=True)
class InstabilityMetrics:
    """Planarity diagnostics of a captured shock front.

    ``shock_position_stddev`` is the standard deviation of the per-row shock
    position in cell units; ``max_transverse_velocity`` is the largest |v|
    over cells more than five cells into the post-shock region; ``blowup``
    flags a run that lost positivity or produced non-finite data.
    """

    max_transverse_velocity: float
    shock_position_stddev: float
    blowup: bool = False


def shock_positions(rho: np.ndarray, rho_pre: float, rho_post: float) -> np.ndarray:
    """Per-row shock position (cell units) from the first crossing of the
    pre/post density midpoint, linearly interpolated between cell centers."""
    nx, ny = rho.shape
    mid = 0.5 * (rho_pre + rho_post)
    positions = np.empty(ny)
    for j in range(ny):
        diff = rho[:, j] - mid
        change = np.nonzero(diff[:-1] * diff[1:] <= 0.0)[0]
        change = change[np.abs(diff[change]) + np.abs(diff[change + 1]) > 0.0]
        if len(change) == 0:
            raise ShockNotFound(f"no shock crossing in row {j}")
        i = int(change[0])
        positions[j] = (i + 0.5) + diff[i] / (diff[i] - diff[i + 1])
    return positions


def instability_metrics(field: Field, spec: CaseSpec, gas: GasModel) -> InstabilityMetrics:
    """Shock planarity and transverse-velocity diagnostics for the
    instability cases.  A non-finite field reports blowup immediately."""
    if spec.rho_pre <= 0.0 or spec.rho_post <= 0.0:
        raise ConfigError(f"case {spec.name!r} has no shock metric data")
    if not np.all(np.isfinite(field.interior)):
        return InstabilityMetrics(math.nan, math.nan, blowup=True)
    prim = field.primitive(gas)
    positions = shock_positions(prim[RHO], spec.rho_pre, spec.rho_post)
    mean_pos = positions.mean()
    cells = np.arange(field.grid.nx) + 0.5
    if spec.post_shock_side == "left":
        mask = cells < mean_pos - 5.0
    else:
        mask = cells > mean_pos + 5.0
    max_v = float(np.abs(prim[VY][mask, :]).max()) if mask.any() else 0.0
    return InstabilityMetrics(max_v, float(positions.std()))
