"""Fast built-in invariant checks, exposed through ``euler2d check``.

These mirror the core guarantees of the flux construction so a user can
validate an installation in seconds without the test suite: split
consistency, interface/corner flux consistency, supersonic one-sidedness,
free-stream preservation, exact stationary contacts, and discrete
conservation.
"""

from __future__ import annotations

import numpy as np

from .boundaries import BoundarySpec, Periodic, Transmissive
from .corner import CornerStates, corner_flux
from .midpoint import midpoint_flux
from .solver import Field, Grid, SchemeConfig, advance, compute_time_step
from .state import GasModel, full_flux, split_flux


def random_primitives(rng, n, vel_scale=3.0):
    """Valid random primitive states, log-uniform in density and pressure."""
    return np.stack([
        10.0 ** rng.uniform(-1.0, 1.0, n),
        rng.uniform(-vel_scale, vel_scale, n),
        rng.uniform(-vel_scale, vel_scale, n),
        10.0 ** rng.uniform(-1.0, 1.0, n),
    ])


def _rel_err(got, want):
    scale = max(float(np.max(np.abs(want))), 1.0)
    return float(np.max(np.abs(got - want))) / scale


def _uniform_field(grid, state, gas):
    prim = np.tile(state.reshape(4, 1, 1), (1, grid.nx, grid.ny))
    return Field.from_primitive(grid, prim, gas)


def run_quick_checks(seed=20240611):
    """Run the quick invariant suite; returns a list of (name, ok, detail)."""
    rng = np.random.default_rng(seed)
    gas = GasModel()
    results = []

    def record(name, err, tol):
        results.append((name, err <= tol, f"err={err:.3e} tol={tol:.0e}"))

    # Flux splitting sums to the full Euler flux.
    prim = random_primitives(rng, 500)
    err = 0.0
    for axis in (0, 1):
        conv, pres = split_flux(prim, gas, axis)
        err = max(err, _rel_err(conv + pres, full_flux(prim, gas, axis)))
    record("split consistency", err, 1e-13)

    # Interface and corner fluxes reduce to the Euler flux on uniform data.
    err = 0.0
    for axis in (0, 1):
        err = max(err, _rel_err(midpoint_flux(prim, prim, gas, axis),
                                full_flux(prim, gas, axis)))
    fstar, gstar = corner_flux(CornerStates(prim, prim, prim, prim), gas)
    err = max(err, _rel_err(fstar, full_flux(prim, gas, 0)))
    err = max(err, _rel_err(gstar, full_flux(prim, gas, 1)))
    record("flux consistency", err, 1e-13)

    # Supersonic one-sidedness at Mach 3.
    sup = np.array([1.0, 3.0 * np.sqrt(1.4), 0.0, 1.0]).reshape(4, 1)
    err = _rel_err(midpoint_flux(sup, sup, gas, 0), full_flux(sup, gas, 0))
    fstar, _ = corner_flux(CornerStates(sup, sup, sup, sup), gas)
    err = max(err, _rel_err(fstar, full_flux(sup, gas, 0)))
    record("supersonic one-sidedness", err, 1e-13)

    # Free-stream preservation over a few steps, both schemes.
    grid = Grid.from_extent(8, 8, 0.0, 1.0, 0.0, 1.0)
    state = np.array([1.0, 0.7, -0.3, 2.0])
    bcs = BoundarySpec(Periodic(), Periodic(), Periodic(), Periodic())
    err = 0.0
    for scheme in ("two_state", "multidimensional"):
        cfg = SchemeConfig(scheme=scheme, order="second", cfl=0.5)
        field = _uniform_field(grid, state, gas)
        start = field.interior.copy()
        for _ in range(5):
            dt = compute_time_step(field, cfg, gas)
            field = advance(field, cfg, bcs, gas, dt)
        err = max(err, float(np.max(np.abs(field.interior - start))))
    record("free-stream fixed point", err, 0.0)

    # Stationary contact passes through untouched.
    grid = Grid.from_extent(32, 4, 0.0, 1.0, 0.0, 0.125)
    x = grid.x_centers()[:, None] * np.ones((1, grid.ny))
    prim = np.stack([
        np.where(x < 0.5, 1.0, 0.125),
        np.zeros_like(x), np.zeros_like(x), np.ones_like(x),
    ])
    bcs = BoundarySpec(Transmissive(), Transmissive(), Transmissive(), Transmissive())
    err = 0.0
    for scheme in ("two_state", "multidimensional"):
        cfg = SchemeConfig(scheme=scheme, order="first", cfl=0.5)
        field = Field.from_primitive(grid, prim, gas)
        start = field.interior.copy()
        for _ in range(50):
            dt = compute_time_step(field, cfg, gas)
            field = advance(field, cfg, bcs, gas, dt)
        err = max(err, float(np.max(np.abs(field.interior - start))))
    record("stationary contact", err, 1e-12)

    # Discrete conservation on a smooth periodic field.
    grid = Grid.from_extent(24, 24, 0.0, 1.0, 0.0, 1.0)
    shape = (grid.nx, grid.ny)
    xx = np.broadcast_to(grid.x_centers()[:, None], shape)
    yy = np.broadcast_to(grid.y_centers()[None, :], shape)
    prim = np.stack([
        1.0 + 0.2 * np.sin(2 * np.pi * xx) * np.cos(2 * np.pi * yy),
        0.3 + 0.1 * np.cos(2 * np.pi * xx),
        -0.2 + 0.1 * np.sin(2 * np.pi * yy),
        1.0 + 0.1 * np.cos(2 * np.pi * (xx + yy)),
    ])
    bcs = BoundarySpec(Periodic(), Periodic(), Periodic(), Periodic())
    cfg = SchemeConfig(scheme="multidimensional", order="second", cfl=0.5)
    field = Field.from_primitive(grid, prim, gas)
    before = field.interior.sum(axis=(1, 2))
    for _ in range(20):
        dt = compute_time_step(field, cfg, gas)
        field = advance(field, cfg, bcs, gas, dt)
    after = field.interior.sum(axis=(1, 2))
    err = float(np.max(np.abs(after - before) / np.maximum(np.abs(before), 1.0)))
    record("discrete conservation", err, 1e-12)

    return results
