import numpy as np
import pytest

import euler2d.solver as solver_mod
from euler2d import (
    BoundarySpec,
    Field,
    Grid,
    Periodic,
    PositivityError,
    ReflectiveWall,
    SchemeConfig,
    Transmissive,
    advance,
    apply_boundary_conditions,
    assemble_interface_flux,
    compute_time_step,
    minmod,
    reconstruct,
    van_leer,
)
from euler2d.state import MOMY, PRES, RHO

from conftest import random_states


def uniform_field(grid, state, gas):
    prim = np.tile(np.asarray(state).reshape(4, 1, 1), (1, grid.nx, grid.ny))
    return Field.from_primitive(grid, prim, gas)


def periodic_bcs():
    return BoundarySpec(Periodic(), Periodic(), Periodic(), Periodic())


def transmissive_bcs():
    return BoundarySpec(Transmissive(), Transmissive(), Transmissive(), Transmissive())


def smooth_periodic_field(grid, gas):
    x = grid.x_centers()[:, None]
    y = grid.y_centers()[None, :]
    kx = 2.0 * np.pi / (grid.nx * grid.dx)
    ky = 2.0 * np.pi / (grid.ny * grid.dy)
    prim = np.stack([
        1.0 + 0.3 * np.sin(kx * x) * np.cos(ky * y) * np.ones_like(y),
        0.4 + 0.2 * np.cos(kx * x) * np.ones_like(y),
        -0.3 + 0.2 * np.sin(ky * y) * np.ones_like(x),
        1.0 + 0.2 * np.cos(kx * x + ky * y),
    ])
    return Field.from_primitive(grid, prim, gas)


class TestGridField:
    def test_grid_validation(self):
        with pytest.raises(ValueError):
            Grid(2, 8, 0.0, 0.0, 0.1, 0.1)
        with pytest.raises(ValueError):
            Grid(8, 8, 0.0, 0.0, -0.1, 0.1)
        with pytest.raises(ValueError):
            Grid(8, 8, 0.0, 0.0, 0.1, 0.1, ghost=1)

    def test_cell_centers(self):
        grid = Grid.from_extent(4, 8, 0.0, 1.0, -1.0, 1.0)
        assert np.allclose(grid.x_centers(), [0.125, 0.375, 0.625, 0.875])
        assert grid.y_centers()[0] == pytest.approx(-0.875)
        full = grid.x_centers_full()
        assert len(full) == 4 + 2 * grid.ghost
        assert full[grid.ghost] == pytest.approx(0.125)

    def test_interior_view_round_trip(self, gas):
        grid = Grid.from_extent(5, 4, 0.0, 1.0, 0.0, 1.0)
        prim = random_states(np.random.default_rng(3), 20).reshape(4, 5, 4)
        field = Field.from_primitive(grid, prim, gas)
        assert np.allclose(field.primitive(gas), prim, rtol=1e-13)


class TestSchemeConfig:
    def test_gm_alias(self):
        assert SchemeConfig(scheme="gm").scheme == "multidimensional"

    def test_validation(self):
        with pytest.raises(ValueError):
            SchemeConfig(scheme="upwind")
        with pytest.raises(ValueError):
            SchemeConfig(cfl=0.0)
        with pytest.raises(ValueError):
            SchemeConfig(cfl=1.5)
        with pytest.raises(ValueError):
            SchemeConfig(order="third")


class TestLimiters:
    def test_minmod(self):
        assert minmod(np.array(1.0), np.array(2.0)) == 1.0
        assert minmod(np.array(-1.0), np.array(2.0)) == 0.0
        assert minmod(np.array(-3.0), np.array(-2.0)) == -2.0

    def test_van_leer(self):
        assert van_leer(np.array(1.0), np.array(1.0)) == 1.0
        assert van_leer(np.array(1.0), np.array(-1.0)) == 0.0
        # harmonic mean of unequal slopes stays between them
        assert 1.0 < van_leer(np.array(1.0), np.array(3.0)) < 3.0


class TestReconstruction:
    def test_uniform_states_both_orders(self, gas):
        grid = Grid.from_extent(6, 6, 0.0, 1.0, 0.0, 1.0)
        state = np.array([1.2, 0.4, -0.2, 2.0])
        field = uniform_field(grid, state, gas)
        apply_boundary_conditions(field, periodic_bcs(), gas)
        for order in ("first", "second"):
            recon = reconstruct(field, SchemeConfig(order=order), gas)
            for arr in (recon.x_left, recon.x_right, recon.y_down, recon.y_up,
                        *recon.corners.quadrants()):
                assert np.allclose(arr, state.reshape(4, 1, 1), rtol=1e-13)

    def test_linear_ramp_reproduced_exactly(self, gas):
        # Monotone linear data is invariant under limited linear
        # reconstruction; interface values must reproduce the ramp.
        grid = Grid.from_extent(8, 4, 0.0, 1.0, 0.0, 0.5)
        g = grid.ghost
        xf = grid.x_centers_full()
        prim_full = np.stack([
            np.tile((1.0 + xf)[:, None], (1, 4 + 2 * g)),
            np.zeros((8 + 2 * g, 4 + 2 * g)),
            np.zeros((8 + 2 * g, 4 + 2 * g)),
            np.ones((8 + 2 * g, 4 + 2 * g)),
        ])
        from euler2d.state import primitive_to_conserved

        field = Field(grid, primitive_to_conserved(prim_full, gas))
        recon = reconstruct(field, SchemeConfig(order="second"), gas)
        xi = grid.x0 + np.arange(grid.nx + 1) * grid.dx  # interface positions
        assert np.allclose(recon.x_left[RHO, :, 0], 1.0 + xi, rtol=1e-14)
        assert np.allclose(recon.x_right[RHO, :, 0], 1.0 + xi, rtol=1e-14)

    def test_no_overshoot_at_jumps(self, gas, rng):
        grid = Grid.from_extent(16, 4, 0.0, 1.0, 0.0, 0.25)
        for _ in range(20):
            lo, hi = sorted(rng.uniform(0.5, 2.0, 2))
            x = grid.x_centers()[:, None] * np.ones((1, 4))
            prim = np.stack([
                np.where(x < 0.5, lo, hi),
                np.zeros_like(x), np.zeros_like(x), np.ones_like(x),
            ])
            field = Field.from_primitive(grid, prim, gas)
            apply_boundary_conditions(field, transmissive_bcs(), gas)
            for limiter in ("minmod", "van_leer"):
                recon = reconstruct(
                    field, SchemeConfig(order="second", limiter=limiter), gas
                )
                for arr in (recon.x_left, recon.x_right):
                    assert np.all(arr[RHO] >= lo - 1e-13)
                    assert np.all(arr[RHO] <= hi + 1e-13)

    def test_positivity_fallback(self, gas):
        # A near-vacuum cell between steep neighbors must not extrapolate
        # through zero; the cell reverts to its average.
        grid = Grid.from_extent(8, 4, 0.0, 1.0, 0.0, 0.5)
        x = grid.x_centers()[:, None] * np.ones((1, 4))
        prim = np.stack([
            np.ones_like(x), np.zeros_like(x), np.zeros_like(x), np.ones_like(x),
        ])
        prim[PRES, 3, :] = 1e-9
        prim[PRES, 4, :] = 2.0
        prim[RHO, 3, :] = 1e-9
        field = Field.from_primitive(grid, prim, gas)
        apply_boundary_conditions(field, transmissive_bcs(), gas)
        recon = reconstruct(field, SchemeConfig(order="second"), gas)
        assert np.all(recon.x_left[RHO] > 0.0)
        assert np.all(recon.x_right[RHO] > 0.0)
        assert np.all(recon.x_left[PRES] > 0.0)
        assert np.all(recon.x_right[PRES] > 0.0)


class TestAssembly:
    def test_equal_inputs_identity(self, rng):
        f = random_states(rng, 10)
        assert np.array_equal(assemble_interface_flux(f, f, f), f)

    def test_simpson_weights(self):
        corners = np.full((4, 3), 1.0)
        mid = np.full((4, 3), 4.0)
        assert np.allclose(assemble_interface_flux(corners, mid, corners), 3.0,
                           rtol=1e-15)

    def test_two_state_bypass_bitwise(self, rng):
        mid = random_states(rng, 50)
        assert np.array_equal(assemble_interface_flux(mid, mid, mid), mid)


class TestTimeStep:
    def test_quiescent_reference(self, gas):
        # u = v = 0, a = 1, dx = dy = 0.1: both directions contribute the
        # acoustic rate 10, so dt = 0.5 / 20.
        grid = Grid.from_extent(10, 10, 0.0, 1.0, 0.0, 1.0)
        field = uniform_field(grid, [1.4, 0.0, 0.0, 1.0], gas)  # a = 1
        dt = compute_time_step(field, SchemeConfig(cfl=0.5), gas)
        assert dt == pytest.approx(0.025, rel=1e-14)

    def test_speed_scaling(self, gas):
        grid = Grid.from_extent(10, 10, 0.0, 1.0, 0.0, 1.0)
        slow = uniform_field(grid, [1.4, 1.0, 0.0, 1.0], gas)
        fast = uniform_field(grid, [1.4, 2.0, 0.0, 4.0], gas)  # doubles |u|+a
        cfg = SchemeConfig(cfl=0.5)
        assert compute_time_step(slow, cfg, gas) == pytest.approx(
            2.0 * compute_time_step(fast, cfg, gas), rel=1e-13
        )

    def test_anisotropic_cells(self, gas):
        grid = Grid(10, 10, 0.0, 0.0, 0.1, 0.2)
        field = uniform_field(grid, [1.4, 0.0, 0.0, 1.0], gas)  # a = 1
        dt = compute_time_step(field, SchemeConfig(cfl=0.5), gas)
        assert dt == pytest.approx(0.5 / (10.0 + 5.0), rel=1e-14)

    def test_final_time_clipping(self, gas):
        grid = Grid.from_extent(10, 10, 0.0, 1.0, 0.0, 1.0)
        field = uniform_field(grid, [1.4, 0.0, 0.0, 1.0], gas)
        dt = compute_time_step(field, SchemeConfig(cfl=0.5), gas, t_final=0.01)
        assert dt == 0.01


class TestAdvance:
    @pytest.mark.parametrize("scheme", ["two_state", "multidimensional"])
    @pytest.mark.parametrize("order", ["first", "second"])
    def test_free_stream_fixed_point(self, gas, scheme, order):
        grid = Grid.from_extent(8, 8, 0.0, 1.0, 0.0, 1.0)
        field = uniform_field(grid, [1.0, 0.7, -0.3, 2.0], gas)
        start = field.interior.copy()
        cfg = SchemeConfig(scheme=scheme, order=order, cfl=0.5)
        bcs = periodic_bcs()
        for _ in range(5):
            dt = compute_time_step(field, cfg, gas)
            field = advance(field, cfg, bcs, gas, dt)
        assert np.array_equal(field.interior, start)

    @pytest.mark.parametrize("scheme", ["two_state", "multidimensional"])
    def test_stationary_contact_exact(self, gas, scheme):
        grid = Grid.from_extent(50, 4, 0.0, 1.0, 0.0, 0.08)
        x = grid.x_centers()[:, None] * np.ones((1, 4))
        prim = np.stack([
            np.where(x < 0.5, 1.0, 0.125),
            np.zeros_like(x), np.zeros_like(x), np.ones_like(x),
        ])
        field = Field.from_primitive(grid, prim, gas)
        start = field.interior.copy()
        cfg = SchemeConfig(scheme=scheme, order="first", cfl=0.5)
        bcs = transmissive_bcs()
        for _ in range(100):
            dt = compute_time_step(field, cfg, gas)
            field = advance(field, cfg, bcs, gas, dt)
        assert np.max(np.abs(field.interior[RHO] - start[RHO])) < 1e-12

    def test_conservation_periodic(self, gas):
        grid = Grid.from_extent(24, 24, 0.0, 1.0, 0.0, 1.0)
        field = smooth_periodic_field(grid, gas)
        before = field.interior.sum(axis=(1, 2))
        cfg = SchemeConfig(scheme="multidimensional", order="second", cfl=0.5)
        bcs = periodic_bcs()
        for _ in range(100):
            dt = compute_time_step(field, cfg, gas)
            field = advance(field, cfg, bcs, gas, dt)
        after = field.interior.sum(axis=(1, 2))
        rel = np.abs(after - before) / np.maximum(np.abs(before), 1e-30)
        assert np.max(rel) < 1e-12

    def test_sod_stays_y_uniform(self, gas):
        grid = Grid.from_extent(64, 6, 0.0, 1.0, 0.0, 0.1)
        x = grid.x_centers()[:, None] * np.ones((1, 6))
        prim = np.stack([
            np.where(x < 0.5, 1.0, 0.125),
            np.zeros_like(x), np.zeros_like(x),
            np.where(x < 0.5, 1.0, 0.1),
        ])
        field = Field.from_primitive(grid, prim, gas)
        cfg = SchemeConfig(scheme="two_state", order="first", cfl=0.5)
        bcs = transmissive_bcs()
        while field.time < 0.1 * (1 - 1e-14):
            dt = compute_time_step(field, cfg, gas, t_final=0.1)
            field = advance(field, cfg, bcs, gas, dt)
        assert np.all(field.interior == field.interior[:, :, 0:1])

    def test_scheme_equivalence_with_forced_corners(self, gas, monkeypatch):
        # On y-uniform data the midpoint fluxes are y-constant, so forcing
        # every corner flux to the interface midpoint value must reproduce
        # the two-state update bitwise through the Simpson assembly.
        from euler2d.midpoint import midpoint_flux as mf
        from euler2d.state import X, Y

        grid = Grid.from_extent(32, 6, 0.0, 1.0, 0.0, 0.1)
        x = grid.x_centers()[:, None] * np.ones((1, 6))
        prim = np.stack([
            np.where(x < 0.5, 1.0, 0.125),
            np.full_like(x, 0.2), np.zeros_like(x),
            np.where(x < 0.5, 1.0, 0.1),
        ])
        field = Field.from_primitive(grid, prim, gas)
        bcs = transmissive_bcs()
        dt = compute_time_step(field, SchemeConfig(cfl=0.5), gas)

        def forced_corner_fluxes(corners, gas_):
            # Corner (k, m) takes the x-midpoint flux of interface column k
            # and the y-midpoint flux of interface row m; y-uniformity makes
            # this single-valued.
            fx = mf(corners.lu[:, :, :-1], corners.ru[:, :, :-1], gas_, X)
            fy = mf(corners.ld[:, :-1, :], corners.lu[:, :-1, :], gas_, Y)
            fstar = np.concatenate([fx, fx[:, :, -1:]], axis=2)
            gstar = np.concatenate([fy, fy[:, -1:, :]], axis=1)
            return fstar, gstar

        cfg_two = SchemeConfig(scheme="two_state", order="first", cfl=0.5)
        ref = advance(field, cfg_two, bcs, gas, dt)

        monkeypatch.setattr(solver_mod, "_corner_point_fluxes", forced_corner_fluxes)
        cfg_gm = SchemeConfig(scheme="multidimensional", order="first", cfl=0.5)
        got = advance(field, cfg_gm, bcs, gas, dt)
        assert np.array_equal(got.interior, ref.interior)

    def test_determinism(self, gas):
        grid = Grid.from_extent(16, 16, 0.0, 1.0, 0.0, 1.0)
        cfg = SchemeConfig(scheme="multidimensional", order="second", cfl=0.5)
        bcs = periodic_bcs()
        results = []
        for _ in range(2):
            field = smooth_periodic_field(grid, gas)
            for _ in range(10):
                dt = compute_time_step(field, cfg, gas)
                field = advance(field, cfg, bcs, gas, dt)
            results.append(field.interior.copy())
        assert np.array_equal(results[0], results[1])

    def test_positivity_error_carries_location(self, gas):
        # A stable-looking state driven with a CFL-violating step must
        # surface as PositivityError with a cell location, not as silent
        # garbage propagating into the next step.
        grid = Grid.from_extent(16, 4, 0.0, 1.0, 0.0, 0.25)
        x = grid.x_centers()[:, None] * np.ones((1, 4))
        prim = np.stack([
            np.where(x < 0.5, 1.0, 0.125),
            np.zeros_like(x), np.zeros_like(x),
            np.where(x < 0.5, 1.0, 0.1),
        ])
        field = Field.from_primitive(grid, prim, gas)
        cfg = SchemeConfig(scheme="two_state", order="first", cfl=0.9)
        safe_dt = compute_time_step(field, cfg, gas)
        with pytest.raises(PositivityError) as err:
            advance(field, cfg, transmissive_bcs(), gas, 50.0 * safe_dt)
        assert "cell" in str(err.value)


class TestBoundaries:
    def test_periodic_wraps(self, gas):
        grid = Grid.from_extent(5, 4, 0.0, 1.0, 0.0, 1.0)
        prim = random_states(np.random.default_rng(5), 20).reshape(4, 5, 4)
        field = Field.from_primitive(grid, prim, gas)
        apply_boundary_conditions(field, periodic_bcs(), gas)
        g = grid.ghost
        assert np.array_equal(field.data[:, g - 1, g:-g],
                              field.data[:, g + 4, g:-g])
        assert np.array_equal(field.data[:, g:-g, g - 1],
                              field.data[:, g:-g, g + 3])
        # Diagonal ghost corner must match the wrapped interior corner.
        assert np.array_equal(field.data[:, g - 1, g - 1],
                              field.data[:, g + 4, g + 3])

    def test_reflective_wall_mirrors_normal_velocity(self, gas):
        grid = Grid.from_extent(4, 4, 0.0, 1.0, 0.0, 1.0)
        prim = random_states(np.random.default_rng(6), 16).reshape(4, 4, 4)
        field = Field.from_primitive(grid, prim, gas)
        bcs = BoundarySpec(Transmissive(), Transmissive(),
                           ReflectiveWall(), ReflectiveWall())
        apply_boundary_conditions(field, bcs, gas)
        g = grid.ghost
        mirror = field.data[:, g:-g, g].copy()
        ghost = field.data[:, g:-g, g - 1]
        assert np.array_equal(ghost[RHO], mirror[RHO])
        assert np.array_equal(ghost[MOMY], -mirror[MOMY])

    def test_periodic_must_pair(self):
        with pytest.raises(ValueError):
            BoundarySpec(Periodic(), Transmissive(), Periodic(), Periodic())
