"""Ghost-cell boundary conditions for the structured grid.

Each edge of the domain carries one condition object that knows how to fill
the ghost layers on its side.  Vertical edges (left/right) are filled first
for the interior rows, then horizontal edges (bottom/top) are filled across
the full width including the ghost columns, so the diagonal ghost corners
come out consistent (in particular for doubly periodic domains).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state import MOMX, MOMY, GasModel, PrimitiveState, primitive_to_conserved

LEFT, RIGHT, BOTTOM, TOP = "left", "right", "bottom", "top"
_VERTICAL = (LEFT, RIGHT)


class EdgeCondition:
    """Base class; subclasses fill the ghost layers of one edge."""

    periodic = False

    def fill(self, data, grid, edge, gas, time):
        raise NotImplementedError


@dataclass
class Periodic(EdgeCondition):
    """Wrap-around copy of the opposite interior cells."""

    periodic = True

    def fill(self, data, grid, edge, gas, time):
        g = grid.ghost
        if edge == LEFT:
            data[:, :g, g:-g] = data[:, grid.nx : grid.nx + g, g:-g]
        elif edge == RIGHT:
            data[:, g + grid.nx :, g:-g] = data[:, g : 2 * g, g:-g]
        elif edge == BOTTOM:
            data[:, :, :g] = data[:, :, grid.ny : grid.ny + g]
        else:
            data[:, :, g + grid.ny :] = data[:, :, g : 2 * g]


@dataclass
class Transmissive(EdgeCondition):
    """Zero-gradient outflow: ghosts copy the nearest interior cell."""

    def fill(self, data, grid, edge, gas, time):
        g = grid.ghost
        if edge == LEFT:
            data[:, :g, g:-g] = data[:, g : g + 1, g:-g]
        elif edge == RIGHT:
            data[:, g + grid.nx :, g:-g] = data[:, g + grid.nx - 1 : g + grid.nx, g:-g]
        elif edge == BOTTOM:
            data[:, :, :g] = data[:, :, g : g + 1]
        else:
            data[:, :, g + grid.ny :] = data[:, :, g + grid.ny - 1 : g + grid.ny]


@dataclass
class ReflectiveWall(EdgeCondition):
    """Solid wall: mirror the interior and negate the normal velocity."""

    def fill(self, data, grid, edge, gas, time):
        g = grid.ghost
        for k in range(g):
            if edge == LEFT:
                data[:, g - 1 - k, g:-g] = data[:, g + k, g:-g]
                data[MOMX, g - 1 - k, g:-g] *= -1.0
            elif edge == RIGHT:
                data[:, g + grid.nx + k, g:-g] = data[:, g + grid.nx - 1 - k, g:-g]
                data[MOMX, g + grid.nx + k, g:-g] *= -1.0
            elif edge == BOTTOM:
                data[:, :, g - 1 - k] = data[:, :, g + k]
                data[MOMY, :, g - 1 - k] *= -1.0
            else:
                data[:, :, g + grid.ny + k] = data[:, :, g + grid.ny - 1 - k]
                data[MOMY, :, g + grid.ny + k] *= -1.0


@dataclass
class FixedState(EdgeCondition):
    """Ghosts pinned to a constant state (Dirichlet)."""

    state: PrimitiveState

    def fill(self, data, grid, edge, gas, time):
        g = grid.ghost
        cons = primitive_to_conserved(self.state.as_array(), gas)
        if edge == LEFT:
            data[:, :g, g:-g] = cons[:, None, None]
        elif edge == RIGHT:
            data[:, g + grid.nx :, g:-g] = cons[:, None, None]
        elif edge == BOTTOM:
            data[:, :, :g] = cons[:, None, None]
        else:
            data[:, :, g + grid.ny :] = cons[:, None, None]


@dataclass
class SupersonicInflow(FixedState):
    """Supersonic inflow; all characteristics enter, so the state is pinned."""


@dataclass
class MovingShockTop(EdgeCondition):
    """Top edge tracking an oblique shock sweeping along it.

    Ghost columns left of the shock foot get the post-shock state, columns
    right of it the pre-shock state.  For a shock through (x0, 0) inclined
    at ``angle`` to the x axis and advancing at ``speed`` along its own
    normal, the trace on the top edge sits at
    ``x_s(t) = x0 + speed * t / sin(angle) + y_top / tan(angle)``.
    """

    pre: PrimitiveState
    post: PrimitiveState
    x0: float
    speed: float
    angle_deg: float = 60.0
    y_top: float = 1.0

    def shock_position(self, time):
        ang = math.radians(self.angle_deg)
        return self.x0 + self.speed * time / math.sin(ang) + self.y_top / math.tan(ang)

    def fill(self, data, grid, edge, gas, time):
        if edge != TOP:
            raise ValueError("MovingShockTop only applies to the top edge")
        g = grid.ghost
        xs = self.shock_position(time)
        xc = grid.x_centers_full()
        pre = primitive_to_conserved(self.pre.as_array(), gas)
        post = primitive_to_conserved(self.post.as_array(), gas)
        col = np.where(xc < xs, post[:, None], pre[:, None])  # (4, NX)
        data[:, :, g + grid.ny :] = col[:, :, None]


@dataclass
class InflowWallSplit(EdgeCondition):
    """Bottom edge that is a pinned inflow left of x_split and a wall right of it.

    Needed for shock-reflection ducts where the incident shock meets the
    wall at x_split at t = 0.
    """

    state: PrimitiveState
    x_split: float

    def fill(self, data, grid, edge, gas, time):
        if edge != BOTTOM:
            raise ValueError("InflowWallSplit only applies to the bottom edge")
        g = grid.ghost
        xc = grid.x_centers_full()
        inflow = xc < self.x_split
        cons = primitive_to_conserved(self.state.as_array(), gas)
        for k in range(g):
            mirror = data[:, :, g + k].copy()
            mirror[MOMY] *= -1.0
            data[:, :, g - 1 - k] = np.where(inflow, cons[:, None], mirror)


@dataclass
class BoundarySpec:
    """Per-edge boundary conditions; periodic edges must come in pairs."""

    left: EdgeCondition
    right: EdgeCondition
    bottom: EdgeCondition
    top: EdgeCondition

    def __post_init__(self):
        if self.left.periodic != self.right.periodic:
            raise ValueError("periodic left/right edges must be paired")
        if self.bottom.periodic != self.top.periodic:
            raise ValueError("periodic bottom/top edges must be paired")

    def edges(self):
        return (
            (LEFT, self.left),
            (RIGHT, self.right),
            (BOTTOM, self.bottom),
            (TOP, self.top),
        )


def apply_boundary_conditions(field, bcs: BoundarySpec, gas: GasModel, time=None):
    """Fill all ghost layers of ``field`` in place and return it.

    Vertical edges first (interior rows), then horizontal edges across the
    full width so the corner ghosts are populated consistently.
    """
    t = field.time if time is None else time
    data, grid = field.data, field.grid
    bcs.left.fill(data, grid, LEFT, gas, t)
    bcs.right.fill(data, grid, RIGHT, gas, t)
    bcs.bottom.fill(data, grid, BOTTOM, gas, t)
    bcs.top.fill(data, grid, TOP, gas, t)
    return field
