"""Gas states, conversions, and the convective/pressure split of the Euler flux.

States are carried as stacked numpy arrays of shape ``(4, ...)`` so the same
kernels serve a single state (shape ``(4,)``) and whole fields.  Primitive
rows are ``[rho, u, v, p]``, conserved rows are ``[rho, rho*u, rho*v, rho*e]``
where ``rho*e`` is the total energy density.  Flux vectors use the conserved
row layout.

The split writes the x-flux as ``F = F1 + F2`` with

    F1 = u * [rho, rho*u, rho*v, rho*q2/2]        (advection of mass,
                                                   momentum, kinetic energy)
    F2 = [0, p, 0, gamma/(gamma-1) * p * u]       (pressure / acoustic part)

and mirrors it in y.  Pressure work is removed from the advected energy, so
the convective part transports kinetic energy only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Row indices for primitive arrays.
RHO, VX, VY, PRES = 0, 1, 2, 3
# Row indices for conserved / flux arrays.
MASS, MOMX, MOMY, ENER = 0, 1, 2, 3
# Axis identifiers.
X, Y = 0, 1

# Row permutation that swaps the roles of x and y (velocities or momenta).
SWAP_XY = np.array([0, 2, 1, 3])


class PositivityError(ValueError):
    """A state lost positive density or pressure (or became non-finite).

    Raised when recovering primitives from conserved data.  ``indices`` holds
    the offending positions within the array that was being converted, when
    available; the solver attaches cell coordinates and time on re-raise.
    """

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


@dataclass(frozen=True)
class GasModel:
    """Ideal gas with constant ratio of specific heats."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")

    @property
    def gm1(self) -> float:
        return self.gamma - 1.0


@dataclass(frozen=True)
class PrimitiveState:
    """Scalar primitive state (rho, u, v, p); density and pressure positive."""

    rho: float
    u: float
    v: float
    p: float

    def __post_init__(self):
        vals = (self.rho, self.u, self.v, self.p)
        if not all(math.isfinite(x) for x in vals):
            raise ValueError(f"non-finite primitive state {vals}")
        if self.rho <= 0.0 or self.p <= 0.0:
            raise PositivityError(
                f"non-positive density or pressure in state {vals}"
            )

    @property
    def q2(self) -> float:
        """Twice the specific kinetic energy, u^2 + v^2."""
        return self.u * self.u + self.v * self.v

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.u, self.v, self.p])

    @classmethod
    def from_array(cls, arr) -> "PrimitiveState":
        return cls(*(float(x) for x in arr))

    def to_conserved(self, gas: GasModel) -> "ConservedState":
        return ConservedState.from_array(primitive_to_conserved(self.as_array(), gas))


@dataclass(frozen=True)
class ConservedState:
    """Scalar conserved state (rho, rho*u, rho*v, rho*e)."""

    rho: float
    mx: float
    my: float
    E: float

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.mx, self.my, self.E])

    @classmethod
    def from_array(cls, arr) -> "ConservedState":
        return cls(*(float(x) for x in arr))

    def to_primitive(self, gas: GasModel) -> PrimitiveState:
        return PrimitiveState.from_array(conserved_to_primitive(self.as_array(), gas))


def primitive_to_conserved(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    """Convert primitive rows [rho, u, v, p] to conserved rows.

    Total energy closes with the ideal-gas law:
    ``rho*e = p/(gamma-1) + rho*(u^2+v^2)/2``.
    """
    rho, u, v, p = prim[RHO], prim[VX], prim[VY], prim[PRES]
    return np.stack([
        rho,
        rho * u,
        rho * v,
        p / gas.gm1 + 0.5 * rho * (u * u + v * v),
    ])


def conserved_to_primitive(cons: np.ndarray, gas: GasModel) -> np.ndarray:
    """Convert conserved rows to primitive rows [rho, u, v, p].

    Raises PositivityError if any density or recovered pressure is
    non-positive, or if the data is non-finite.  This is the solver's
    blow-up detector: failures must surface, not be clamped away.
    """
    rho = cons[MASS]
    if not np.all(np.isfinite(cons)):
        raise PositivityError(
            "non-finite conserved state",
            indices=np.argwhere(~np.isfinite(cons).all(axis=0)),
        )
    if np.any(rho <= 0.0):
        raise PositivityError(
            "non-positive density", indices=np.argwhere(rho <= 0.0)
        )
    u = cons[MOMX] / rho
    v = cons[MOMY] / rho
    p = gas.gm1 * (cons[ENER] - 0.5 * rho * (u * u + v * v))
    if np.any(p <= 0.0):
        raise PositivityError(
            "non-positive pressure", indices=np.argwhere(p <= 0.0)
        )
    return np.stack([rho, u, v, p])


def sound_speed(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    """a = sqrt(gamma * p / rho)."""
    return np.sqrt(gas.gamma * prim[PRES] / prim[RHO])


def convected_quantities(prim: np.ndarray) -> np.ndarray:
    """The advected vector [rho, rho*u, rho*v, rho*q2/2] shared by both axes."""
    rho, u, v = prim[RHO], prim[VX], prim[VY]
    return np.stack([rho, rho * u, rho * v, 0.5 * rho * (u * u + v * v)])


def convective_flux(prim: np.ndarray, axis: int = X) -> np.ndarray:
    """Convective part of the Euler flux along ``axis``."""
    vel = prim[VX] if axis == X else prim[VY]
    return vel * convected_quantities(prim)


def pressure_flux(prim: np.ndarray, gas: GasModel, axis: int = X) -> np.ndarray:
    """Pressure part of the Euler flux along ``axis``.

    Depends only on pressure and the axis velocity; in particular it carries
    no density information.
    """
    p = prim[PRES]
    vel = prim[VX] if axis == X else prim[VY]
    zero = np.zeros_like(p)
    ep = (gas.gamma / gas.gm1) * p * vel
    if axis == X:
        return np.stack([zero, p, zero, ep])
    return np.stack([zero, zero, p, ep])


def split_flux(prim: np.ndarray, gas: GasModel, axis: int = X):
    """Return (convective, pressure) flux parts; their sum is the Euler flux."""
    return convective_flux(prim, axis), pressure_flux(prim, gas, axis)


def full_flux(prim: np.ndarray, gas: GasModel, axis: int = X) -> np.ndarray:
    """Full Euler flux along ``axis``, assembled from the two split parts."""
    conv, pres = split_flux(prim, gas, axis)
    return conv + pres
