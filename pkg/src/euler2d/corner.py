"""Four-state Riemann fluxes at cell corners.

Where four cells meet, the interaction of the four one-sided states LU, LD,
RU, RD (left/right x upper/down) is modeled by a rectangular fan bounded by
the signal speeds s_l <= 0 <= s_r and s_d <= 0 <= s_u.  The corner fluxes
F* (x direction) and G* (y direction) again split into convective and
pressure parts:

* the convective part upwinds by wave-speed-averaged convection velocities
  u_bar, v_bar that blend all four states,
* the pressure part is an HLL-type balance over the fan, with an explicit
  transverse coupling term (y-pressure fluxes enter F* and vice versa) and a
  dissipation vector rewritten in pressure differences through the isentropic
  proxy a_bar^2 = dp/drho.

All functions take stacked primitive arrays of shape ``(4, ...)`` per
quadrant and broadcast over trailing dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import (
    PRES,
    RHO,
    VX,
    VY,
    X,
    Y,
    GasModel,
    convected_quantities,
    pressure_flux,
    sound_speed,
)

SUBSONIC, SUPERSONIC_PLUS, SUPERSONIC_MINUS = 0, 1, -1

# Fans narrower than this (relative to a_bar) degenerate to the acoustic
# pair +-a_bar; guards against colliding supersonic streams collapsing a
# denominator to zero.
TINY_FAN_RTOL = 1e-12


@dataclass(eq=False)
class CornerStates:
    """The four primitive states meeting at a corner."""

    lu: np.ndarray
    ld: np.ndarray
    ru: np.ndarray
    rd: np.ndarray

    def quadrants(self):
        return self.lu, self.ld, self.ru, self.rd


@dataclass(eq=False)
class WaveSpeeds2D:
    """Signal speeds of the rectangular four-wave fan, plus a_bar.

    s_l <= 0 <= s_r and s_d <= 0 <= s_u; a_bar is the arithmetic mean of the
    four quadrant sound speeds.
    """

    s_l: np.ndarray
    s_r: np.ndarray
    s_d: np.ndarray
    s_u: np.ndarray
    a_bar: np.ndarray


@dataclass(eq=False)
class CornerVelocities:
    """Wave-speed-averaged convection velocities and flow regimes per axis."""

    u_bar: np.ndarray
    v_bar: np.ndarray
    regime_x: np.ndarray
    regime_y: np.ndarray


@dataclass(eq=False)
class RoeAverage:
    """Density-weighted average state used for eigenvalue bounds."""

    rho: np.ndarray
    u: np.ndarray
    v: np.ndarray
    h: np.ndarray
    a: np.ndarray


def roe_average(left: np.ndarray, right: np.ndarray, gas: GasModel) -> RoeAverage:
    """Square-root-of-density weighted average of velocity and total enthalpy.

    The averaged sound speed follows from the averaged enthalpy,
    ``a^2 = (gamma - 1)(h - (u^2 + v^2)/2)``.
    """
    wl = np.sqrt(left[RHO])
    wr = np.sqrt(right[RHO])
    wsum = wl + wr
    u = (wl * left[VX] + wr * right[VX]) / wsum
    v = (wl * left[VY] + wr * right[VY]) / wsum

    a_l2 = gas.gamma * left[PRES] / left[RHO]
    a_r2 = gas.gamma * right[PRES] / right[RHO]
    h_l = a_l2 / gas.gm1 + 0.5 * (left[VX] ** 2 + left[VY] ** 2)
    h_r = a_r2 / gas.gm1 + 0.5 * (right[VX] ** 2 + right[VY] ** 2)
    h = (wl * h_l + wr * h_r) / wsum
    a = np.sqrt(gas.gm1 * (h - 0.5 * (u * u + v * v)))
    return RoeAverage(wl * wr, u, v, h, a)


def _raw_corner_wave_speeds(states: CornerStates, gas: GasModel):
    """Eigenvalue-bound construction of the fan speeds, before any override.

    Each bound samples the one-state extreme eigenvalues (u -+ a along x,
    v -+ a along y) of the two quadrants on that side plus the Roe averages
    of the two cross pairs, and folds in zero so supersonic flow yields a
    fully one-sided flux.
    """
    lu, ld, ru, rd = states.quadrants()
    a_lu = sound_speed(lu, gas)
    a_ld = sound_speed(ld, gas)
    a_ru = sound_speed(ru, gas)
    a_rd = sound_speed(rd, gas)

    roe_xu = roe_average(lu, ru, gas)   # upper row, left->right
    roe_xd = roe_average(ld, rd, gas)   # lower row
    roe_yr = roe_average(rd, ru, gas)   # right column, bottom->top
    roe_yl = roe_average(ld, lu, gas)   # left column

    s_r = np.maximum.reduce([
        np.zeros_like(a_lu),
        ru[VX] + a_ru,
        rd[VX] + a_rd,
        roe_xu.u + roe_xu.a,
        roe_xd.u + roe_xd.a,
    ])
    s_l = np.minimum.reduce([
        np.zeros_like(a_lu),
        lu[VX] - a_lu,
        ld[VX] - a_ld,
        roe_xu.u - roe_xu.a,
        roe_xd.u - roe_xd.a,
    ])
    s_u = np.maximum.reduce([
        np.zeros_like(a_lu),
        ru[VY] + a_ru,
        lu[VY] + a_lu,
        roe_yr.v + roe_yr.a,
        roe_yl.v + roe_yl.a,
    ])
    s_d = np.minimum.reduce([
        np.zeros_like(a_lu),
        rd[VY] - a_rd,
        ld[VY] - a_ld,
        roe_yr.v - roe_yr.a,
        roe_yl.v - roe_yl.a,
    ])
    a_bar = 0.25 * (a_lu + a_ld + a_ru + a_rd)
    return WaveSpeeds2D(s_l, s_r, s_d, s_u, a_bar)


def corner_wave_speeds(states: CornerStates, gas: GasModel) -> WaveSpeeds2D:
    """Fan speeds with the degenerate-convection overrides applied.

    Using provisional convection velocities from the raw speeds:

    * u_bar == 0 replaces the x speeds by -+a_bar,
    * v_bar == 0 replaces the y speeds by -+a_bar,

    (both rules fire when both velocities vanish).  A collapsed fan
    (s_r - s_l or s_u - s_d below TINY_FAN_RTOL * a_bar) is overridden the
    same way.  Two passes keep the construction deterministic: provisional
    velocities decide the overrides, final velocities are recomputed by the
    caller from the returned speeds.
    """
    raw = _raw_corner_wave_speeds(states, gas)
    eps = TINY_FAN_RTOL * np.maximum(raw.a_bar, 1.0)
    provisional = corner_convection_velocities(states, raw)

    override_x = (provisional.u_bar == 0.0) | (raw.s_r - raw.s_l <= eps)
    override_y = (provisional.v_bar == 0.0) | (raw.s_u - raw.s_d <= eps)
    s_l = np.where(override_x, -raw.a_bar, raw.s_l)
    s_r = np.where(override_x, raw.a_bar, raw.s_r)
    s_d = np.where(override_y, -raw.a_bar, raw.s_d)
    s_u = np.where(override_y, raw.a_bar, raw.s_u)
    return WaveSpeeds2D(s_l, s_r, s_d, s_u, raw.a_bar)


def corner_convection_velocities(
    states: CornerStates, speeds: WaveSpeeds2D
) -> CornerVelocities:
    """Wave-speed-averaged convection velocities u_bar, v_bar.

    Subsonic form (weights sum to one)::

        u_bar = (u_LU s_u - u_LD s_d + u_RU s_u - u_RD s_d) / (2 (s_u - s_d))
        v_bar = (v_RU s_r - v_LU s_l + v_RD s_r - v_LD s_l) / (2 (s_r - s_l))

    A supersonic regime (s_l == 0 for +x, s_r == 0 for -x, mirrored in y)
    keeps only the upwind pair, e.g. ``u_bar = (u_LU s_u - u_LD s_d) /
    (s_u - s_d)`` for flow supersonic in +x.
    """
    lu, ld, ru, rd = states.quadrants()

    regime_x = np.where(
        speeds.s_l >= 0.0,
        SUPERSONIC_PLUS,
        np.where(speeds.s_r <= 0.0, SUPERSONIC_MINUS, SUBSONIC),
    )
    regime_y = np.where(
        speeds.s_d >= 0.0,
        SUPERSONIC_PLUS,
        np.where(speeds.s_u <= 0.0, SUPERSONIC_MINUS, SUBSONIC),
    )

    den_y = speeds.s_u - speeds.s_d
    den_x = speeds.s_r - speeds.s_l
    # Collapsed fans only occur pre-override; those values are discarded.
    den_y = np.where(den_y == 0.0, 1.0, den_y)
    den_x = np.where(den_x == 0.0, 1.0, den_x)

    u_bar = np.select(
        [regime_x == SUPERSONIC_PLUS, regime_x == SUPERSONIC_MINUS],
        [
            (lu[VX] * speeds.s_u - ld[VX] * speeds.s_d) / den_y,
            (ru[VX] * speeds.s_u - rd[VX] * speeds.s_d) / den_y,
        ],
        default=(
            lu[VX] * speeds.s_u
            - ld[VX] * speeds.s_d
            + ru[VX] * speeds.s_u
            - rd[VX] * speeds.s_d
        )
        / (2.0 * den_y),
    )
    v_bar = np.select(
        [regime_y == SUPERSONIC_PLUS, regime_y == SUPERSONIC_MINUS],
        [
            (rd[VY] * speeds.s_r - ld[VY] * speeds.s_l) / den_x,
            (ru[VY] * speeds.s_r - lu[VY] * speeds.s_l) / den_x,
        ],
        default=(
            ru[VY] * speeds.s_r
            - lu[VY] * speeds.s_l
            + rd[VY] * speeds.s_r
            - ld[VY] * speeds.s_l
        )
        / (2.0 * den_x),
    )
    return CornerVelocities(u_bar, v_bar, regime_x, regime_y)


def corner_convective_flux(
    states: CornerStates,
    speeds: WaveSpeeds2D,
    vels: CornerVelocities,
    axis: int = X,
) -> np.ndarray:
    """Upwinded convective corner flux.

    x direction: ``F1* = u_bar (s_u W_k1 - s_d W_k2) / (s_u - s_d)`` with
    (k1, k2) = (LU, LD) for u_bar > 0 and (RU, RD) otherwise, where W is the
    convected vector [rho, rho*u, rho*v, rho*q2/2].  y direction mirrors with
    (RD, LD) / (RU, LU) weighted by s_r, s_l.  A vanishing convection
    velocity yields the zero vector.
    """
    lu, ld, ru, rd = states.quadrants()
    if axis == X:
        pick = vels.u_bar > 0.0
        w1 = np.where(pick, convected_quantities(lu), convected_quantities(ru))
        w2 = np.where(pick, convected_quantities(ld), convected_quantities(rd))
        return vels.u_bar * (speeds.s_u * w1 - speeds.s_d * w2) / (
            speeds.s_u - speeds.s_d
        )
    pick = vels.v_bar > 0.0
    w1 = np.where(pick, convected_quantities(rd), convected_quantities(ru))
    w2 = np.where(pick, convected_quantities(ld), convected_quantities(lu))
    return vels.v_bar * (speeds.s_r * w1 - speeds.s_l * w2) / (
        speeds.s_r - speeds.s_l
    )


def corner_pressure_flux(
    states: CornerStates, speeds: WaveSpeeds2D, gas: GasModel, axis: int = X
) -> np.ndarray:
    """HLL-type pressure corner flux with transverse coupling.

    x direction::

        F2* = (Fb_L + Fb_R)/2 + dU2x
              - 2 s_r s_l / ((s_r - s_l)(s_u - s_d)) *
                (G2_RU - G2_LU + G2_LD - G2_RD)

    with the y-averaged one-sided fluxes
    ``Fb_L = (F2_LU s_u - F2_LD s_d)/(s_u - s_d)`` (Fb_R analogous) and::

        dU2x = (s_r + s_l) / (2 (s_r - s_l)) * (Fb_L - Fb_R)
             - s_r s_l / ((s_r - s_l)(s_u - s_d) a_bar^2) *
               [s_u d_u(p)    - s_d d_d(p),
                s_u d_u(p u)  - s_d d_d(p u),
                s_u d_u(p v)  - s_d d_d(p v),
                s_u d_u(e*)   - s_d d_d(e*)]

    where d_u(f) = f_LU - f_RU, d_d(f) = f_LD - f_RD and
    ``e*_k = a_bar^2 p_k/(gamma - 1) + p_k q2_k / 2``.  The y direction is
    the mirror image.  The transverse term feeds y-pressure information into
    the x flux (and vice versa); this cross dissipation is what damps
    grid-aligned shock instabilities.
    """
    lu, ld, ru, rd = states.quadrants()
    s_l, s_r, s_d, s_u = speeds.s_l, speeds.s_r, speeds.s_d, speeds.s_u
    dx = s_r - s_l
    dy = s_u - s_d
    a2 = speeds.a_bar * speeds.a_bar

    def estar(q):
        p = q[PRES]
        return a2 * p / gas.gm1 + 0.5 * p * (q[VX] ** 2 + q[VY] ** 2)

    if axis == X:
        f2_lu = pressure_flux(lu, gas, X)
        f2_ld = pressure_flux(ld, gas, X)
        f2_ru = pressure_flux(ru, gas, X)
        f2_rd = pressure_flux(rd, gas, X)
        fb_l = (f2_lu * s_u - f2_ld * s_d) / dy
        fb_r = (f2_ru * s_u - f2_rd * s_d) / dy

        jump = np.stack([
            s_u * (lu[PRES] - ru[PRES]) - s_d * (ld[PRES] - rd[PRES]),
            s_u * (lu[PRES] * lu[VX] - ru[PRES] * ru[VX])
            - s_d * (ld[PRES] * ld[VX] - rd[PRES] * rd[VX]),
            s_u * (lu[PRES] * lu[VY] - ru[PRES] * ru[VY])
            - s_d * (ld[PRES] * ld[VY] - rd[PRES] * rd[VY]),
            s_u * (estar(lu) - estar(ru)) - s_d * (estar(ld) - estar(rd)),
        ])
        g2_lu = pressure_flux(lu, gas, Y)
        g2_ld = pressure_flux(ld, gas, Y)
        g2_ru = pressure_flux(ru, gas, Y)
        g2_rd = pressure_flux(rd, gas, Y)
        cross = (-2.0 * s_r * s_l / (dx * dy)) * (g2_ru - g2_lu + g2_ld - g2_rd)

        diss = ((s_r + s_l) / (2.0 * dx)) * (fb_l - fb_r) - (
            s_r * s_l / (dx * dy * a2)
        ) * jump
        return 0.5 * (fb_l + fb_r) + diss + cross

    g2_lu = pressure_flux(lu, gas, Y)
    g2_ld = pressure_flux(ld, gas, Y)
    g2_ru = pressure_flux(ru, gas, Y)
    g2_rd = pressure_flux(rd, gas, Y)
    gb_d = (g2_rd * s_r - g2_ld * s_l) / dx
    gb_u = (g2_ru * s_r - g2_lu * s_l) / dx

    jump = np.stack([
        s_r * (rd[PRES] - ru[PRES]) - s_l * (ld[PRES] - lu[PRES]),
        s_r * (rd[PRES] * rd[VX] - ru[PRES] * ru[VX])
        - s_l * (ld[PRES] * ld[VX] - lu[PRES] * lu[VX]),
        s_r * (rd[PRES] * rd[VY] - ru[PRES] * ru[VY])
        - s_l * (ld[PRES] * ld[VY] - lu[PRES] * lu[VY]),
        s_r * (estar(rd) - estar(ru)) - s_l * (estar(ld) - estar(lu)),
    ])
    f2_lu = pressure_flux(lu, gas, X)
    f2_ld = pressure_flux(ld, gas, X)
    f2_ru = pressure_flux(ru, gas, X)
    f2_rd = pressure_flux(rd, gas, X)
    cross = (-2.0 * s_u * s_d / (dx * dy)) * (f2_ru - f2_lu + f2_ld - f2_rd)

    diss = ((s_u + s_d) / (2.0 * dy)) * (gb_d - gb_u) - (
        s_u * s_d / (dx * dy * a2)
    ) * jump
    return 0.5 * (gb_d + gb_u) + diss + cross


def corner_flux(states: CornerStates, gas: GasModel):
    """Total corner fluxes (F*, G*): convective plus pressure parts.

    Expression-for-expression this composes corner_convective_flux and
    corner_pressure_flux for both axes; the per-quadrant products shared
    between the axes (split fluxes, advected vectors, pressure moments) are
    just computed once.  Results are bitwise identical to the composition.
    """
    speeds = corner_wave_speeds(states, gas)
    vels = corner_convection_velocities(states, speeds)
    lu, ld, ru, rd = states.quadrants()
    s_l, s_r, s_d, s_u = speeds.s_l, speeds.s_r, speeds.s_d, speeds.s_u
    dx = s_r - s_l
    dy = s_u - s_d
    a2 = speeds.a_bar * speeds.a_bar

    w_lu, w_ld, w_ru, w_rd = (convected_quantities(q) for q in states.quadrants())
    f2_lu, f2_ld, f2_ru, f2_rd = (pressure_flux(q, gas, X) for q in states.quadrants())
    g2_lu, g2_ld, g2_ru, g2_rd = (pressure_flux(q, gas, Y) for q in states.quadrants())

    def moments(q):
        p = q[PRES]
        estar = a2 * p / gas.gm1 + 0.5 * p * (q[VX] ** 2 + q[VY] ** 2)
        return p, p * q[VX], p * q[VY], estar

    m_lu, m_ld, m_ru, m_rd = (moments(q) for q in states.quadrants())

    # x direction
    pick = vels.u_bar > 0.0
    w1 = np.where(pick, w_lu, w_ru)
    w2 = np.where(pick, w_ld, w_rd)
    conv_x = vels.u_bar * (s_u * w1 - s_d * w2) / dy

    fb_l = (f2_lu * s_u - f2_ld * s_d) / dy
    fb_r = (f2_ru * s_u - f2_rd * s_d) / dy
    jump_x = np.stack([
        s_u * (m_lu[0] - m_ru[0]) - s_d * (m_ld[0] - m_rd[0]),
        s_u * (m_lu[1] - m_ru[1]) - s_d * (m_ld[1] - m_rd[1]),
        s_u * (m_lu[2] - m_ru[2]) - s_d * (m_ld[2] - m_rd[2]),
        s_u * (m_lu[3] - m_ru[3]) - s_d * (m_ld[3] - m_rd[3]),
    ])
    cross_x = (-2.0 * s_r * s_l / (dx * dy)) * (g2_ru - g2_lu + g2_ld - g2_rd)
    diss_x = ((s_r + s_l) / (2.0 * dx)) * (fb_l - fb_r) - (
        s_r * s_l / (dx * dy * a2)
    ) * jump_x
    pres_x = 0.5 * (fb_l + fb_r) + diss_x + cross_x

    # y direction
    pick = vels.v_bar > 0.0
    w1 = np.where(pick, w_rd, w_ru)
    w2 = np.where(pick, w_ld, w_lu)
    conv_y = vels.v_bar * (s_r * w1 - s_l * w2) / dx

    gb_d = (g2_rd * s_r - g2_ld * s_l) / dx
    gb_u = (g2_ru * s_r - g2_lu * s_l) / dx
    jump_y = np.stack([
        s_r * (m_rd[0] - m_ru[0]) - s_l * (m_ld[0] - m_lu[0]),
        s_r * (m_rd[1] - m_ru[1]) - s_l * (m_ld[1] - m_lu[1]),
        s_r * (m_rd[2] - m_ru[2]) - s_l * (m_ld[2] - m_lu[2]),
        s_r * (m_rd[3] - m_ru[3]) - s_l * (m_ld[3] - m_lu[3]),
    ])
    cross_y = (-2.0 * s_u * s_d / (dx * dy)) * (f2_ru - f2_lu + f2_ld - f2_rd)
    diss_y = ((s_u + s_d) / (2.0 * dy)) * (gb_d - gb_u) - (
        s_u * s_d / (dx * dy * a2)
    ) * jump_y
    pres_y = 0.5 * (gb_d + gb_u) + diss_y + cross_y

    return conv_x + pres_x, conv_y + pres_y
