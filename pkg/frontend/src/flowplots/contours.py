"""Snapshot reading and contour rendering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

EXPECTED_HEADER = ["x", "y", "rho", "u", "v", "p"]
VARIABLES = {"rho": 2, "u": 3, "v": 4, "p": 5}


class FormatError(ValueError):
    """The snapshot file does not follow the CSV schema."""


class RangeError(ValueError):
    """The requested variable carries no range to contour."""


@dataclass(frozen=True)
class PlotSpec:
    """One contour figure: source snapshot, variable, levels, destination."""

    snapshot: str
    output: str
    variable: str = "rho"
    levels: int = 30
    vmin: float = 0.15
    vmax: float = 1.7
    title: Optional[str] = None

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise FormatError(
                f"unknown variable {self.variable!r}; choose from {sorted(VARIABLES)}"
            )
        if self.levels < 1:
            raise ValueError("need at least one contour level")
        if not self.vmin < self.vmax:
            raise ValueError("contour range must satisfy min < max")


@dataclass(frozen=True)
class PlotResult:
    """What was rendered: the exact level values and the written path."""

    levels: np.ndarray
    output: str


def read_snapshot(path):
    """Parse a snapshot CSV into (x, y, columns) with columns shaped (6, nx, ny).

    Raises FormatError on a wrong header, non-numeric data, or rows that do
    not tile a full Cartesian grid.
    """
    try:
        with open(path) as fh:
            header = fh.readline().strip()
            if [h.strip() for h in header.split(",")] != EXPECTED_HEADER:
                raise FormatError(f"unexpected header {header!r}")
            try:
                raw = np.loadtxt(fh, delimiter=",", ndmin=2)
            except ValueError as err:
                raise FormatError(f"malformed snapshot data: {err}") from None
    except OSError as err:
        raise FormatError(f"cannot read snapshot: {err}") from None
    if raw.size == 0 or raw.shape[1] != 6:
        raise FormatError("snapshot must have six columns of data")
    x = np.unique(raw[:, 0])
    y = np.unique(raw[:, 1])
    if len(x) * len(y) != raw.shape[0]:
        raise FormatError("snapshot rows do not tile a full grid")
    cols = raw.T.reshape(6, len(y), len(x)).transpose(0, 2, 1)
    return x, y, cols


def render_contours(spec: PlotSpec) -> PlotResult:
    """Render evenly spaced iso-contours and write a raster image.

    The level values are exactly ``linspace(vmin, vmax, levels)``.  The
    snapshot is read-only; the output path is the only file touched.
    """
    x, y, cols = read_snapshot(spec.snapshot)
    data = cols[VARIABLES[spec.variable]]
    if np.min(data) == np.max(data):
        raise RangeError(
            f"variable {spec.variable!r} is constant ({data.flat[0]:g}); "
            "nothing to contour"
        )
    levels = np.linspace(spec.vmin, spec.vmax, spec.levels)

    fig, ax = plt.subplots(figsize=(7.0, 7.0 * (y[-1] - y[0]) / (x[-1] - x[0]) + 1.0))
    ax.contour(x, y, data.T, levels=levels, colors="black", linewidths=0.5)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(spec.title or f"{spec.variable}: {spec.levels} levels "
                               f"[{spec.vmin:g}, {spec.vmax:g}]")
    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return PlotResult(levels=levels, output=spec.output)
