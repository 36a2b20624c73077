"""Snapshot writers: CSV (primitives at cell centers) and legacy VTK.

The CSV schema is the exchange format of the project: header
``x,y,rho,u,v,p``, one row per cell center, written row by row in y with x
varying fastest, 17 significant digits so a re-read reproduces the values
bit for bit.
"""

from __future__ import annotations

import numpy as np

from .solver import Field
from .state import GasModel

CSV_HEADER = "x,y,rho,u,v,p"


def write_snapshot(field: Field, path, gas: GasModel, fmt: str = "csv"):
    """Write the interior of ``field`` to ``path`` in the requested format."""
    if fmt == "csv":
        _write_csv(field, path, gas)
    elif fmt == "vtk":
        _write_vtk(field, path, gas)
    else:
        raise ValueError(f"unknown snapshot format {fmt!r}")


def _write_csv(field: Field, path, gas: GasModel):
    prim = field.primitive(gas)
    xc = field.grid.x_centers()
    yc = field.grid.y_centers()
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for j in range(field.grid.ny):
            y = yc[j]
            for i in range(field.grid.nx):
                fh.write(
                    f"{xc[i]:.17g},{y:.17g},{prim[0, i, j]:.17g},"
                    f"{prim[1, i, j]:.17g},{prim[2, i, j]:.17g},{prim[3, i, j]:.17g}\n"
                )


def read_snapshot_csv(path):
    """Read a CSV snapshot back into (x, y, prim) arrays.

    Returns the interior cell-center coordinates (1D each) and the stacked
    primitive array (4, nx, ny).  Values round-trip bitwise thanks to the
    17-digit formatting.
    """
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected snapshot header {header!r}")
        raw = np.loadtxt(fh, delimiter=",").reshape(-1, 6)
    x = np.unique(raw[:, 0])
    y = np.unique(raw[:, 1])
    nx, ny = len(x), len(y)
    if nx * ny != raw.shape[0]:
        raise ValueError("snapshot rows do not form a full grid")
    prim = raw[:, 2:].reshape(ny, nx, 4).transpose(2, 1, 0)
    return x, y, prim


def _write_vtk(field: Field, path, gas: GasModel):
    """Legacy ASCII structured-points file with density and pressure scalars
    and the planar velocity as a vector field."""
    prim = field.primitive(gas)
    grid = field.grid
    n = grid.nx * grid.ny

    def values(row):
        # VTK structured points iterate x fastest, matching the CSV order.
        return "\n".join(
            f"{prim[row, i, j]:.17g}"
            for j in range(grid.ny)
            for i in range(grid.nx)
        )

    with open(path, "w") as fh:
        fh.write("# vtk DataFile Version 3.0\n")
        fh.write(f"euler2d snapshot t={field.time:.17g}\n")
        fh.write("ASCII\nDATASET STRUCTURED_POINTS\n")
        fh.write(f"DIMENSIONS {grid.nx} {grid.ny} 1\n")
        fh.write(
            f"ORIGIN {grid.x0 + 0.5 * grid.dx:.17g} "
            f"{grid.y0 + 0.5 * grid.dy:.17g} 0\n"
        )
        fh.write(f"SPACING {grid.dx:.17g} {grid.dy:.17g} 1\n")
        fh.write(f"POINT_DATA {n}\n")
        fh.write("SCALARS density double 1\nLOOKUP_TABLE default\n")
        fh.write(values(0) + "\n")
        fh.write("SCALARS pressure double 1\nLOOKUP_TABLE default\n")
        fh.write(values(3) + "\n")
        fh.write("VECTORS velocity double\n")
        for j in range(grid.ny):
            for i in range(grid.nx):
                fh.write(f"{prim[1, i, j]:.17g} {prim[2, i, j]:.17g} 0\n")
