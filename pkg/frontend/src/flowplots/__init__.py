"""Contour figures from flow-field CSV snapshots.

Consumes the solver's snapshot schema (header ``x,y,rho,u,v,p``, one row per
cell center, x varying fastest) and renders evenly spaced iso-contour plots.
"""

from .contours import (
    FormatError,
    PlotResult,
    PlotSpec,
    RangeError,
    read_snapshot,
    render_contours,
)

__version__ = "0.1.0"
