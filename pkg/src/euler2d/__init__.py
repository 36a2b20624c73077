"""Two-dimensional finite-volume Euler solver.

Convective-pressure split interface fluxes in two flavors: a conventional
two-state scheme and a genuinely multidimensional variant that blends
four-state corner fluxes into every interface.  Exact on stationary
contacts, fully one-sided in supersonic flow, and shock-stable in the
multidimensional form.
"""

from .boundaries import (
    BoundarySpec,
    FixedState,
    InflowWallSplit,
    MovingShockTop,
    Periodic,
    ReflectiveWall,
    SupersonicInflow,
    Transmissive,
    apply_boundary_conditions,
)
from .cases import (
    CaseSpec,
    ConfigError,
    DomainError,
    ErrorNorms,
    InstabilityMetrics,
    ShapeError,
    ShockNotFound,
    available_cases,
    case_spec,
    error_norms,
    exact_vortex_solution,
    init_case,
    instability_metrics,
    order_of_accuracy,
)
from .config import OutputConfig, RunConfig, parse_config
from .corner import (
    CornerStates,
    CornerVelocities,
    WaveSpeeds2D,
    corner_convection_velocities,
    corner_convective_flux,
    corner_flux,
    corner_pressure_flux,
    corner_wave_speeds,
    roe_average,
)
from .midpoint import (
    UpwindFactors,
    WaveSpeeds1D,
    convective_midpoint_flux,
    midpoint_flux,
    pressure_midpoint_flux,
    upwind_factors,
    wave_speeds_1d,
)
from .runner import RunResult, read_report_kv, run
from .snapshots import read_snapshot_csv, write_snapshot
from .solver import (
    Field,
    Grid,
    ReconstructedStates,
    SchemeConfig,
    advance,
    assemble_interface_flux,
    compute_time_step,
    minmod,
    reconstruct,
    van_leer,
)
from .state import (
    ConservedState,
    GasModel,
    PositivityError,
    PrimitiveState,
    conserved_to_primitive,
    full_flux,
    pressure_flux,
    primitive_to_conserved,
    sound_speed,
    split_flux,
)

__version__ = "0.1.0"
