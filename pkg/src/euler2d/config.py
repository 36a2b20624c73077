"""Plain-text run configuration.

Format: ``key = value`` lines, ``#`` comments, blank lines ignored.  Keys can
be grouped under ``[section]`` headers or written with the dotted form
directly (``output.dir = results``).  Unknown keys and invalid values raise
ConfigError with the offending line number.

Recognized keys::

    case          vortex | riemann1 | riemann2 | dmr | odd_even | standing_shock
    scheme        gm | multidimensional | two_state
    order         first | second
    limiter       minmod | van_leer
    cfl           float in (0, 1]
    gamma         float > 1
    grid          NX or NXxNY, e.g. 400x400
    grids         comma list of square sizes (vortex convergence ladder)
    t_final       float > 0
    steps         int > 0 (fixed-step run)
    diagnostics   auto | off
    output.dir          snapshot/report directory (default "out")
    output.format       csv | vtk | both
    output.every_steps  int >= 0 (0 = final snapshot only)
    output.every_time   float >= 0 (0 = final snapshot only)

``case`` is mandatory; everything else has defaults (second order,
multidimensional scheme, minmod limiter, gamma = 1.4, the case's customary
grid, CFL and final time).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cases import CaseSpec, ConfigError, available_cases, case_spec
from .solver import SchemeConfig
from .state import GasModel


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "out"
    fmt: str = "csv"
    every_steps: int = 0
    every_time: float = 0.0


@dataclass(frozen=True)
class RunConfig:
    """A validated run: case, scheme, gas, output, diagnostics switch."""

    case: CaseSpec
    scheme: SchemeConfig
    gas: GasModel
    output: OutputConfig = field(default_factory=OutputConfig)
    grids: Optional[tuple] = None     # vortex convergence ladder
    diagnostics: str = "auto"


_KNOWN_KEYS = {
    "case", "scheme", "order", "limiter", "cfl", "gamma", "grid", "grids",
    "t_final", "steps", "diagnostics",
    "output.dir", "output.format", "output.every_steps", "output.every_time",
}


def _parse_lines(text: str):
    """Yield (key, value, lineno) tuples from the sectioned key-value text."""
    section = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if not section:
                raise ConfigError(f"line {lineno}: empty section name")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if section:
            key = f"{section}.{key}"
        yield key, value, lineno


def _fail(where, key, msg):
    raise ConfigError(f"{where}: key {key!r}: {msg}")


def _as_float(value, where, key, low=None, high=None, low_open=True):
    try:
        x = float(value)
    except ValueError:
        _fail(where, key, f"not a number: {value!r}")
    if low is not None and (x <= low if low_open else x < low):
        _fail(where, key, f"must be greater than {low}")
    if high is not None and x > high:
        _fail(where, key, f"must be at most {high}")
    return x


def _as_int(value, where, key, low=None):
    try:
        x = int(value)
    except ValueError:
        _fail(where, key, f"not an integer: {value!r}")
    if low is not None and x < low:
        _fail(where, key, f"must be at least {low}")
    return x


def _as_choice(value, where, key, choices):
    if value not in choices:
        _fail(where, key, f"expected one of {sorted(choices)}, got {value!r}")
    return value


def parse_config(text: str, overrides=()) -> RunConfig:
    """Parse configuration text, then apply ``key=value`` override strings.

    Later occurrences of a key win, overrides last.  All validation errors
    carry the source location.
    """
    entries = list(_parse_lines(text))
    for n, ov in enumerate(overrides, start=1):
        if "=" not in ov:
            raise ConfigError(f"override {n}: expected key=value, got {ov!r}")
        key, value = (part.strip() for part in ov.split("=", 1))
        entries.append((key, value, f"override {n}"))

    values = {}
    for key, value, where in entries:
        where = f"line {where}" if isinstance(where, int) else where
        if key not in _KNOWN_KEYS:
            _fail(where, key, "unknown key")
        values[key] = (value, where)

    def get(key, default=None):
        return values.get(key, (default, None))

    case_name, where = get("case")
    if case_name is None:
        raise ConfigError("missing mandatory key 'case'")
    if case_name not in available_cases():
        _fail(where, "case", f"unknown case; known: {sorted(available_cases())}")

    nx = ny = None
    raw, where = get("grid")
    if raw is not None:
        parts = raw.lower().split("x")
        if len(parts) not in (1, 2):
            _fail(where, "grid", f"expected NX or NXxNY, got {raw!r}")
        nx = _as_int(parts[0], where, "grid", low=4)
        ny = _as_int(parts[-1], where, "grid", low=4)

    grids = None
    raw, where = get("grids")
    if raw is not None:
        if case_name != "vortex":
            _fail(where, "grids", "convergence ladder applies to the vortex case only")
        grids = tuple(_as_int(p.strip(), where, "grids", low=4)
                      for p in raw.split(","))
        if len(grids) < 2:
            _fail(where, "grids", "need at least two sizes to measure an order")

    raw, where = get("cfl")
    cfl = None if raw is None else _as_float(raw, where, "cfl", low=0.0, high=1.0)
    raw, where = get("t_final")
    t_final = None if raw is None else _as_float(raw, where, "t_final", low=0.0)
    raw, where = get("steps")
    steps = None if raw is None else _as_int(raw, where, "steps", low=1)

    try:
        case = case_spec(case_name, nx=nx, ny=ny, cfl=cfl, t_final=t_final,
                         steps=steps)
    except ValueError as err:
        raise ConfigError(str(err)) from None

    if grids is None and case_name == "vortex" and nx is None:
        grids = (64, 128)   # default convergence ladder

    raw, where = get("gamma")
    gamma = 1.4 if raw is None else _as_float(raw, where, "gamma", low=1.0)

    raw, where = get("scheme", case.default_scheme)
    scheme_name = _as_choice(raw, where, "scheme",
                             {"gm", "multidimensional", "two_state"})
    raw, where = get("order", case.default_order)
    order = _as_choice(raw, where, "order", {"first", "second"})
    raw, where = get("limiter", "minmod")
    limiter = _as_choice(raw, where, "limiter", {"minmod", "van_leer"})

    raw, where = get("diagnostics", "auto")
    diagnostics = _as_choice(raw, where, "diagnostics", {"auto", "off"})

    out_dir, _ = get("output.dir", "out")
    raw, where = get("output.format", "csv")
    fmt = _as_choice(raw, where, "output.format", {"csv", "vtk", "both"})
    raw, where = get("output.every_steps")
    every_steps = 0 if raw is None else _as_int(raw, where, "output.every_steps", low=0)
    raw, where = get("output.every_time")
    every_time = 0.0 if raw is None else _as_float(raw, where, "output.every_time",
                                                   low=0.0, low_open=False)

    return RunConfig(
        case=case,
        scheme=SchemeConfig(scheme=scheme_name, order=order,
                            cfl=case.cfl, limiter=limiter),
        gas=GasModel(gamma=gamma),
        output=OutputConfig(out_dir, fmt, every_steps, every_time),
        grids=grids,
        diagnostics=diagnostics,
    )
