"""Run orchestration: drive a configured case, emit snapshots and reports.

A run writes into the output directory (config ``output.dir``, overridable
through the ``EULER2D_OUTPUT_DIR`` environment variable):

* snapshots per the configured cadence plus a final one,
* ``report.txt``    - human-readable summary,
* ``report.kv``     - the same data as grep-friendly ``key = value`` lines.

A positivity failure during an instability case is a measurement, not a
crash: the run records blow-up time and location in the report and returns a
nonzero exit status.
"""

from __future__ import annotations

import os
import time as _time
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .cases import (
    CaseSpec,
    ShockNotFound,
    error_norms,
    exact_vortex_solution,
    init_case,
    instability_metrics,
    order_of_accuracy,
)
from .config import RunConfig
from .snapshots import write_snapshot
from .solver import Field, advance, compute_time_step
from .state import PositivityError

_INSTABILITY_CASES = ("odd_even", "standing_shock")


@dataclass
class RunResult:
    report: dict
    exit_code: int
    fields: dict           # label -> final Field (per grid for ladders)
    output_dir: str
    snapshot_paths: list


def _totals(field: Field):
    interior = field.interior
    cell = field.grid.dx * field.grid.dy
    return {
        "total_mass": float(interior[0].sum()) * cell,
        "total_momentum_x": float(interior[1].sum()) * cell,
        "total_momentum_y": float(interior[2].sum()) * cell,
        "total_energy": float(interior[3].sum()) * cell,
    }


def _snapshot_name(case: str, label: str, suffix: str, fmt: str) -> str:
    tag = f"_{label}" if label else ""
    return f"{case}{tag}_{suffix}.{fmt}"


class _SnapshotWriter:
    def __init__(self, config: RunConfig, out_dir: str, label: str):
        self.config = config
        self.out_dir = out_dir
        self.label = label
        self.paths = []
        self.next_time = config.output.every_time or None

    def _formats(self):
        fmt = self.config.output.fmt
        return ("csv", "vtk") if fmt == "both" else (fmt,)

    def emit(self, field: Field, suffix: str):
        for fmt in self._formats():
            name = _snapshot_name(self.config.case.name, self.label, suffix, fmt)
            path = os.path.join(self.out_dir, name)
            write_snapshot(field, path, self.config.gas, fmt)
            self.paths.append(path)

    def maybe_emit(self, field: Field, step: int):
        every = self.config.output.every_steps
        if every and step % every == 0:
            self.emit(field, f"step{step:06d}")
        if self.next_time is not None and field.time >= self.next_time - 1e-12:
            self.emit(field, f"t{field.time:.6f}")
            self.next_time += self.config.output.every_time


def _drive(config: RunConfig, spec: CaseSpec, writer: Optional[_SnapshotWriter]):
    """Advance one case to its final time or step count.

    Returns (field, steps, blowup_info); on blow-up the last valid field is
    returned together with the failure record.
    """
    field, bcs = init_case(spec, config.gas)
    scheme = config.scheme
    blowup = None
    steps = 0
    try:
        if spec.steps is not None:
            for _ in range(spec.steps):
                dt = compute_time_step(field, scheme, config.gas)
                field = advance(field, scheme, bcs, config.gas, dt)
                steps += 1
                if writer:
                    writer.maybe_emit(field, steps)
        else:
            t_end = spec.t_final
            while field.time < t_end * (1.0 - 1e-14):
                dt = compute_time_step(field, scheme, config.gas, t_final=t_end)
                field = advance(field, scheme, bcs, config.gas, dt)
                steps += 1
                if writer:
                    writer.maybe_emit(field, steps)
    except PositivityError as err:
        blowup = {
            "blowup_time": field.time,
            "blowup_detail": str(err),
        }
    return field, steps, blowup


def run(config: RunConfig) -> RunResult:
    """Execute a configured run and write snapshots plus the final report."""
    out_dir = os.environ.get("EULER2D_OUTPUT_DIR", config.output.directory)
    os.makedirs(out_dir, exist_ok=True)
    started = _time.perf_counter()

    report = {
        "case": config.case.name,
        "scheme": config.scheme.scheme,
        "order": config.scheme.order,
        "limiter": config.scheme.limiter,
        "cfl": config.case.cfl,
        "gamma": config.gas.gamma,
    }
    fields = {}
    paths = []
    exit_code = 0

    if config.grids is not None:
        # Vortex convergence ladder: one run per square grid, then orders.
        norms = []
        last = None
        for n in config.grids:
            spec = _ladder_spec(config.case, n)
            writer = _SnapshotWriter(config, out_dir, label=f"n{n}")
            field, steps, blowup = _drive(config, spec, writer)
            if blowup:
                report.update(blowup)
                exit_code = 1
                break
            writer.emit(field, "final")
            paths.extend(writer.paths)
            fields[f"n{n}"] = field
            last = field
            if config.diagnostics != "off":
                exact = exact_vortex_solution(spec, config.gas, field.time)
                en = error_norms(field, exact, config.gas)
                norms.append((n, en))
                report[f"l1_error_{n}"] = en.l1
                report[f"linf_error_{n}"] = en.linf
            report[f"steps_{n}"] = steps
        for (n1, e1), (n2, e2) in zip(norms, norms[1:]):
            report[f"l1_order_{n2}"] = order_of_accuracy(e1, e2, "l1")
            report[f"linf_order_{n2}"] = order_of_accuracy(e1, e2, "linf")
        if last is not None:
            report.update(_totals(last))
    else:
        spec = config.case
        writer = _SnapshotWriter(config, out_dir, label="")
        field, steps, blowup = _drive(config, spec, writer)
        fields["final"] = field
        report["steps"] = steps
        report["sim_time"] = field.time
        report["nx"], report["ny"] = spec.grid.nx, spec.grid.ny
        if blowup:
            report.update(blowup)
            report["blowup"] = True
            exit_code = 1
        else:
            report["blowup"] = False
            writer.emit(field, "final")
            paths.extend(writer.paths)
        interior = field.interior
        if np.all(np.isfinite(interior)):
            report.update(_totals(field))
            prim_ok = True
            try:
                prim = field.primitive(config.gas)
            except PositivityError:
                prim_ok = False
            if prim_ok:
                report["min_density"] = float(prim[0].min())
                report["max_density"] = float(prim[0].max())
                report["min_pressure"] = float(prim[3].min())
                report["max_pressure"] = float(prim[3].max())
        if config.diagnostics != "off" and spec.name in _INSTABILITY_CASES:
            try:
                metrics = instability_metrics(field, spec, config.gas)
            except ShockNotFound as err:
                report["blowup"] = True
                report.setdefault("blowup_detail", str(err))
                exit_code = 1
            else:
                if metrics.blowup:
                    report["blowup"] = True
                    exit_code = 1
                else:
                    report["max_transverse_velocity"] = metrics.max_transverse_velocity
                    report["shock_position_stddev"] = metrics.shock_position_stddev

    report["wall_time_s"] = _time.perf_counter() - started
    kv_path, txt_path = _write_reports(report, out_dir, config.case.name)
    paths.extend([kv_path, txt_path])
    return RunResult(report, exit_code, fields, out_dir, paths)


def _ladder_spec(case: CaseSpec, n: int) -> CaseSpec:
    grid = case.grid
    extent_x = grid.nx * grid.dx
    extent_y = grid.ny * grid.dy
    new_grid = type(grid)(
        n, n, grid.x0, grid.y0, extent_x / n, extent_y / n, grid.ghost
    )
    return replace(case, grid=new_grid)


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))  # shortest round-trip form
    return str(value)


def _write_reports(report: dict, out_dir: str, case: str):
    kv_path = os.path.join(out_dir, "report.kv")
    txt_path = os.path.join(out_dir, "report.txt")
    with open(kv_path, "w") as fh:
        for key, value in report.items():
            fh.write(f"{key} = {format_value(value)}\n")
    with open(txt_path, "w") as fh:
        fh.write(f"Run summary: {case}\n")
        fh.write("-" * 40 + "\n")
        width = max(len(k) for k in report)
        for key, value in report.items():
            fh.write(f"{key.ljust(width)}  {format_value(value)}\n")
    return kv_path, txt_path


def read_report_kv(path) -> dict:
    """Parse a ``report.kv`` file back into python values."""
    out = {}
    with open(path) as fh:
        for line in fh:
            if "=" not in line:
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            if value in ("true", "false"):
                out[key] = value == "true"
            else:
                try:
                    out[key] = int(value)
                except ValueError:
                    try:
                        out[key] = float(value)
                    except ValueError:
                        out[key] = value
    return out
