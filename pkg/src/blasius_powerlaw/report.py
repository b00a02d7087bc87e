"""Parameter sweeps, truncated-boundary studies and profile export.

Sweep rows are plain data: a failed exponent becomes a row carrying an error
message instead of aborting the whole sweep.  Tables are rendered with six
decimals for eyeballing; JSON keeps full precision.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field, asdict

import numpy as np

from .ode_core import DomainError, OdeError
from .nitm import NitmConfig, NitmResult, solve as nitm_solve
from .shooting import ShootingConfig, solve_shooting


PROFILE_COLUMNS = ("eta", "f", "fp", "fpp", "eta_star", "f_star", "fp_star", "fpp_star")


class SelectionError(DomainError):
    """Unknown profile column requested."""


@dataclass(frozen=True)
class SweepSpec:
    n_values: tuple[float, ...]
    method: str = "nitm"  # nitm | shooting | both
    nitm_config: NitmConfig = field(default_factory=NitmConfig)
    shooting_config: ShootingConfig = field(default_factory=ShootingConfig)

    def __post_init__(self) -> None:
        if len(self.n_values) == 0:
            raise DomainError("n_values must be non-empty")
        if any(n <= 0.0 for n in self.n_values):
            raise DomainError("every exponent must be positive")
        if self.method not in ("nitm", "shooting", "both"):
            raise DomainError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class SweepRow:
    n: float
    fpp0_nitm: float | None = None
    fpp0_shooting: float | None = None
    discrepancy: float | None = None
    method_tag: str | None = None
    eta_inf: float | None = None
    error: str | None = None


def sweep_table(spec: SweepSpec) -> list[SweepRow]:
    """One row per exponent, ordered by n; per-row failures are recorded."""
    rows = []
    for n in sorted(spec.n_values):
        fpp0_nitm = fpp0_shooting = discrepancy = None
        method_tag = None
        errors = []
        if spec.method in ("nitm", "both"):
            try:
                result = nitm_solve(n, spec.nitm_config)
                fpp0_nitm = result.fpp0
                method_tag = result.method_tag
            except OdeError as exc:
                errors.append(f"nitm: {exc}")
        if spec.method in ("shooting", "both"):
            try:
                fpp0_shooting = solve_shooting(n, spec.shooting_config).fpp0
            except OdeError as exc:
                errors.append(f"shooting: {exc}")
        if fpp0_nitm is not None and fpp0_shooting is not None:
            discrepancy = abs(fpp0_nitm - fpp0_shooting)
        eta_inf = (
            spec.nitm_config.eta_star_inf
            if spec.method in ("nitm", "both")
            else spec.shooting_config.eta_inf
        )
        rows.append(
            SweepRow(
                n=n,
                fpp0_nitm=fpp0_nitm,
                fpp0_shooting=fpp0_shooting,
                discrepancy=discrepancy,
                method_tag=method_tag,
                eta_inf=eta_inf,
                error="; ".join(errors) if errors else None,
            )
        )
    return rows


def boundary_sensitivity(
    n: float,
    eta_inf_values: list[float],
    config: NitmConfig | None = None,
) -> list[tuple[float, float | None, str | None]]:
    """Wall curvature as a function of the truncated boundary."""
    config = config or NitmConfig()
    if any(eta <= 0.0 for eta in eta_inf_values):
        raise DomainError("every truncated boundary must be positive")
    out = []
    for eta in eta_inf_values:
        cfg = NitmConfig(
            eta_star_inf=eta,
            c0=config.c0,
            integrator=config.integrator,
            exclusion_eps=config.exclusion_eps,
        )
        try:
            out.append((eta, nitm_solve(n, cfg).fpp0, None))
        except OdeError as exc:
            out.append((eta, None, str(exc)))
    return out


def _format_number(x: float) -> str:
    return repr(float(x))


def export_profile(result: NitmResult, columns: tuple[str, ...] | None = None) -> str:
    """CSV (header row, LF endings) of the physical and star profiles."""
    columns = columns or PROFILE_COLUMNS
    for c in columns:
        if c not in PROFILE_COLUMNS:
            raise SelectionError(f"unknown column {c!r}; choose from {PROFILE_COLUMNS}")
    phys = result.profile
    star = result.star_profile
    n = result.n
    data = {
        "eta": phys.grid.ts,
        "f": phys.grid.ys[:, 0],
        "fp": phys.grid.ys[:, 1],
        "fpp": phys.curvatures(),
        "eta_star": star.grid.ts,
        "f_star": star.grid.ys[:, 0],
        "fp_star": star.grid.ys[:, 1],
        "fpp_star": star.curvatures(),
    }
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for i in range(len(phys.grid.ts)):
        buf.write(",".join(_format_number(data[c][i]) for c in columns) + "\n")
    return buf.getvalue()


def _row_dict(row: SweepRow) -> dict:
    d = asdict(row)
    return {k: v for k, v in d.items() if v is not None}


def emit_json(rows: list[SweepRow], config: dict | None = None) -> str:
    """Full-precision JSON document with "config" and "rows" members."""
    doc = {"config": config or {}, "rows": [_row_dict(r) for r in rows]}
    return json.dumps(doc, indent=2)


def parse_json(document: str) -> list[SweepRow]:
    """Inverse of emit_json for the rows array."""
    doc = json.loads(document)
    return [SweepRow(**entry) for entry in doc["rows"]]


def render_table(rows: list[SweepRow]) -> str:
    """Six-decimal CSV rendering of a sweep."""
    buf = io.StringIO()
    buf.write("n,fpp0_nitm,fpp0_shooting,discrepancy,method,eta_inf,error\n")
    for r in rows:
        cells = [
            f"{r.n:g}",
            "" if r.fpp0_nitm is None else f"{r.fpp0_nitm:.6f}",
            "" if r.fpp0_shooting is None else f"{r.fpp0_shooting:.6f}",
            "" if r.discrepancy is None else f"{r.discrepancy:.2e}",
            r.method_tag or "",
            "" if r.eta_inf is None else f"{r.eta_inf:g}",
            r.error or "",
        ]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()
