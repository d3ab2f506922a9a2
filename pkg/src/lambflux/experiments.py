"""Temperature-difference sweeps, spectral-density comparison, crossing search,
and the delimited output they share."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bath import Bath, make_spectral_density
from .dynamics import heat_current_closed, supremum_no_lamb
from .errors import LambfluxError, ParameterError, RouteMismatchError
from .lambshift import QuadratureConfig, lamb_shift_data, positivity_margin
from .model import SystemParams, diagonalize

__all__ = [
    "SweepConfig",
    "SweepRow",
    "SweepError",
    "CSV_SCHEMA",
    "CSV_COLUMNS",
    "sweep",
    "compare_spectra",
    "find_crossing",
    "write_rows",
]

CSV_SCHEMA = "lambflux.v1"
CSV_COLUMNS = (
    "delta_t",
    "omega1",
    "omega2",
    "delta1",
    "delta2",
    "r_2_1",
    "r_2_2",
    "r_est_2_1",
    "r_est_2_2",
    "current_no_lamb",
    "current_with_lamb",
    "current_difference",
    "supremum",
    "margin1",
    "margin2",
    "variant",
)

VARIANTS = ("drude", "hard", "gaussian")


class SweepError(LambfluxError):
    """One or more grid points failed; carries (index, delta_t, message)."""

    code = "sweep-point"

    def __init__(self, failures):
        self.failures = tuple(failures)
        lines = "; ".join(f"point {i} (dT={dt:g}): {msg}" for i, dt, msg in self.failures)
        super().__init__(f"{len(self.failures)} sweep point(s) failed: {lines}")


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep needs; identical configs give identical rows."""

    params: SystemParams
    t1: float = 1.0
    dt_min: float = 0.5
    dt_max: float = 5000.0
    dt_count: int = 200
    dt_scale: str = "log"
    variant: str = "drude"
    gamma1: float = 0.01
    gamma2: float = 0.01
    omega_d: float = 50.0
    include_lamb: bool = True
    output: str | None = None
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    series_tol: float = 1e-10
    lamb_route: str = "auto"
    spot_check_every: int = 20
    spot_check_tol: float = 1e-6

    def __post_init__(self):
        if self.t1 <= 0.0:
            raise ParameterError(f"t1 must be positive, got {self.t1}", code="temperature-positive")
        if self.dt_scale not in ("linear", "log"):
            raise ParameterError(f"dt_scale must be linear or log, got {self.dt_scale}",
                                 code="grid-scale")
        if self.dt_count < 0:
            raise ParameterError("dt_count must be nonnegative", code="grid-count")
        if self.dt_count > 1 and not (self.dt_max > self.dt_min):
            raise ParameterError("dt_max must exceed dt_min", code="grid-order")
        if self.dt_scale == "log" and self.dt_count > 0 and self.dt_min <= 0.0:
            raise ParameterError("log grid needs dt_min > 0", code="grid-log-min")
        if self.variant not in VARIANTS:
            raise ParameterError(f"unknown variant {self.variant!r}", code="spectral-variant")
        if self.dt_min < 0.0:
            raise ParameterError("dt_min must be nonnegative", code="grid-min")

    def grid(self) -> np.ndarray:
        if self.dt_count == 0:
            return np.empty(0)
        if self.dt_count == 1:
            return np.array([self.dt_min], dtype=float)
        if self.dt_scale == "linear":
            return np.linspace(self.dt_min, self.dt_max, self.dt_count)
        return np.geomspace(self.dt_min, self.dt_max, self.dt_count)

    def spectral(self, bath: int, variant: str | None = None):
        gamma = self.gamma1 if bath == 1 else self.gamma2
        return make_spectral_density(variant or self.variant, gamma, self.omega_d)


@dataclass(frozen=True)
class SweepRow:
    """One grid point; field order defines the CSV column order."""

    delta_t: float
    omega1: float
    omega2: float
    delta1: float
    delta2: float
    r_2_1: float
    r_2_2: float
    r_est_2_1: float
    r_est_2_2: float
    current_no_lamb: float
    current_with_lamb: float
    current_difference: float
    supremum: float
    margin1: float
    margin2: float
    variant: str


def _point_row(config: SweepConfig, es, bath1, delta_t: float, variant: str,
               route: str) -> SweepRow:
    bath2 = Bath(config.t1 + delta_t, config.spectral(2, variant))
    data = lamb_shift_data(es, bath1, bath2, cfg=config.quadrature,
                           route=route, series_tol=config.series_tol)
    d1, d2 = data.increments
    report = heat_current_closed(es, bath1, bath2, d1, d2)
    m1, m2 = positivity_margin(es, data.increments)
    c21 = data.channel(2, 1)
    c22 = data.channel(2, 2)
    return SweepRow(
        delta_t=float(delta_t),
        omega1=es.omega1,
        omega2=es.omega2,
        delta1=d1,
        delta2=d2,
        r_2_1=c21.r_value,
        r_2_2=c22.r_value,
        r_est_2_1=c21.r_estimate,
        r_est_2_2=c22.r_estimate,
        current_no_lamb=report.no_lamb,
        current_with_lamb=report.with_lamb,
        current_difference=report.difference,
        supremum=report.supremum,
        margin1=m1,
        margin2=m2,
        variant=variant,
    )


def _spot_check(config, es, bath1, delta_t, variant, row: SweepRow):
    """Re-derive the increments by quadrature and compare against the row."""
    check = _point_row(config, es, bath1, delta_t, variant, route="quadrature")
    for got, ref in ((row.delta1, check.delta1), (row.delta2, check.delta2)):
        scale = max(abs(ref), config.gamma2)
        if abs(got - ref) > config.spot_check_tol * scale:
            raise RouteMismatchError(
                f"analytic/quadrature increments disagree at dT={delta_t:g}: "
                f"{got!r} vs {ref!r}"
            )


def sweep(config: SweepConfig, variant: str | None = None,
          route: str | None = None) -> list[SweepRow]:
    """One row per grid point, ordered by delta_t.

    The Drude route is analytic with quadrature spot checks every
    ``spot_check_every`` points; the other cutoffs always integrate.
    Per-point failures are aggregated into a single SweepError.
    """
    variant = variant or config.variant
    if route is None:
        route = config.lamb_route
    if route == "auto" and variant != "drude":
        route = "quadrature"
    es = diagonalize(config.params)
    bath1 = Bath(config.t1, config.spectral(1, variant))
    rows, failures = [], []
    for i, delta_t in enumerate(config.grid()):
        try:
            row = _point_row(config, es, bath1, float(delta_t), variant, route)
            if (
                route in ("auto", "analytic")
                and config.spot_check_every > 0
                and i % config.spot_check_every == 0
            ):
                _spot_check(config, es, bath1, float(delta_t), variant, row)
            rows.append(row)
        except LambfluxError as exc:
            failures.append((i, float(delta_t), str(exc)))
    if failures:
        raise SweepError(failures)
    return rows


def compare_spectra(config: SweepConfig,
                    variants: tuple[str, ...] = VARIANTS) -> dict[str, list[SweepRow]]:
    """Per-variant sweeps with the shifts integrated for every cutoff,
    so the three columns are computed like for like."""
    return {v: sweep(config, variant=v, route="quadrature") for v in variants}


def _current_magnitude(config, es, bath1, delta_t, variant, route) -> float:
    row = _point_row(config, es, bath1, delta_t, variant, route)
    return abs(row.current_with_lamb)


def find_crossing(config: SweepConfig, bound: float | None = None,
                  tol_factor: float = 1e-6) -> float | None:
    """First delta_t where |shifted current| crosses the shift-free bound.

    Scans the config grid for a sign change of the excess, then bisects to
    tol_factor * omega_d.  Returns None when the bound is never exceeded on
    the grid hull.
    """
    es = diagonalize(config.params)
    variant = config.variant
    route = config.lamb_route
    if route == "auto" and variant != "drude":
        route = "quadrature"
    bath1 = Bath(config.t1, config.spectral(1, variant))
    if bound is None:
        bound = supremum_no_lamb(es, bath1)
    if not math.isfinite(bound):
        raise ParameterError(f"bound must be finite, got {bound}", code="bound-finite")

    def excess(dt):
        return _current_magnitude(config, es, bath1, dt, variant, route) - bound

    grid = config.grid()
    if grid.size == 0:
        return None
    previous_dt, previous = float(grid[0]), excess(float(grid[0]))
    if previous > 0.0:
        return previous_dt
    lo = hi = None
    for delta_t in grid[1:]:
        value = excess(float(delta_t))
        if value > 0.0:
            lo, hi = previous_dt, float(delta_t)
            break
        previous_dt, previous = float(delta_t), value
    if lo is None:
        return None
    tol = tol_factor * config.omega_d
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _format(value) -> str:
    return value if isinstance(value, str) else repr(float(value))


def write_rows(rows, path) -> None:
    """CSV with a schema tag line, UTF-8, '.' decimal, shortest round-trip floats."""
    lines = [f"schema={CSV_SCHEMA}", ",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_format(getattr(row, col)) for col in CSV_COLUMNS))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
