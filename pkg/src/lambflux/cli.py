"""Command-line interface.

Subcommands: spectrum, rates, lambshift, steady, current, sweep,
compare-spectra, crossing, validate.  Exit codes: 0 success, 1 validation
or runtime failure, 2 usage/configuration error.  Configuration is a flat
``key = value`` text file whose keys mirror the physics symbols; CLI flags
override file values.  Bare config names are resolved against
$LAMBFLUX_CONFIG_DIR.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .bath import Bath, bose_occupation, gamma_rate, make_spectral_density
from .dynamics import (
    build_liouvillian,
    full_current_report,
    heat_current_closed,
    heat_current_trace,
    steady_state_analytic,
    steady_state_numeric,
)
from .errors import LambfluxError, ParameterError
from .experiments import (
    SweepConfig,
    compare_spectra,
    find_crossing,
    sweep,
    write_rows,
)
from .lambshift import (
    QuadratureConfig,
    analytic_delta,
    analytic_delta_prime,
    euler_maclaurin_r,
    lamb_shift_data,
    matsubara_r,
    positivity_margin,
    quadrature_delta,
    quadrature_delta_prime,
)
from .model import SystemParams, diagonalize, eigenoperators, hamiltonian_matrix

CONFIG_DIR_ENV = "LAMBFLUX_CONFIG_DIR"

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _parse_bool(text):
    low = str(text).strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ParameterError(f"expected a boolean, got {text!r}", code="config-value")


@dataclass
class RunConfig:
    """Flat run configuration; every key may appear in the config file."""

    epsilon1: float = 3.0
    epsilon2: float = 2.0
    g: float = 0.5
    t1: float = 1.0
    gamma1: float = 0.01
    gamma2: float = 0.01
    omega_d: float = 50.0
    variant: str = "drude"
    dt: float = 50.0
    dt_min: float = 0.5
    dt_max: float = 5000.0
    dt_count: int = 200
    dt_scale: str = "log"
    include_lamb: bool = True
    output: str | None = None
    series_tol: float = 1e-10
    quad_abs_tol: float = 1e-11
    quad_rel_tol: float = 1e-10
    pole_window: float = 0.5
    truncation: float | None = None
    max_subdivisions: int = 200
    lamb_route: str = "auto"
    spot_check_every: int = 20

    def system_params(self) -> SystemParams:
        return SystemParams(self.epsilon1, self.epsilon2, self.g)

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(
            abs_tol=self.quad_abs_tol,
            rel_tol=self.quad_rel_tol,
            pole_window=self.pole_window,
            truncation=self.truncation,
            max_subdivisions=self.max_subdivisions,
        )

    def sweep_config(self) -> SweepConfig:
        return SweepConfig(
            params=self.system_params(),
            t1=self.t1,
            dt_min=self.dt_min,
            dt_max=self.dt_max,
            dt_count=self.dt_count,
            dt_scale=self.dt_scale,
            variant=self.variant,
            gamma1=self.gamma1,
            gamma2=self.gamma2,
            omega_d=self.omega_d,
            include_lamb=self.include_lamb,
            output=self.output,
            quadrature=self.quadrature(),
            series_tol=self.series_tol,
            lamb_route=self.lamb_route,
            spot_check_every=self.spot_check_every,
        )

    def baths(self, delta_t: float | None = None):
        dt = self.dt if delta_t is None else delta_t
        b1 = Bath(self.t1, make_spectral_density(self.variant, self.gamma1, self.omega_d))
        b2 = Bath(self.t1 + dt, make_spectral_density(self.variant, self.gamma2, self.omega_d))
        return b1, b2


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_INT_KEYS = {"dt_count", "max_subdivisions", "spot_check_every"}
_BOOL_KEYS = {"include_lamb"}
_STR_KEYS = {"variant", "dt_scale", "output", "lamb_route"}
_OPTIONAL_FLOAT_KEYS = {"truncation"}


def _coerce(key: str, raw: str):
    if key in _BOOL_KEYS:
        return _parse_bool(raw)
    if key in _INT_KEYS:
        return int(raw)
    if key in _STR_KEYS:
        return raw
    if key in _OPTIONAL_FLOAT_KEYS and raw.lower() in ("none", "auto"):
        return None
    return float(raw)


def resolve_config_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    env_dir = os.environ.get(CONFIG_DIR_ENV)
    if env_dir and path.parent == Path("."):
        candidate = Path(env_dir) / name
        if candidate.exists():
            return candidate
    raise ParameterError(f"config file not found: {name}", code="config-missing")


def parse_config_file(path: Path) -> dict:
    values = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParameterError(
                f"{path}:{lineno}: expected 'key = value', got {line!r}",
                code="config-syntax",
            )
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ParameterError(f"{path}:{lineno}: unknown key {key!r}", code="config-key")
        try:
            values[key] = _coerce(key, raw)
        except ValueError as exc:
            raise ParameterError(
                f"{path}:{lineno}: bad value for {key}: {raw!r}", code="config-value"
            ) from exc
    return values


def build_run_config(args) -> RunConfig:
    values = {}
    if args.config:
        values.update(parse_config_file(resolve_config_path(args.config)))
    for key in _FIELD_TYPES:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return RunConfig(**values)


def _warn_regime(run: RunConfig, stream=None):
    """The weak-coupling regime is an assumption, not a precondition: warn, run."""
    stream = stream if stream is not None else sys.stderr
    es = diagonalize(run.system_params())
    gamma = max(run.gamma1, run.gamma2)
    if gamma >= es.omega1 / 10.0:
        print(
            f"warning code=outside-validity-regime detail=gamma={gamma:g} "
            f"not small against omega1={es.omega1:g}",
            file=stream,
        )
    if es.omega2 >= run.omega_d / 10.0:
        print(
            f"warning code=outside-validity-regime detail=omega2={es.omega2:g} "
            f"not small against omega_d={run.omega_d:g}",
            file=stream,
        )
    return es


def _timestamp(args):
    if not args.no_timestamp:
        print(f"# run {datetime.now(timezone.utc).isoformat()}")


def _print_kv(pairs):
    for key, value in pairs:
        print(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")


def cmd_spectrum(run: RunConfig, args) -> int:
    _timestamp(args)
    es = _warn_regime(run)
    _print_kv(
        [
            ("alpha", es.alpha),
            ("beta", es.beta),
            ("omega1", es.omega1),
            ("omega2", es.omega2),
            ("phi", es.phi),
            ("theta", es.theta),
            ("phi_plus", es.phi_plus),
            ("phi_minus", es.phi_minus),
        ]
    )
    print("eigenvalues =", " ".join(repr(v) for v in es.eigenvalues))
    h = hamiltonian_matrix(run.system_params())
    print("hamiltonian_product_basis =")
    for row in h:
        print("  " + " ".join(f"{v:+.6f}" for v in row))
    return 0


def cmd_rates(run: RunConfig, args) -> int:
    _timestamp(args)
    es = _warn_regime(run)
    b1, b2 = run.baths()
    print(f"T1 = {b1.temperature!r}  T2 = {b2.temperature!r}")
    for j, bath in ((1, b1), (2, b2)):
        for mu, omega in ((1, es.omega1), (2, es.omega2)):
            nbar = bose_occupation(omega, bath.temperature)
            down = gamma_rate(bath.spectral, bath.temperature, omega, +1)
            up = gamma_rate(bath.spectral, bath.temperature, omega, -1)
            print(
                f"bath={j} channel={mu} omega={omega!r} nbar={nbar!r} "
                f"rate_down={down!r} rate_up={up!r}"
            )
    return 0


def cmd_lambshift(run: RunConfig, args) -> int:
    _timestamp(args)
    es = _warn_regime(run)
    b1, b2 = run.baths()
    data = lamb_shift_data(es, b1, b2, cfg=run.quadrature(), route=run.lamb_route,
                           series_tol=run.series_tol)
    for ch in data.channels:
        print(
            f"bath={ch.bath} channel={ch.channel} route={ch.route} "
            f"delta={ch.delta!r} delta_prime={ch.delta_prime!r} "
            f"delta_plus={ch.delta_plus!r} delta_minus={ch.delta_minus!r} "
            f"R={ch.r_value!r} R_estimate={ch.r_estimate!r}"
        )
        if ch.route == "analytic":
            bath = b1 if ch.bath == 1 else b2
            q_delta = quadrature_delta(bath.spectral, bath.temperature, ch.omega,
                                       run.quadrature())
            q_prime = quadrature_delta_prime(bath.spectral, ch.omega, run.quadrature())
            print(
                f"  quadrature check: delta={q_delta!r} delta_prime={q_prime!r}"
            )
    print("level_shifts =", " ".join(repr(v) for v in data.level_shifts))
    print("delta1 =", repr(data.increments[0]))
    print("delta2 =", repr(data.increments[1]))
    m1, m2 = positivity_margin(es, data.increments)
    print("margin1 =", repr(m1))
    print("margin2 =", repr(m2))
    return 0


def cmd_steady(run: RunConfig, args) -> int:
    _timestamp(args)
    es = _warn_regime(run)
    b1, b2 = run.baths()
    analytic = steady_state_analytic(es, b1, b2)
    lamb = None
    if run.include_lamb:
        lamb = lamb_shift_data(es, b1, b2, cfg=run.quadrature(), route=run.lamb_route,
                               series_tol=run.series_tol)
    liouvillian = build_liouvillian(es, b1, b2, include_lamb=run.include_lamb, lamb=lamb)
    numeric = steady_state_numeric(liouvillian)
    _print_kv(
        [
            ("x_plus", analytic.x_plus),
            ("x_minus", analytic.x_minus),
            ("y_plus", analytic.y_plus),
            ("y_minus", analytic.y_minus),
        ]
    )
    print("populations_analytic =", " ".join(repr(p) for p in analytic.populations))
    print("populations_numeric  =", " ".join(repr(p) for p in numeric.populations))
    print("kernel_residual =", repr(numeric.residual_norm))
    print("max_offdiagonal =", repr(numeric.max_offdiagonal))
    return 0


def cmd_current(run: RunConfig, args) -> int:
    _timestamp(args)
    es = _warn_regime(run)
    b1, b2 = run.baths()
    data = lamb_shift_data(es, b1, b2, cfg=run.quadrature(), route=run.lamb_route,
                           series_tol=run.series_tol)
    report = full_current_report(es, b1, b2, data, series_tol=run.series_tol)
    lamb_liouvillian = build_liouvillian(es, b1, b2, include_lamb=True, lamb=data)
    bare_liouvillian = build_liouvillian(es, b1, b2, include_lamb=False)
    rho = steady_state_numeric(lamb_liouvillian).rho
    pairs = [
        ("current_no_lamb", report.no_lamb),
        ("current_with_lamb", report.with_lamb),
        ("current_difference", report.difference),
        ("supremum", report.supremum),
        ("margin1", report.margins[0]),
        ("margin2", report.margins[1]),
        ("a1", report.a1),
        ("a2", report.a2),
        ("trace_route_with_lamb", heat_current_trace(lamb_liouvillian, 1, rho)),
        ("trace_route_no_lamb", heat_current_trace(bare_liouvillian, 1, rho)),
    ]
    if report.slope is not None:
        pairs += [
            ("asymptotic_slope", report.slope),
            ("p1", report.p[0]),
            ("p2", report.p[1]),
            ("q1", report.q[0]),
            ("q2", report.q[1]),
        ]
    _print_kv(pairs)
    return 0


def _default_output(run, fallback):
    return run.output or fallback


def cmd_sweep(run: RunConfig, args) -> int:
    _timestamp(args)
    _warn_regime(run)
    config = run.sweep_config()
    rows = sweep(config)
    output = Path(_default_output(run, "sweep.csv"))
    output.parent.mkdir(parents=True, exist_ok=True)
    write_rows(rows, output)
    print(f"rows = {len(rows)}")
    print(f"csv = {output}")
    if args.plot and rows:
        from . import plots

        current_png = output.with_name(output.stem + "_current.png")
        shifts_png = output.with_name(output.stem + "_shifts.png")
        plots.plot_current_bound({run.variant: rows}, run.omega_d, current_png)
        plots.plot_shift_remainder(rows, run.omega_d, shifts_png)
        print(f"figure = {current_png}")
        print(f"figure = {shifts_png}")
    return 0


def cmd_compare(run: RunConfig, args) -> int:
    _timestamp(args)
    _warn_regime(run)
    config = run.sweep_config()
    by_variant = compare_spectra(config)
    output = Path(_default_output(run, "compare.csv"))
    output.parent.mkdir(parents=True, exist_ok=True)
    all_rows = [row for variant in sorted(by_variant) for row in by_variant[variant]]
    write_rows(all_rows, output)
    print(f"rows = {len(all_rows)}")
    print(f"csv = {output}")
    if args.plot and all_rows:
        from . import plots

        png = output.with_name(output.stem + "_compare.png")
        plots.plot_variant_comparison(by_variant, run.omega_d, png)
        print(f"figure = {png}")
    return 0


def cmd_crossing(run: RunConfig, args) -> int:
    _timestamp(args)
    _warn_regime(run)
    config = run.sweep_config()
    crossing = find_crossing(config)
    if crossing is None:
        print("crossing = none")
    else:
        print("crossing =", repr(crossing))
        print("crossing_over_omega_d =", repr(crossing / run.omega_d))
    return 0


def _validation_checks(run: RunConfig):
    es = diagonalize(run.system_params())
    params = run.system_params()

    spectrum = np.sort(np.linalg.eigvalsh(hamiltonian_matrix(params)))
    expected = np.sort(np.array(es.eigenvalues))
    yield "eigen-structure", bool(
        np.max(np.abs(spectrum - expected)) < 1e-12
        and abs((es.omega2 - es.omega1) - 2.0 * es.alpha) < 1e-12
    )

    u = es.eigenvectors
    yield "eigenvector orthogonality", bool(np.max(np.abs(u.T @ u - np.eye(4))) < 1e-12)

    h_eig = es.hamiltonian_eigenbasis()
    ok = True
    for op in eigenoperators(es):
        residual = h_eig @ op.matrix - op.matrix @ h_eig + op.omega * op.matrix
        ok = ok and np.max(np.abs(residual)) < 1e-12
    yield "eigenoperator commutators", ok

    ok = True
    for kind in ("drude", "hard", "gaussian"):
        spectral = make_spectral_density(kind, run.gamma1, run.omega_d)
        for omega in np.geomspace(0.1, 10.0, 10):
            for temperature in np.geomspace(0.1, 100.0, 10):
                down = gamma_rate(spectral, temperature, float(omega), +1)
                up = gamma_rate(spectral, temperature, float(omega), -1)
                if down == 0.0:
                    continue
                ok = ok and abs(up / down - math.exp(-omega / temperature)) < 1e-12
    yield "KMS", ok

    b1, b2 = run.baths()
    data = lamb_shift_data(es, b1, b2, cfg=run.quadrature(), route=run.lamb_route,
                           series_tol=run.series_tol)
    analytic = steady_state_analytic(es, b1, b2)
    with_lamb = build_liouvillian(es, b1, b2, include_lamb=True, lamb=data)
    without = build_liouvillian(es, b1, b2, include_lamb=False)
    numeric = steady_state_numeric(with_lamb)
    numeric0 = steady_state_numeric(without)
    yield "steady-state oracle", bool(
        max(abs(a - b) for a, b in zip(numeric.populations, analytic.populations)) < 1e-10
    )
    yield "steady-state off-diagonals", numeric.max_offdiagonal < 1e-10
    yield "lamb-invariant steady state", bool(
        max(abs(a - b) for a, b in zip(numeric.populations, numeric0.populations)) < 1e-10
    )

    d1, d2 = data.increments
    report = heat_current_closed(es, b1, b2, d1, d2)
    j1 = heat_current_trace(with_lamb, 1, numeric.rho)
    j2 = heat_current_trace(with_lamb, 2, numeric.rho)
    scale = max(abs(j1), 1e-30)
    yield "current trace vs closed", abs(j1 - report.with_lamb) / scale < 1e-9
    yield "current conservation", abs(j1 + j2) / scale < 1e-12
    eq_report = heat_current_closed(es, b1, Bath(b1.temperature, b2.spectral), d1, d2)
    yield "equilibrium zero current", abs(eq_report.with_lamb) < 1e-12

    ok = True
    for temperature in (run.t1, run.t1 + run.dt):
        for omega in (es.omega1, es.omega2):
            a = analytic_delta(run.gamma2, run.omega_d, temperature, omega, run.series_tol)
            q = quadrature_delta(
                make_spectral_density("drude", run.gamma2, run.omega_d),
                temperature, omega, run.quadrature(),
            )
            ok = ok and abs(a - q) / max(abs(a), run.gamma2) < 1e-6
    a = analytic_delta_prime(run.gamma2, run.omega_d, es.omega1)
    q = quadrature_delta_prime(
        make_spectral_density("drude", run.gamma2, run.omega_d), es.omega1, run.quadrature()
    )
    ok = ok and abs(a - q) / max(abs(a), run.gamma2) < 1e-6
    yield "shift route equivalence", ok

    shifts = data.level_shifts
    yield "increment consistency", bool(
        abs(d1 - (shifts[1] - shifts[2])) < 1e-12 and abs(d2 - (shifts[1] - shifts[3])) < 1e-12
    )

    # the estimate's remainder peaks near beta*omega_d ~ 30; sample past it
    gaps = []
    for temperature in (run.omega_d / 25.0, run.omega_d / 5.0, 2.0 * run.omega_d):
        exact = matsubara_r(temperature, es.omega1, run.omega_d, run.series_tol)
        estimate = euler_maclaurin_r(temperature, es.omega1, run.omega_d)
        gaps.append(abs(exact - estimate))
    yield "remainder estimate gap shrinks", gaps[0] > gaps[1] > gaps[2]

    ok = True
    for ta in (0.01, 1.0, 100.0):
        for tb in (0.01, 1.0, 100.0):
            ba = Bath(ta, make_spectral_density("drude", run.gamma1, run.omega_d))
            bb = Bath(tb, make_spectral_density("drude", run.gamma2, run.omega_d))
            margins = positivity_margin(
                es, lamb_shift_data(es, ba, bb, series_tol=run.series_tol).increments
            )
            ok = ok and margins[0] > 0.0 and margins[1] > 0.0
    yield "positivity margins", ok


def cmd_validate(run: RunConfig, args) -> int:
    _timestamp(args)
    _warn_regime(run)
    failures = 0
    for name, ok in _validation_checks(run):
        print(f"{name:<32} {'PASS' if ok else 'FAIL'}")
        if not ok:
            failures += 1
    print(f"checks_failed = {failures}")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file (bare names resolved via $%s)" % CONFIG_DIR_ENV)
    common.add_argument("--no-timestamp", action="store_true",
                        help="suppress the timestamp line for reproducible stdout")
    for key in ("epsilon1", "epsilon2", "g", "t1", "gamma1", "gamma2", "omega_d",
                "dt", "dt_min", "dt_max", "series_tol"):
        common.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float)
    common.add_argument("--dt-count", dest="dt_count", type=int)
    common.add_argument("--dt-scale", dest="dt_scale", choices=("linear", "log"))
    common.add_argument("--variant", dest="variant", choices=("drude", "hard", "gaussian"))
    common.add_argument("--route", dest="lamb_route", choices=("auto", "analytic", "quadrature"))
    common.add_argument("--output", dest="output")

    parser = argparse.ArgumentParser(
        prog="lambflux",
        description="Steady-state heat transport through two coupled qubits, "
                    "with and without the environment-induced level shift.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "spectrum": cmd_spectrum,
        "rates": cmd_rates,
        "lambshift": cmd_lambshift,
        "steady": cmd_steady,
        "current": cmd_current,
        "sweep": cmd_sweep,
        "compare-spectra": cmd_compare,
        "crossing": cmd_crossing,
        "validate": cmd_validate,
    }
    for name, handler in handlers.items():
        p = sub.add_parser(name, parents=[common])
        if name in ("sweep", "compare-spectra"):
            p.add_argument("--plot", action="store_true",
                           help="also render figures next to the CSV")
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        run = build_run_config(args)
        return args.handler(run, args)
    except ParameterError as exc:
        print(f"error code={exc.code} detail={exc}", file=sys.stderr)
        return 2
    except LambfluxError as exc:
        print(f"error code={exc.code} detail={exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
