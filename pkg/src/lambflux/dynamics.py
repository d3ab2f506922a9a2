"""Lindblad generator, steady state, and heat currents.

Superoperators act on column-stacked density matrices: vec(rho) =
rho.flatten(order="F"), so vec(A rho B) = kron(B.T, A) vec(rho).  All
operators live in the eigenbasis, where the Hamiltonian (with or without
the level-shift correction) is diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bath import Bath, bose_occupation, gamma_rate
from .errors import DegenerateSteadyStateError, ParameterError
from .lambshift import LambShiftData
from .model import EigenSystem, eigenoperators

__all__ = [
    "Liouvillian",
    "SteadyState",
    "NumericSteadyState",
    "HeatCurrentReport",
    "build_liouvillian",
    "steady_state_numeric",
    "steady_state_analytic",
    "heat_current_trace",
    "heat_current_closed",
    "supremum_no_lamb",
    "asymptotic_slope",
    "monotonicity_check",
]

_DIM = 4
_EYE = np.eye(_DIM)


def _vec(rho: np.ndarray) -> np.ndarray:
    return rho.flatten(order="F")


def _unvec(v: np.ndarray) -> np.ndarray:
    return v.reshape((_DIM, _DIM), order="F")


def _dissipator(v: np.ndarray, rate_down: float, rate_up: float) -> np.ndarray:
    """GKSL dissipator superoperator for one jump operator and its adjoint."""
    vd = v.conj().T
    out = np.zeros((_DIM * _DIM, _DIM * _DIM), dtype=complex)
    for op, rate in ((v, rate_down), (vd, rate_up)):
        if rate == 0.0:
            continue
        od = op.conj().T
        odo = od @ op
        out += rate * (
            np.kron(op.conj(), op)
            - 0.5 * (np.kron(odo.T, _EYE) + np.kron(_EYE, odo))
        )
    return out


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Generator matrix plus the pieces needed for per-bath currents."""

    matrix: np.ndarray
    dissipators: tuple[np.ndarray, np.ndarray]
    hamiltonian: np.ndarray
    include_lamb: bool

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return _unvec(self.matrix @ _vec(rho))


def build_liouvillian(es: EigenSystem, bath1: Bath, bath2: Bath,
                      include_lamb: bool = False,
                      lamb: LambShiftData | None = None) -> Liouvillian:
    """Assemble -i[H, .] plus both bath dissipators in the eigenbasis."""
    if include_lamb and lamb is None:
        raise ParameterError(
            "include_lamb=True requires the level-shift data", code="missing-lamb"
        )
    ops = eigenoperators(es)
    h = np.diag(np.array(es.eigenvalues, dtype=float))
    if include_lamb:
        h = h + np.diag(np.array(lamb.level_shifts, dtype=float))
    unitary = -1j * (np.kron(_EYE, h) - np.kron(h.T, _EYE))
    parts = []
    for j, bath in ((1, bath1), (2, bath2)):
        d = np.zeros((_DIM * _DIM, _DIM * _DIM), dtype=complex)
        for mu in (1, 2):
            v = ops.get(j, mu)
            down = gamma_rate(bath.spectral, bath.temperature, v.omega, +1)
            up = gamma_rate(bath.spectral, bath.temperature, v.omega, -1)
            d += _dissipator(v.matrix, down, up)
        parts.append(d)
    matrix = unitary + parts[0] + parts[1]
    return Liouvillian(
        matrix=matrix,
        dissipators=(parts[0], parts[1]),
        hamiltonian=h,
        include_lamb=include_lamb,
    )


@dataclass(frozen=True)
class SteadyState:
    """Analytic steady state: diagonal populations and their building blocks."""

    x_plus: float
    x_minus: float
    y_plus: float
    y_minus: float
    populations: tuple[float, float, float, float]

    @property
    def x(self) -> float:
        return self.x_plus + self.x_minus

    @property
    def y(self) -> float:
        return self.y_plus + self.y_minus

    def density_matrix(self) -> np.ndarray:
        return np.diag(np.array(self.populations, dtype=float))


@dataclass(frozen=True, eq=False)
class NumericSteadyState:
    rho: np.ndarray
    populations: tuple[float, float, float, float]
    residual_norm: float
    max_offdiagonal: float


def steady_state_analytic(es: EigenSystem, bath1: Bath, bath2: Bath) -> SteadyState:
    """Steady-state populations from the per-channel rate balance."""
    j1, j2 = bath1.spectral, bath2.spectral
    t1, t2 = bath1.temperature, bath2.temperature
    n1w1 = bose_occupation(es.omega1, t1)
    n2w1 = bose_occupation(es.omega1, t2)
    n1w2 = bose_occupation(es.omega2, t1)
    n2w2 = bose_occupation(es.omega2, t2)
    s2p, c2p = es.sin2_plus, es.cos2_plus
    s2m, c2m = es.sin2_minus, es.cos2_minus
    xp = j1.value(es.omega1) * n1w1 * s2p + j2.value(es.omega1) * n2w1 * c2m
    xm = j1.value(es.omega1) * (n1w1 + 1.0) * s2p + j2.value(es.omega1) * (n2w1 + 1.0) * c2m
    yp = j1.value(es.omega2) * n1w2 * c2p + j2.value(es.omega2) * n2w2 * s2m
    ym = j1.value(es.omega2) * (n1w2 + 1.0) * c2p + j2.value(es.omega2) * (n2w2 + 1.0) * s2m
    xy = (xp + xm) * (yp + ym)
    populations = (xm * ym / xy, xp * yp / xy, xm * yp / xy, xp * ym / xy)
    return SteadyState(x_plus=xp, x_minus=xm, y_plus=yp, y_minus=ym,
                       populations=populations)


def steady_state_numeric(liouvillian: Liouvillian,
                         kernel_tol: float = 1e-8) -> NumericSteadyState:
    """Unit-trace kernel vector of the generator.

    One row of the generator is replaced by the trace constraint and the
    resulting system solved directly; the kernel dimension is checked
    through the singular spectrum first.
    """
    m = liouvillian.matrix
    sv = np.linalg.svd(m, compute_uv=False)
    null_dim = int(np.sum(sv < kernel_tol * sv[0]))
    if null_dim != 1:
        raise DegenerateSteadyStateError(
            f"kernel dimension {null_dim}, expected 1 (singular values {sv[-3:]})"
        )
    a = m.copy()
    trace_row = np.zeros(_DIM * _DIM, dtype=complex)
    trace_row[:: _DIM + 1] = 1.0
    a[0, :] = trace_row
    b = np.zeros(_DIM * _DIM, dtype=complex)
    b[0] = 1.0
    v = np.linalg.solve(a, b)
    rho = _unvec(v)
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    residual = float(np.linalg.norm(liouvillian.matrix @ _vec(rho)))
    off = rho - np.diag(np.diag(rho))
    populations = tuple(float(p.real) for p in np.diag(rho))
    return NumericSteadyState(
        rho=rho,
        populations=populations,
        residual_norm=residual,
        max_offdiagonal=float(np.max(np.abs(off))),
    )


def heat_current_trace(liouvillian: Liouvillian, bath: int, rho: np.ndarray) -> float:
    """Tr[(H_S (+ H_LS)) L_j(rho)], the energy flow from bath j."""
    if bath not in (1, 2):
        raise ParameterError(f"bath must be 1 or 2, got {bath}", code="bath-index")
    d = liouvillian.dissipators[bath - 1]
    flow = np.trace(liouvillian.hamiltonian @ _unvec(d @ _vec(rho)))
    return float(flow.real)


@dataclass(frozen=True)
class HeatCurrentReport:
    """Bath-1 steady-state currents with and without the level shift.

    ``slope``, ``p`` and ``q`` describe the affine large-dT growth of the
    shifted part; they are filled by full_current_report for Drude baths
    and stay None otherwise.
    """

    with_lamb: float
    no_lamb: float
    difference: float
    a1: float
    a2: float
    supremum: float
    margins: tuple[float, float]
    delta1: float
    delta2: float
    slope: float | None = None
    p: tuple[float, float] | None = None
    q: tuple[float, float] | None = None

    @property
    def magnitude_with_lamb(self) -> float:
        return abs(self.with_lamb)

    @property
    def magnitude_no_lamb(self) -> float:
        return abs(self.no_lamb)


def heat_current_closed(es: EigenSystem, bath1: Bath, bath2: Bath,
                        delta1: float = 0.0, delta2: float = 0.0) -> HeatCurrentReport:
    """Closed-form bath-1 current; delta_i = 0 encodes the shift-free case.

    The shifted current is assembled as no_lamb + difference so the row
    identity holds exactly in floating point as well.
    """
    ss = steady_state_analytic(es, bath1, bath2)
    j1, j2 = bath1.spectral, bath2.spectral
    n1w1 = bose_occupation(es.omega1, bath1.temperature)
    n2w1 = bose_occupation(es.omega1, bath2.temperature)
    n1w2 = bose_occupation(es.omega2, bath1.temperature)
    n2w2 = bose_occupation(es.omega2, bath2.temperature)
    a1 = 2.0 * es.sin2_plus * es.cos2_minus * j1.value(es.omega1) * j2.value(es.omega1) / ss.x
    a2 = 2.0 * es.sin2_minus * es.cos2_plus * j1.value(es.omega2) * j2.value(es.omega2) / ss.y
    no_lamb = a1 * (n1w1 - n2w1) * es.omega1 + a2 * (n1w2 - n2w2) * es.omega2
    difference = a1 * (n1w1 - n2w1) * delta1 + a2 * (n1w2 - n2w2) * delta2
    return HeatCurrentReport(
        with_lamb=no_lamb + difference,
        no_lamb=no_lamb,
        difference=difference,
        a1=a1,
        a2=a2,
        supremum=supremum_no_lamb(es, bath1),
        margins=(es.omega1 + delta1, es.omega2 + delta2),
        delta1=delta1,
        delta2=delta2,
    )


def full_current_report(es: EigenSystem, bath1: Bath, bath2: Bath,
                        lamb: LambShiftData,
                        series_tol: float = 1e-10) -> HeatCurrentReport:
    """Closed-form report with the large-dT asymptotics attached when both
    baths are Drude-Lorentz."""
    from .lambshift import affine_coefficients

    report = heat_current_closed(es, bath1, bath2, *lamb.increments)
    if bath1.spectral.kind != "drude" or bath2.spectral.kind != "drude":
        return report
    coeff = affine_coefficients(es, bath1, bath2, series_tol)
    slope = asymptotic_slope(es, bath1, coeff.q1, coeff.q2)
    return replace(report, slope=slope, p=(coeff.p1, coeff.p2), q=(coeff.q1, coeff.q2))


def supremum_no_lamb(es: EigenSystem, bath1: Bath) -> float:
    """Large-dT limit of the shift-free current (depends on bath 1 only)."""
    j1 = bath1.spectral
    return (
        j1.value(es.omega1) * es.omega1 * es.sin2_plus
        + j1.value(es.omega2) * es.omega2 * es.cos2_plus
    )


def asymptotic_slope(es: EigenSystem, bath1: Bath, q1: float, q2: float) -> float:
    """Large-dT growth rate of the current difference per unit dT."""
    j1 = bath1.spectral
    return (
        j1.value(es.omega1) * q1 * es.sin2_plus
        + j1.value(es.omega2) * q2 * es.cos2_plus
    )


def monotonicity_check(values, bound: float):
    """Check a shift-free current sweep: strictly increasing and below bound.

    ``values`` are current magnitudes ordered by increasing dT.  Returns
    (ok, first_violation_index); the index refers to the first offending
    entry, None when the sweep is clean.
    """
    if not math.isfinite(bound):
        raise ParameterError(f"bound must be finite, got {bound}", code="bound-finite")
    previous = -math.inf
    for i, v in enumerate(values):
        if v >= bound or v <= previous:
            return False, i
        previous = v
    return True, None
