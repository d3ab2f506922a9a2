"""Two coupled two-level atoms with an XX interaction: exact spectrum and
bath-coupling eigenoperators.

Conventions (fixed once, used everywhere):

* units with hbar = k_B = 1;
* product basis ordered {|00>, |01>, |10>, |11>} where |0> is the
  single-qubit ground state, i.e. sigma^z |0> = -|0>;
* eigenbasis ordered (s1, s2, s3, s4) with energies (-beta, +beta, +alpha,
  -alpha), so the two transition frequencies are omega1 = beta - alpha
  (levels s2 <-> s3 and s4 <-> s1) and omega2 = beta + alpha (s2 <-> s4 and
  s3 <-> s1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "SystemParams",
    "EigenSystem",
    "EigenOperator",
    "EigenOperatorSet",
    "diagonalize",
    "hamiltonian_matrix",
    "eigenoperators",
    "sigma_x_product",
    "sigma_x_eigenbasis",
]


@dataclass(frozen=True)
class SystemParams:
    """Level splittings and qubit-qubit coupling; requires eps1 >= eps2 > 0, g > 0."""

    epsilon1: float
    epsilon2: float
    g: float

    def __post_init__(self):
        if not (self.epsilon2 > 0.0):
            raise ParameterError(
                f"epsilon2 must be positive, got {self.epsilon2}",
                code="epsilon-positive",
            )
        if self.epsilon1 < self.epsilon2:
            raise ParameterError(
                f"ordering epsilon1 >= epsilon2 required, got "
                f"({self.epsilon1}, {self.epsilon2})",
                code="epsilon-ordering",
            )
        if not (self.g > 0.0):
            raise ParameterError(f"g must be positive, got {self.g}", code="g-positive")


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Spectral data of the two-qubit Hamiltonian.

    ``eigenvalues`` is ordered (s1, s2, s3, s4) = (-beta, beta, alpha,
    -alpha) and ``eigenvectors`` holds |s_n> as column n in the product
    basis.
    """

    alpha: float
    beta: float
    phi: float
    theta: float
    phi_plus: float
    phi_minus: float
    omega1: float
    omega2: float
    eigenvalues: tuple[float, float, float, float]
    eigenvectors: np.ndarray

    def omega(self, channel: int) -> float:
        if channel == 1:
            return self.omega1
        if channel == 2:
            return self.omega2
        raise ParameterError(f"channel must be 1 or 2, got {channel}", code="channel")

    @property
    def sin2_plus(self) -> float:
        return math.sin(self.phi_plus) ** 2

    @property
    def cos2_plus(self) -> float:
        return math.cos(self.phi_plus) ** 2

    @property
    def sin2_minus(self) -> float:
        return math.sin(self.phi_minus) ** 2

    @property
    def cos2_minus(self) -> float:
        return math.cos(self.phi_minus) ** 2

    def hamiltonian_eigenbasis(self) -> np.ndarray:
        return np.diag(self.eigenvalues)


@dataclass(frozen=True, eq=False)
class EigenOperator:
    """Jump operator V_{j,mu} in the eigenbasis, [H_S, V] = -omega V."""

    bath: int
    channel: int
    prefactor: float
    omega: float
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class EigenOperatorSet:
    operators: tuple[EigenOperator, ...]

    def get(self, bath: int, channel: int) -> EigenOperator:
        for op in self.operators:
            if op.bath == bath and op.channel == channel:
                return op
        raise KeyError((bath, channel))

    def __iter__(self):
        return iter(self.operators)


def diagonalize(params: SystemParams) -> EigenSystem:
    """Exact spectral decomposition of the two-qubit Hamiltonian.

    The mixing angles are extracted with the two-argument arctangent of
    (2g, eps1 +/- eps2), which stays well defined in the degenerate case
    eps1 = eps2 (theta = pi/2 exactly).
    """
    e1, e2, g = params.epsilon1, params.epsilon2, params.g
    alpha = math.hypot((e1 - e2) / 2.0, g)
    beta = math.hypot((e1 + e2) / 2.0, g)
    phi = math.atan2(2.0 * g, e1 + e2)
    theta = math.atan2(2.0 * g, e1 - e2)
    phi_plus = (theta + phi) / 2.0
    phi_minus = (theta - phi) / 2.0
    cp, sp = math.cos(phi / 2.0), math.sin(phi / 2.0)
    ct, st = math.cos(theta / 2.0), math.sin(theta / 2.0)
    # columns: |s1>, |s2>, |s3>, |s4> in {|00>,|01>,|10>,|11>}
    vectors = np.array(
        [
            [cp, sp, 0.0, 0.0],
            [0.0, 0.0, st, ct],
            [0.0, 0.0, ct, -st],
            [-sp, cp, 0.0, 0.0],
        ]
    )
    return EigenSystem(
        alpha=alpha,
        beta=beta,
        phi=phi,
        theta=theta,
        phi_plus=phi_plus,
        phi_minus=phi_minus,
        omega1=beta - alpha,
        omega2=beta + alpha,
        eigenvalues=(-beta, beta, alpha, -alpha),
        eigenvectors=vectors,
    )


def hamiltonian_matrix(params: SystemParams) -> np.ndarray:
    """4x4 Hamiltonian in the product basis {|00>,|01>,|10>,|11>}.

    With sigma^z |0> = -|0> the diagonal reads
    (-(e1+e2)/2, -(e1-e2)/2, (e1-e2)/2, (e1+e2)/2) and the XX coupling puts
    g on the anti-diagonal.
    """
    e1, e2, g = params.epsilon1, params.epsilon2, params.g
    a = (e1 + e2) / 2.0
    d = (e1 - e2) / 2.0
    h = np.diag([-a, -d, d, a]).astype(float)
    h += g * np.fliplr(np.eye(4))
    return h


def sigma_x_product(qubit: int) -> np.ndarray:
    """sigma^x of qubit 1 or 2 in the ordered product basis."""
    x = np.zeros((4, 4))
    if qubit == 1:
        pairs = ((0, 2), (1, 3))
    elif qubit == 2:
        pairs = ((0, 1), (2, 3))
    else:
        raise ParameterError(f"qubit must be 1 or 2, got {qubit}", code="qubit-index")
    for i, j in pairs:
        x[i, j] = x[j, i] = 1.0
    return x


def sigma_x_eigenbasis(es: EigenSystem, qubit: int) -> np.ndarray:
    u = es.eigenvectors
    return u.T @ sigma_x_product(qubit) @ u


def eigenoperators(es: EigenSystem) -> EigenOperatorSet:
    """The four lowering eigenoperators V_{j,mu} in the eigenbasis.

    Each V has exactly two nonzero entries: channel mu=1 at (s3,s2) and
    (s1,s4), channel mu=2 at (s1,s3) and (s4,s2); prefactors are the
    half-angle combinations of phi_plus / phi_minus.  The sign pattern makes
    sigma_j^x = sum_mu (V_{j,mu} + V_{j,mu}^T).
    """
    sp = math.sin(es.phi_plus)
    cp = math.cos(es.phi_plus)
    sm = math.sin(es.phi_minus)
    cm = math.cos(es.phi_minus)

    def build(bath, channel, pref, entries):
        m = np.zeros((4, 4))
        for (i, j), sign in entries:
            m[i, j] = sign * pref
        omega = es.omega1 if channel == 1 else es.omega2
        return EigenOperator(bath=bath, channel=channel, prefactor=pref, omega=omega, matrix=m)

    ops = (
        build(1, 1, sp, (((2, 1), +1.0), ((0, 3), -1.0))),
        build(1, 2, cp, (((0, 2), +1.0), ((3, 1), +1.0))),
        build(2, 1, cm, (((2, 1), +1.0), ((0, 3), +1.0))),
        build(2, 2, sm, (((0, 2), +1.0), ((3, 1), -1.0))),
    )
    return EigenOperatorSet(operators=ops)
