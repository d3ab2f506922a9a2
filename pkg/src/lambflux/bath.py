"""Ohmic spectral densities, thermal occupation, and golden-rule rates."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .model import EigenSystem

__all__ = [
    "SpectralDensity",
    "DrudeLorentz",
    "HardCutoff",
    "GaussianCutoff",
    "Bath",
    "bose_occupation",
    "spectral_value",
    "gamma_rate",
    "transition_rates",
    "make_spectral_density",
]


@dataclass(frozen=True)
class SpectralDensity:
    """Base Ohmic density J(omega) = gamma * omega * cutoff(omega / omega_d)."""

    gamma: float
    omega_d: float

    kind = "base"

    def __post_init__(self):
        if not (self.gamma > 0.0):
            raise ParameterError(
                f"coupling gamma must be positive, got {self.gamma}",
                code="gamma-positive",
            )
        if not (self.omega_d > 0.0):
            raise ParameterError(
                f"cutoff omega_d must be positive, got {self.omega_d}",
                code="cutoff-positive",
            )

    def value(self, omega: float) -> float:
        raise NotImplementedError


class DrudeLorentz(SpectralDensity):
    """J(omega) = gamma * omega / (1 + (omega/omega_d)^2)."""

    kind = "drude"

    def value(self, omega: float) -> float:
        return self.gamma * omega / (1.0 + (omega / self.omega_d) ** 2)


class HardCutoff(SpectralDensity):
    """J(omega) = gamma * omega for omega < omega_d, zero at and above it."""

    kind = "hard"

    def value(self, omega: float) -> float:
        return self.gamma * omega if omega < self.omega_d else 0.0


class GaussianCutoff(SpectralDensity):
    """J(omega) = gamma * omega * exp(-(omega/omega_d)^2)."""

    kind = "gaussian"

    def value(self, omega: float) -> float:
        return self.gamma * omega * math.exp(-((omega / self.omega_d) ** 2))


_VARIANTS = {"drude": DrudeLorentz, "hard": HardCutoff, "gaussian": GaussianCutoff}


def make_spectral_density(kind: str, gamma: float, omega_d: float) -> SpectralDensity:
    try:
        cls = _VARIANTS[kind]
    except KeyError:
        raise ParameterError(
            f"unknown spectral variant {kind!r}, expected one of {sorted(_VARIANTS)}",
            code="spectral-variant",
        ) from None
    return cls(gamma=gamma, omega_d=omega_d)


@dataclass(frozen=True)
class Bath:
    """Thermal reservoir: temperature T > 0 plus its spectral density."""

    temperature: float
    spectral: SpectralDensity

    def __post_init__(self):
        if not (self.temperature > 0.0):
            raise ParameterError(
                f"bath temperature must be positive, got {self.temperature}",
                code="temperature-positive",
            )

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature


def bose_occupation(omega: float, temperature: float) -> float:
    """Thermal photon number 1/(exp(omega/T) - 1).

    Evaluated through expm1 so the omega << T regime keeps full precision;
    for omega/T beyond the exp overflow threshold the asymptotic
    exp(-omega/T) is returned (it underflows to zero gracefully).
    """
    if not (omega > 0.0):
        raise ParameterError(f"omega must be positive, got {omega}", code="omega-positive")
    if not (temperature > 0.0):
        raise ParameterError(
            f"temperature must be positive, got {temperature}",
            code="temperature-positive",
        )
    x = omega / temperature
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def spectral_value(spectral: SpectralDensity, omega: float) -> float:
    """J(omega) for omega >= 0."""
    if omega < 0.0:
        raise ParameterError(f"omega must be nonnegative, got {omega}", code="omega-sign")
    if omega == 0.0:
        return 0.0
    return spectral.value(omega)


def gamma_rate(spectral: SpectralDensity, temperature: float, omega: float, sign: int) -> float:
    """Golden-rule rate Gamma(+omega) = 2 J (nbar+1), Gamma(-omega) = 2 J nbar.

    ``sign`` selects the branch (+1 emission, -1 absorption); omega itself
    is always the positive transition frequency.
    """
    if sign not in (+1, -1):
        raise ParameterError(f"sign must be +1 or -1, got {sign}", code="rate-sign")
    j = spectral_value(spectral, omega)
    n = bose_occupation(omega, temperature)
    return 2.0 * j * (n + 1.0) if sign == +1 else 2.0 * j * n


def transition_rates(es: EigenSystem, bath1: Bath, bath2: Bath) -> dict:
    """Map (bath j, channel mu, sign) -> Gamma_j(sign * omega_mu)."""
    rates = {}
    for j, bath in ((1, bath1), (2, bath2)):
        for mu, omega in ((1, es.omega1), (2, es.omega2)):
            for sign in (+1, -1):
                rates[(j, mu, sign)] = gamma_rate(bath.spectral, bath.temperature, omega, sign)
    return rates
