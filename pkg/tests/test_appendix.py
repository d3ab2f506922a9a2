"""Residue-theorem oracles for the two halves of the Drude kernel integral."""

import math

import pytest

from lambflux.errors import ParameterError, PoleCollisionError
from lambflux.lambshift import (
    analytic_delta,
    antiresonant_kernel_integral,
    cot_mittag_leffler,
    resonant_kernel_integral,
)

from conftest import (
    ANTIRESONANT_KERNEL_REF,
    GAMMA,
    OMEGA1_REF,
    OMEGA_D,
    RESONANT_KERNEL_REF,
)


class TestKernelIntegrals:
    def test_resonant_reference(self):
        closed = resonant_kernel_integral(1.0, OMEGA1_REF, OMEGA_D, "closed")
        direct = resonant_kernel_integral(1.0, OMEGA1_REF, OMEGA_D, "quadrature")
        assert direct == pytest.approx(RESONANT_KERNEL_REF, rel=1e-9)
        assert closed == pytest.approx(RESONANT_KERNEL_REF, rel=1e-6)

    def test_antiresonant_reference(self):
        closed = antiresonant_kernel_integral(1.0, OMEGA1_REF, OMEGA_D, "closed")
        direct = antiresonant_kernel_integral(1.0, OMEGA1_REF, OMEGA_D, "quadrature")
        assert direct == pytest.approx(ANTIRESONANT_KERNEL_REF, rel=1e-9)
        assert closed == pytest.approx(ANTIRESONANT_KERNEL_REF, rel=1e-6)

    @pytest.mark.parametrize("temperature,omega_mu", [(0.7, OMEGA1_REF), (2.5, 3.2566165379829399)])
    def test_closed_matches_quadrature_off_pole(self, temperature, omega_mu):
        for integral in (resonant_kernel_integral, antiresonant_kernel_integral):
            closed = integral(temperature, omega_mu, OMEGA_D, "closed")
            direct = integral(temperature, omega_mu, OMEGA_D, "quadrature")
            assert closed == pytest.approx(direct, rel=1e-6)

    def test_sum_reproduces_thermal_shift(self):
        # the two halves combine into pi * Delta / (gamma * omega_d^2)
        total = resonant_kernel_integral(1.0, OMEGA1_REF, OMEGA_D, "closed") + \
            antiresonant_kernel_integral(1.0, OMEGA1_REF, OMEGA_D, "closed")
        delta = analytic_delta(GAMMA, OMEGA_D, 1.0, OMEGA1_REF)
        assert total == pytest.approx(math.pi * delta / (GAMMA * OMEGA_D ** 2), rel=1e-7)

    def test_cotangent_pole_guard(self):
        # beta*omega_d/(2*pi) within 0.02 of an integer is rejected
        temperature = OMEGA_D / (2.0 * math.pi * 8.005)
        with pytest.raises(PoleCollisionError):
            resonant_kernel_integral(temperature, OMEGA1_REF, OMEGA_D, "closed")
        with pytest.raises(PoleCollisionError):
            antiresonant_kernel_integral(temperature, OMEGA1_REF, OMEGA_D, "closed")

    def test_unknown_method(self):
        with pytest.raises(ParameterError):
            resonant_kernel_integral(1.0, OMEGA1_REF, OMEGA_D, "series")


class TestCotExpansion:
    @pytest.mark.parametrize("x", [0.3, 1.0, 2.5])
    def test_matches_cotangent(self, x):
        assert cot_mittag_leffler(x) == pytest.approx(math.cos(x) / math.sin(x), abs=1e-10)

    def test_pole_rejected(self):
        with pytest.raises(ParameterError):
            cot_mittag_leffler(math.pi)
