import math

import numpy as np
import pytest

from lambflux.bath import (
    Bath,
    DrudeLorentz,
    GaussianCutoff,
    HardCutoff,
    bose_occupation,
    gamma_rate,
    make_spectral_density,
    spectral_value,
    transition_rates,
)
from lambflux.errors import ParameterError

from conftest import GAMMA, J_W1_REF, NBAR_1_1_REF, OMEGA1_REF, OMEGA_D

ALL_KINDS = ("drude", "hard", "gaussian")


class TestBoseOccupation:
    def test_reference_value(self):
        # 1/(e - 1)
        assert bose_occupation(1.0, 1.0) == pytest.approx(NBAR_1_1_REF, rel=1e-15)

    def test_zero_temperature_limit(self):
        # omega/T = 1000: value is below the smallest subnormal, no overflow
        assert bose_occupation(1.0, 1e-3) == 0.0

    def test_large_but_representable_argument(self):
        assert bose_occupation(500.0, 1.0) == pytest.approx(math.exp(-500.0), rel=1e-12)

    def test_high_temperature_series(self):
        # nbar = T/omega - 1/2 + O(omega/T)
        n = bose_occupation(1.0, 1e6)
        assert n == pytest.approx(1e6 - 0.5, rel=1e-6)

    @pytest.mark.parametrize("omega,temperature", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
    def test_domain_errors(self, omega, temperature):
        with pytest.raises(ParameterError):
            bose_occupation(omega, temperature)


class TestSpectralDensity:
    def test_drude_reference(self, drude):
        assert spectral_value(drude, OMEGA1_REF) == pytest.approx(J_W1_REF, rel=1e-14)

    def test_hard_cutoff_boundary(self):
        hard = HardCutoff(gamma=GAMMA, omega_d=OMEGA_D)
        assert spectral_value(hard, OMEGA_D) == 0.0
        assert spectral_value(hard, OMEGA_D - 1e-9) > 0.0

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_ohmic_origin(self, kind):
        spectral = make_spectral_density(kind, GAMMA, OMEGA_D)
        assert spectral_value(spectral, 0.0) == 0.0

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_nonnegative(self, kind):
        spectral = make_spectral_density(kind, GAMMA, OMEGA_D)
        for omega in np.geomspace(1e-3, 10 * OMEGA_D, 40):
            assert spectral_value(spectral, float(omega)) >= 0.0

    def test_negative_frequency_rejected(self, drude):
        with pytest.raises(ParameterError):
            spectral_value(drude, -1.0)

    @pytest.mark.parametrize("gamma,omega_d", [(0.0, 50.0), (-1.0, 50.0), (0.01, 0.0)])
    def test_invalid_construction(self, gamma, omega_d):
        with pytest.raises(ParameterError):
            DrudeLorentz(gamma=gamma, omega_d=omega_d)

    def test_unknown_variant(self):
        with pytest.raises(ParameterError):
            make_spectral_density("lorentz", GAMMA, OMEGA_D)

    def test_low_frequency_equivalence(self):
        # all three cutoffs agree with the bare Ohmic slope to (omega/omega_d)^2;
        # the lower end keeps the bound's r^4/2 margin above cancellation noise
        drude = DrudeLorentz(gamma=GAMMA, omega_d=OMEGA_D)
        hard = HardCutoff(gamma=GAMMA, omega_d=OMEGA_D)
        gauss = GaussianCutoff(gamma=GAMMA, omega_d=OMEGA_D)
        for omega in np.geomspace(OMEGA_D / 1000.0, OMEGA_D / 10.0, 30):
            omega = float(omega)
            ratio = (omega / OMEGA_D) ** 2
            bare = spectral_value(hard, omega)
            assert abs(spectral_value(drude, omega) - bare) / (GAMMA * omega) <= ratio
            assert abs(spectral_value(gauss, omega) - bare) / (GAMMA * omega) <= ratio


class TestGammaRate:
    def test_composition(self, drude):
        n = bose_occupation(OMEGA1_REF, 1.0)
        expected = 2.0 * J_W1_REF * (n + 1.0)
        assert gamma_rate(drude, 1.0, OMEGA1_REF, +1) == pytest.approx(expected, rel=1e-13)
        assert gamma_rate(drude, 1.0, OMEGA1_REF, -1) == pytest.approx(
            2.0 * J_W1_REF * n, rel=1e-13
        )

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_kms_grid(self, kind):
        spectral = make_spectral_density(kind, GAMMA, OMEGA_D)
        for omega in np.geomspace(0.1, 10.0, 10):
            for temperature in np.geomspace(0.1, 100.0, 10):
                omega, temperature = float(omega), float(temperature)
                down = gamma_rate(spectral, temperature, omega, +1)
                up = gamma_rate(spectral, temperature, omega, -1)
                if down == 0.0:
                    assert up == 0.0
                    continue
                assert up / down == pytest.approx(math.exp(-omega / temperature), rel=1e-12)

    def test_rates_nonnegative(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            kind = ALL_KINDS[rng.integers(3)]
            spectral = make_spectral_density(kind, rng.uniform(1e-3, 0.1), rng.uniform(5, 100))
            omega = rng.uniform(1e-2, 20.0)
            temperature = rng.uniform(1e-2, 100.0)
            assert gamma_rate(spectral, temperature, omega, +1) >= 0.0
            assert gamma_rate(spectral, temperature, omega, -1) >= 0.0

    def test_absorption_vanishes_at_zero_temperature(self, drude):
        assert gamma_rate(drude, 1e-3, OMEGA1_REF, -1) == 0.0

    def test_bad_sign(self, drude):
        with pytest.raises(ParameterError):
            gamma_rate(drude, 1.0, 1.0, 0)


class TestBathAndRates:
    def test_bath_validation(self, drude):
        with pytest.raises(ParameterError):
            Bath(0.0, drude)
        assert Bath(2.0, drude).beta == pytest.approx(0.5)

    def test_transition_rate_map(self, fig2_eigensystem, bath_pair_dt50):
        bath1, bath2 = bath_pair_dt50
        rates = transition_rates(fig2_eigensystem, bath1, bath2)
        assert set(rates) == {(j, mu, s) for j in (1, 2) for mu in (1, 2) for s in (+1, -1)}
        for (j, mu, _), value in rates.items():
            assert value >= 0.0
        beta2 = bath2.beta
        ratio = rates[(2, 1, -1)] / rates[(2, 1, +1)]
        assert ratio == pytest.approx(math.exp(-beta2 * fig2_eigensystem.omega1), rel=1e-12)
