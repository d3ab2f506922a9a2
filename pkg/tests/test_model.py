import math

import numpy as np
import pytest

from lambflux.errors import ParameterError
from lambflux.model import (
    SystemParams,
    diagonalize,
    eigenoperators,
    hamiltonian_matrix,
    sigma_x_eigenbasis,
)

from conftest import ALPHA_REF, BETA_REF, OMEGA1_REF, OMEGA2_REF


def random_params(rng, n):
    for _ in range(n):
        e2 = rng.uniform(0.5, 4.0)
        e1 = e2 + rng.uniform(0.0, 2.0)
        g = rng.uniform(0.05, 1.5)
        yield SystemParams(e1, e2, g)


class TestDiagonalize:
    def test_reference_point(self, fig2_eigensystem):
        es = fig2_eigensystem
        assert es.alpha == pytest.approx(ALPHA_REF, rel=1e-14)
        assert es.beta == pytest.approx(BETA_REF, rel=1e-14)
        assert es.omega1 == pytest.approx(OMEGA1_REF, rel=1e-14)
        assert es.omega2 == pytest.approx(OMEGA2_REF, rel=1e-14)
        assert es.eigenvalues == (-es.beta, es.beta, es.alpha, -es.alpha)

    def test_angles(self, fig2_eigensystem):
        es = fig2_eigensystem
        assert math.tan(es.phi) == pytest.approx(2 * 0.5 / 5.0, rel=1e-14)
        assert es.theta == pytest.approx(math.pi / 4.0, rel=1e-14)
        assert es.phi_plus == pytest.approx((es.theta + es.phi) / 2.0)
        assert es.phi_minus == pytest.approx((es.theta - es.phi) / 2.0)

    def test_decoupled_limit(self):
        es = diagonalize(SystemParams(3.0, 2.0, 1e-8))
        assert es.omega1 == pytest.approx(2.0, abs=1e-12)
        assert es.omega2 == pytest.approx(3.0, abs=1e-12)
        assert es.theta == pytest.approx(0.0, abs=1e-7)
        assert es.phi == pytest.approx(0.0, abs=1e-7)

    def test_degenerate_splittings(self):
        es = diagonalize(SystemParams(2.5, 2.5, 0.5))
        assert es.theta == pytest.approx(math.pi / 2.0, abs=0.0)
        assert es.alpha == pytest.approx(0.5, rel=1e-15)
        assert es.beta == pytest.approx(math.sqrt(6.5), rel=1e-15)

    @pytest.mark.parametrize(
        "e1,e2,g,code",
        [
            (2.0, 3.0, 0.5, "epsilon-ordering"),
            (3.0, 2.0, 0.0, "g-positive"),
            (3.0, 2.0, -0.1, "g-positive"),
            (3.0, 0.0, 0.5, "epsilon-positive"),
            (3.0, -1.0, 0.5, "epsilon-positive"),
        ],
    )
    def test_invalid_params(self, e1, e2, g, code):
        with pytest.raises(ParameterError) as err:
            SystemParams(e1, e2, g)
        assert err.value.code == code

    def test_gap_identity(self):
        rng = np.random.default_rng(7)
        for params in random_params(rng, 20):
            es = diagonalize(params)
            assert es.omega2 - es.omega1 == pytest.approx(2.0 * es.alpha, rel=1e-12)
            assert es.omega1 > 0.0

    def test_ordering_swap_invariance(self):
        a = diagonalize(SystemParams(3.0, 2.0, 0.5))
        b = diagonalize(SystemParams(*sorted((2.0, 3.0), reverse=True), 0.5))
        assert (a.alpha, a.beta, a.omega1, a.omega2) == (b.alpha, b.beta, b.omega1, b.omega2)


class TestHamiltonianMatrix:
    def test_reference_entries(self, fig2_params):
        h = hamiltonian_matrix(fig2_params)
        assert np.allclose(np.diag(h), [-2.5, -0.5, 0.5, 2.5])
        assert np.allclose(h - np.diag(np.diag(h)), 0.5 * np.fliplr(np.eye(4)))

    def test_trace_zero(self):
        rng = np.random.default_rng(11)
        for params in random_params(rng, 10):
            assert np.trace(hamiltonian_matrix(params)) == pytest.approx(0.0, abs=1e-13)

    def test_commuting_terms(self):
        h = hamiltonian_matrix(SystemParams(2.0, 2.0, 1e-300))
        assert np.allclose(np.diag(h), [-2.0, 0.0, 0.0, 2.0])

    def test_spectrum_matches_analytic(self):
        rng = np.random.default_rng(3)
        for params in random_params(rng, 20):
            es = diagonalize(params)
            numeric = np.sort(np.linalg.eigvalsh(hamiltonian_matrix(params)))
            analytic = np.sort(np.array(es.eigenvalues))
            assert np.max(np.abs(numeric - analytic)) < 1e-12


class TestEigenvectors:
    def test_orthonormal(self):
        rng = np.random.default_rng(5)
        for params in random_params(rng, 20):
            u = diagonalize(params).eigenvectors
            assert np.max(np.abs(u.T @ u - np.eye(4))) < 1e-12

    def test_diagonalizes_hamiltonian(self):
        rng = np.random.default_rng(13)
        for params in random_params(rng, 20):
            es = diagonalize(params)
            u = es.eigenvectors
            residual = u.T @ hamiltonian_matrix(params) @ u - np.diag(es.eigenvalues)
            assert np.max(np.abs(residual)) < 1e-12

    def test_half_angle_structure(self, fig2_eigensystem):
        es = fig2_eigensystem
        u = es.eigenvectors
        cp, sp = math.cos(es.phi / 2), math.sin(es.phi / 2)
        ct, st = math.cos(es.theta / 2), math.sin(es.theta / 2)
        assert u[:, 0] == pytest.approx([cp, 0.0, 0.0, -sp])
        assert u[:, 1] == pytest.approx([sp, 0.0, 0.0, cp])
        assert u[:, 2] == pytest.approx([0.0, st, ct, 0.0])
        assert u[:, 3] == pytest.approx([0.0, ct, -st, 0.0])


class TestEigenoperators:
    def test_sparsity_and_prefactors(self, fig2_eigensystem):
        es = fig2_eigensystem
        ops = eigenoperators(es)
        sp, cp = math.sin(es.phi_plus), math.cos(es.phi_plus)
        sm, cm = math.sin(es.phi_minus), math.cos(es.phi_minus)
        expected = {
            (1, 1): {(2, 1): sp, (0, 3): -sp},
            (1, 2): {(0, 2): cp, (3, 1): cp},
            (2, 1): {(2, 1): cm, (0, 3): cm},
            (2, 2): {(0, 2): sm, (3, 1): -sm},
        }
        for (j, mu), entries in expected.items():
            m = ops.get(j, mu).matrix
            assert np.count_nonzero(m) == 2
            for pos, value in entries.items():
                assert m[pos] == pytest.approx(value, rel=1e-15)

    def test_channel_frequencies(self, fig2_eigensystem):
        ops = eigenoperators(fig2_eigensystem)
        for op in ops:
            expected = fig2_eigensystem.omega1 if op.channel == 1 else fig2_eigensystem.omega2
            assert op.omega == expected

    def test_commutator_identity(self):
        rng = np.random.default_rng(17)
        for params in random_params(rng, 15):
            es = diagonalize(params)
            h = es.hamiltonian_eigenbasis()
            for op in eigenoperators(es):
                residual = h @ op.matrix - op.matrix @ h + op.omega * op.matrix
                assert np.max(np.abs(residual)) < 1e-12

    def test_coupling_reconstruction(self):
        rng = np.random.default_rng(19)
        for params in random_params(rng, 15):
            es = diagonalize(params)
            ops = eigenoperators(es)
            for j in (1, 2):
                total = sum(op.matrix + op.matrix.T for op in ops if op.bath == j)
                assert np.max(np.abs(total - sigma_x_eigenbasis(es, j))) < 1e-12
