import pytest

from lambflux.bath import Bath, DrudeLorentz
from lambflux.model import SystemParams, diagonalize

# Reference setup used throughout: epsilon1=3, epsilon2=2, g=0.5,
# gamma=0.01, omega_d=50, T1=1 (the weak-coupling working point).
GAMMA = 0.01
OMEGA_D = 50.0
T1 = 1.0

# Frozen oracle values, computed independently at 30-digit precision
# (explicit series with integral tail closure, symmetric-window PV
# quadrature) and rounded to double.
ALPHA_REF = 0.7071067811865476
BETA_REF = 2.5495097567963924
OMEGA1_REF = 1.8424029756098449
OMEGA2_REF = 3.2566165379829399
J_W1_REF = 0.018399047906219272
J_W2_REF = 0.032428596124234646
NBAR_1_1_REF = 0.5819767068693265
R_2_1_REF = -2.6165992869782163     # matsubara remainder, T=1, omega1, omega_d=50
R_2_2_REF = -2.4493562012928681
R_EST_2_1_REF = -2.1512762584804603
R_LOWT_REF = -3.3010141821923452    # T=1e-3
DELTA_11_REF = 0.0043759621457118323
DELTA_PRIME_11_REF = -0.038664707098638683
DELTA_PLUS_11_REF = 0.23032866184457259
RESONANT_KERNEL_REF = 0.00032406251701051977    # T=1, omega1, omega_d=50
ANTIRESONANT_KERNEL_REF = 0.00022583710416369127
SUPREMUM_BLUE_REF = 0.089641491313653573
POPS_BLUE_DT50_REF = (
    0.31900624546967412,
    0.18376282634513968,
    0.19215167306934777,
    0.30507925511583842,
)
J0_BLUE_DT50_REF = -0.067403915162816086
JDELTA_BLUE_DT50_REF = -0.066892604064917017
DJ_BLUE_DT50_REF = 0.00051131109789906949
DELTA1_BLUE_DT50_REF = 0.025244186180633511
DELTA2_BLUE_DT50_REF = -0.033144212992035027


@pytest.fixture(scope="session")
def fig2_params():
    return SystemParams(3.0, 2.0, 0.5)


@pytest.fixture(scope="session")
def fig2_eigensystem(fig2_params):
    return diagonalize(fig2_params)


@pytest.fixture(scope="session")
def drude():
    return DrudeLorentz(gamma=GAMMA, omega_d=OMEGA_D)


@pytest.fixture(scope="session")
def bath_pair_dt50(drude):
    return Bath(T1, drude), Bath(T1 + 50.0, drude)
