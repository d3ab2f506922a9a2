"""Steady-state heat transport through two coupled two-level atoms, with and
without the environment-induced level shift."""

from .bath import (
    Bath,
    DrudeLorentz,
    GaussianCutoff,
    HardCutoff,
    SpectralDensity,
    bose_occupation,
    gamma_rate,
    make_spectral_density,
    spectral_value,
    transition_rates,
)
from .dynamics import (
    HeatCurrentReport,
    Liouvillian,
    NumericSteadyState,
    SteadyState,
    asymptotic_slope,
    build_liouvillian,
    heat_current_closed,
    heat_current_trace,
    monotonicity_check,
    steady_state_analytic,
    steady_state_numeric,
    supremum_no_lamb,
)
from .errors import (
    DegenerateSteadyStateError,
    LambfluxError,
    ParameterError,
    PoleCollisionError,
    QuadratureError,
    RouteMismatchError,
    SeriesError,
)
from .experiments import (
    CSV_COLUMNS,
    CSV_SCHEMA,
    SweepConfig,
    SweepRow,
    compare_spectra,
    find_crossing,
    sweep,
    write_rows,
)
from .lambshift import (
    AffineCoefficients,
    ChannelShift,
    LambShiftData,
    QuadratureConfig,
    affine_coefficients,
    analytic_delta,
    analytic_delta_plus,
    analytic_delta_prime,
    antiresonant_kernel_integral,
    cot_mittag_leffler,
    euler_maclaurin_r,
    lamb_shift_data,
    level_shifts,
    matsubara_r,
    positivity_margin,
    pv_quadrature_S,
    quadrature_delta,
    quadrature_delta_minus,
    quadrature_delta_plus,
    quadrature_delta_prime,
    resonant_kernel_integral,
    transition_increments,
)
from .model import (
    EigenOperator,
    EigenOperatorSet,
    EigenSystem,
    SystemParams,
    diagonalize,
    eigenoperators,
    hamiltonian_matrix,
    sigma_x_eigenbasis,
    sigma_x_product,
)

__version__ = "0.1.0"
