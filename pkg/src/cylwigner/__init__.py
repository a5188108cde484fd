"""Phase-space toolkit for the planar rotator.

Quasi-probability (Wigner-type) functions on the cylinder spanned by an
angle and a continuous angular momentum, with exact momentum-direction
integral reduction, both marginals, probability extraction, overlap and
expectation pairings, density-matrix reconstruction, diagonal-time
evolution, and thermal states.

Hot grid kernels are numba-compiled when numba is available; set
``CYLWIGNER_DISABLE_NUMBA=1`` to force the pure-numpy path.
"""

__version__ = "0.1.0"

from ._kernels import ENV_FLAG, NUMBA_ENABLED
from .dynamics import (
    DiagonalHamiltonian,
    evolve_density,
    evolve_state,
    k_matrix_element,
    quadratic_hamiltonian,
    wigner_time_derivative,
)
from .specfun import (
    QuadratureRule,
    bessel_i,
    gauss_legendre_rule,
    integrate_interval,
    integrate_theta,
    sinc_pi,
    theta3,
    theta3_jacobi,
)
from .states import (
    DensityMatrix,
    FourierState,
    basis_state,
    cat_state,
    evaluate_wavefunction,
    pure_density,
    state_expectation_L,
    von_mises_state,
)
from .thermal import (
    ThermalParams,
    high_temp_wigner,
    low_temp_wigner,
    partition_function,
    thermal_density,
    thermal_wigner,
)
from .wigner import (
    CardinalSeries,
    PhasePoint,
    UncertaintyProduct,
    WignerGrid,
    angular_momentum_operator,
    cosine_operator,
    default_p_axis,
    default_theta_axis,
    expectation_via_phase_space,
    extract_probability,
    extract_probability_via_quadrature,
    identity_operator,
    marginal_angle,
    marginal_momentum,
    moyal_function,
    moyal_grid,
    overlap_from_wigner,
    reconstruct_density,
    rescale_hbar,
    sine_operator,
    uncertainty_product,
    wigner_density,
    wigner_function,
    wigner_grid,
    wigner_matrix_element,
    write_grid_csv,
)

__all__ = [
    "ENV_FLAG",
    "NUMBA_ENABLED",
    "QuadratureRule",
    "bessel_i",
    "gauss_legendre_rule",
    "integrate_interval",
    "integrate_theta",
    "sinc_pi",
    "theta3",
    "theta3_jacobi",
    "DensityMatrix",
    "FourierState",
    "basis_state",
    "cat_state",
    "evaluate_wavefunction",
    "pure_density",
    "state_expectation_L",
    "von_mises_state",
    "CardinalSeries",
    "PhasePoint",
    "UncertaintyProduct",
    "WignerGrid",
    "angular_momentum_operator",
    "cosine_operator",
    "default_p_axis",
    "default_theta_axis",
    "expectation_via_phase_space",
    "extract_probability",
    "extract_probability_via_quadrature",
    "identity_operator",
    "marginal_angle",
    "marginal_momentum",
    "moyal_function",
    "moyal_grid",
    "overlap_from_wigner",
    "reconstruct_density",
    "rescale_hbar",
    "sine_operator",
    "uncertainty_product",
    "wigner_density",
    "wigner_function",
    "wigner_grid",
    "wigner_matrix_element",
    "write_grid_csv",
    "DiagonalHamiltonian",
    "evolve_density",
    "evolve_state",
    "k_matrix_element",
    "quadratic_hamiltonian",
    "wigner_time_derivative",
    "ThermalParams",
    "high_temp_wigner",
    "low_temp_wigner",
    "partition_function",
    "thermal_density",
    "thermal_wigner",
]
