"""Thermal rotor states for the quadratic spectrum ``E_n = eps n^2``.

Everything is parametrized by the dimensionless product ``eps_beta``
(energy scale times inverse temperature).  The partition function is a
theta-3 lattice sum; the thermal Wigner function is theta-independent
and even in momentum.  Closed-form low- and high-temperature
approximations carry regime guards so they cannot be used outside the
range where their error terms are controlled.
"""

from dataclasses import dataclass
from math import ceil, exp, pi, sqrt

import numpy as np

from ._kernels import TWO_PI, sinc_pi_array, sinc_pi_scalar
from .specfun import theta3
from .states import DensityMatrix
from .wigner import _as_point

__all__ = [
    "ThermalParams",
    "partition_function",
    "thermal_density",
    "thermal_wigner",
    "low_temp_wigner",
    "high_temp_wigner",
]

_LOW_TEMP_MIN_EB = 3.0
_HIGH_TEMP_MAX_EB = 0.05
_POLE_BRANCH_WIDTH = 1e-4


@dataclass(frozen=True)
class ThermalParams:
    """Dimensionless temperature parameter and summation window.

    The default window half-width keeps the dropped Boltzmann tail
    below 1e-14 of the partition function."""

    eps_beta: float
    window_half_width: int | None = None

    def __post_init__(self):
        eb = float(self.eps_beta)
        if not np.isfinite(eb) or eb <= 0.0:
            raise ValueError("eps_beta must be positive")
        object.__setattr__(self, "eps_beta", eb)
        if self.window_half_width is not None:
            w = int(self.window_half_width)
            if w < 1:
                raise ValueError("window_half_width must be positive")
            object.__setattr__(self, "window_half_width", w)

    @property
    def half_width(self) -> int:
        if self.window_half_width is not None:
            return self.window_half_width
        return ceil(sqrt(33.0 / self.eps_beta)) + 5


def partition_function(tp: ThermalParams) -> float:
    """Boltzmann sum ``sum_n exp(-n^2 eps_beta)`` via the theta-3 sum.

    Tends to 1 from above at low temperature and to
    ``sqrt(pi/eps_beta)`` at high temperature."""
    return theta3(0.0, exp(-tp.eps_beta))


def thermal_density(tp: ThermalParams) -> DensityMatrix:
    """Diagonal Gibbs matrix ``lambda_n = exp(-n^2 eps_beta)/Z``."""
    N = tp.half_width
    n = np.arange(-N, N + 1)
    lam = np.exp(-(n.astype(np.float64) ** 2) * tp.eps_beta) / partition_function(tp)
    out = DensityMatrix(delta=0.0, n_min=-N, entries=np.diag(lam.astype(np.complex128)))
    out.validate(herm_tol=1e-14, trace_tol=1e-12)
    return out


def thermal_wigner(tp: ThermalParams, at) -> float:
    """Thermal Wigner function ``(1/2 pi Z) sum_n exp(-n^2 eb) sinc_pi(p-n)``.

    Independent of the angle coordinate and even in momentum."""
    pt = _as_point(at)
    N = tp.half_width
    n = np.arange(-N, N + 1).astype(np.float64)
    weights = np.exp(-(n**2) * tp.eps_beta)
    total = float(weights @ sinc_pi_array(pt.p - n))
    return total / (TWO_PI * partition_function(tp))


def low_temp_wigner(tp: ThermalParams, p: float) -> float:
    """Low-temperature closed form, first order in the Boltzmann factor.

    Valid for ``eps_beta >= 3`` (guarded): the retained bracket

        sinc_pi(p) [1 - exp(-eb) (p/(p+1) + p/(p-1))] / (2 pi Z)

    tracks the full sum to O(exp(-4 eb)).  The apparent poles at
    ``p = +-1`` are removable -- ``sinc_pi(p) p/(p -+ 1)`` equals
    ``-sinc_pi(p -+ 1)`` identically -- and an explicit branch takes
    that form within 1e-4 of each pole."""
    if tp.eps_beta < _LOW_TEMP_MIN_EB:
        raise ValueError("low_temp_wigner requires eps_beta >= 3")
    p = float(p)
    if not np.isfinite(p):
        raise ValueError("p must be finite")
    q = exp(-tp.eps_beta)
    if abs(p - 1.0) < _POLE_BRANCH_WIDTH or abs(p + 1.0) < _POLE_BRANCH_WIDTH:
        # pole-cancelling form, identical away from the poles and finite at them
        value = sinc_pi_scalar(p) + q * (sinc_pi_scalar(p - 1.0) + sinc_pi_scalar(p + 1.0))
    else:
        rational = p / (p + 1.0) + p / (p - 1.0)
        value = sinc_pi_scalar(p) * (1.0 - q * rational)
    return value / (TWO_PI * partition_function(tp))


def high_temp_wigner(tp: ThermalParams, p: float) -> float:
    """High-temperature Boltzmann form ``sqrt(pi eb)/(2 pi^2) exp(-eb p^2)``.

    Valid for ``eps_beta <= 0.05`` (guarded); its full-line momentum
    integral is exactly ``1/(2 pi)``."""
    if tp.eps_beta > _HIGH_TEMP_MAX_EB:
        raise ValueError("high_temp_wigner requires eps_beta <= 0.05")
    p = float(p)
    if not np.isfinite(p):
        raise ValueError("p must be finite")
    eb = tp.eps_beta
    return sqrt(pi * eb) / (2.0 * pi**2) * exp(-eb * p * p)
