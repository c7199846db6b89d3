"""Casimir energies and pressures for two coaxial perfectly conducting cylinders.

Three routes are provided: the exact mode sum on the imaginary axis
(:mod:`.exact`), the periodic-orbit sum (:mod:`.semiclassical`) and the
proximity estimates (:mod:`.proximity`). :mod:`.observables` turns energies
into pressures.
"""
from .errors import (CasimirError, ConvergenceError, DomainError, NoSignChangeError,
                     QuadratureError, RangeError)
from .exact import (ExactParams, energy_exact_12, energy_exact_full, integral_n, log_F12,
                    smallgap_logF_approx)
from .observables import (ComparisonRow, DerivativeMode, Method, PressureResult,
                          compare_methods, find_crossover, pressure, pressure_from_epsilon,
                          pressure_full_exact)
from .proximity import PfaVariant, energy_pfa, parallel_plate_energy
from .results import EnergyBreakdown, MethodTag
from .semiclassical import (Geometry, OrbitFamily, OrbitKind, SemiParams, amplitude_A,
                            amplitude_N, energy_sem, energy_sem_w0_closed,
                            energy_sem_wge1_smallgap, inner_cylinder_energy_sem, orbit_length,
                            regulated_moment, v_hat)
from .specfun import ScaledBesselSet, bessel_ik_scaled, bessel_log_ik

__version__ = "0.1.0"
