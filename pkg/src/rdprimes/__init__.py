"""Digit-restricted primes: exact densities, Fourier transforms of
digit-restricted sets, circle-method diagnostics and recurrence tests."""
from .circle import (ArcPoint, ReductionParameters, arc_decomposition, arc_point,
                     arc_reduction_check, compare_direct_vs_reduced,
                     exceptional_rational_scan, inversion_complete, inversion_truncated,
                     minimal_aprime, minor_arc_report, reduced_main_term)
from .density import Obstruction, kappa, maynard_coefficient, obstruction, verify_dirichlet
from .digits import DigitSystem, new_digit_system, parse_system
from .errors import BudgetExceeded, InsufficientPrecision, PreconditionError
from .fourier import (BoundReport, chat, decay_envelope, envelope, hybrid_scan, l1_scan,
                      large_sieve_scan, large_spectra_count)
from .frequency import Frequency, parse_theta
from .recurrence import (WitnessQuery, relative_density, sarkozy_witness, vdc_harness,
                         weyl_average)
from .sieve import (ResidueClass, lambda_exp_sum, lambda_weighted_sum, restricted_primes,
                    von_mangoldt_transform)

__version__ = "0.1.0"
