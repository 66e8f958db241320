"""Exact q-series arithmetic for congruent theta Wronskians and
odd-weight Jacobi form operators.

Everything is computed over the rationals with certified truncation
windows; no floating point is used anywhere.
"""

from .characters import (GammaCharacter, UnityExponent, squared_determinant_delta_power,
                         squared_determinant_translation, translation_eigenvalues)
from .injectivity import (CaseInput, CaseVerdict, CongruenceReport, InvalidInput,
                          NonintegralityReport, ParityError, WindowReport, classify,
                          congruence_check, is_squarefree, nonintegrality_check,
                          window_check)
from .jacobi import (EvenIndex, InvariantViolation, JacobiFormData, NotOdd,
                     ThetaComponents, component_taylor, component_taylor_scale,
                     development_operator, dump_jacobi_table, from_theta_components,
                     kernel_equivalence, parse_jacobi_table, random_components,
                     taylor_coefficient, theta_components)
from .modforms import HalfIntWeight, eisenstein_e2, eta, iterated_derivative, modular_derivative
from .series import (INFINITY, DivisorIndistinguishableFromZero, PuiseuxSeries,
                     dump_series_text, parse_rational, parse_series_text)
from .theta import (NotAnEigenvector, ThetaIndex, ThetaTwoVar, odd_theta_series,
                    theta_series, total_theta_order, translation_eigenvalue)
from .wronskian import (CofactorOrderReport, CramerReport, SeriesMatrix,
                        VerificationFailed, WronskianReport, cramer_reconstruction,
                        eta_power_exponent, kernel_components, modular_wronskian,
                        partial_kernel_components, theta_derivative_matrix, vandermonde,
                        verify_cofactor_orders, verify_eta_power)

__version__ = "0.1.0"
