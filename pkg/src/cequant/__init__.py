"""Exact conformally equivariant quantization on T*R^n.

Symbols and operator symbols are :class:`SymbolPolynomial` values over the
Gaussian rationals with a formal ``hbar``; operators acting on symbols are
:class:`EndoOperator` values.  Everything is exact.
"""

from .codec import decode_polynomial, encode_polynomial
from .curved import (MetricJet, TaylorJet, curvature_at_origin, geodesic_flow_check,
                     laplace_beltrami, quantum_hamiltonian, scalar_curvature)
from .diffop import adjoint, apply, compose
from .endo import EndoOperator, anticommutator, commutator, endo_apply, endo_compose
from .errors import (ArgumentError, CequantError, CodecError, CriticalResonance, DimensionError,
                     JetOrderError, SecondOrderResonance, UnsupportedDimension)
from .harmonic import HarmonicComponent, decompose, gamma, project, rho
from .invariants import casimir_operators, casimir_symbols, invariant_operator
from .lie import (ConformalBasis, VectorField, conformal_generators, density_lie, generator,
                  operator_lie, symbol_lie, vf_bracket)
from .poly import OperatorSymbol, Signature, SymbolPolynomial, Weights
from .quantizer import (QuantizationResult, i_hbar, quantize, quantize_graded, quantize_tilde,
                        second_order_map, solve_eigenvector, weyl_map)
from .resonance import ResonanceEntry, delta_value, enumerate_sigma, probe_critical
from .scalars import ScaledCoefficient
from .star import StarTruncation, poisson_bracket, star, star_deviation

__version__ = "0.1.0"
