"""Exact geometric solving of zero-dimensional polynomial systems."""
from .duality import BezoutWitness, bezout_witness, division_step, lift_residue, pseudo_jacobian
from .errors import (ConsistentSystemError, DegreeBoundError, EmptyFiberError, HypothesisViolation,
                     LiftingPointError, NonRadicalError, NotDivisibleError, NotRegularError,
                     NotSmoothError, PrimitiveElementError, ZeroDivisorError)
from .exact import MPoly, ModPoly, TruncSeries, UniPoly, height, poly_gcd, series_invert
from .fiber import (GeometricResolution, LiftingFiber, mult_table_from_resolution,
                    validate_resolution)
from .linalg import Matrix, adjoint_det, berkowitz_charpoly, companion, cyclic_solve, determinant
from .liouville import (ApproximationQuery, BoundReport, build_separating_polynomial,
                        certified_denominator_bound, norm_denominator_bounds)
from .newton import lift_fiber, newton_numerators
from .slp import (Slp, SlpBuilder, degree_height_value_bounds, evaluate, metrics, parse_poly,
                  parse_system, probabilistic_zero_test, questor_params, to_mpoly)
from .solver import ConsistencyVerdict, Solution, decide_consistency, solve_system

__all__ = ["BezoutWitness", "bezout_witness", "division_step", "lift_residue",
           "pseudo_jacobian", "ConsistentSystemError", "DegreeBoundError", "EmptyFiberError",
           "HypothesisViolation", "LiftingPointError", "NonRadicalError", "NotDivisibleError",
           "NotRegularError", "NotSmoothError", "PrimitiveElementError", "ZeroDivisorError",
           "MPoly", "ModPoly", "TruncSeries", "UniPoly", "height", "poly_gcd", "series_invert",
           "GeometricResolution", "LiftingFiber", "mult_table_from_resolution",
           "validate_resolution", "Matrix", "adjoint_det", "berkowitz_charpoly", "companion",
           "cyclic_solve", "determinant", "ApproximationQuery", "BoundReport",
           "build_separating_polynomial", "certified_denominator_bound",
           "norm_denominator_bounds", "lift_fiber", "newton_numerators", "Slp", "SlpBuilder",
           "degree_height_value_bounds", "evaluate", "metrics", "parse_poly", "parse_system",
           "probabilistic_zero_test", "questor_params", "to_mpoly", "ConsistencyVerdict",
           "Solution", "decide_consistency", "solve_system"]

__version__ = "0.1.0"
