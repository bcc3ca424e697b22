"""Exact-arithmetic tools for polynomial solutions of the real Monge-Ampere
equations satisfied by rotation-invariant, projectively induced
Kahler-Einstein metrics."""

from .axis import (AxisProfile, CauchyDatum, RootSystem, axis_consistency_check,
                   axis_profile, binomial_power_match, enumerate_cauchy_data,
                   root_system_lhs, soln2_template, vandermonde_det)
from .geometry import (FlagProduct, SolutionRecord, catalog, embedding_dimension,
                       q_family, veronese_constant)
from .operator import (EinsteinData, VerificationCertificate, d_operator, is_admissible,
                       lambda_bounds, lambda_of, ma_matrix, mae_residual, power_lift,
                       power_reduce)
from .parse import ParseError, parse_expression
from .poly import NotDivisible, PolyMatrix, Polynomial, determinant, exact_divide
from .taylor import (PropagationOutcome, Status, X2Series, classify, edge_factor,
                     propagate, propagate_step)

__version__ = "0.1.0"
