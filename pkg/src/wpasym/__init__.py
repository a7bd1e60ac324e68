"""Limiting mixed-Hodge data and Weil-Petersson distance asymptotics.

Exact layer: polarized spaces over the Gaussian rationals, monodromy weight
filtrations, limiting expansions and their polynomial potentials, and the
case-table classifier for dominant terms.  Numeric layer: metric tensors
from potentials, curve lengths, and log-divergence certification.
"""

from .blocks import (HodgeBlock, build_block, direct_sum, rigid1, scale_form,
                     sym_power, tensor, trivial, weight1_string)
from .classifier import (ClassificationReport, DominantPolynomial, classify,
                         dominant, factor_cubic, hessian_log,
                         min_eigenvalue_on_K, psd_large_y)
from .fixtures import FIXTURE_NAMES, fixture, fixture_info
from .hodge import (DecreasingFiltration, IncreasingFiltration,
                    NilpotentOperator, PolarizedSpace, check_polarization,
                    cone_invariance, graded_primitive, weight_filtration,
                    zero_operator)
from .limiting import (DivisorClass, LimitingExpansion, classify_divisor,
                       degree, evaluate_a, evaluate_omega,
                       threefold_constraint)
from .metric import (CurveSpec, FitVerdict, LengthSeries, MetricSample,
                     NumericMetric, PolyMetric, QuadratureConfig,
                     angular_slice, angular_slice_length,
                     corollary_strict_cases, curve_length, diagonal_ray,
                     divergence_fit, metric_from_potential,
                     perturbation_example, power_ray, probe_catalog, spiral)
from .polynomials import RealPolynomial2
from .potential import (PotentialDecomposition, decay_split_verify, decompose,
                        full_potential, one_variable_degree_check,
                        polynomial_part)
from .rationals import GQ

__version__ = "0.1.0"
