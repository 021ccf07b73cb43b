"""radolab: an exact-arithmetic workbench for partition regularity of
diagonal equations Σ cᵢxᵢᵏ = 0."""

from .arith import (SmoothParams, dickman_rho, is_smooth, largest_prime_factor,
                    pow_checked, sieve_primes, smooth_sieve)
from .backend import BACKEND
from .circle import (JEstimate, LocalDensity, Prediction,
                     SingularSeriesEstimate, complete_sum_Sqa, gauss_sum,
                     local_density, predict_count, singular_integral,
                     singular_series)
from .colourings import (Colouring, HomogeneityReport, RadoNumberResult,
                         SearchOutcome, WitnessColouring, dilate_colouring,
                         homogeneous_density, is_homogeneous, mono_count,
                         rado_number, rado_witness_colouring,
                         search_solution_free, solution_value_sets)
from .counting import (CountRequest, GrowthFit, WeightFunction,
                       count_bruteforce, count_orthogonality,
                       counting_operator, growth_exponent, min_admissible_q)
from .equations import (CoefficientMatrix, ColumnsDecision, DiagonalEquation,
                        RadoDecision, SplitEquation, columns_condition,
                        is_trivial_solution, lefmann_hypotheses,
                        linear_solution_from_witness, rado_criterion,
                        zero_sum_subsets)
from .errors import (ConstructionError, RangeError, ResourceLimitError,
                     ShapeError, UnsupportedDegreeError)
from .fourier import (DecayReport, SpectrumGrid, decay_statistic, default_grid,
                      dft, large_spectrum, restriction_norm)
from .lefmann import (CertifyResult, LefmannCertificate, LefmannDiagnostics,
                      lefmann_certify, lefmann_diagnostics, lefmann_search)
from .sets import IntegerSet
from .wtrick import (CircleContext, GreedyReport, TransferReport,
                     build_context, greedy_split, modulus_for, transform_A1,
                     transform_B1, verify_transfer, weight_nu)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
