"""Harmonic continuation on conductivity strips.

Builds the transfer operator that carries a harmonic function's edge
differences across a rectangular resistor lattice, and certifies with exact
rational arithmetic that it factors into nonnegative elementary steps, is
totally nonnegative and nonsingular, and has a positive spectrum.
"""

from .continuum import ContinuumConfig, Gamma, discretize, refinement_study
from .dtn import dtn_map, dtn_spectrum_probe, kirchhoff
from .errors import (BudgetExceeded, HContinuationError, IllPosedStep, InternalError,
                     InvalidArgument, InvalidConfig, MissingData, NumericFailure,
                     SingularInterior, WrongBackend)
from .kernels import BACKEND as KERNEL_BACKEND
from .marching import CauchyData, continue_vertex, march, oracle_march
from .network import (PotentialField, StripNetwork, build_random, build_uniform, max_defect,
                      residual)
from .spectral import (SpectrumReport, certify_spectrum, charpoly_exact, float_eigen,
                       isolate_positive_roots)
from .tncheck import MinorCertificate, all_minors_nonneg, cauchy_binet_check, is_elementary_nonneg
from .transfer import (Chart, StepMatrix, TransferOperator, advance, herringbone_chart,
                       horizontal_step, modified_h, oracle_modified_h, sign_pattern_search,
                       value_transfer, vertical_update_step)

__version__ = "0.1.0"
