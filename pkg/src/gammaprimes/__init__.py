"""Prime counting through incomplete gamma series, Moebius averages and zeta zeros."""

from .arithmetic import ArithTable, ExactFn, build_table, exact_sum
from .errors import (AccuracyLossError, BranchError, CapacityError, DivergenceError, DomainError,
                     EmptyTableError, GammaPrimesError, PoleError, PreconditionError, RangeError,
                     ZeroFileFormatError)
from .explicit import (ExplicitSpec, estimate_H, estimate_sigma_p, explicit_eval, explicit_pi,
                       frak_z, spec_for)
from .gamma_series import EvalResult, SeriesControl, audit_series_vs_closed, closed_average
from .moebius import MoebiusKind, Weight, avg_Hp, avg_pi1, avg_sigma_p, avg_theta, mobius_transform
from .specfun import constants, ei_complex, ei_real, reg_lower_gamma_int, upper_gamma
from .zeros import ZeroTable, bundled_zeros, load_zeros

__version__ = "0.1.0"
