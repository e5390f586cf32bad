"""Evolution operators, trace sequences and zeta-type series for
two-state interacting particle systems on a finite path."""

from .config import DEFAULTS
from .errors import (
    ConstraintViolation,
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    InvariantDrift,
    IpsZetaError,
    KindMismatch,
    SingularAtU,
    SizeExceeded,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .models import (
    LocalOperator,
    ModelClass,
    ModelSpec,
    TensorFactors,
    build_local,
    classify,
    factor_tensor,
    reflection,
    rotation,
)
from .operators import E00, E01, E10, E11, Configuration, GlobalOperator, TraceSequence
from .zeta import (
    ClosedFormReport,
    TraceR1,
    ZetaLogSeries,
    arctanh,
    binomial_zeta_qca1,
    chebyshev_t,
    chebyshev_u,
    clt_limit_zeta,
    conjecture_test_rule90,
    qca2_c1_closed_form,
    qca2_x1_recurrence,
    qca2_x2_recurrence,
    rule90_trace_general_r,
    tensor_model_cr,
    zeta_closed_form_qca2,
    zeta_log_series,
)
from .verify import FORMULA_IDS, run_formula
from .dynamics import (
    StateKind,
    StateVector,
    configuration_probability,
    evolve,
    evolve_trajectory,
    initial_state,
    site_marginals,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULTS",
    "IpsZetaError", "ConstraintViolation", "ConvergenceFailure", "DimensionMismatch",
    "DomainError", "InvariantDrift", "KindMismatch", "SingularAtU", "SizeExceeded",
    "KERNEL_BACKEND",
    "LocalOperator", "ModelClass", "ModelSpec", "TensorFactors",
    "build_local", "classify", "factor_tensor", "reflection", "rotation",
    "E00", "E01", "E10", "E11", "Configuration", "GlobalOperator", "TraceSequence",
    "ClosedFormReport", "TraceR1", "ZetaLogSeries", "arctanh",
    "binomial_zeta_qca1", "chebyshev_t", "chebyshev_u", "clt_limit_zeta",
    "conjecture_test_rule90", "qca2_c1_closed_form", "qca2_x1_recurrence",
    "qca2_x2_recurrence", "rule90_trace_general_r", "tensor_model_cr",
    "zeta_closed_form_qca2", "zeta_log_series",
    "FORMULA_IDS", "run_formula",
    "StateKind", "StateVector", "configuration_probability", "evolve",
    "evolve_trajectory", "initial_state", "site_marginals",
    "__version__",
]
