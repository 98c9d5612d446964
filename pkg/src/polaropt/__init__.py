"""Exact polynomial optimization and semialgebraic sampling via dual polar varieties."""

from .errors import (
    EmptyFeasibleSet,
    GenericityFailure,
    MixedSignOnComponent,
    NoDirection,
    NotZeroDimensional,
    ParseError,
    PolaroptError,
    RegularityViolation,
    SingularHessian,
)
from .poly import (
    ExprDag,
    MultiPoly,
    ParsedSystem,
    PolyMatrix,
    adjugate,
    det,
    gradient,
    hessian,
    jacobian,
    parse_expression,
    parse_system,
    partial_derivative,
)
from .realalg import (
    RealAlgebraicNumber,
    compare,
    isolate_real_roots,
    rational_strictly_below,
    refine,
    sign_at,
    smallest_positive_root,
)
from .unipoly import UniPoly
from .zerodim import (
    RUR,
    AlgebraicPoint,
    SolveRequest,
    degree_of_closure,
    dimension_of,
    solve_zero_dim,
    verify_rur,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
