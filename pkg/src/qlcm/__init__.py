"""Exact lcm lower bounds for q-arithmetic progressions ``u_n = r [n]_q + u0``."""

from .bounds import (
    BoundCertificate,
    BoundConstants,
    BoundKind,
    Strength,
    bound_constants,
    bound_holds,
    geometric_constants,
    hong_feng_check,
    strength_compare,
)
from .errors import (
    CoprimalityError,
    DegenerateDifference,
    DomainError,
    QlcmError,
    UnsupportedBase,
)
from .lcm_engine import (
    fundamental_theorem_check,
    lcm_range,
    prefix_stream,
    theorem1_check,
)
from .progression import (
    CnkValue,
    GeometricShift,
    Progression,
    cnk,
    f_eval,
    from_geometric,
    gap,
    k_index,
    l_index,
    make_progression,
    term,
)
from .qcalc import q_binomial, q_factorial, q_int

__version__ = "0.1.0"
