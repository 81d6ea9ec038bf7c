from .constants import P_INF
from .exceptions import (
    LpTorsionError,
    UnsupportedDomainError,
    ConvergenceError,
    RootFindingError,
    GridTooCoarseError,
)
from .write_output import write_atomic, format_float, round_significant
