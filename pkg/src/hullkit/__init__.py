"""hullkit: translational hulls of ideals of finite endomorphism monoids."""

from .config import RunConfig, default_config
from .errors import (
    ConstructionError,
    DimensionError,
    HullkitError,
    NotACongruenceError,
    ParseError,
    PreconditionError,
    SizeRefusalError,
    TheoremViolationError,
)

__all__ = [
    "RunConfig",
    "default_config",
    "HullkitError",
    "ParseError",
    "DimensionError",
    "ConstructionError",
    "PreconditionError",
    "NotACongruenceError",
    "SizeRefusalError",
    "TheoremViolationError",
]

__version__ = "0.1.0"
