from .errors import (
    PosAuctionError,
    UsageError,
    InvalidInputError,
    DomainError,
    ValidationError,
    CapacityError,
    InvariantViolation,
)
from .rational import (
    Rational,
    as_rational,
    parse_rational,
    parse_rational_list,
    format_rational,
    format_decimal,
    strict_multiple_floor,
    integral_floor,
)
from .config import default_config, load_config, configure_logging

__all__ = [
    "PosAuctionError",
    "UsageError",
    "InvalidInputError",
    "DomainError",
    "ValidationError",
    "CapacityError",
    "InvariantViolation",
    "Rational",
    "as_rational",
    "parse_rational",
    "parse_rational_list",
    "format_rational",
    "format_decimal",
    "strict_multiple_floor",
    "integral_floor",
    "default_config",
    "load_config",
    "configure_logging",
]
