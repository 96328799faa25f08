from __future__ import annotations

from typing import Any, Dict, Optional


class PosAuctionError(Exception):
    """Base error; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class UsageError(PosAuctionError):
    exit_code = 1


class InvalidInputError(PosAuctionError, ValueError):
    exit_code = 2


class DomainError(InvalidInputError):
    """Argument outside the domain of a closed-form quantity."""


class ValidationError(InvalidInputError):
    """Malformed bids, mismatched sizes, unreadable files."""


class CapacityError(InvalidInputError):
    """Oracle input beyond its configured enumeration cap."""


class InvariantViolation(PosAuctionError):
    """A construction failed its own postcondition check."""

    exit_code = 3

    def __init__(self, case_tag: str, message: str, detail: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(f"[{case_tag}] {message}")
        self.case_tag = case_tag
        self.detail: Dict[str, Any] = dict(detail or {})
