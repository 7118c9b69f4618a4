"""Escape witnesses, eventually periodic certificates and membership scans."""

from .periodic import EventuallyPeriodic, ep_equal, ep_normalize, ep_of_term, equality_horizon, minimal_period
from .witness import (
    DISAGREEMENT,
    PROVEN_EQUAL,
    UNKNOWN,
    Witness,
    find_disagreement,
    membership_scan,
    verify_escape,
    witnesses_from_csv,
    witnesses_to_csv,
)

__all__ = [
    "DISAGREEMENT",
    "PROVEN_EQUAL",
    "UNKNOWN",
    "EventuallyPeriodic",
    "Witness",
    "ep_equal",
    "ep_normalize",
    "ep_of_term",
    "equality_horizon",
    "find_disagreement",
    "membership_scan",
    "minimal_period",
    "verify_escape",
    "witnesses_from_csv",
    "witnesses_to_csv",
]
