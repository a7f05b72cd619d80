"""Enumeration budgets.

Every exhaustive routine checks its workload against one of these limits and
raises :class:`BudgetExceeded` instead of hanging. Defaults can be overridden
through environment variables, read at call time.
"""

from __future__ import annotations

import os

ELEMENT_BUDGET_ENV = "CENTRALIZERS_ELEMENT_BUDGET"
PRIME_BUDGET_ENV = "CENTRALIZERS_PRIME_BUDGET"
ENUM_CAP_ENV = "CENTRALIZERS_ENUM_CAP"
MAP_BUDGET_ENV = "CENTRALIZERS_MAP_BUDGET"

DEFAULT_ELEMENT_BUDGET = 10**6
DEFAULT_PRIME_BUDGET = (10**2) ** 3
DEFAULT_ENUM_CAP = 10**5
DEFAULT_MAP_BUDGET = 2**16


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed its budget."""


def _read(env: str, default: int) -> int:
    raw = os.environ.get(env)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{env} must be positive, got {value}")
    return value


def element_budget() -> int:
    """Max ring cardinality for center, semiprime and exhaustive checks."""
    return _read(ELEMENT_BUDGET_ENV, DEFAULT_ELEMENT_BUDGET)


def prime_budget() -> int:
    """Max value of |R|**3 for the primeness scan."""
    return _read(PRIME_BUDGET_ENV, DEFAULT_PRIME_BUDGET)


def enum_cap() -> int:
    """Max solution-space size that is fully enumerated for classification."""
    return _read(ENUM_CAP_ENV, DEFAULT_ENUM_CAP)


def map_budget() -> int:
    """Max number of additive maps scanned by brute-force map search."""
    return _read(MAP_BUDGET_ENV, DEFAULT_MAP_BUDGET)


def require(amount: int, limit: int, what: str) -> None:
    if amount > limit:
        raise BudgetExceeded(f"{what}: {amount} exceeds budget {limit}")
