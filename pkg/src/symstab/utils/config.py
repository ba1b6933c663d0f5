"""
Runtime configuration.

The only tunable is the enumeration budget. It is resolved from an explicit
value first, then from the ``SYMSTAB_BUDGET`` environment variable, then from
the built-in default.
"""

import logging
import os
from typing import Optional

from .errors import BudgetExceeded, InvalidArgument

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV_VAR = "SYMSTAB_BUDGET"


def resolve_budget(budget: Optional[int] = None) -> int:
    """
    Resolve the enumeration budget.

    Args:
        budget: Explicit budget, wins over the environment when given

    Returns:
        A positive element count

    Raises:
        InvalidArgument: If the budget is not a positive integer
    """
    if budget is None:
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is None or raw.strip() == "":
            return DEFAULT_BUDGET
        try:
            budget = int(raw.strip())
        except ValueError:
            raise InvalidArgument(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
        logger.debug("budget %d taken from %s", budget, BUDGET_ENV_VAR)
    if budget < 1:
        raise InvalidArgument(f"budget must be positive, got {budget}")
    return budget


def check_budget(size: int, budget: Optional[int] = None, what: str = "enumeration") -> int:
    """Raise BudgetExceeded if ``size`` elements would exceed the budget; return the budget."""
    limit = resolve_budget(budget)
    if size > limit:
        logger.warning("%s of %d elements refused (budget %d)", what, size, limit)
        raise BudgetExceeded(size, limit, what)
    return limit
