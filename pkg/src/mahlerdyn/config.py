"""Resource budgets shared across the package.

All certified computations escalate working precision geometrically; the
ceiling turns a potential non-termination into a clean BudgetExhausted.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Budgets:
    precision_ceiling: int = 2**16
    max_iter: int = 24
    degree_cap: int = 64
    subset_cap: int = 2000
    exact_subset_threshold: int = 160
    prime_budget: int = 100


DEFAULT_BUDGETS = Budgets()
