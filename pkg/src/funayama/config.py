"""Capacity budgets. ``FUNAYAMA_BUDGET`` overrides the join-evaluation budget."""

import os

DEFAULT_BUDGET = 2**20
ORACLE_MAX_PAIRS = 14
PRESERVATION_MAX_SIZE = 12
ENUMERATION_MAX_SIZE = 7
PROBLEM1_MAX_ATOMS = 6
CLI_MAX_PAIRS = 40
CLI_MAX_GENERATORS = 20


def default_budget() -> int:
    raw = os.environ.get("FUNAYAMA_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"FUNAYAMA_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("FUNAYAMA_BUDGET must be positive")
    return value


def resolve_budget(budget=None) -> int:
    return default_budget() if budget is None else int(budget)
