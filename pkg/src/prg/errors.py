"""Exception types and the shared word budget."""
import os

DEFAULT_WORD_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """A computation needed more words or columns than the configured budget."""


class GradingError(ValueError):
    """A polynomial or generator image is not homogeneous where it must be."""


class WindowError(ValueError):
    """An evaluation left the degree window of a module family."""


def word_budget(explicit: int | None = None) -> int:
    """Explicit value, else ``PRG_WORD_BUDGET``, else the default."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("PRG_WORD_BUDGET")
    return int(env) if env else DEFAULT_WORD_BUDGET
