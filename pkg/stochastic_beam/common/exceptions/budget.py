""" Budget Exception """
from typing import Any


class BudgetException(Exception):
    """Raised when an enumeration or sampling budget is exhausted.

    Attributes:
        partial: Result collected before the budget ran out
    """

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial
