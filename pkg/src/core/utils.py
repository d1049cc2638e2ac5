from fractions import Fraction
from typing import List

from src.core.errors import EmptyInput, MonoidError


class Utils:
    """Utility functions for parsing input and formatting exact values."""

    @staticmethod
    def parse_generators(text: str) -> List[int]:
        """Parse a comma-separated generator list such as '7,12,17,22'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise EmptyInput(f"no generators in '{text}'")
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise MonoidError(f"generators must be integers: '{text}'")

    @staticmethod
    def format_rational(value: Fraction) -> str:
        """Always p/q, also for integers (5 -> '5/1')."""
        value = Fraction(value)
        return f"{value.numerator}/{value.denominator}"
