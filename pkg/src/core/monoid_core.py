import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, List, Optional, Tuple

import numpy as np

from src.core.errors import (
    EmptyInput,
    GeneratorTooLarge,
    MonoidError,
    NonCoprime,
    NonMinimalGenerators,
    NotArithmetical,
    ZeroGenerator,
)
from src.utils import config

logger = logging.getLogger(__name__)

# Elasticities are always exact reduced fractions
Rational = Fraction


@dataclass(frozen=True)
class NumericalMonoid:
    """A numerical monoid given by its minimal generating set g_1 < ... < g_k."""
    generators: Tuple[int, ...]

    def __post_init__(self):
        gens = self.generators
        if not gens:
            raise EmptyInput("a numerical monoid needs at least one generator")
        if any(b <= a for a, b in zip(gens, gens[1:])):
            raise MonoidError(f"generators must be strictly increasing: {list(gens)}")
        if gens[0] < 1:
            raise ZeroGenerator("generators must be positive")
        if reduce(gcd, gens) != 1:
            raise NonCoprime(f"gcd of {list(gens)} is not 1")
        if gens[-1] > config.MAX_GENERATOR:
            raise GeneratorTooLarge(f"generator {gens[-1]} exceeds the configured cap {config.MAX_GENERATOR}")
        table = np.zeros(gens[-1] + 1, dtype=bool)
        table[0] = True
        for g in gens:
            if table[g]:
                raise NonMinimalGenerators(f"{g} is a sum of smaller generators in {list(gens)}")
            _add_generator(table, g)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def smallest(self) -> int:
        return self.generators[0]

    @property
    def largest(self) -> int:
        return self.generators[-1]

    @property
    def penultimate(self) -> int:
        """g_{k-1}, or g_k itself for a single generator."""
        return self.generators[-2] if len(self.generators) > 1 else self.generators[-1]

    def __str__(self) -> str:
        return "<" + ",".join(str(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class ArithmeticalParams:
    """Parameters (a, d, k) of the monoid <a, a+d, ..., a+kd>."""
    a: int
    d: int
    k: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1 or self.k < 1:
            raise NotArithmetical(f"a, d, k must be positive: {self}")
        if gcd(self.a, self.d) != 1:
            raise NotArithmetical(f"gcd(a, d) must be 1: {self}")
        if self.k >= self.a:
            raise NotArithmetical(f"k must be smaller than a: {self}")

    def generators(self) -> List[int]:
        return [self.a + i * self.d for i in range(self.k + 1)]

    def monoid(self) -> NumericalMonoid:
        return NumericalMonoid(tuple(self.generators()))

    @property
    def largest(self) -> int:
        return self.a + self.k * self.d

    @property
    def a_over_k(self) -> Rational:
        return Rational(self.a, self.k)

    @property
    def sup(self) -> Rational:
        return Rational(self.largest, self.a)


def _add_generator(table: np.ndarray, g: int) -> None:
    """Close a reachability table under adding g (unbounded knapsack step)."""
    size = len(table)
    for lo in range(g, size, g):
        hi = min(lo + g, size)
        table[lo:hi] |= table[lo - g:hi - g]


def reachability_table(generators: Iterable[int], upto: int) -> np.ndarray:
    """Boolean table over [0, upto]: entry n is True iff n is a combination of generators."""
    table = np.zeros(upto + 1, dtype=bool)
    table[0] = True
    for g in generators:
        if g <= upto:
            _add_generator(table, g)
    return table


@lru_cache(maxsize=128)
def _membership(generators: Tuple[int, ...]) -> Tuple[np.ndarray, int]:
    """Reachability table up to Schur's bound and the Frobenius number it reveals."""
    if len(generators) == 1:
        return np.ones(1, dtype=bool), -1
    bound = (generators[0] - 1) * (generators[-1] - 1)
    table = reachability_table(generators, bound)
    gaps = np.flatnonzero(~table)
    frobenius = int(gaps[-1]) if len(gaps) else -1
    logger.debug(f"🔧 Membership table for {list(generators)} built up to {bound}, Frobenius {frobenius}")
    return table, frobenius


class MonoidCore:
    """Construction, validation and basic arithmetic of numerical monoids."""

    @staticmethod
    def new_monoid(raw: Iterable[int]) -> NumericalMonoid:
        """Normalize raw generators: sort, dedupe and drop non-minimal ones."""
        values = list(raw)
        if not values:
            raise EmptyInput("no generators given")
        if any(v < 1 for v in values):
            raise ZeroGenerator(f"generators must be positive integers: {values}")
        if reduce(gcd, values) != 1:
            raise NonCoprime(f"gcd of {sorted(set(values))} is {reduce(gcd, values)}, not 1")
        candidates = sorted(set(values))
        if candidates[-1] > config.MAX_GENERATOR:
            raise GeneratorTooLarge(
                f"generator {candidates[-1]} exceeds the configured cap {config.MAX_GENERATOR}"
            )
        if candidates[0] == 1:
            return NumericalMonoid((1,))

        table = np.zeros(candidates[-1] + 1, dtype=bool)
        table[0] = True
        kept = []
        for c in candidates:
            if table[c]:
                continue  # sum of smaller generators
            kept.append(c)
            _add_generator(table, c)
        return NumericalMonoid(tuple(kept))

    @staticmethod
    def is_minimal_generator_set(raw: Iterable[int]) -> bool:
        values = sorted(set(raw))
        return list(MonoidCore.new_monoid(values).generators) == values

    @staticmethod
    def detect_arithmetical(S: NumericalMonoid) -> Optional[ArithmeticalParams]:
        gens = S.generators
        if len(gens) < 2:
            return None
        a, d = gens[0], gens[1] - gens[0]
        k = len(gens) - 1
        if any(g != a + i * d for i, g in enumerate(gens)):
            return None
        if gcd(a, d) != 1 or k >= a:
            return None
        return ArithmeticalParams(a, d, k)

    @staticmethod
    def contains(S: NumericalMonoid, n: int) -> bool:
        if n < 0:
            return False
        table, frobenius = _membership(S.generators)
        if n > frobenius:
            return True
        return bool(table[n])

    @staticmethod
    def frobenius(S: NumericalMonoid) -> int:
        """Largest integer outside S; -1 for <1>, which contains every nonnegative integer."""
        return _membership(S.generators)[1]

    @staticmethod
    def max_elasticity(S: NumericalMonoid) -> Rational:
        return Rational(S.largest, S.smallest)
