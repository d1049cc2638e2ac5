import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import List, Tuple, Union

from src.core.errors import (
    ConstructionError,
    IncompatibleParams,
    InvalidElasticities,
    InvalidTuple,
    NonIntegerResult,
    NotApplicable,
    NotArithmetical,
    NotInMonoid,
    SOutOfRange,
)
from src.core.monoid_core import ArithmeticalParams, MonoidCore, NumericalMonoid, Rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ElasticityTuple:
    """A point (c, s, x) of the parametrization of R(S); slice ck+s, row x."""
    c: int
    s: int
    x: int
    minimal: bool = field(default=False, compare=False)
    maximal: bool = field(default=False, compare=False)

    def as_triple(self) -> Tuple[int, int, int]:
        return (self.c, self.s, self.x)


class TupleRelation(Enum):
    LESS = "<"
    LESS_EQUAL = "<="
    EQUAL = "="
    GREATER_EQUAL = ">="
    GREATER = ">"


@dataclass(frozen=True)
class TupleComparison:
    """How rho(left) relates to rho(right), and which argument predicts it."""
    relation: TupleRelation
    basis: str  # identity, slice, row or exact
    left: Rational
    right: Rational

    def holds(self) -> bool:
        checks = {
            TupleRelation.LESS: self.left < self.right,
            TupleRelation.LESS_EQUAL: self.left <= self.right,
            TupleRelation.EQUAL: self.left == self.right,
            TupleRelation.GREATER_EQUAL: self.left >= self.right,
            TupleRelation.GREATER: self.left > self.right,
        }
        return checks[self.relation]


class Arithmetical:
    """Elasticity tuples and the elasticity-set machinery of <a, a+d, ..., a+kd>."""

    @staticmethod
    def tuple_bounds(P: ArithmeticalParams, s: int) -> Tuple[int, int]:
        """Row range [ceil(sa/k), floor((sa + 2(a-1))/k) + d] of the tuples with this s."""
        if not 0 <= s < P.k:
            raise SOutOfRange(f"s must satisfy 0 <= s < {P.k}, got {s}")
        x_min = -(-s * P.a // P.k)
        x_max = (s * P.a + 2 * (P.a - 1)) // P.k + P.d
        assert x_min <= x_max
        return x_min, x_max

    @staticmethod
    def slice_of(P: ArithmeticalParams, t: ElasticityTuple) -> int:
        return t.c * P.k + t.s

    @staticmethod
    def make_tuple(P: ArithmeticalParams, c: int, s: int, x: int) -> ElasticityTuple:
        """Validated tuple with its minimal/maximal flags filled in."""
        if c < 0:
            raise InvalidTuple(f"c must be nonnegative, got {c}")
        if not 0 <= s < P.k:
            raise InvalidTuple(f"s must satisfy 0 <= s < {P.k}, got {s}")
        x_min, x_max = Arithmetical.tuple_bounds(P, s)
        if not x_min <= x <= x_max:
            raise InvalidTuple(f"row {x} outside [{x_min}, {x_max}] for s={s} in {P}")
        return ElasticityTuple(c, s, x, minimal=x == x_min, maximal=x == x_max)

    @staticmethod
    def enumerate_tuples(P: ArithmeticalParams, max_slice: int) -> List[ElasticityTuple]:
        tuples = []
        for slice_index in range(max_slice + 1):
            c, s = divmod(slice_index, P.k)
            x_min, x_max = Arithmetical.tuple_bounds(P, s)
            for x in range(x_min, x_max + 1):
                tuples.append(ElasticityTuple(c, s, x, minimal=x == x_min, maximal=x == x_max))
        return tuples

    @staticmethod
    def tuple_elasticity(P: ArithmeticalParams, t: ElasticityTuple) -> Rational:
        """(c(a+kd) + x + sd) / (ca + x), with the zero tuple mapped to 1."""
        Arithmetical.make_tuple(P, t.c, t.s, t.x)
        denominator = t.c * P.a + t.x
        if denominator == 0:
            return Rational(1)
        return Rational(t.c * P.largest + t.x + t.s * P.d, denominator)

    @staticmethod
    def witness_element(P: ArithmeticalParams, t: ElasticityTuple) -> int:
        """An element n with rho(n) equal to the tuple's elasticity.

        xk - sa is split as y' + y'' with y' < a and y'' < a+kd, taking y'' as small as possible.
        """
        Arithmetical.make_tuple(P, t.c, t.s, t.x)
        spread = t.x * P.k - t.s * P.a
        y_max = min(P.a - 1, spread)
        y_min = spread - y_max
        assert 0 <= y_min < P.largest
        return (t.c * P.largest + t.x + t.s * P.d) * P.a + y_max * P.d

    @staticmethod
    def compare_tuples(P: ArithmeticalParams, t1: ElasticityTuple, t2: ElasticityTuple) -> TupleComparison:
        left = Arithmetical.tuple_elasticity(P, t1)
        right = Arithmetical.tuple_elasticity(P, t2)
        if t1 == t2:
            return TupleComparison(TupleRelation.EQUAL, "identity", left, right)
        if t1.x == t2.x and t1.c == t2.c:
            # larger slice, larger elasticity; across different c this can fail, e.g. (0,2,5) vs (1,0,5) in <7,12,17,22>
            if t1.s <= t2.s:
                return TupleComparison(TupleRelation.LESS_EQUAL, "slice", left, right)
            return TupleComparison(TupleRelation.GREATER_EQUAL, "slice", left, right)
        if (t1.c, t1.s) == (t2.c, t2.s):
            # lower row, larger elasticity
            if t1.x <= t2.x:
                return TupleComparison(TupleRelation.GREATER_EQUAL, "row", left, right)
            return TupleComparison(TupleRelation.LESS_EQUAL, "row", left, right)
        if left < right:
            return TupleComparison(TupleRelation.LESS, "exact", left, right)
        if left > right:
            return TupleComparison(TupleRelation.GREATER, "exact", left, right)
        return TupleComparison(TupleRelation.EQUAL, "exact", left, right)

    @staticmethod
    def recover_d(f: Rational, g: Rational) -> int:
        """d = (g-1)(f-1)/(g-f) from the second and third smallest elasticities."""
        f, g = Rational(f), Rational(g)
        if not 1 < f < g:
            raise InvalidElasticities(f"need 1 < f < g, got f={f}, g={g}")
        value = (g - 1) * (f - 1) / (g - f)
        if value.denominator != 1 or value <= 0:
            raise NonIntegerResult(f"(g-1)(f-1)/(g-f) = {value} is not a positive integer")
        return int(value)

    @staticmethod
    def three_minimal_elasticities(S: Union[NumericalMonoid, ArithmeticalParams]) -> Tuple[Rational, Rational, Rational]:
        """The three smallest values of R(S), read off the tuples of slices 0..2k+2."""
        P = Arithmetical._params(S)
        values = sorted({Arithmetical.tuple_elasticity(P, t)
                         for t in Arithmetical.enumerate_tuples(P, 2 * P.k + 2)})
        return values[0], values[1], values[2]

    @staticmethod
    def step_closed_form(P: ArithmeticalParams) -> Tuple[Rational, Rational]:
        """Second and third smallest elasticities (B+d)/B and (B-1+d)/(B-1), B = floor((3a-2)/k) + d; k >= 2 only."""
        if P.k < 2:
            raise NotApplicable("the closed form needs k >= 2")
        B = (3 * P.a - 2) // P.k + P.d
        return Rational(B + P.d, B), Rational(B - 1 + P.d, B - 1)

    @staticmethod
    def recover_a_over_k(sup: Rational, d: int) -> Rational:
        sup = Rational(sup)
        if sup <= 1:
            raise InvalidElasticities(f"sup R(S) must exceed 1, got {sup}")
        return Rational(d) / (sup - 1)

    @staticmethod
    def maximal_coprime_tuple(P: ArithmeticalParams) -> ElasticityTuple:
        """A maximal tuple (c, s, x) with a'(s+2) = 1 mod k' and gcd(ca + x, ck + s) = 1.

        The integer b is the smallest in magnitude with b(sa' - xk') > px + qs.
        """
        g = gcd(P.a, P.k)
        if g < 2:
            raise NotApplicable(f"gcd(a, k) = 1 for {P}")
        a1, k1 = P.a // g, P.k // g
        s = next(v for v in range(k1) if (a1 * (v + 2)) % k1 == 1 % k1)
        x = ((s + 2) * a1 - 1) // k1 + P.d
        p = pow(a1, -1, k1) if k1 > 1 else 0
        q = (1 - p * a1) // k1
        slope = s * a1 - x * k1
        bound = Rational(p * x + q * s, slope)  # b < bound since slope < 0
        b_max = math.ceil(bound) - 1
        b = 0 if b_max >= 0 else b_max
        m = 1 - (p + b * k1) * x - (q - b * a1) * s
        c, r = divmod(m, g)
        result = Arithmetical.make_tuple(P, c, s + r * k1, x + r * a1)

        if m <= 0 or not result.maximal:
            raise ConstructionError(f"tuple {result.as_triple()} for {P} is not maximal (m={m})")
        if (a1 * (result.s + 2) - 1) % k1:
            raise ConstructionError(f"tuple {result.as_triple()} breaks a'(s+2) = 1 mod k'")
        if gcd(result.c * P.a + result.x, result.c * P.k + result.s) != 1:
            raise ConstructionError(f"tuple {result.as_triple()} has gcd(ca + x, ck + s) > 1")
        logger.debug(f"✅ Maximal coprime tuple for {P}: {result.as_triple()} (b={b}, m={m})")
        return result

    @staticmethod
    def phi_embed(p_from: ArithmeticalParams, p_to: ArithmeticalParams, t: ElasticityTuple) -> ElasticityTuple:
        """Map a tuple of <a', ...> to one of <ga', ...> (k = gk') with the same elasticity."""
        if p_from.d != p_to.d or p_to.a % p_from.a:
            raise IncompatibleParams(f"{p_from} does not embed into {p_to}")
        g = p_to.a // p_from.a
        if g < 2 or p_to.k != g * p_from.k:
            raise IncompatibleParams(f"{p_to} is not a g-fold scaling of {p_from} with g >= 2")
        Arithmetical.make_tuple(p_from, t.c, t.s, t.x)
        quotient, r = divmod(t.c, g)
        image = Arithmetical.make_tuple(p_to, quotient, t.s + r * p_from.k, t.x + r * p_from.a)
        if Arithmetical.tuple_elasticity(p_to, image) != Arithmetical.tuple_elasticity(p_from, t):
            raise ConstructionError(f"embedding of {t.as_triple()} changed its elasticity")
        return image

    @staticmethod
    def elasticity_sets_equal_arithmetical(P1: ArithmeticalParams, P2: ArithmeticalParams) -> bool:
        """Decide R(S1) = R(S2), recovering d and a/k from elasticity data."""
        if P1 == P2:
            return True
        recovered = []
        for P in (P1, P2):
            _, f, g = Arithmetical.three_minimal_elasticities(P)
            d = Arithmetical.recover_d(f, g)
            recovered.append((d, Arithmetical.recover_a_over_k(P.sup, d)))
        if recovered[0] != recovered[1]:
            return False
        return gcd(P1.a, P1.k) >= 2 and gcd(P2.a, P2.k) >= 2

    @staticmethod
    def length_sets_equal_arithmetical(P1: ArithmeticalParams, P2: ArithmeticalParams) -> bool:
        """Decide L(S1) = L(S2) from the parameters directly."""
        if P1 == P2:
            return True
        return (P1.d == P2.d
                and P1.a * P2.k == P2.a * P1.k
                and gcd(P1.a, P1.k) >= 2
                and gcd(P2.a, P2.k) >= 2)

    @staticmethod
    def arithmetical_max_length(P: ArithmeticalParams, n: int) -> int:
        """M(n) = x' for n = x'a + y'd, 0 <= y' < a."""
        Arithmetical._require_member(P, n)
        y = (n * pow(P.d, -1, P.a)) % P.a
        return (n - y * P.d) // P.a

    @staticmethod
    def arithmetical_min_length(P: ArithmeticalParams, n: int) -> int:
        """m(n) = x'' for n = x''(a+kd) - y''d, 0 <= y'' < a+kd."""
        Arithmetical._require_member(P, n)
        top = P.largest
        y = (-n * pow(P.d, -1, top)) % top
        return (n + y * P.d) // top

    @staticmethod
    def element_tuple(P: ArithmeticalParams, n: int) -> ElasticityTuple:
        """The tuple attained by n: M(n) - m(n) = (ck+s)d and x = m(n) - ca."""
        longest = Arithmetical.arithmetical_max_length(P, n)
        shortest = Arithmetical.arithmetical_min_length(P, n)
        spread, rest = divmod(longest - shortest, P.d)
        if rest:
            raise ConstructionError(f"d does not divide M(n) - m(n) for n={n} in {P}")
        c, s = divmod(spread, P.k)
        return Arithmetical.make_tuple(P, c, s, shortest - c * P.a)

    @staticmethod
    def slice_bound(P: ArithmeticalParams, bound: int) -> int:
        """Largest slice attained by an element 1 <= n <= bound; tuples up to it cover rho over that range."""
        S = P.monoid()
        slices = [
            Arithmetical.slice_of(P, Arithmetical.element_tuple(P, n))
            for n in range(1, bound + 1)
            if MonoidCore.contains(S, n)
        ]
        return max(slices, default=0)

    @staticmethod
    def _params(S: Union[NumericalMonoid, ArithmeticalParams]) -> ArithmeticalParams:
        if isinstance(S, ArithmeticalParams):
            return S
        P = MonoidCore.detect_arithmetical(S)
        if P is None:
            raise NotArithmetical(f"{S} is not generated by an arithmetic sequence")
        return P

    @staticmethod
    def _require_member(P: ArithmeticalParams, n: int) -> None:
        if not MonoidCore.contains(P.monoid(), n):
            raise NotInMonoid(f"{n} is not an element of {P.monoid()}")
