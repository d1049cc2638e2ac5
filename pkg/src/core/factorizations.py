import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.core.errors import EnumerationTooLarge, InvalidCollection, NoSubcollection, NotInMonoid
from src.core.monoid_core import MonoidCore, NumericalMonoid, Rational
from src.utils import config

logger = logging.getLogger(__name__)

_INT32_MAX = np.iinfo(np.int32).max


@dataclass(frozen=True)
class Factorization:
    """Exponent vector over the generators of the ambient monoid."""
    exponents: Tuple[int, ...]

    @property
    def length(self) -> int:
        return sum(self.exponents)

    def value(self, S: NumericalMonoid) -> int:
        return sum(e * g for e, g in zip(self.exponents, S.generators))


@dataclass(frozen=True)
class LengthStats:
    n: int
    max_len: int
    min_len: int
    elasticity: Rational


def _length_table(generators: Sequence[int], upto: int, longest: bool) -> np.ndarray:
    """M (longest=True) or m over [0, upto]; -1 marks non-members.

    Entries are filled in blocks of g_1 consecutive integers: every predecessor
    n - g_i of a block entry lies strictly before the block.
    """
    if upto >= _INT32_MAX:
        raise OverflowError(f"length table of size {upto} does not fit 32-bit lengths")
    missing = -1 if longest else _INT32_MAX
    pick = np.maximum if longest else np.minimum
    table = np.full(upto + 1, missing, dtype=np.int32)
    table[0] = 0
    step = generators[0]
    for lo in range(1, upto + 1, step):
        hi = min(lo + step, upto + 1)
        best = np.full(hi - lo, missing, dtype=np.int32)
        for g in generators:
            if g >= hi:
                break
            src_lo, src_hi = lo - g, hi - g
            offset = max(0, -src_lo)
            prev = table[max(0, src_lo):src_hi]
            candidate = np.where(prev != missing, prev + 1, missing).astype(np.int32)
            best[offset:] = pick(best[offset:], candidate)
        table[lo:hi] = best
    if not longest:
        table[table == _INT32_MAX] = -1
    return table


class LengthTables:
    """Shared read-only max/min length tables of one monoid, built up to the quasilinearity thresholds."""

    def __init__(self, S: NumericalMonoid):
        self.monoid = S
        g1, gk = S.smallest, S.largest
        self.max_threshold = (g1 - 1) * gk
        self.min_threshold = (gk - 1) * S.penultimate
        logger.info(f"🔧 Building length tables for {S} (M up to {self.max_threshold}, m up to {self.min_threshold})")
        self.max_table = _length_table(S.generators, self.max_threshold, longest=True)
        self.min_table = _length_table(S.generators, self.min_threshold, longest=False)
        self._length_bits: List[int] = [1]
        self._bits_lock = threading.Lock()

    @staticmethod
    @lru_cache(maxsize=64)
    def for_monoid(S: NumericalMonoid) -> "LengthTables":
        return LengthTables(S)

    def max_length(self, n: int) -> int:
        if n <= self.max_threshold:
            return int(self.max_table[n])
        step = self.monoid.smallest
        t = (n - self.max_threshold + step - 1) // step
        return int(self.max_table[n - t * step]) + t

    def min_length(self, n: int) -> int:
        if n <= self.min_threshold:
            return int(self.min_table[n])
        step = self.monoid.largest
        t = (n - self.min_threshold + step - 1) // step
        return int(self.min_table[n - t * step]) + t

    def max_lengths(self, ns: np.ndarray) -> np.ndarray:
        """Vectorised max_length; -1 for non-members."""
        return self._quasilinear(ns, self.max_table, self.max_threshold, self.monoid.smallest)

    def min_lengths(self, ns: np.ndarray) -> np.ndarray:
        return self._quasilinear(ns, self.min_table, self.min_threshold, self.monoid.largest)

    @staticmethod
    def _quasilinear(ns: np.ndarray, table: np.ndarray, threshold: int, step: int) -> np.ndarray:
        ns = np.asarray(ns, dtype=np.int64)
        t = np.where(ns > threshold, (ns - threshold + step - 1) // step, 0)
        values = table[ns - t * step].astype(np.int64)
        return np.where(values >= 0, values + t, -1)

    def length_bits(self, n: int) -> int:
        """Bitset of L(n): bit j is set iff some factorization of n has length j."""
        if n > config.LENGTH_SET_LIMIT:
            raise EnumerationTooLarge(
                f"length sets are tabulated up to {config.LENGTH_SET_LIMIT}; {n} requested"
            )
        with self._bits_lock:
            bits = self._length_bits
            gens = self.monoid.generators
            for m in range(len(bits), n + 1):
                acc = 0
                for g in gens:
                    if g > m:
                        break
                    acc |= bits[m - g]
                bits.append(acc << 1)
            return bits[n]


def _enumerate(generators: Sequence[int], n: int) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors of n, descending lexicographically from the largest generator."""
    k = len(generators)
    exps = [0] * k
    if k == 1:
        if n % generators[0] == 0:
            yield (n // generators[0],)
        return

    def rec(i: int, r: int) -> Iterator[Tuple[int, ...]]:
        if i == 1:
            g1, g2 = generators[0], generators[1]
            h = gcd(g1, g2)
            if r % h:
                return
            step = g1 // h
            first = ((r // h) * pow(g2 // h, -1, step)) % step if step > 1 else 0
            top = r // g2
            if first > top:
                return
            last = first + ((top - first) // step) * step
            for a2 in range(last, first - 1, -step):
                exps[1] = a2
                exps[0] = (r - g2 * a2) // g1
                yield tuple(exps)
            return
        g = generators[i]
        for a in range(r // g, -1, -1):
            exps[i] = a
            yield from rec(i - 1, r - a * g)
        exps[i] = 0

    yield from rec(k - 1, n)


class Factorizations:
    """Factorization sets, length sets and max/min lengths of monoid elements."""

    @staticmethod
    def factorizations(S: NumericalMonoid, n: int) -> List[Factorization]:
        """Z(n) in descending lexicographic order from the largest generator; empty iff n is not in S."""
        if n < 0 or not MonoidCore.contains(S, n):
            return []
        if n // S.smallest > config.ENUMERATION_LIMIT:
            raise EnumerationTooLarge(
                f"refusing to enumerate factorizations of {n} (limit {config.ENUMERATION_LIMIT} multiples of {S.smallest})"
            )
        return [Factorization(e) for e in _enumerate(S.generators, n)]

    @staticmethod
    def length_set(S: NumericalMonoid, n: int) -> Set[int]:
        Factorizations._require_member(S, n)
        bits = LengthTables.for_monoid(S).length_bits(n)
        return {j for j in range(bits.bit_length()) if bits >> j & 1}

    @staticmethod
    def max_length(S: NumericalMonoid, n: int) -> int:
        Factorizations._require_member(S, n)
        return LengthTables.for_monoid(S).max_length(n)

    @staticmethod
    def min_length(S: NumericalMonoid, n: int) -> int:
        Factorizations._require_member(S, n)
        return LengthTables.for_monoid(S).min_length(n)

    @staticmethod
    def elasticity(S: NumericalMonoid, n: int) -> Rational:
        """M(n)/m(n); the element 0 has elasticity 1 by convention."""
        Factorizations._require_member(S, n)
        if n == 0:
            return Rational(1)
        tables = LengthTables.for_monoid(S)
        return Rational(tables.max_length(n), tables.min_length(n))

    @staticmethod
    def length_stats(S: NumericalMonoid, n: int) -> LengthStats:
        Factorizations._require_member(S, n)
        tables = LengthTables.for_monoid(S)
        longest, shortest = tables.max_length(n), tables.min_length(n)
        rho = Rational(longest, shortest) if n else Rational(1)
        return LengthStats(n, longest, shortest, rho)

    @staticmethod
    def length_stats_range(S: NumericalMonoid, lo: int, hi: int, workers: Optional[int] = None) -> List[LengthStats]:
        if lo > hi:
            return []
        members = [n for n in range(max(lo, 0), hi + 1) if MonoidCore.contains(S, n)]
        LengthTables.for_monoid(S)  # built once before any worker starts
        workers = config.WORKERS if workers is None else workers

        def stats(n: int) -> LengthStats:
            return Factorizations.length_stats(S, n)

        if workers > 1 and len(members) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(stats, members))
        return [stats(n) for n in members]

    @staticmethod
    def elasticities_up_to(S: NumericalMonoid, bound: int) -> Set[Rational]:
        """{rho(n) : n in S, 1 <= n <= bound}, evaluated in bulk."""
        if bound < 1:
            return set()
        tables = LengthTables.for_monoid(S)
        ns = np.arange(1, bound + 1, dtype=np.int64)
        longest, shortest = tables.max_lengths(ns), tables.min_lengths(ns)
        members = longest >= 0
        longest, shortest = longest[members], shortest[members]
        common = np.gcd(longest, shortest)
        pairs = np.unique(np.stack([longest // common, shortest // common], axis=1), axis=0)
        return {Rational(int(p), int(q)) for p, q in pairs}

    @staticmethod
    def find_length_set(S: NumericalMonoid, target: Iterable[int]) -> Optional[int]:
        """Smallest n with L(n) equal to target, or None.

        Any such n has M(n) = max(target), hence n <= max(target) * g_k, which bounds the scan.
        """
        wanted = set(target)
        if not wanted or min(wanted) < 0:
            return None
        bound = max(wanted) * S.largest
        for n in range(bound + 1):
            if MonoidCore.contains(S, n) and Factorizations.length_set(S, n) == wanted:
                return n
        return None

    @staticmethod
    def find_proper_subcollection(k: int, c: Sequence[int]) -> FrozenSet[int]:
        """Proper index subset T (1-based) whose sum is congruent to the total mod k.

        Two prefix sums s_i = s_j (mod k), i < j, exist by pigeonhole once r >= k;
        dropping positions i+1..j keeps the residue. For k = 0 congruence is equality.
        """
        r = len(c)
        if k < 0 or r < k:
            raise InvalidCollection(f"need k >= 0 and at least k values (k={k}, r={r})")
        seen: Dict[int, int] = {}
        prefix = 0
        for j in range(r + 1):
            if j:
                prefix += c[j - 1]
            key = prefix % k if k else prefix
            if key in seen:
                i = seen[key]
                return frozenset(range(1, i + 1)) | frozenset(range(j + 1, r + 1))
            seen[key] = j
        raise NoSubcollection(f"all prefix sums of {list(c)} are distinct")

    @staticmethod
    def _require_member(S: NumericalMonoid, n: int) -> None:
        if not MonoidCore.contains(S, n):
            raise NotInMonoid(f"{n} is not an element of {S}")
