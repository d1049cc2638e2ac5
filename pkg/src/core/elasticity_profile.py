import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from src.core.arithmetical import Arithmetical
from src.core.errors import ConstructionError, IndexOutOfRange, SingleGenerator
from src.core.factorizations import LengthTables
from src.core.monoid_core import MonoidCore, NumericalMonoid, Rational
from src.utils import config

logger = logging.getLogger(__name__)

# Largest residue modulus a tail cover may use
COVER_MODULUS_LIMIT = 1 << 16


@dataclass(frozen=True)
class SequenceRecord:
    """Elements n0 + t * period, t >= 0, whose elasticities are (M0 + t g_k)/(m0 + t g_1)."""
    n0: int
    M0: int
    m0: int
    constant: bool


@dataclass
class ElasticityProfile:
    """R(S) as a finite part plus one increasing sequence per window element."""
    monoid: NumericalMonoid
    base: int
    period: int
    finite_part: Dict[Rational, int]
    sequences: List[SequenceRecord]
    _by_deficit: Dict[int, List[SequenceRecord]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # deficit g_k m0 - g_1 M0 fixes every value of a sequence up to its m0
        index = defaultdict(list)
        g1, gk = self.monoid.smallest, self.monoid.largest
        for record in self.sequences:
            if not record.constant:
                index[gk * record.m0 - g1 * record.M0].append(record)
        self._by_deficit = dict(index)

    @property
    def sup(self) -> Rational:
        return MonoidCore.max_elasticity(self.monoid)


@dataclass(frozen=True)
class ElasticityMembership:
    contained: bool
    witness: Optional[int] = None

    def __bool__(self) -> bool:
        return self.contained


class Outcome(Enum):
    EQUAL = "EQUAL"
    NOT_EQUAL = "NOT_EQUAL"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Alignment:
    """Values of source sequence at t = target sequence at u = alpha t + beta, for t = residue mod modulus, t >= t_start."""
    direction: str
    source_n0: int
    target_n0: int
    alpha: Rational
    beta: Rational
    residue: int
    modulus: int
    t_start: int


@dataclass(frozen=True)
class ComparisonVerdict:
    outcome: Outcome
    witness: Optional[Rational] = None
    checked_bound: int = 0
    certificate: Tuple[Alignment, ...] = ()


class ElasticityProfiles:
    """Exact decomposition of R(S) and comparison of elasticity sets."""

    @staticmethod
    def build_profile(S: NumericalMonoid, workers: Optional[int] = None) -> ElasticityProfile:
        if S.k < 2:
            raise SingleGenerator(f"{S} has a single generator; its elasticity set is {{1}}")
        g1, gk = S.smallest, S.largest
        base, period = S.penultimate * gk, g1 * gk
        frob = MonoidCore.frobenius(S)
        if base <= frob:
            raise ConstructionError(f"window base {base} does not exceed the Frobenius number {frob} of {S}")

        logger.info(f"🔧 Building elasticity profile of {S} (base {base}, period {period})")
        tables = LengthTables.for_monoid(S)
        finite_part = ElasticityProfiles._finite_part(tables, base + period - 1)

        window = np.arange(base, base + period, dtype=np.int64)
        workers = config.WORKERS if workers is None else workers
        chunks = np.array_split(window, max(1, min(workers, period)))

        def lengths(chunk: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return tables.max_lengths(chunk), tables.min_lengths(chunk)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(lengths, chunks))
        else:
            parts = [lengths(chunk) for chunk in chunks]
        longest = np.concatenate([p[0] for p in parts])
        shortest = np.concatenate([p[1] for p in parts])

        sequences = [
            SequenceRecord(int(n0), int(M0), int(m0), constant=int(M0) * g1 == int(m0) * gk)
            for n0, M0, m0 in zip(window, longest, shortest)
        ]
        logger.info(f"✅ Profile of {S} ready: {len(finite_part)} finite values, {len(sequences)} sequences")
        return ElasticityProfile(S, base, period, finite_part, sequences)

    @staticmethod
    def _finite_part(tables: LengthTables, upto: int) -> Dict[Rational, int]:
        """Every elasticity attained by some 1 <= n <= upto, with its smallest witness."""
        ns = np.arange(1, upto + 1, dtype=np.int64)
        longest, shortest = tables.max_lengths(ns), tables.min_lengths(ns)
        members = longest >= 0
        ns, longest, shortest = ns[members], longest[members], shortest[members]
        common = np.gcd(longest, shortest)
        pairs = np.stack([longest // common, shortest // common], axis=1)
        unique, first = np.unique(pairs, axis=0, return_index=True)
        return {Rational(int(p), int(q)): int(ns[i]) for (p, q), i in zip(unique, first)}

    @staticmethod
    def sequence_value(profile: ElasticityProfile, index: int, t: int) -> Rational:
        if not 0 <= index < len(profile.sequences):
            raise IndexOutOfRange(f"sequence index {index} outside [0, {len(profile.sequences)})")
        if t < 0:
            raise IndexOutOfRange(f"t must be nonnegative, got {t}")
        record = profile.sequences[index]
        S = profile.monoid
        return Rational(record.M0 + t * S.largest, record.m0 + t * S.smallest)

    @staticmethod
    def sequence_position(profile: ElasticityProfile, n: int) -> Tuple[int, int]:
        """(index, t) with n = n0 + t * period; n must be at least the base."""
        if n < profile.base:
            raise IndexOutOfRange(f"{n} lies below the window base {profile.base}")
        t, index = divmod(n - profile.base, profile.period)
        return index, t

    @staticmethod
    def contains_elasticity(profile: ElasticityProfile, q: Rational) -> ElasticityMembership:
        q = Rational(q)
        sup = profile.sup
        if q < 1 or q > sup:
            return ElasticityMembership(False)
        if q in profile.finite_part:
            return ElasticityMembership(True, profile.finite_part[q])
        S = profile.monoid
        g1, gk = S.smallest, S.largest
        if q == sup:
            return ElasticityMembership(True, g1 * gk)

        # value(t) = q  <=>  m0 + t g_1 = deficit * den / (g_k den - g_1 num)
        gap = gk * q.denominator - g1 * q.numerator
        step = gap // gcd(g1, q.denominator)  # deficits must be multiples of step
        largest = max(profile._by_deficit, default=0)
        if largest // step < len(profile._by_deficit):
            candidates = range(step, largest + 1, step)
        else:
            candidates = [d for d in profile._by_deficit if d % step == 0]
        best = None
        for deficit in candidates:
            records = profile._by_deficit.get(deficit)
            if not records:
                continue
            target = deficit * q.denominator // gap
            for record in records:
                if record.m0 <= target and (target - record.m0) % g1 == 0:
                    n = record.n0 + (target - record.m0) // g1 * profile.period
                    best = n if best is None else min(best, n)
        if best is None:
            return ElasticityMembership(False)
        return ElasticityMembership(True, best)

    @staticmethod
    def compare_profiles(S1: NumericalMonoid, S2: NumericalMonoid, t_max: Optional[int] = None) -> ComparisonVerdict:
        t_max = config.DEFAULT_T_MAX if t_max is None else t_max
        sup1, sup2 = MonoidCore.max_elasticity(S1), MonoidCore.max_elasticity(S2)
        if sup1 != sup2:
            logger.info(f"⚠️ Accumulation points differ: {sup1} vs {sup2}")
            return ComparisonVerdict(Outcome.NOT_EQUAL, max(sup1, sup2), t_max)

        P1 = _profile(S1)
        P2 = _profile(S2)
        if S1 == S2:
            identity = tuple(
                Alignment(direction, r.n0, r.n0, Rational(1), Rational(0), 0, 1, 0)
                for direction in ("forward", "backward") for r in P1.sequences if not r.constant
            )
            return ComparisonVerdict(Outcome.EQUAL, None, t_max, identity)

        witness = ElasticityProfiles._arithmetical_witness(P1, P2)
        if witness is not None:
            return ComparisonVerdict(Outcome.NOT_EQUAL, witness, t_max)

        missing = ElasticityProfiles._bounded_misses(P1, P2, t_max) | ElasticityProfiles._bounded_misses(P2, P1, t_max)
        if missing:
            return ComparisonVerdict(Outcome.NOT_EQUAL, min(missing), t_max)

        forward = ElasticityProfiles._tail_certificate(P1, P2, t_max, "forward")
        backward = ElasticityProfiles._tail_certificate(P2, P1, t_max, "backward")
        if forward is None or backward is None:
            logger.info(f"⚠️ No complete tail certificate for {S1} vs {S2} within t <= {t_max}")
            return ComparisonVerdict(Outcome.UNKNOWN, None, t_max)
        return ComparisonVerdict(Outcome.EQUAL, None, t_max, tuple(forward + backward))

    @staticmethod
    def _arithmetical_witness(P1: ElasticityProfile, P2: ElasticityProfile) -> Optional[Rational]:
        """Elasticity of a maximal coprime tuple when d and a/k agree but the gcd condition fails."""
        params = [MonoidCore.detect_arithmetical(P.monoid) for P in (P1, P2)]
        if None in params or params[0] == params[1]:
            return None
        A1, A2 = params
        if A1.d != A2.d or A1.a_over_k != A2.a_over_k:
            return None
        if Arithmetical.elasticity_sets_equal_arithmetical(A1, A2):
            return None
        for P, A, other in ((P1, A1, P2), (P2, A2, P1)):
            if gcd(A.a, A.k) < 2:
                continue
            value = Arithmetical.tuple_elasticity(A, Arithmetical.maximal_coprime_tuple(A))
            if ElasticityProfiles.contains_elasticity(P, value) and not ElasticityProfiles.contains_elasticity(other, value):
                logger.info(f"✅ Coprime tuple of {A} gives {value}, absent from {other.monoid}")
                return value
        return None

    @staticmethod
    def _bounded_misses(source: ElasticityProfile, target: ElasticityProfile, t_max: int) -> Set[Rational]:
        """Values of source (finite part and sequences up to t_max) not in R(target)."""
        values = set(source.finite_part)
        for index in range(len(source.sequences)):
            for t in range(t_max + 1):
                values.add(ElasticityProfiles.sequence_value(source, index, t))
        return {q for q in values if not ElasticityProfiles.contains_elasticity(target, q)}

    @staticmethod
    def _tail_certificate(source: ElasticityProfile, target: ElasticityProfile, t_max: int,
                          direction: str) -> Optional[List[Alignment]]:
        """Alignments covering every t >= t0 of every non-constant source sequence, t0 <= t_max."""
        g, g2 = source.monoid.smallest, target.monoid.smallest
        G = source.monoid.largest
        targets = [r for r in target.sequences if not r.constant]
        certificate: List[Alignment] = []
        for record in source.sequences:
            if record.constant:
                continue  # sup is attained in both sets
            deficit = G * record.m0 - g * record.M0
            classes = []
            for other in targets:
                other_deficit = target.monoid.largest * other.m0 - g2 * other.M0
                # D' g^2 t = D g' m0' - D' g m0  (mod D g'^2)
                A = other_deficit * g * g
                B = deficit * g2 * other.m0 - other_deficit * g * record.m0
                N = deficit * g2 * g2
                h = gcd(A, N)
                if B % h:
                    continue
                modulus = N // h
                residue = (B // h) * pow(A // h, -1, modulus) % modulus if modulus > 1 else 0
                t_start = max(0, -(-B // A))
                classes.append(Alignment(direction, record.n0, other.n0, Rational(A, N), Rational(-B, N),
                                         residue, modulus, t_start))
            used = _cover(classes)
            if used is None or used[-1].t_start > t_max:
                return None
            certificate.extend(used)
        return certificate

    @staticmethod
    def to_json_dict(profile: ElasticityProfile) -> dict:
        return {
            "generators": list(profile.monoid.generators),
            "base": profile.base,
            "period": profile.period,
            "finite_part": [[q.numerator, q.denominator, n] for q, n in sorted(profile.finite_part.items())],
            "sequences": [[r.n0, r.M0, r.m0] for r in profile.sequences],
        }


def _cover(classes: List[Alignment]) -> Optional[List[Alignment]]:
    """Classes, by increasing t_start, whose residues jointly cover every t; None if impossible."""
    lcm, covered, used = 1, np.zeros(1, dtype=bool), []
    for cls in sorted(classes, key=lambda c: (c.t_start, c.modulus)):
        grown = lcm * cls.modulus // gcd(lcm, cls.modulus)
        if grown > COVER_MODULUS_LIMIT:
            continue
        if grown != lcm:
            covered = np.tile(covered, grown // lcm)
            lcm = grown
        if covered[cls.residue::cls.modulus].all():
            continue
        covered[cls.residue::cls.modulus] = True
        used.append(cls)
        if covered.all():
            return used
    return None


@lru_cache(maxsize=32)
def _profile(S: NumericalMonoid) -> ElasticityProfile:
    return ElasticityProfiles.build_profile(S)
