"""
The interlacing predicate and the pencil f + alpha*g.

Interlacing is decided from the definition: the weak chain
r_1 <= s_1 <= r_2 <= ... <= s_(n-1) <= r_n over exactly isolated roots.
Equal roots are certified through gcd(f, g), never through a tolerance.
The pencil scan only falsifies: a finite alpha sample can refute
"f + alpha*g is real-rooted for every alpha", it can never prove it.
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Optional

from interlace_checker.errors import DegreeMismatchError, ZeroPolynomialError
from interlace_checker.helpers.rng import SplitMix64
from interlace_checker.poly_core import Polynomial, format_rational, lin_comb, poly_gcd
from interlace_checker.real_roots import (
    RootIntervals, bisect_once, build_sturm, count_roots_in, is_real_rooted, isolate_roots,
)

logger = logging.getLogger(__name__)

DEFAULT_RANDOM_ALPHAS = 64
ALPHA_RANDOM_BOUND = 10 ** 4
ALPHA_MAX_EXPONENT = 10


class InterlaceVerdict(str, Enum):
    INTERLACES = 'Interlaces'
    DOES_NOT_INTERLACE = 'DoesNotInterlace'
    DEGREE_MISMATCH = 'DegreeMismatch'
    NOT_REAL_ROOTED = 'NotRealRooted'


class Consistency(str, Enum):
    CONSISTENT = 'Consistent'
    CONSISTENT_UNFALSIFIED = 'ConsistentUnfalsified'
    INCONSISTENT = 'Inconsistent'


@dataclass(frozen=True)
class ChainEntry:
    label: str  # r_k or s_k, 1-based
    owner: str  # 'f' or 'g'
    lo: Fraction
    hi: Fraction

    def to_json(self):
        return {
            'label': self.label,
            'owner': self.owner,
            'lo': format_rational(self.lo),
            'hi': format_rational(self.hi),
        }


@dataclass(frozen=True)
class InterlaceReport:
    verdict: InterlaceVerdict
    chain_certificate: Optional[tuple] = None
    failure_witness: Optional[tuple] = None  # (k of s_k, index of the broken link in the chain)
    failure_detail: Optional[str] = None
    strict: bool = False
    not_real_rooted: tuple = ()
    leading_signs: Optional[tuple] = None

    @property
    def interlaces(self):
        return self.verdict == InterlaceVerdict.INTERLACES

    @property
    def opposite_leading_signs(self):
        return self.leading_signs is not None and self.leading_signs[0] != self.leading_signs[1]

    def to_json(self):
        return {
            'verdict': self.verdict.value,
            'chain_certificate': None if self.chain_certificate is None else [
                entry.to_json() for entry in self.chain_certificate
            ],
            'failure_witness': None if self.failure_witness is None else list(self.failure_witness),
            'failure_detail': self.failure_detail,
            'strict': self.strict,
            'not_real_rooted': list(self.not_real_rooted),
            'leading_signs': None if self.leading_signs is None else list(self.leading_signs),
            'opposite_leading_signs': self.opposite_leading_signs,
        }


@dataclass(frozen=True)
class PencilReport:
    alphas_tested: tuple
    witness: Optional[Fraction]
    all_real: bool
    failure_count: int = 0

    def to_json(self):
        return {
            'alphas_tested': [format_rational(a) for a in self.alphas_tested],
            'witness': None if self.witness is None else format_rational(self.witness),
            'all_real': self.all_real,
            'failure_count': self.failure_count,
        }


@dataclass(frozen=True)
class CrossCheckReport:
    consistency: Consistency
    interlace: InterlaceReport
    pencil: PencilReport
    details: Optional[str] = None

    @property
    def is_consistent(self):
        return self.consistency != Consistency.INCONSISTENT

    def to_json(self):
        return {
            'consistency': self.consistency.value,
            'details': self.details,
            'interlace': self.interlace.to_json(),
            'pencil': self.pencil.to_json(),
        }


def _sign(value):
    return (value > 0) - (value < 0)


class _RootComparator:
    """Orders a root of f against a root of g, refining their intervals on demand."""

    def __init__(self, roots_f: RootIntervals, roots_g: RootIntervals):
        self.__f = roots_f.poly
        self.__g = roots_g.poly
        self.__f_intervals = list(roots_f.intervals)
        self.__g_intervals = list(roots_g.intervals)
        self.__cache = {}

        common = poly_gcd(self.__f, self.__g)
        self.__common = build_sturm(common) if common.degree > 0 else None

    def f_interval(self, i):
        return self.__f_intervals[i]

    def g_interval(self, j):
        return self.__g_intervals[j]

    def compare(self, i, j):
        """Sign of (distinct root i of f) - (distinct root j of g)."""
        if (i, j) not in self.__cache:
            self.__cache[(i, j)] = self.__compare(i, j)
        return self.__cache[(i, j)]

    def __shared(self, i, j):
        # A gcd root inside both intervals is the root of f and the root of g there.
        if self.__common is None:
            return False
        lo = max(self.__f_intervals[i][0], self.__g_intervals[j][0])
        hi = min(self.__f_intervals[i][1], self.__g_intervals[j][1])
        return lo < hi and count_roots_in(self.__common, lo, hi) > 0

    def __compare(self, i, j):
        if self.__shared(i, j):
            return 0
        while True:
            f_lo, f_hi = self.__f_intervals[i]
            g_lo, g_hi = self.__g_intervals[j]
            if f_hi <= g_lo:
                return -1
            if g_hi <= f_lo:
                return 1
            self.__f_intervals[i] = bisect_once(self.__f, f_lo, f_hi)
            self.__g_intervals[j] = bisect_once(self.__g, g_lo, g_hi)


def interlaces_by_roots(roots_f: RootIntervals, roots_g: RootIntervals, strict=False) -> InterlaceReport:
    r = roots_f.expanded()
    s = roots_g.expanded()
    if len(r) != len(s) + 1:
        return InterlaceReport(verdict=InterlaceVerdict.DEGREE_MISMATCH, strict=strict)

    comparator = _RootComparator(roots_f, roots_g)
    chain = []
    for k in range(len(r)):
        chain.append(('f', k))
        if k < len(s):
            chain.append(('g', k))

    def label(entry):
        owner, k = entry
        return f'{"r" if owner == "f" else "s"}_{k + 1}'

    for link, (left, right) in enumerate(zip(chain, chain[1:])):
        if left[0] == 'f':
            # r_k against s_k: need r_k <= s_k
            order = comparator.compare(r[left[1]], s[right[1]])
            k = right[1] + 1
        else:
            # s_k against r_(k+1): need s_k <= r_(k+1), i.e. r - s >= 0
            order = -comparator.compare(r[right[1]], s[left[1]])
            k = left[1] + 1

        if order > 0 or (strict and order == 0):
            relation = '>' if order > 0 else '='
            detail = f'{label(left)} {relation} {label(right)}'
            logger.debug('Chain broken at link %d: %s', link, detail)
            return InterlaceReport(
                verdict=InterlaceVerdict.DOES_NOT_INTERLACE,
                failure_witness=(k, link),
                failure_detail=detail,
                strict=strict,
            )

    certificate = []
    for entry in chain:
        owner, k = entry
        lo, hi = comparator.f_interval(r[k]) if owner == 'f' else comparator.g_interval(s[k])
        certificate.append(ChainEntry(label=label(entry), owner=owner, lo=lo, hi=hi))
    return InterlaceReport(
        verdict=InterlaceVerdict.INTERLACES,
        chain_certificate=tuple(certificate),
        strict=strict,
    )


def interlaces_exact(f: Polynomial, g: Polynomial, strict=False) -> InterlaceReport:
    """
    Decides interlacing of f (degree n) and g (degree n - 1) from the definition.

    Real-rootedness of f and g is a precondition of the definition; a pair
    failing it gets the NotRealRooted verdict naming the offender rather
    than DoesNotInterlace. Common roots are certified equal through gcd(f, g).
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError('Interlacing is undefined for the zero polynomial')

    leading_signs = (_sign(f.leading), _sign(g.leading))
    if f.degree != g.degree + 1:
        return InterlaceReport(
            verdict=InterlaceVerdict.DEGREE_MISMATCH, strict=strict, leading_signs=leading_signs,
        )

    not_real_rooted = tuple(name for name, p in (('f', f), ('g', g)) if not is_real_rooted(p))
    if not_real_rooted:
        return InterlaceReport(
            verdict=InterlaceVerdict.NOT_REAL_ROOTED,
            strict=strict,
            not_real_rooted=not_real_rooted,
            leading_signs=leading_signs,
        )

    report = interlaces_by_roots(isolate_roots(f), isolate_roots(g), strict=strict)
    return replace(report, leading_signs=leading_signs)


def default_alphas(seed=0, count=DEFAULT_RANDOM_ALPHAS):
    """0, +-1/2, +-1, +-2, ..., +-2^10, then `count` seeded random rationals; duplicates dropped."""
    grid = [Fraction(0), Fraction(1, 2), Fraction(-1, 2)]
    for exponent in range(ALPHA_MAX_EXPONENT + 1):
        grid += [Fraction(2 ** exponent), Fraction(-2 ** exponent)]

    rng = SplitMix64(seed)
    grid += [rng.rational(ALPHA_RANDOM_BOUND) for _ in range(count)]
    return tuple(dict.fromkeys(grid))


def pencil_scan(f: Polynomial, g: Polynomial, alphas=None) -> PencilReport:
    if f.degree != g.degree + 1:
        raise DegreeMismatchError(f'Pencil needs deg f = deg g + 1, got {f.degree} and {g.degree}')

    alphas = default_alphas() if alphas is None else tuple(Fraction(a) for a in alphas)
    witness = None
    failure_count = 0
    for alpha in alphas:
        if not is_real_rooted(lin_comb(f, g, alpha)):
            failure_count += 1
            if witness is None:
                witness = alpha
                logger.debug('f + (%s)g is not real-rooted', alpha)

    return PencilReport(
        alphas_tested=alphas,
        witness=witness,
        all_real=witness is None,
        failure_count=failure_count,
    )


def hko_crosscheck(f: Polynomial, g: Polynomial, alphas=None) -> CrossCheckReport:
    """
    Runs the definition check and the pencil scan side by side.

    Interlacing with a non-real pencil member is a contradiction. A pair that
    does not interlace but has no witness in the sample is only unfalsified.
    """
    if f.degree != g.degree + 1:
        raise DegreeMismatchError(f'Pencil needs deg f = deg g + 1, got {f.degree} and {g.degree}')

    interlace = interlaces_exact(f, g)
    pencil = pencil_scan(f, g, alphas)

    if interlace.interlaces and not pencil.all_real:
        consistency = Consistency.INCONSISTENT
        details = f'Roots interlace but f + ({pencil.witness})g is not real-rooted'
    elif interlace.interlaces or pencil.witness is not None:
        consistency = Consistency.CONSISTENT
        details = None
    else:
        consistency = Consistency.CONSISTENT_UNFALSIFIED
        details = f'{interlace.verdict.value} but no witness among {len(pencil.alphas_tested)} sampled alphas'

    return CrossCheckReport(consistency=consistency, interlace=interlace, pencil=pencil, details=details)
