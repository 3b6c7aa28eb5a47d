"""
Certified real-root counting and isolation with Sturm chains.

All counting happens on the squarefree part of the input; multiplicities
come from the gcd tower p, gcd(p, p'), ... Interval endpoints are never
roots of the squarefree part, so every isolating interval is open and
contains its root strictly inside.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from interlace_checker.errors import EndpointRootError, ZeroPolynomialError
from interlace_checker.poly_core import (
    Polynomial, derivative, format_rational, parse_rational, poly_gcd, sign_at, squarefree_part,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SturmChain:
    chain: tuple  # p0 squarefree, p1 = p0', p(i+1) = -rem(p(i-1), p(i))

    @property
    def head(self) -> Polynomial:
        return self.chain[0]

    def __len__(self):
        return len(self.chain)


@dataclass(frozen=True)
class RootIntervals:
    intervals: tuple  # ((lo, hi), ...) sorted, each isolating one distinct root
    multiplicities: tuple
    poly: Polynomial  # monic squarefree part the intervals isolate roots of
    degree: int  # degree of the polynomial the roots were taken from

    def __len__(self):
        return len(self.intervals)

    @property
    def total_multiplicity(self):
        return sum(self.multiplicities)

    def is_complete(self):
        """True iff the source polynomial has all its roots real."""
        return self.total_multiplicity == self.degree

    def expanded(self):
        """Interval indices repeated by multiplicity, in root order."""
        return [k for k, mult in enumerate(self.multiplicities) for _ in range(mult)]

    def to_json(self):
        return [
            {'lo': format_rational(lo), 'hi': format_rational(hi), 'mult': mult}
            for (lo, hi), mult in zip(self.intervals, self.multiplicities)
        ]

    @classmethod
    def from_json(cls, data, poly, degree=None, source=None):
        intervals = tuple(
            (parse_rational(item['lo'], source, f'[{k}].lo'), parse_rational(item['hi'], source, f'[{k}].hi'))
            for k, item in enumerate(data)
        )
        multiplicities = tuple(int(item['mult']) for item in data)
        p0 = squarefree_part(poly)
        return cls(
            intervals=intervals,
            multiplicities=multiplicities,
            poly=p0,
            degree=poly.degree if degree is None else degree,
        )


def build_sturm(p: Polynomial) -> SturmChain:
    if p.is_zero():
        raise ZeroPolynomialError('Sturm chain of the zero polynomial is undefined')

    chain = [squarefree_part(p)]
    if chain[0].degree > 0:
        chain.append(derivative(chain[0]))
        while chain[-1].degree > 0:
            remainder = chain[-2] % chain[-1]
            if remainder.is_zero():
                break
            chain.append(-remainder)
    return SturmChain(tuple(chain))


def sign_variations(chain: SturmChain, t) -> int:
    signs = [s for s in (sign_at(q, t) for q in chain.chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(chain: SturmChain, lo, hi) -> int:
    """Number of distinct roots of the chain head in (lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f'Empty interval ({lo}, {hi})')
    for endpoint in (lo, hi):
        if sign_at(chain.head, endpoint) == 0:
            raise EndpointRootError(endpoint)
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def cauchy_bound(p: Polynomial) -> Fraction:
    """1 + max |c_i / c_deg|; every root lies strictly inside (-bound, bound)."""
    if p.degree <= 0:
        return Fraction(1)
    return 1 + max(abs(c / p.leading) for c in p.coeffs[:-1])


def nudge_endpoints(chain: SturmChain, lo, hi):
    """
    Moves root endpoints outward by half their distance to the power of two
    beyond the root bound until neither endpoint is a root.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    beyond = 1
    while beyond <= cauchy_bound(chain.head):
        beyond *= 2

    while sign_at(chain.head, lo) == 0:
        lo = (lo - beyond) / 2
        logger.debug('Lower endpoint nudged to %s', lo)
    while sign_at(chain.head, hi) == 0:
        hi = (hi + beyond) / 2
        logger.debug('Upper endpoint nudged to %s', hi)
    return lo, hi


def count_real_roots(p: Polynomial) -> int:
    """Number of distinct real roots of p."""
    chain = build_sturm(p)
    if chain.head.degree == 0:
        return 0
    bound = cauchy_bound(chain.head)
    return count_roots_in(chain, -bound, bound)


def is_real_rooted(p: Polynomial) -> bool:
    if p.is_zero():
        raise ZeroPolynomialError('Real-rootedness of the zero polynomial is undefined')
    return count_real_roots(p) == squarefree_part(p).degree


def gcd_tower(p: Polynomial):
    """[p, gcd(p, p'), gcd of that with its derivative, ...] up to the first constant."""
    levels = []
    level = p
    while level.degree > 0:
        levels.append(level)
        level = poly_gcd(level, derivative(level))
    return levels


def split_point(p0: Polynomial, lo, hi) -> Fraction:
    """Midpoint of (lo, hi), moved right by (hi - lo)/2^j if it is a root of p0."""
    mid = (lo + hi) / 2
    j = 2
    candidate = mid
    while sign_at(p0, candidate) == 0:
        candidate = mid + (hi - lo) / 2 ** j
        j += 1
    return candidate


def bisect_once(p0: Polynomial, lo, hi):
    """Halves an isolating interval of a simple root of p0, keeping the root inside."""
    mid = (lo + hi) / 2
    side = sign_at(p0, mid)
    if side == 0:
        quarter = (hi - lo) / 4
        return mid - quarter, mid + quarter
    if side == sign_at(p0, lo):
        return mid, hi
    return lo, mid


def isolate_roots(p: Polynomial) -> RootIntervals:
    chain = build_sturm(p)
    p0 = chain.head
    if p0.degree == 0:
        return RootIntervals(intervals=(), multiplicities=(), poly=p0, degree=p.degree)

    bound = cauchy_bound(p0)
    found = []
    pending = [(-bound, bound, count_roots_in(chain, -bound, bound))]
    while pending:
        lo, hi, count = pending.pop()
        if count == 0:
            continue
        if count == 1:
            found.append((lo, hi))
            continue
        mid = split_point(p0, lo, hi)
        left = count_roots_in(chain, lo, mid)
        pending.append((mid, hi, count - left))
        pending.append((lo, mid, left))
    found.sort()

    if p0.degree == p.degree:
        multiplicities = (1,) * len(found)
    else:
        tower = [build_sturm(level) for level in gcd_tower(p)]
        multiplicities = tuple(
            sum(1 for level in tower if count_roots_in(level, lo, hi) > 0)
            for lo, hi in found
        )
    logger.debug('Isolated %d distinct real roots of %s', len(found), p)
    return RootIntervals(intervals=tuple(found), multiplicities=multiplicities, poly=p0, degree=p.degree)


def refine_to(intervals: RootIntervals, width) -> RootIntervals:
    """Bisects every interval down to hi - lo <= width; neighbours end up strictly apart."""
    width = Fraction(width)
    p0 = intervals.poly
    refined = []
    previous_hi = None
    for lo, hi in intervals.intervals:
        while hi - lo > width or (previous_hi is not None and lo <= previous_hi):
            lo, hi = bisect_once(p0, lo, hi)
        refined.append((lo, hi))
        previous_hi = hi
    return replace(intervals, intervals=tuple(refined))
