"""
Exact Hermitian matrix algebra over the Gaussian rationals.

Characteristic polynomials are stored monic, as det(xI - A). The
determinant convention |A - xI| differs from it by (-1)^n, so the pencil
|A - xI| + alpha*|B - xI| becomes char_poly(A) - alpha*char_poly(B) here.
Eigenvalues never exist as floats: only as isolating intervals around the
roots of the exact characteristic polynomial.
"""
import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from interlace_checker.errors import (
    InputFormatError, InternalInconsistencyError, NonSquareMatrixError, NotHermitianError,
)
from interlace_checker.interlace import InterlaceReport, PencilReport, interlaces_by_roots, pencil_scan
from interlace_checker.poly_core import Polynomial, format_rational, lin_comb, parse_rational
from interlace_checker.real_roots import RootIntervals, isolate_roots, refine_to

logger = logging.getLogger(__name__)

DEFAULT_WIDTH = Fraction(1, 2 ** 20)


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', Fraction(self.re))
        object.__setattr__(self, 'im', Fraction(self.im))

    @classmethod
    def from_json(cls, data, source=None, field=None):
        if not isinstance(data, list) or len(data) != 2:
            raise InputFormatError('Entry must be a ["re", "im"] pair', source, field)
        return cls(parse_rational(data[0], source, f'{field}.re'), parse_rational(data[1], source, f'{field}.im'))

    def to_json(self):
        return [format_rational(self.re), format_rational(self.im)]

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = _to_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _to_gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _to_gaussian(other) - self

    def __mul__(self, other):
        other = _to_gaussian(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _to_gaussian(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError('Division by zero Gaussian rational')
        numerator = self * other.conjugate()
        return GaussianRational(numerator.re / norm, numerator.im / norm)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f'{self.im}i'
        return f'{self.re}{"+" if self.im > 0 else "-"}{abs(self.im)}i'


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


def _to_gaussian(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return GaussianRational(*value)
    raise TypeError(f'Cannot use {value!r} as a Gaussian rational')


def _square_rows(M):
    if isinstance(M, HermitianMatrix):
        return M.entries
    rows = tuple(tuple(_to_gaussian(v) for v in row) for row in M)
    if any(len(row) != len(rows) for row in rows):
        raise NonSquareMatrixError(f'Matrix with {len(rows)} rows is not square')
    return rows


def _first_asymmetry(rows):
    for i, row in enumerate(rows):
        for j in range(i, len(rows)):
            if row[j] != rows[j][i].conjugate():
                return i, j
    return None


@dataclass(frozen=True)
class HermitianMatrix:
    n: int
    entries: tuple  # n x n tuple of GaussianRational

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            raise NonSquareMatrixError(f'Expected a {self.n}x{self.n} matrix')
        asymmetry = _first_asymmetry(self.entries)
        if asymmetry is not None:
            raise NotHermitianError(*asymmetry)

    @classmethod
    def from_rows(cls, rows):
        rows = _square_rows(rows)
        return cls(n=len(rows), entries=rows)

    @classmethod
    def from_json(cls, data, source=None):
        if not isinstance(data, dict) or 'n' not in data or 'entries' not in data:
            raise InputFormatError('Matrix file needs "n" and "entries"', source)
        n = data['n']
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InputFormatError(f'Dimension must be a positive integer, got {n!r}', source, 'n')

        raw = data['entries']
        if not isinstance(raw, list) or len(raw) != n:
            raise InputFormatError(f'Expected {n} rows', source, 'entries')
        rows = []
        for i, raw_row in enumerate(raw):
            if not isinstance(raw_row, list) or len(raw_row) != n:
                raise InputFormatError(f'Expected {n} entries', source, f'entries[{i}]')
            rows.append(tuple(
                GaussianRational.from_json(item, source, f'entries[{i}][{j}]')
                for j, item in enumerate(raw_row)
            ))

        asymmetry = _first_asymmetry(rows)
        if asymmetry is not None:
            i, j = asymmetry
            raise InputFormatError(
                f'Not Hermitian: entry ({i}, {j}) is not the conjugate of ({j}, {i})',
                source, f'entries[{i}][{j}]',
            )
        return cls(n=n, entries=tuple(rows))

    def to_json(self):
        return {'n': self.n, 'entries': [[entry.to_json() for entry in row] for row in self.entries]}

    def with_diagonal_shift(self, index, alpha):
        """A copy with alpha added to the diagonal entry (index, index)."""
        rows = [list(row) for row in self.entries]
        rows[index][index] = rows[index][index] + Fraction(alpha)
        return HermitianMatrix(n=self.n, entries=tuple(tuple(row) for row in rows))


def _as_hermitian(A):
    return A if isinstance(A, HermitianMatrix) else HermitianMatrix.from_rows(A)


def _minus_x_identity(rows, x):
    return tuple(
        tuple(entry - x if i == j else entry for j, entry in enumerate(row))
        for i, row in enumerate(rows)
    )


def is_hermitian(M) -> bool:
    return _first_asymmetry(_square_rows(M)) is None


def det_exact(M) -> GaussianRational:
    """Fraction-free (Bareiss) elimination with row pivoting."""
    rows = [list(row) for row in _square_rows(M)]
    n = len(rows)
    if n == 0:
        return ONE

    sign = 1
    previous = ONE
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if not rows[i][k].is_zero()), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != k:
            rows[pivot_row], rows[k] = rows[k], rows[pivot_row]
            sign = -sign

        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (pivot * rows[i][j] - rows[i][k] * rows[k][j]) / previous
            rows[i][k] = ZERO
        previous = pivot

    det = rows[n - 1][n - 1]
    return -det if sign < 0 else det


def det_cofactor(M) -> GaussianRational:
    """Laplace expansion along the first row. Exponential; an oracle for small n only."""
    rows = _square_rows(M)
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]

    total = ZERO
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        term = entry * det_cofactor(tuple(row[:j] + row[j + 1:] for row in rows[1:]))
        total = total + term if j % 2 == 0 else total - term
    return total


def char_poly(A) -> Polynomial:
    """Monic det(xI - A) by Faddeev-LeVerrier; imaginary parts must cancel exactly."""
    return _char_poly(_as_hermitian(A))


@functools.lru_cache(maxsize=1024)
def _char_poly(A: HermitianMatrix) -> Polynomial:
    # Runs on D*A, D the lcm of all entry denominators; c_k(A) = c_k(D*A) / D^(n-k)
    n = A.n
    scale, a = _gaussian_integer_entries(A)
    coeffs = [(0, 0)] * (n + 1)
    coeffs[n] = (1, 0)

    am = tuple(tuple((0, 0) for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        c_re, c_im = coeffs[n - k + 1]
        m = tuple(
            tuple((am[i][j][0] + c_re, am[i][j][1] + c_im) if i == j else am[i][j] for j in range(n))
            for i in range(n)
        )
        am = _matmul(a, m)
        trace_re = sum(am[i][i][0] for i in range(n))
        trace_im = sum(am[i][i][1] for i in range(n))
        # exact: the coefficients of an integer matrix are integers
        coeffs[n - k] = (-trace_re // k, -trace_im // k)

    imaginary = [k for k, (_, c_im) in enumerate(coeffs) if c_im != 0]
    if imaginary:
        logger.error('Characteristic polynomial has non-real coefficients at degrees %s', imaginary)
        raise InternalInconsistencyError(
            f'Hermitian characteristic polynomial has non-real coefficients at degrees {imaginary}'
        )
    return Polynomial(tuple(Fraction(c_re, scale ** (n - k)) for k, (c_re, _) in enumerate(coeffs)))


def _gaussian_integer_entries(A: HermitianMatrix):
    scale = 1
    for row in A.entries:
        for entry in row:
            for part in (entry.re, entry.im):
                scale = scale * part.denominator // math.gcd(scale, part.denominator)
    entries = tuple(
        tuple((entry.re.numerator * (scale // entry.re.denominator),
               entry.im.numerator * (scale // entry.im.denominator)) for entry in row)
        for row in A.entries
    )
    return scale, entries


def _matmul(a, b):
    """Product of square matrices of (re, im) integer pairs."""
    columns = tuple(zip(*b))
    result = []
    for row in a:
        out = []
        for column in columns:
            re = im = 0
            for (ar, ai), (br, bi) in zip(row, column):
                if (ar or ai) and (br or bi):
                    re += ar * br - ai * bi
                    im += ar * bi + ai * br
            out.append((re, im))
        result.append(tuple(out))
    return tuple(result)


def principal_submatrix(A, k) -> HermitianMatrix:
    """A with row and column k removed."""
    A = _as_hermitian(A)
    if A.n < 2:
        raise ValueError('A 1x1 matrix has no proper principal submatrix')
    if not 0 <= k < A.n:
        raise IndexError(f'Index {k} out of range for a {A.n}x{A.n} matrix')
    rows = tuple(
        row[:k] + row[k + 1:]
        for i, row in enumerate(A.entries) if i != k
    )
    return HermitianMatrix(n=A.n - 1, entries=rows)


def leading_principal_submatrix(A) -> HermitianMatrix:
    A = _as_hermitian(A)
    return principal_submatrix(A, A.n - 1)


@dataclass(frozen=True)
class IdentityReport:
    alpha: Fraction
    lhs_coeffs: Polynomial  # char_poly(A_alpha)
    rhs_sum_coeffs: Polynomial  # char_poly(A) - alpha*char_poly(B)
    exact_match: bool
    sample_points: tuple = ()
    pointwise_match: bool = True

    def to_json(self):
        return {
            'alpha': format_rational(self.alpha),
            'lhs_coeffs': self.lhs_coeffs.to_json(),
            'rhs_sum_coeffs': self.rhs_sum_coeffs.to_json(),
            'exact_match': self.exact_match,
            'sample_points': [format_rational(x) for x in self.sample_points],
            'pointwise_match': self.pointwise_match,
        }


def bordered_identity(A, alpha) -> IdentityReport:
    """
    Checks the determinant linearity identity for A = (B c; c* d).

    With A_alpha equal to A but with d replaced by d + alpha, linearity of the
    determinant in the last row gives

        |A_alpha - xI| = |A - xI| + |(B - xI, c; 0, alpha)| = |A - xI| + alpha*|B - xI|

    Multiplying by (-1)^n turns it into the monic form compared here
    coefficientwise: char_poly(A_alpha) = char_poly(A) - alpha*char_poly(B).
    The three-determinant form itself is also checked with det_exact at the
    points x = 0, 1, ..., n.
    """
    A = _as_hermitian(A)
    if A.n < 2:
        raise ValueError('Bordered identity needs n >= 2')

    alpha = Fraction(alpha)
    last = A.n - 1
    shifted = A.with_diagonal_shift(last, alpha)
    lhs = char_poly(shifted)
    rhs = lin_comb(char_poly(A), char_poly(leading_principal_submatrix(A)), -alpha)

    points = tuple(Fraction(x) for x in range(A.n + 1))
    pointwise = True
    for x in points:
        bordered = _minus_x_identity(A.entries, x)
        alpha_row = tuple(ZERO for _ in range(last)) + (GaussianRational(alpha),)
        if det_exact(_minus_x_identity(shifted.entries, x)) != \
                det_exact(bordered) + det_exact(bordered[:last] + (alpha_row,)):
            pointwise = False
            break

    report = IdentityReport(
        alpha=alpha,
        lhs_coeffs=lhs,
        rhs_sum_coeffs=rhs,
        exact_match=lhs == rhs,
        sample_points=points,
        pointwise_match=pointwise,
    )
    if not (report.exact_match and report.pointwise_match):
        logger.error('Bordered identity failed for alpha=%s: %s vs %s', alpha, lhs, rhs)
    return report


def bordered_pencil_scan(A, alphas) -> PencilReport:
    """Real-rootedness of char_poly(A) - alpha*char_poly(B) for every sampled alpha."""
    A = _as_hermitian(A)
    return pencil_scan(char_poly(A), -char_poly(leading_principal_submatrix(A)), alphas)


def eigen_intervals(A, width=DEFAULT_WIDTH) -> RootIntervals:
    """Isolating intervals of the eigenvalues, refined to width unless width is None."""
    return _eigen_intervals(_as_hermitian(A), None if width is None else Fraction(width))


@functools.lru_cache(maxsize=1024)
def _eigen_intervals(A: HermitianMatrix, width: Optional[Fraction]) -> RootIntervals:
    intervals = isolate_roots(char_poly(A))
    if width is not None:
        intervals = refine_to(intervals, width)
    if intervals.total_multiplicity != A.n:
        logger.error('Hermitian %dx%d matrix has %d real eigenvalues', A.n, A.n, intervals.total_multiplicity)
        raise InternalInconsistencyError(
            f'Expected {A.n} real eigenvalues counted with multiplicity, found {intervals.total_multiplicity}'
        )
    return intervals


@dataclass(frozen=True)
class CauchyReport:
    k: int
    eigen_intervals_A: RootIntervals
    eigen_intervals_B: RootIntervals
    interlace: InterlaceReport

    def to_json(self):
        return {
            'k': self.k,
            'eigen_intervals_A': self.eigen_intervals_A.to_json(),
            'eigen_intervals_B': self.eigen_intervals_B.to_json(),
            'interlace': self.interlace.to_json(),
        }


def cauchy_check(A, k: Optional[int] = None, width=DEFAULT_WIDTH) -> CauchyReport:
    """
    Eigenvalues of A against those of A with row and column k deleted
    (the last index by default). Anything but Interlaces is a bug and raises.
    The verdict does not depend on width: the comparison refines on demand,
    width only sets how tight the reported intervals are (None: as isolated).
    """
    A = _as_hermitian(A)
    k = A.n - 1 if k is None else k
    B = principal_submatrix(A, k)

    eigen_a = eigen_intervals(A, width)
    eigen_b = eigen_intervals(B, width)
    report = CauchyReport(
        k=k,
        eigen_intervals_A=eigen_a,
        eigen_intervals_B=eigen_b,
        interlace=interlaces_by_roots(eigen_a, eigen_b),
    )
    if not report.interlace.interlaces:
        logger.error('Cauchy interlacing failed for k=%d: %s', k, report.interlace.failure_detail)
        raise InternalInconsistencyError(
            f'Eigenvalues of the submatrix without index {k} do not interlace: '
            f'{report.interlace.verdict.value} ({report.interlace.failure_detail})',
            report=report,
        )
    return report


def nested_cauchy_check(A, indices, width=DEFAULT_WIDTH):
    """Deletes the given indices one after another, checking interlacing at every step."""
    reports = []
    current = _as_hermitian(A)
    for k in indices:
        reports.append(cauchy_check(current, k, width))
        current = principal_submatrix(current, k)
    return reports


def random_hermitian(rng, n, bound) -> HermitianMatrix:
    """Gaussian-integer entries in [-bound, bound]; upper triangle drawn, lower mirrored."""
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            re = rng.randint(-bound, bound)
            im = rng.randint(-bound, bound) if i < j else 0
            rows[i][j] = GaussianRational(re, im)
            rows[j][i] = rows[i][j].conjugate()
    return HermitianMatrix(n=n, entries=tuple(tuple(row) for row in rows))
