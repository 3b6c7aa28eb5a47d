"""
Exact univariate polynomials over the rationals.

Coefficients are ``fractions.Fraction`` values stored in ascending degree
order. Every operation is exact; there is no floating point anywhere in
this module.
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import zip_longest

from interlace_checker.errors import InputFormatError, ZeroPolynomialError

Rational = Fraction

ZERO_DEGREE = -1

_RATIONAL_RE = re.compile(r'(0|-?[1-9]\d*)(?:/([1-9]\d*))?', re.ASCII)


def parse_rational(text, source=None, field=None) -> Fraction:
    """Parses canonical "p/q" or "p": ASCII digits, no leading zeros or spaces, reduced, q > 0."""
    if not isinstance(text, str):
        raise InputFormatError(f'Expected a rational string, got {text!r}', source, field)

    match = _RATIONAL_RE.fullmatch(text)
    if match is None:
        raise InputFormatError(f'Malformed rational {text!r}', source, field)

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    value = Fraction(numerator, denominator)
    if value.denominator != denominator:
        raise InputFormatError(f'Rational {text!r} is not in lowest terms', source, field)
    return value


def format_rational(value) -> str:
    return str(Fraction(value))


def _coerce(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial((value,))
    return NotImplemented


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple = ()  # ascending degree, trimmed

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def from_roots(cls, roots, leading=1):
        result = cls((leading,))
        for root in roots:
            result = result * cls((-Fraction(root), 1))
        return result

    @classmethod
    def from_json(cls, data, source=None, field=None):
        if not isinstance(data, list):
            raise InputFormatError('Polynomial must be a JSON array of coefficient strings', source, field)
        return cls(tuple(
            parse_rational(c, source, f'{field}[{i}]' if field else f'[{i}]')
            for i, c in enumerate(data)
        ))

    def to_json(self):
        return [format_rational(c) for c in self.coeffs] or ['0']

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    @cached_property
    def integer_coeffs(self):
        """Coefficients times the lcm of their denominators, as ints."""
        scale = 1
        for c in self.coeffs:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        return tuple(c.numerator * (scale // c.denominator) for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, t):
        return evaluate(self, t)

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(tuple(
            a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=Fraction(0))
        ))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(tuple(other * c for c in self.coeffs))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()

        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return Polynomial(tuple(product))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError('Polynomial division by zero')

        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(self.degree - other.degree + 1, 0)
        lead = other.leading
        for shift in range(len(quotient) - 1, -1, -1):
            factor = remainder[shift + other.degree] / lead
            quotient[shift] = factor
            if factor:
                for i, c in enumerate(other.coeffs):
                    remainder[shift + i] -= factor * c
        return Polynomial(tuple(quotient)), Polynomial(tuple(remainder))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def shift(self, t):
        """Returns p(x - t): the roots move by +t."""
        step = Polynomial((-Fraction(t), 1))
        result = Polynomial()
        for c in reversed(self.coeffs):
            result = result * step + c
        return result

    def __str__(self):
        if self.is_zero():
            return '0'

        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                variable = 'x' if power == 1 else f'x^{power}'
                if magnitude == 1:
                    body = variable
                elif magnitude.denominator == 1:
                    body = f'{magnitude}{variable}'
                else:
                    body = f'({magnitude}){variable}'
            terms.append((sign, body))

        first_sign, first_body = terms[0]
        text = f'-{first_body}' if first_sign == '-' else first_body
        for sign, body in terms[1:]:
            text += f' {sign} {body}'
        return text


def lin_comb(f: Polynomial, g: Polynomial, alpha) -> Polynomial:
    """f + alpha*g, coefficientwise."""
    return f + g * Fraction(alpha)


def evaluate(p: Polynomial, t) -> Fraction:
    result = Fraction(0)
    for c in reversed(p.coeffs):
        result = result * t + c
    return Fraction(result)


def sign_at(p: Polynomial, t) -> int:
    """Sign of p(t), taken from the integer den^deg * p(num/den)."""
    t = Fraction(t)
    coeffs = p.integer_coeffs
    if not coeffs:
        return 0
    num, den = t.numerator, t.denominator
    acc = coeffs[-1]
    power = 1
    for c in reversed(coeffs[:-1]):
        power *= den
        acc = acc * num + c * power
    return (acc > 0) - (acc < 0)


def derivative(p: Polynomial) -> Polynomial:
    return Polynomial(tuple(i * c for i, c in enumerate(p.coeffs))[1:])


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor by Euclid's algorithm over Q."""
    if p.is_zero() and q.is_zero():
        raise ZeroPolynomialError('gcd(0, 0) is undefined')

    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """Monic p / gcd(p, p'): same distinct roots, each simple."""
    if p.is_zero():
        raise ZeroPolynomialError('Squarefree part of the zero polynomial is undefined')
    return (p // poly_gcd(p, derivative(p))).monic()
