from fractions import Fraction

import pytest

from interlace_checker.hermitian import I, HermitianMatrix
from interlace_checker.poly_core import Polynomial


def poly(*coeffs):
    """Polynomial from coefficients written highest degree first."""
    return Polynomial(tuple(Fraction(c) for c in reversed(coeffs)))


@pytest.fixture
def tridiagonal():
    return HermitianMatrix.from_rows([[2, 1, 0], [1, 2, 1], [0, 1, 2]])


@pytest.fixture
def pauli_x():
    return HermitianMatrix.from_rows([[0, 1], [1, 0]])


@pytest.fixture
def complex_2x2():
    return HermitianMatrix.from_rows([[1, I], [-I, 1]])
