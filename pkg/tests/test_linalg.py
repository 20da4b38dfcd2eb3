import random
from fractions import Fraction

import pytest

from rsmorse.errors import SingularMatrixError
from rsmorse.linalg import solve_exact


def test_known_system():
    A = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    B = [[Fraction(5)], [Fraction(10)]]
    X = solve_exact(A, B)
    assert X == [[Fraction(1)], [Fraction(3)]]


def test_multi_rhs():
    A = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1)]]
    B = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    X = solve_exact(A, B)
    for i in range(2):
        for j in range(2):
            got = sum(A[i][k] * X[k][j] for k in range(2))
            assert got == (1 if i == j else 0)


def test_random_exact_residual():
    rng = random.Random(13)
    for _ in range(10):
        n = rng.randint(2, 5)
        A = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
        B = [[Fraction(rng.randint(-9, 9))] for _ in range(n)]
        try:
            X = solve_exact(A, B)
        except SingularMatrixError:
            continue
        for i in range(n):
            assert sum(A[i][k] * X[k][0] for k in range(n)) == B[i][0]


def test_pivoting():
    A = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    B = [[Fraction(3)], [Fraction(4)]]
    assert solve_exact(A, B) == [[Fraction(4)], [Fraction(3)]]


def test_singular():
    A = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    B = [[Fraction(1)], [Fraction(1)]]
    with pytest.raises(SingularMatrixError):
        solve_exact(A, B)


def test_shape_errors():
    with pytest.raises(SingularMatrixError):
        solve_exact([[Fraction(1), Fraction(2)]], [[Fraction(1)]])
    with pytest.raises(SingularMatrixError):
        solve_exact([[Fraction(1)]], [[Fraction(1)], [Fraction(2)]])
