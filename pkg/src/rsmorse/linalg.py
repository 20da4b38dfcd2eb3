"""Exact linear solves by fraction-free (Bareiss) elimination.

Rows are first scaled by the lcm of their denominators so the
elimination runs on Python integers; the one-step Bareiss division is
then exact and keeps intermediate entries at determinant size instead
of exploding combinatorially.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import SingularMatrixError

__all__ = ["solve_exact"]


def _lcm(a, b):
    return a // gcd(a, b) * b


def solve_exact(A, B):
    """Solve A X = B exactly for rational A (n x n) and B (n x m).

    Returns X as a list of n rows of m Fractions.  Raises
    SingularMatrixError when A has no inverse.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise SingularMatrixError("matrix must be square")
    m = len(B[0]) if B else 0
    if len(B) != n or any(len(row) != m for row in B):
        raise SingularMatrixError("right-hand side shape mismatch")

    # integer augmented matrix, one row scale at a time
    M = []
    for i in range(n):
        row = [Fraction(v) for v in A[i]] + [Fraction(v) for v in B[i]]
        den = 1
        for v in row:
            den = _lcm(den, v.denominator)
        M.append([int(v * den) for v in row])

    width = n + m
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if pivot is None:
                raise SingularMatrixError(f"singular system (no pivot in column {k})")
            M[k], M[pivot] = M[pivot], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, width):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]

    X = [[Fraction(0)] * m for _ in range(n)]
    for col in range(m):
        for i in range(n - 1, -1, -1):
            if M[i][i] == 0:
                raise SingularMatrixError(f"singular system (zero pivot at row {i})")
            acc = Fraction(M[i][n + col])
            for j in range(i + 1, n):
                acc -= M[i][j] * X[j][col]
            X[i][col] = acc / M[i][i]
    return X
