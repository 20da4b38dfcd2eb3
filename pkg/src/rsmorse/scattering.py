"""Factorized scattering matrix, square-root branches, and the free kernel.

The scattering data is built from unimodular quotients of infinite
q-products; the free side consists of the anti-invariant kernel chi and
the discrete Laplacian on the partition cone, whose eigen-identity
(including boundary sites, where the sign pairing cancels the missing
neighbors) is the machine-checkable core of the wave-operator picture.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .combinatorics import SignedPermutation, check_partition, is_partition
from .errors import IrregularPointError, PoleError
from .latticeop import LatticeFunction
from .qcore import qpoch_infinite

__all__ = [
    "s_pair",
    "s_one",
    "S_hat",
    "sqrt_branch_s",
    "sqrt_branch_s0",
    "chi",
    "apply_H0",
    "free_eigen_residual",
    "ScatterPoint",
    "sorting_permutation",
    "S_hat_sorted",
]


def _phase(value):
    mod = abs(value)
    if mod == 0:
        raise PoleError("vanishing modulus in a square-root branch quotient")
    return value / mod


def s_pair(x, params, tol=1e-14):
    """Two-particle factor (q e^{ix}, t e^{-ix})_inf / (q e^{-ix}, t e^{ix})_inf."""
    q = float(params.q)
    t = float(params.t)
    zp = cmath.exp(1j * x)
    zm = cmath.exp(-1j * x)
    num = qpoch_infinite(q * zp, q, tol) * qpoch_infinite(t * zm, q, tol)
    den = qpoch_infinite(q * zm, q, tol) * qpoch_infinite(t * zp, q, tol)
    if den == 0:
        raise PoleError("two-particle factor pole")
    return num / den


def s_one(x, params, tol=1e-14):
    """One-particle factor (q e^{2ix})_inf/(q e^{-2ix})_inf
    * prod_r (that_r e^{-ix})_inf/(that_r e^{ix})_inf."""
    q = float(params.q)
    zp = cmath.exp(1j * x)
    zm = cmath.exp(-1j * x)
    out = qpoch_infinite(q * zp * zp, q, tol) / qpoch_infinite(q * zm * zm, q, tol)
    for th in params.that:
        den = qpoch_infinite(float(th) * zp, q, tol)
        if den == 0:
            raise PoleError("one-particle factor pole")
        out *= qpoch_infinite(float(th) * zm, q, tol) / den
    return out


def S_hat(xi, params, tol=1e-14):
    """Full factorized matrix prod_{j<k} s(xi_j - xi_k) s(xi_j + xi_k) prod_j s0(xi_j)."""
    xi = [float(v) for v in xi]
    n = len(xi)
    out = complex(1)
    for j in range(n):
        for k in range(j + 1, n):
            out *= s_pair(xi[j] - xi[k], params, tol) * s_pair(xi[j] + xi[k], params, tol)
    for j in range(n):
        out *= s_one(xi[j], params, tol)
    return out


def sqrt_branch_s(x, params, tol=1e-14):
    """Branch (q e^{ix})_inf/|...| * |(t e^{ix})_inf|/(t e^{ix})_inf; squares to s(x)."""
    q = float(params.q)
    t = float(params.t)
    z = cmath.exp(1j * x)
    return _phase(qpoch_infinite(q * z, q, tol)) / _phase(qpoch_infinite(t * z, q, tol))


def sqrt_branch_s0(x, params, tol=1e-14):
    """Branch (q e^{2ix})_inf/|...| * prod_r |(that_r e^{ix})_inf|/(that_r e^{ix})_inf."""
    q = float(params.q)
    z = cmath.exp(1j * x)
    out = _phase(qpoch_infinite(q * z * z, q, tol))
    for th in params.that:
        out /= _phase(qpoch_infinite(float(th) * z, q, tol))
    return out


def _signed_group(n):
    for sigma in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(sigma=sigma, signs=signs)


def chi(xi, lam):
    """Anti-invariant free kernel.

    (2 pi)^(-n/2) i^(-n^2) sum over signed permutations w of
    sign(w) e^{i <w(rho0 + lam), xi>} with rho0 = (n, ..., 1).
    """
    lam = check_partition(lam)
    n = len(lam)
    xi = [float(v) for v in xi]
    v = [n - j + lam[j] for j in range(n)]
    total = complex(0)
    for w in _signed_group(n):
        u = w.apply(v)
        total += w.sign() * cmath.exp(1j * sum(a * b for a, b in zip(u, xi)))
    return (2 * math.pi) ** (-n / 2) * (1j) ** (-(n * n)) * total


def apply_H0(f):
    """Discrete Laplacian: sum of the admissible nearest neighbors on the cone."""
    out = {}
    candidates = set()
    for lam in f.values:
        candidates.add(lam)
        for j in range(f.n):
            for step in (1, -1):
                nb = list(lam)
                nb[j] += step
                if is_partition(nb):
                    candidates.add(tuple(nb))
    for lam in candidates:
        acc = 0
        for j in range(f.n):
            for step in (1, -1):
                nb = list(lam)
                nb[j] += step
                if is_partition(nb):
                    acc += f[tuple(nb)]
        if acc != 0:
            out[lam] = acc
    return LatticeFunction(f.n, out)


def free_eigen_residual(xi, lam):
    """(H0 chi_xi)(lam) - (sum_j 2 cos xi_j) chi_xi(lam); zero also at boundary sites."""
    lam = check_partition(lam)
    n = len(lam)
    acc = complex(0)
    for j in range(n):
        for step in (1, -1):
            nb = list(lam)
            nb[j] += step
            if is_partition(nb):
                acc += chi(xi, tuple(nb))
    return acc - sum(2 * math.cos(float(v)) for v in xi) * chi(xi, lam)


@dataclass(frozen=True)
class ScatterPoint:
    """Alcove point with its regularity flag and sorting permutation.

    regular iff the gradient components -2 sin(xi_j) are nonzero with
    pairwise distinct absolute values; w then maps the gradient to
    positive, strictly decreasing components.
    """

    xi: tuple
    regular: bool
    w: Optional[SignedPermutation]


def sorting_permutation(xi, tol=1e-12):
    xi = tuple(float(v) for v in xi)
    grad = [-2.0 * math.sin(v) for v in xi]
    mags = [abs(g) for g in grad]
    n = len(xi)
    regular = all(m > tol for m in mags) and all(
        abs(mags[a] - mags[b]) > tol for a in range(n) for b in range(a + 1, n)
    )
    if not regular:
        return ScatterPoint(xi=xi, regular=False, w=None)
    order = sorted(range(n), key=lambda i: -mags[i])
    sigma = [0] * n
    for rank, idx in enumerate(order):
        sigma[idx] = rank
    signs = tuple(1 if g > 0 else -1 for g in grad)
    w = SignedPermutation(sigma=tuple(sigma), signs=signs)
    applied = w.apply(grad)
    if any(applied[a] <= applied[a + 1] for a in range(n - 1)) or applied[-1] <= 0:
        raise IrregularPointError(f"sorting failed at {xi}: got {applied}")
    return ScatterPoint(xi=xi, regular=True, w=w)


def S_hat_sorted(xi, params, tol=1e-14, sort_tol=1e-12):
    """Scattering matrix evaluated at w_xi xi, defined on regular points only."""
    point = sorting_permutation(xi, sort_tol)
    if not point.regular:
        raise IrregularPointError(
            f"point {tuple(xi)} has a vanishing or tied gradient component"
        )
    return S_hat(point.w.apply(list(point.xi)), params, tol)
