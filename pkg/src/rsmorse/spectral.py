"""Spectral weight, norms, orthogonality quadrature, and lattice dynamics.

Exact content (rational norm ratios, detailed balance, symmetric
conjugated matrices) is kept separate from transcendental content
(infinite q-products, Gauss-Legendre integrals): every identity that
can be checked in rational arithmetic is, and floats only enter where
an infinite product or an integral is genuinely required.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import check_partition, orbit, partitions_max_weight, total_order_key
from .errors import DegeneracyError, ParamDomainError, StructureError
from .latticeop import LatticeFunction, epsilon0, hop_terms, v_minus, v_plus
from .qcore import qpoch_finite, qpoch_infinite, truncation_order

__all__ = [
    "weight",
    "weight_grid",
    "norm_ratio",
    "norm_ratio_step",
    "norm_delta0_n",
    "NormValue",
    "norm_Delta",
    "detailed_balance_residual",
    "QuadSpec",
    "evaluate_P_grid",
    "gram",
    "gram_report",
    "fourier_forward",
    "fourier_inverse",
    "ConjugatedMatrix",
    "conjugated_H_matrix",
    "evolve",
]


def _qpoch_array(x, q, nfactors):
    out = np.ones_like(x)
    qp = 1.0
    for _ in range(nfactors):
        out = out * (1.0 - qp * x)
        qp *= q
    return out


def weight_grid(points, params, tol=1e-12):
    """Spectral weight evaluated on an (m, n) array of angle vectors.

    No alcove check: the defining product is W-invariant, so off-alcove
    evaluation is used internally for symmetrized quadrature.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    m, n = points.shape
    q = float(params.q)
    nfac = truncation_order(1, params.q, tol)
    total = np.full(m, (2.0 * math.pi) ** (-n))
    for j in range(n):
        zj = np.exp(1j * points[:, j])
        num = _qpoch_array(zj * zj, q, nfac)
        den = np.ones(m, dtype=complex)
        for th in params.that:
            den = den * _qpoch_array(float(th) * zj, q, nfac)
        total = total * np.abs(num / den) ** 2
    t = float(params.t)
    for j in range(n):
        for k in range(j + 1, n):
            zsum = np.exp(1j * (points[:, j] + points[:, k]))
            zdif = np.exp(1j * (points[:, j] - points[:, k]))
            num = _qpoch_array(zsum, q, nfac) * _qpoch_array(zdif, q, nfac)
            den = _qpoch_array(t * zsum, q, nfac) * _qpoch_array(t * zdif, q, nfac)
            total = total * np.abs(num / den) ** 2
    return total


def weight(xi, params, tol=1e-12, extended=False):
    """Weight at a single point of the open alcove pi > xi_1 > ... > xi_n > 0.

    extended=True skips the alcove check and evaluates the same
    W-invariant product at arbitrary real angles.
    """
    xi = tuple(float(v) for v in xi)
    if not extended:
        bounds = (math.pi,) + xi + (0.0,)
        if any(a >= b for a, b in zip(bounds[1:], bounds)):
            raise ParamDomainError(f"point {xi} is not in the open alcove")
    return float(weight_grid([xi], params, tol)[0])


def norm_ratio(lam, params):
    """Exact lattice norm divided by its value at the empty partition.

    prod_j (that0 that1 t^(n-j))_{lam_j} (that0 that2 t^(n-j))_{lam_j}
         / (that0^(2 lam_j) t^(2(n-j) lam_j) (q t^(n-j))_{lam_j} (that1 that2 t^(n-j))_{lam_j})
    * prod_{j<k} (1 - t^(k-j) q^(lam_j-lam_k))/(1 - t^(k-j))
                 * (t^(1+k-j))_{lam_j-lam_k} / (q t^(k-j-1))_{lam_j-lam_k}.
    """
    lam = check_partition(lam)
    n = len(lam)
    q, t = params.q, params.t
    th0, th1, th2 = params.that0, params.that1, params.that2
    out = Fraction(1)
    for j in range(1, n + 1):
        lj = lam[j - 1]
        tp = t ** (n - j)
        num = qpoch_finite(th0 * th1 * tp, lj, q) * qpoch_finite(th0 * th2 * tp, lj, q)
        den = th0 ** (2 * lj) * tp ** (2 * lj)
        den *= qpoch_finite(q * tp, lj, q) * qpoch_finite(th1 * th2 * tp, lj, q)
        if den == 0:
            raise DegeneracyError(f"vanishing norm denominator at lam={lam}, j={j}")
        out *= num / den
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            d = lam[j - 1] - lam[k - 1]
            out *= (1 - t ** (k - j) * q**d) / (1 - t ** (k - j))
            den = qpoch_finite(q * t ** (k - j - 1), d, q)
            if den == 0:
                raise DegeneracyError(f"vanishing norm denominator at lam={lam}, pair ({j},{k})")
            out *= qpoch_finite(t ** (1 + k - j), d, q) / den
    return out


def norm_ratio_step(lam, j, params):
    """Exact ratio norm(lam + e_j)/norm(lam)."""
    lam = check_partition(lam)
    up = list(lam)
    up[j - 1] += 1
    up = check_partition(up)
    return norm_ratio(up, params) / norm_ratio(lam, params)


def detailed_balance_residual(lam, j, params):
    """ratio(lam+e_j)/ratio(lam) * v_minus(lam+e_j, j) - v_plus(lam, j); zero exactly."""
    lam = check_partition(lam)
    up = list(lam)
    up[j - 1] += 1
    up = tuple(up)
    return norm_ratio_step(lam, j, params) * v_minus(up, j, params) - v_plus(lam, j, params)


_DELTA0_CACHE = {}


def norm_delta0_n(n, params, tol=1e-14):
    """Transcendental prefactor of the lattice norms.

    prod_j ( (q)_inf (t^j)_inf / (t)_inf * prod_{r<s} (that_r that_s t^(n-j))_inf );
    depends on the rank, so the cache key includes n.
    """
    key = (n, params, tol)
    got = _DELTA0_CACHE.get(key)
    if got is not None:
        return got
    q = float(params.q)
    t = float(params.t)
    th = [float(v) for v in params.that]
    out = 1.0
    for j in range(1, n + 1):
        out *= qpoch_infinite(q, q, tol) * qpoch_infinite(t**j, q, tol) / qpoch_infinite(t, q, tol)
        for r in range(3):
            for s in range(r + 1, 3):
                out *= qpoch_infinite(th[r] * th[s] * t ** (n - j), q, tol)
    _DELTA0_CACHE[key] = out
    return out


@dataclass(frozen=True)
class NormValue:
    """Lattice norm split as delta0 (float) times an exact rational ratio."""

    ratio: Fraction
    delta0: float

    @property
    def value(self):
        return self.delta0 * float(self.ratio)


def norm_Delta(lam, params, tol=1e-14):
    lam = check_partition(lam)
    return NormValue(ratio=norm_ratio(lam, params), delta0=norm_delta0_n(len(lam), params, tol))


@dataclass(frozen=True)
class QuadSpec:
    """Tensor Gauss-Legendre rule on [0, pi]^n."""

    nodes: int
    tol: float = 1e-12

    def grid(self, n):
        u, w = np.polynomial.legendre.leggauss(self.nodes)
        x = (u + 1.0) * (math.pi / 2.0)
        wx = w * (math.pi / 2.0)
        axes = np.meshgrid(*([x] * n), indexing="ij")
        points = np.stack([a.reshape(-1) for a in axes], axis=-1)
        wgt = np.ones(points.shape[0])
        waxes = np.meshgrid(*([wx] * n), indexing="ij")
        for a in waxes:
            wgt = wgt * a.reshape(-1)
        return points, wgt


def evaluate_P_grid(poly, points):
    """Evaluate an invariant polynomial at an (m, n) array of angles.

    m_mu(xi) = sum over the signed-permutation orbit of mu of
    exp(i <nu, xi>); real for real angles, so the result is returned
    as a real array.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    total = np.zeros(points.shape[0], dtype=complex)
    for mu, c in poly.coeffs.items():
        mono = np.zeros(points.shape[0], dtype=complex)
        for nu in orbit(mu):
            mono = mono + np.exp(1j * (points @ np.asarray(nu, dtype=float)))
        total = total + float(c) * mono
    return total.real


def gram(lam, mu, family, quad):
    """Quadrature approximation of the alcove inner product of P_lam, P_mu.

    Symmetrized: (1/n!) integral over [0, pi]^n of the W-invariant
    integrand P_lam P_mu weight; compares against delta_{lam mu} / Delta_lam.
    """
    lam = check_partition(lam)
    n = len(lam)
    points, wgt = quad.grid(n)
    vals = (
        evaluate_P_grid(family.P(lam), points)
        * evaluate_P_grid(family.P(mu), points)
        * weight_grid(points, family.params, quad.tol)
    )
    return float(np.dot(wgt, vals)) / math.factorial(n)


def gram_report(labels, family, quad, tol=1e-14):
    """Orthogonality table rows: lambda, mu, value, target, abs_err, rel_err.

    rel_err is normalized by Delta_lam^(-1/2) Delta_mu^(-1/2), which on
    the diagonal reduces to the plain relative error.
    """
    labels = [check_partition(l) for l in labels]
    params = family.params
    rows = []
    for a, lam in enumerate(labels):
        for mu in labels[a:]:
            val = gram(lam, mu, family, quad)
            dl = norm_Delta(lam, params, tol).value
            dm = norm_Delta(mu, params, tol).value
            target = 1.0 / dl if lam == mu else 0.0
            abs_err = abs(val - target)
            rows.append(
                {
                    "lambda": list(lam),
                    "mu": list(mu),
                    "value": val,
                    "target": target,
                    "abs_err": abs_err,
                    "rel_err": abs_err * math.sqrt(dl * dm),
                }
            )
    return rows


def fourier_forward(f, points, family, tol=1e-14):
    """Transform of a finitely supported lattice function, sampled on angles.

    (F f)(xi) = sum_lam f(lam) conj(P_lam(xi)) Delta_lam; P_lam is real
    at real angles, so the conjugation is vacuous but kept for shape.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    params = family.params
    out = np.zeros(points.shape[0], dtype=float)
    for lam, val in f.values.items():
        dl = norm_Delta(lam, params, tol).value
        out = out + float(val) * dl * evaluate_P_grid(family.P(lam), points)
    return out


def fourier_inverse(fhat_values, lam, family, quad):
    """Inverse transform at one site from samples on the quadrature grid.

    (F^{-1} fhat)(lam) = (1/n!) sum_k w_k fhat(xi_k) P_lam(xi_k) weight(xi_k);
    fhat_values must be sampled on quad.grid(n) in order.
    """
    lam = check_partition(lam)
    n = len(lam)
    points, wgt = quad.grid(n)
    fhat_values = np.asarray(fhat_values)
    if fhat_values.shape[0] != points.shape[0]:
        raise ParamDomainError("sample array does not match the quadrature grid")
    vals = fhat_values * evaluate_P_grid(family.P(lam), points) * weight_grid(
        points, family.params, quad.tol
    )
    return complex(np.dot(wgt, vals)) / math.factorial(n)


@dataclass
class ConjugatedMatrix:
    """Symmetric truncation of Delta^(1/2) (H_l + eps0 when l=1) Delta^(-1/2).

    Off-diagonal entries are filled symmetrically from the exact rational
    product of the two opposite hop coefficients (the Delta ratios cancel
    by detailed balance, which is asserted, not assumed); dropped lists
    the hops leaving the cutoff.
    """

    labels: list
    matrix: np.ndarray
    dropped: list


def conjugated_H_matrix(l, cutoff, params, n=None):
    if n is None:
        raise ParamDomainError("rank n is required")
    labels = sorted(partitions_max_weight(n, cutoff), key=total_order_key)
    index = {lam: i for i, lam in enumerate(labels)}
    eps = epsilon0(params, n) if l == 1 else Fraction(0)
    size = len(labels)
    mat = np.zeros((size, size))
    hops = {}
    dropped = []
    for lam in labels:
        for term in hop_terms(l, lam, params):
            if term.target == lam:
                mat[index[lam], index[lam]] = float(term.coefficient + eps)
            elif term.target in index:
                hops[(lam, term.target)] = term.coefficient
            else:
                dropped.append(
                    {"source": list(lam), "target": list(term.target), "coeff": float(term.coefficient)}
                )
    done = set()
    for (lam, mu), c in hops.items():
        if (lam, mu) in done:
            continue
        done.add((lam, mu))
        done.add((mu, lam))
        cback = hops.get((mu, lam))
        if cback is None:
            raise StructureError(f"one-sided hop {lam} -> {mu}: no reverse coefficient")
        if norm_ratio(lam, params) * c != norm_ratio(mu, params) * cback:
            raise StructureError(f"detailed balance fails on hop {lam} -> {mu}")
        prod = c * cback
        if prod < 0:
            raise StructureError(f"opposite hop coefficients differ in sign on {lam} -> {mu}")
        entry = math.sqrt(float(prod))
        if c < 0:
            entry = -entry
        mat[index[lam], index[mu]] = entry
        mat[index[mu], index[lam]] = entry
    return ConjugatedMatrix(labels=labels, matrix=mat, dropped=dropped)


def evolve(initial, time, cutoff, params, n=None, l=1):
    """Unitary evolution exp(i conjugated_H time) of a truncated state.

    initial: LatticeFunction or mapping partition -> value; values may be
    complex.  Returns a dict partition -> complex amplitude.  Support at
    the cutoff boundary triggers a leakage warning estimated from the
    dropped hop coefficients acting on the initial state.
    """
    values = initial.values if isinstance(initial, LatticeFunction) else dict(initial)
    values = {check_partition(k): complex(v) for k, v in values.items() if v != 0}
    if n is None:
        if not values:
            raise ParamDomainError("cannot infer rank from an empty state")
        n = len(next(iter(values)))
    conj = conjugated_H_matrix(l, cutoff, params, n=n)
    index = {lam: i for i, lam in enumerate(conj.labels)}
    for lam in values:
        if lam not in index:
            raise ParamDomainError(f"initial support {lam} exceeds the cutoff {cutoff}")
    leak = sum(
        abs(r["coeff"] * values.get(tuple(r["source"]), 0.0)) for r in conj.dropped
    )
    if leak > 0:
        warnings.warn(
            f"initial support touches the truncation boundary; leakage estimate {leak:.3e}",
            RuntimeWarning,
            stacklevel=2,
        )
    v0 = np.zeros(len(conj.labels), dtype=complex)
    for lam, val in values.items():
        v0[index[lam]] = val
    evals, evecs = np.linalg.eigh(conj.matrix)
    phases = np.exp(1j * evals * float(time))
    vt = evecs @ (phases * (evecs.T @ v0))
    return {lam: complex(vt[i]) for lam, i in index.items() if vt[i] != 0}
