"""Exact rationals, q-Pochhammer symbols, and the model parameter set.

All structural identities in this package are checked in exact rational
arithmetic; floating point enters only through infinite products,
quadrature, and eigensolves.  The exact side runs on ``fractions.Fraction``
(arbitrary-precision rationals from the standard library); the floating
side is plain ``float``/``complex`` double precision.

Parameters live in the hatted coordinates ``q, t, (that0, that1, that2)``.
The unhatted couplings are derived as

    t0 = that1*that2/q,   t1 = that0*that2,   t2 = that0*that1,   t3 = 1,

which makes the square roots appearing in hop coefficients exact:
sqrt(q*t0/(t1*t2)) = 1/that0 and sqrt(t1*t2/(q*t0)) = that0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParamDomainError, TruncationCapError

__all__ = [
    "Rational",
    "parse_rational",
    "qpoch_finite",
    "qpoch_infinite",
    "truncation_order",
    "ParamSet",
    "params_from_hat",
]

Rational = Fraction

#: hard cap on the number of factors kept in an infinite q-product
MAX_QPOCH_FACTORS = 10**6


def parse_rational(text):
    """Parse ``"p/q"`` or a decimal string into an exact Fraction.

    Decimal strings convert exactly (power-of-ten denominator), so
    ``parse_rational("0.2") == Fraction(1, 5)``.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ParamDomainError(
            "refusing to parse a float as a rational; pass a string or Fraction"
        )
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParamDomainError(f"cannot parse rational from {text!r}: {exc}") from None


def qpoch_finite(x, m, q):
    """Finite q-Pochhammer symbol (x; q)_m = prod_{l=0}^{m-1} (1 - x q^l).

    Exact when ``x`` and ``q`` are Fractions.  ``m`` must be a
    nonnegative integer; (x; q)_0 = 1.
    """
    if m < 0 or m != int(m):
        raise ParamDomainError(f"q-Pochhammer order m must be a nonnegative integer, got {m!r}")
    # seed a Fraction on exact inputs so downstream divisions stay exact
    exact = isinstance(x, (int, Fraction)) and isinstance(q, (int, Fraction))
    out = Fraction(1) if exact else 1
    qp = 1
    for _ in range(int(m)):
        out = out * (1 - x * qp)
        qp = qp * q
    return out


def truncation_order(x, q, tol):
    """Smallest N with |x| |q|^N < tol (N = 0 when |x| < tol already)."""
    ax = abs(x)
    if ax < tol:
        return 0
    aq = abs(q)
    if aq == 0:
        return 1
    # ceil of log(tol/|x|)/log|q|, computed defensively against rounding
    n = int(math.ceil((math.log(tol) - math.log(ax)) / math.log(aq)))
    n = max(n, 0)
    while ax * aq**n >= tol:
        n += 1
    return n


def qpoch_infinite(x, q, tol=1e-16, max_factors=MAX_QPOCH_FACTORS):
    """Infinite q-Pochhammer symbol (x; q)_inf, truncated.

    The product prod_{l>=0} (1 - x q^l) is cut at the smallest N with
    |x| |q|^N < tol.  Since |log prod_{l>=N} (1 - x q^l)| <=
    sum_{l>=N} |x| |q|^l / (1 - |x q^l|), the neglected tail changes the
    result by a relative amount bounded by about ``2 * tol / (1 - |q|)``
    once tol <= 1/2, which is the documented accuracy of this routine.

    Requires |q| < 1; raises TruncationCapError when the needed number of
    factors exceeds ``max_factors`` (q extremely close to 1).
    """
    aq = abs(q)
    if aq >= 1:
        raise ParamDomainError(f"qpoch_infinite requires |q| < 1, got |q| = {aq}")
    xf = complex(x) if isinstance(x, complex) else float(x)
    qf = complex(q) if isinstance(q, complex) else float(q)
    n = truncation_order(xf, qf, tol)
    if n > max_factors:
        raise TruncationCapError(
            f"(x; q)_inf needs {n} factors for tol={tol} at |q|={aq}; cap is {max_factors}"
        )
    out = 1.0
    term = xf
    for _ in range(n):
        out = out * (1.0 - term)
        term = term * qf
    if out != out or (isinstance(out, complex) and cmath.isinf(out)) or (
        isinstance(out, float) and math.isinf(out)
    ):
        raise ParamDomainError(f"qpoch_infinite produced a non-finite value for x={x!r}, q={q!r}")
    return out


def _check_open_unit(name, value):
    if not 0 < value < 1:
        raise ParamDomainError(f"parameter {name} must lie in (0, 1), got {value}")


def _check_hat(name, value):
    if not -1 < value < 1:
        raise ParamDomainError(f"parameter {name} must lie in (-1, 1), got {value}")
    if value == 0:
        raise ParamDomainError(f"parameter {name} must be nonzero")


@dataclass(frozen=True)
class ParamSet:
    """Model parameters in hatted coordinates.

    q and t are rationals in (0, 1); the three hatted couplings are
    nonzero rationals in (-1, 1).  The derived unhatted couplings
    t0, t1, t2 (t3 is identically 1) are exact rationals.
    """

    q: Fraction
    t: Fraction
    that: tuple

    @property
    def that0(self):
        return self.that[0]

    @property
    def that1(self):
        return self.that[1]

    @property
    def that2(self):
        return self.that[2]

    @property
    def t0(self):
        return self.that[1] * self.that[2] / self.q

    @property
    def t1(self):
        return self.that[0] * self.that[2]

    @property
    def t2(self):
        return self.that[0] * self.that[1]

    @property
    def t3(self):
        return Fraction(1)

    def as_dict(self):
        return {
            "q": str(self.q),
            "t": str(self.t),
            "that0": str(self.that[0]),
            "that1": str(self.that[1]),
            "that2": str(self.that[2]),
        }


def params_from_hat(q, t, that, validate=True):
    """Build a ParamSet from hatted parameters, validating the domain.

    Accepts Fractions or strings ("p/q" or decimal).  With
    ``validate=False`` the domain checks are skipped; that path exists
    for boundary studies such as the vanishing-Morse limit that2 = 0.
    """
    q = parse_rational(q)
    t = parse_rational(t)
    that = tuple(parse_rational(v) for v in that)
    if len(that) != 3:
        raise ParamDomainError(f"expected exactly three hatted couplings, got {len(that)}")
    if validate:
        _check_open_unit("q", q)
        _check_open_unit("t", t)
        for r, value in enumerate(that):
            _check_hat(f"that{r}", value)
    return ParamSet(q=q, t=t, that=that)
