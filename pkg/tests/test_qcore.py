import random
from fractions import Fraction

import pytest

from rsmorse.errors import ParamDomainError, TruncationCapError
from rsmorse.qcore import (
    params_from_hat,
    parse_rational,
    qpoch_finite,
    qpoch_infinite,
    truncation_order,
)

from conftest import PARAM_SETS


class TestParseRational:
    def test_forms(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("0.25") == Fraction(1, 4)
        assert parse_rational("-7/3") == Fraction(-7, 3)
        assert parse_rational(" 2 ") == 2
        assert parse_rational(Fraction(5, 9)) == Fraction(5, 9)
        assert parse_rational(3) == 3

    def test_decimal_is_exact(self):
        assert parse_rational("0.2") == Fraction(1, 5)

    def test_rejects_float_and_garbage(self):
        with pytest.raises(ParamDomainError):
            parse_rational(0.25)
        with pytest.raises(ParamDomainError):
            parse_rational("three halves")
        with pytest.raises(ParamDomainError):
            parse_rational("1/0")


class TestQpochFinite:
    def test_empty_product(self):
        assert qpoch_finite(Fraction(7, 3), 0, Fraction(1, 2)) == 1

    def test_single_factor(self):
        x = Fraction(2, 7)
        assert qpoch_finite(x, 1, Fraction(1, 3)) == 1 - x

    def test_two_factor_value(self):
        # (1/2; 1/3)_2 = (1 - 1/2)(1 - 1/6)
        assert qpoch_finite(Fraction(1, 2), 2, Fraction(1, 3)) == Fraction(5, 12)

    def test_recurrence(self):
        rng = random.Random(5)
        for _ in range(25):
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            q = Fraction(rng.randint(1, 8), 9)
            m = rng.randint(0, 5)
            assert qpoch_finite(x, m + 1, q) == qpoch_finite(x, m, q) * (1 - x * q**m)

    def test_exact_inputs_give_fraction_even_at_m_zero(self):
        # regression: an int result here used to poison downstream
        # divisions with float arithmetic
        a = qpoch_finite(Fraction(1, 2), 0, Fraction(1, 3))
        b = qpoch_finite(Fraction(1, 3), 0, Fraction(1, 3))
        assert isinstance(a, Fraction)
        assert isinstance(a / b, Fraction)

    def test_negative_order_rejected(self):
        with pytest.raises(ParamDomainError):
            qpoch_finite(Fraction(1, 2), -1, Fraction(1, 3))


class TestQpochInfinite:
    def test_zero_argument(self):
        assert qpoch_infinite(0.0, 0.5) == 1.0

    def test_euler_point(self):
        # (1/2; 1/2)_inf against a brute-force 200-term product
        direct = 1.0
        for l in range(200):
            direct *= 1.0 - 0.5 * 0.5**l
        got = qpoch_infinite(0.5, 0.5, tol=1e-16)
        assert abs(got - direct) < 1e-14
        assert abs(got - 0.2887880951) < 1e-9

    def test_long_product_oracle(self):
        direct = 1.0
        for l in range(50):
            direct *= 1.0 - 0.3 * 0.3**l
        assert abs(qpoch_infinite(0.3, 0.3, tol=1e-16) - direct) < 1e-14

    def test_functional_equation(self):
        rng = random.Random(11)
        q = 0.7
        for _ in range(20):
            x = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
            lhs = qpoch_infinite(x, q, tol=1e-16)
            rhs = (1 - x) * qpoch_infinite(x * q, q, tol=1e-16)
            assert abs(lhs - rhs) < 1e-12

    def test_domain_and_cap(self):
        with pytest.raises(ParamDomainError):
            qpoch_infinite(0.5, 1.0)
        with pytest.raises(TruncationCapError):
            qpoch_infinite(0.5, 0.99, tol=1e-16, max_factors=10)


class TestTruncationOrder:
    def test_below_tol(self):
        assert truncation_order(1e-20, 0.5, 1e-16) == 0

    def test_minimality(self):
        rng = random.Random(3)
        for _ in range(30):
            x = rng.uniform(0.1, 5.0)
            q = rng.uniform(0.05, 0.95)
            tol = 10.0 ** rng.randint(-16, -4)
            n = truncation_order(x, q, tol)
            assert x * q**n < tol
            if n > 0:
                assert x * q ** (n - 1) >= tol


class TestParamSet:
    def test_derived_couplings(self):
        p = params_from_hat(Fraction(1, 3), Fraction(1, 2), (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)))
        assert p.t0 == Fraction(1, 5)
        assert p.t1 == Fraction(1, 10)
        assert p.t2 == Fraction(1, 6)
        assert p.t3 == 1

    def test_equal_hats_give_equal_couplings(self):
        p = params_from_hat(Fraction(1, 3), Fraction(1, 2), (Fraction(1, 2), Fraction(1, 5), Fraction(1, 5)))
        assert p.t1 == p.t2

    def test_square_root_branch_identity(self):
        for p in PARAM_SETS:
            assert p.that0**2 == p.t1 * p.t2 / (p.q * p.t0)

    def test_string_inputs(self):
        p = params_from_hat("1/3", "0.5", ("0.5", "1/3", "1/5"))
        assert p.q == Fraction(1, 3)
        assert p.t == Fraction(1, 2)
        assert p.that == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))

    @pytest.mark.parametrize(
        "q,t,that",
        [
            ("2", "1/2", ("1/2", "1/3", "1/5")),
            ("1/3", "0", ("1/2", "1/3", "1/5")),
            ("1/3", "1/2", ("0", "1/3", "1/5")),
            ("1/3", "1/2", ("1/2", "1", "1/5")),
            ("1/3", "1/2", ("1/2", "1/3", "-1")),
        ],
    )
    def test_domain_violations(self, q, t, that):
        with pytest.raises(ParamDomainError):
            params_from_hat(q, t, that)

    def test_error_names_parameter(self):
        with pytest.raises(ParamDomainError, match="q"):
            params_from_hat("2", "1/2", ("1/2", "1/3", "1/5"))

    def test_validate_false_permits_boundary(self):
        p = params_from_hat("1/3", "1/2", ("1/2", "1/3", "0"), validate=False)
        assert p.that2 == 0
        assert p.t0 == 0

    def test_wrong_coupling_count(self):
        with pytest.raises(ParamDomainError):
            params_from_hat("1/3", "1/2", ("1/2", "1/3"))
