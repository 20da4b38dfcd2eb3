import cmath
import dataclasses
import random
from fractions import Fraction

import pytest

import rsmorse.polynomials as polynomials
from rsmorse.combinatorics import eval_E, ideal, partitions_max_weight
from rsmorse.dualop import apply_Hhat_l, generic_points
from rsmorse.errors import DegeneracyError
from rsmorse.polynomials import build_P, leading_coeff, normalization_point, pieri_residual
from rsmorse.qcore import qpoch_finite

from conftest import PARAM_SETS, family_for


class TestLeadingCoeff:
    def test_empty_label(self):
        for p in PARAM_SETS:
            assert leading_coeff((0, 0), p) == 1

    def test_single_variable(self):
        for p in PARAM_SETS:
            a0, a1, a2 = p.that
            expected = a0 / ((1 - a0 * a1) * (1 - a0 * a2))
            assert leading_coeff((1,), p) == expected

    def test_two_variable_cross_factor(self):
        for p in PARAM_SETS:
            a0, a1, a2 = p.that
            q, t = p.q, p.t
            one_body = (
                a0 * t / (qpoch_finite(a0 * a1 * t, 1, q) * qpoch_finite(a0 * a2 * t, 1, q))
            )
            cross = qpoch_finite(t, 1, q) / qpoch_finite(t**2, 1, q)
            assert leading_coeff((1, 0), p) == one_body * cross


class TestBuildP:
    def test_constant(self):
        for p in PARAM_SETS:
            poly = family_for(p).P((0, 0))
            assert poly.coeffs == {(0, 0): 1}

    def test_single_variable_eigen_equation(self):
        for p in PARAM_SETS:
            poly = family_for(p).P((1,))
            image = apply_Hhat_l(1, poly, p)
            assert image.minus(poly.scaled(eval_E((1,), p))).is_zero()

    def test_leading_term(self):
        for p in PARAM_SETS:
            fam = family_for(p)
            for lam in [(1,), (2,), (1, 0), (1, 1), (2, 1)]:
                assert fam.P(lam).coeffs[lam] == leading_coeff(lam, p)

    def test_normalization_point_value(self):
        for p in PARAM_SETS:
            fam = family_for(p)
            for lam in [(0,), (2,), (1, 0), (2, 1), (1, 1, 0)]:
                z = normalization_point(len(lam), p)
                assert fam.P(lam).evaluate(z) == 1

    def test_support_in_ideal(self):
        p = PARAM_SETS[0]
        poly = family_for(p).P((2, 1))
        members = set(ideal((2, 1)).members)
        assert set(poly.support()) <= members

    def test_real_even_on_torus(self):
        p = PARAM_SETS[2]
        poly = family_for(p).P((2, 1))
        for xi in [(0.7, 0.3), (2.1, 1.1)]:
            z = tuple(cmath.exp(1j * v) for v in xi)
            zbar = tuple(cmath.exp(-1j * v) for v in xi)
            val = poly.evaluate(z)
            assert abs(val.imag) < 1e-12
            assert abs(val - poly.evaluate(zbar)) < 1e-12

    def test_eigenvalue_collision_reported(self):
        class FakeFamily:
            params = PARAM_SETS[0]
            rows = {
                (1,): {(1,): Fraction(5), (0,): Fraction(3)},
                (0,): {(0,): Fraction(5)},
            }

            def _ensure_rows(self, root):
                return ideal(root)

            def row(self, mu):
                return self.rows[mu]

        with pytest.raises(DegeneracyError, match="collision"):
            build_P((1,), PARAM_SETS[0], family=FakeFamily())


class TestPieri:
    def test_residual_zero_samples(self):
        rng = random.Random(2)
        for p in PARAM_SETS:
            fam = family_for(p)
            for n, lam in [(1, (2,)), (2, (1, 1)), (2, (2, 0))]:
                z = generic_points(n, 1, p, seed=rng.randint(0, 10**6))[0]
                for l in range(1, n + 1):
                    assert pieri_residual(l, lam, z, fam) == 0

    def test_residual_detects_wrong_coefficients(self, monkeypatch):
        # doubling one family of hop coefficients must break the recurrence
        p = PARAM_SETS[0]
        fam = family_for(p)
        real = polynomials.hop_terms

        def crooked(l, lam, params):
            out = []
            for term in real(l, lam, params):
                if len(term.Jplus) == 2:
                    term = dataclasses.replace(term, coefficient=2 * term.coefficient)
                out.append(term)
            return out

        monkeypatch.setattr(polynomials, "hop_terms", crooked)
        z = generic_points(2, 1, p, seed=77)[0]
        assert pieri_residual(2, (1, 0), z, fam) != 0


def test_family_rows_are_shared():
    p = PARAM_SETS[0]
    fam = family_for(p)
    fam.P((2, 1))
    for mu in partitions_max_weight(2, 3):
        assert mu in fam._rows
