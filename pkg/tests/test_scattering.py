"""Scattering factors, square-root branches, free kernel, and sorting."""

import cmath
import math
from fractions import Fraction

import pytest

from conftest import PARAM_SETS
from rsmorse.combinatorics import SignedPermutation
from rsmorse.errors import IrregularPointError
from rsmorse.latticeop import LatticeFunction
from rsmorse.qcore import params_from_hat, qpoch_infinite
from rsmorse.scattering import (
    S_hat,
    S_hat_sorted,
    apply_H0,
    chi,
    free_eigen_residual,
    s_one,
    s_pair,
    sorting_permutation,
    sqrt_branch_s,
    sqrt_branch_s0,
)

SAMPLES = [0.3, 0.9, 1.7, 2.4, 3.0, -1.2, 5.0]


class TestPairFactor:
    def test_value_at_zero(self, any_params):
        assert s_pair(0.0, any_params) == 1

    def test_reflection_is_conjugate_and_inverse(self, any_params):
        for x in SAMPLES:
            v = s_pair(x, any_params)
            w = s_pair(-x, any_params)
            assert abs(w - v.conjugate()) < 1e-12
            assert abs(w * v - 1) < 1e-12

    def test_unimodular(self, any_params):
        for x in SAMPLES:
            assert abs(abs(s_pair(x, any_params)) - 1) < 1e-12

    def test_free_at_equal_couplings(self):
        # t = q collapses the quotient identically
        p = params_from_hat(Fraction(1, 3), Fraction(1, 3), (Fraction(1, 2), Fraction(-1, 3), Fraction(1, 5)))
        for x in SAMPLES:
            assert abs(s_pair(x, p) - 1) < 1e-15


class TestOneBodyFactor:
    def test_unimodular(self, any_params):
        for x in SAMPLES:
            assert abs(abs(s_one(x, any_params)) - 1) < 1e-12

    def test_reflection_inverse(self, any_params):
        for x in SAMPLES:
            assert abs(s_one(-x, any_params) * s_one(x, any_params) - 1) < 1e-12

    def test_small_q_limit(self):
        # with all reflection couplings off, s0 = (q e^{2ix})_inf / (q e^{-2ix})_inf
        # which is (1 - q e^{2ix})/(1 - q e^{-2ix}) up to O(q^2)
        q = Fraction(1, 1000)
        p = params_from_hat(q, Fraction(1, 2), (0, 0, 0), validate=False)
        for x in (0.4, 1.3, 2.6):
            z = cmath.exp(2j * x)
            first = (1 - float(q) * z) / (1 - float(q) / z)
            assert abs(s_one(x, p) - first) < 10 * float(q) ** 2


class TestFullMatrix:
    def test_single_variable_reduces(self, any_params):
        for x in (0.7, 2.1):
            assert S_hat((x,), any_params) == s_one(x, any_params)

    def test_two_variable_factorization(self, params0):
        # rebuild the three factors directly from infinite products
        q = float(params0.q)
        t = float(params0.t)

        def pair(x):
            zp, zm = cmath.exp(1j * x), cmath.exp(-1j * x)
            return (qpoch_infinite(q * zp, q) * qpoch_infinite(t * zm, q)) / (
                qpoch_infinite(q * zm, q) * qpoch_infinite(t * zp, q)
            )

        def one(x):
            zp, zm = cmath.exp(1j * x), cmath.exp(-1j * x)
            out = qpoch_infinite(q * zp * zp, q) / qpoch_infinite(q * zm * zm, q)
            for th in params0.that:
                out *= qpoch_infinite(float(th) * zm, q) / qpoch_infinite(float(th) * zp, q)
            return out

        xi = (2.3, 0.8)
        expected = pair(xi[0] - xi[1]) * pair(xi[0] + xi[1]) * one(xi[0]) * one(xi[1])
        assert abs(S_hat(xi, params0) - expected) < 1e-12

    def test_unimodular(self, any_params):
        pts = [(0.5,), (2.9, 1.1), (2.8, 1.9, 0.6)]
        for xi in pts:
            assert abs(abs(S_hat(xi, any_params)) - 1) < 1e-12


class TestBranches:
    def test_value_at_zero(self, any_params):
        assert sqrt_branch_s(0.0, any_params) == 1
        assert sqrt_branch_s0(0.0, any_params) == 1

    def test_squares(self, any_params):
        for x in SAMPLES:
            assert abs(sqrt_branch_s(x, any_params) ** 2 - s_pair(x, any_params)) < 1e-12
            assert abs(sqrt_branch_s0(x, any_params) ** 2 - s_one(x, any_params)) < 1e-12

    def test_unimodular(self, any_params):
        for x in SAMPLES:
            assert abs(abs(sqrt_branch_s(x, any_params)) - 1) < 1e-14
            assert abs(abs(sqrt_branch_s0(x, any_params)) - 1) < 1e-14


class TestFreeKernel:
    def test_single_variable_sine(self):
        for m in range(4):
            for xi in (0.3, 1.1, 2.7):
                expected = math.sqrt(2 / math.pi) * math.sin((m + 1) * xi)
                assert abs(chi((xi,), (m,)) - expected) < 1e-12

    def test_anti_invariance(self):
        w = SignedPermutation(sigma=(1, 0), signs=(1, -1))
        xi = [1.9, 0.8]
        for lam in [(0, 0), (2, 1), (3, 3)]:
            assert abs(chi(w.apply(xi), lam) - w.sign() * chi(xi, lam)) < 1e-12
        w3 = SignedPermutation(sigma=(2, 0, 1), signs=(-1, 1, -1))
        xi3 = [2.5, 1.4, 0.6]
        assert abs(chi(w3.apply(xi3), (1, 1, 0)) - w3.sign() * chi(xi3, (1, 1, 0))) < 1e-12

    def test_vanishes_on_walls(self):
        for lam in [(0, 0), (2, 1)]:
            assert abs(chi((0.0, 0.4), lam)) < 1e-12
            assert abs(chi((math.pi, 0.4), lam)) < 1e-12
            assert abs(chi((1.2, 0.0), lam)) < 1e-12

    def test_degenerate_angles_kill_it(self):
        # tied angles are fixed by a transposition of sign -1
        assert abs(chi((1.3, 1.3), (1, 0))) < 1e-12


class TestFreeLaplacian:
    def test_single_site(self):
        out = apply_H0(LatticeFunction(1, {(0,): 1}))
        assert out.values == {(1,): 1}

    def test_linearity(self):
        f = LatticeFunction(2, {(1, 0): 2, (2, 2): -1})
        g = LatticeFunction(2, {(0, 0): 3})
        left = apply_H0(f.plus(g))
        right = apply_H0(f).plus(apply_H0(g))
        assert left.minus(right).is_zero()

    def test_respects_cone(self):
        out = apply_H0(LatticeFunction(2, {(1, 1): 1}))
        # (1,1) -> (2,1) and (1,0); the moves to (0,1) and (1,2) are not partitions
        assert set(out.values) == {(2, 1), (1, 0)}

    def test_eigen_identity(self):
        pts = {
            1: [(0,), (1,), (4,)],
            2: [(0, 0), (1, 1), (2, 0), (3, 1)],
            3: [(0, 0, 0), (1, 1, 0), (2, 1, 1)],
        }
        angles = {1: (1.3,), 2: (2.2, 0.9), 3: (2.6, 1.5, 0.4)}
        for n, lams in pts.items():
            for lam in lams:
                assert abs(free_eigen_residual(angles[n], lam)) < 1e-12


class TestSorting:
    def test_single_descending(self):
        point = sorting_permutation((2.5,))
        assert point.regular
        applied = point.w.apply([-2 * math.sin(2.5)])
        assert applied[0] > 0

    def test_zero_gradient_irregular(self):
        assert not sorting_permutation((0.0,)).regular
        assert not sorting_permutation((math.pi, 1.0)).regular

    def test_tied_magnitudes_irregular(self):
        assert not sorting_permutation((2 * math.pi / 3, math.pi / 3)).regular

    def test_two_variable_sorting(self):
        point = sorting_permutation((2.5, 0.5))
        assert point.regular
        grad = [-2 * math.sin(2.5), -2 * math.sin(0.5)]
        applied = point.w.apply(grad)
        assert applied[0] > applied[1] > 0

    def test_sorted_matrix_matches_direct(self, params0):
        xi = (2.5, 0.5)
        point = sorting_permutation(xi)
        direct = S_hat(point.w.apply(list(xi)), params0)
        assert S_hat_sorted(xi, params0) == direct

    def test_sorted_matrix_rejects_irregular(self, params0):
        with pytest.raises(IrregularPointError):
            S_hat_sorted((2 * math.pi / 3, math.pi / 3), params0)
        with pytest.raises(IrregularPointError):
            S_hat_sorted((0.0,), params0)
