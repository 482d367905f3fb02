"""Mahler and L^p norms, the inequality suite, the conformal factor."""

import math

import numpy as np
import pytest

from stablepairs.errors import PreconditionError
from stablepairs.norms import (
    arestov_check,
    conformal_theta,
    fs_pointwise,
    harmonic,
    jensen_check,
    l2_norm_log_exact,
    log_ratio_sq,
    lp_norm,
    sup_norm,
)
from stablepairs.poly import HomogeneousPolynomial, VariableShape
from stablepairs.verify import random_dense_poly, random_sl

V3 = VariableShape.vector(3)


def mono(nvars, exp):
    return HomogeneousPolynomial.monomial(VariableShape.vector(nvars), exp, 1, "exact")


class TestPointwise:
    def test_monomial_at_vertex(self):
        assert fs_pointwise(mono(3, (2, 0, 0)), [1, 0, 0]) == pytest.approx(1.0)

    def test_bounded_by_one(self, rng):
        P = mono(3, (2, 0, 0))
        for _ in range(10):
            z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            assert fs_pointwise(P, z) <= 1.0 + 1e-12

    def test_scale_invariance(self, rng):
        P = random_dense_poly(rng, 3, 3)
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert fs_pointwise(P, z) == pytest.approx(fs_pointwise(P, 2.0 * z), rel=1e-10)

    def test_zero_point_rejected(self):
        with pytest.raises(PreconditionError):
            fs_pointwise(mono(3, (1, 1, 0)), [0, 0, 0])


class TestLpNorm:
    def test_dirichlet_identity(self):
        # log ||z0^2||_0 = -(d/2) H_N = -1.5 for N = 2
        est = lp_norm(mono(3, (2, 0, 0)), 0, samples=200_000, seed=7)
        assert abs(est.log_value + 1.5) <= 3 * est.stderr

    def test_constant_polynomial(self):
        est = lp_norm(HomogeneousPolynomial.constant(V3, 1), 0, samples=1000, seed=0)
        assert est.log_value == 0.0 and est.stderr == 0.0

    def test_every_monomial_same_mahler(self):
        # Dirichlet symmetry: the Mahler measure depends only on the degree
        a = lp_norm(mono(3, (1, 1, 1)), 0, samples=150_000, seed=3)
        b = lp_norm(mono(3, (3, 0, 0)), 0, samples=150_000, seed=4)
        assert abs(a.log_value - b.log_value) <= 3 * (a.stderr + b.stderr)

    def test_l2_against_exact_gram(self, rng):
        P = random_dense_poly(rng, 3, 2)
        est = lp_norm(P, 2.0, samples=200_000, seed=5)
        assert abs(est.log_value - l2_norm_log_exact(P)) <= 4 * est.stderr

    def test_min_samples_enforced(self):
        with pytest.raises(PreconditionError):
            lp_norm(mono(3, (1, 0, 0)), 0, samples=10, seed=0)

    def test_seeded_reproducible(self):
        a = lp_norm(mono(3, (2, 0, 0)), 0, samples=2000, seed=11)
        b = lp_norm(mono(3, (2, 0, 0)), 0, samples=2000, seed=11)
        assert a.log_value == b.log_value and a.stderr == b.stderr


class TestSupNorm:
    def test_monomial_equality(self):
        assert sup_norm(mono(3, (4, 0, 0)), samples=4000, seed=1) == pytest.approx(1.0, abs=1e-8)

    def test_lower_bound_of_true_sup(self, rng):
        # the certified bound never exceeds a dense sample maximum by more
        # than the ascent could truly gain; check it dominates plain sampling
        P = random_dense_poly(rng, 3, 3)
        crude = -math.inf
        pts = rng.standard_normal((4000, 3)) + 1j * rng.standard_normal((4000, 3))
        for z in pts:
            crude = max(crude, fs_pointwise(P, z))
        assert sup_norm(P, samples=4000, seed=2) ** 2 >= crude - 1e-12


class TestArestovJensen:
    def test_monomial_lower_equality(self):
        # the sandwich collapses for z0^d: log ||P||_0 = -(d/2) H_N + log sup
        rep = arestov_check(mono(3, (3, 0, 0)), samples=150_000, seed=2)
        assert rep["lower_holds"] and rep["upper_holds"]
        assert abs(rep["lower_margin"]) <= rep["slack"] + 1e-9

    def test_random_suite(self, rng):
        for _ in range(8):
            P = random_dense_poly(rng, int(rng.integers(2, 4)), int(rng.integers(1, 6)))
            rep = arestov_check(P, samples=60_000, seed=int(rng.integers(1e6)))
            assert rep["lower_holds"] and rep["upper_holds"]
            jen = jensen_check(P, 2.0, samples=60_000, seed=int(rng.integers(1e6)))
            assert jen["holds"]


class TestUnitaryInvariance:
    def test_mahler_under_unitary(self, rng):
        P = random_dense_poly(rng, 3, 3)
        u = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))[0]
        sig = random_sl(rng, 3)
        a, ea = log_ratio_sq(P, sig, 0.0, samples=150_000, seed=8)
        b, eb = log_ratio_sq(P, u @ sig, 0.0, samples=150_000, seed=9)
        assert abs(a - b) <= 3 * (ea + eb) + 1e-6


class TestConformalTheta:
    def test_monomial_against_exact_pieces(self):
        # theta = 2(-(d/2) H_N) - 2 log ||z0^d||_L2, both sides independent
        d, N = 2, 2
        S = mono(3, (2, 0, 0))
        rep = conformal_theta(S, samples=200_000, seed=12)
        expected = 2 * (-(d / 2) * harmonic(N)) - 2 * l2_norm_log_exact(S)
        assert abs(rep["theta"] - expected) <= 3 * rep["stderr"]

    def test_scaling_invariance(self, rng):
        P = random_dense_poly(rng, 3, 2)
        a = conformal_theta(P, samples=50_000, seed=1)
        b = conformal_theta(P * (3.0 + 0j), samples=50_000, seed=1)
        assert a["theta"] == pytest.approx(b["theta"], abs=1e-9)
