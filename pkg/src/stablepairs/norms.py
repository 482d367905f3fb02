"""L^p and Mahler norms on projective space, and the inequality suite.

The pointwise Fubini-Study norm of a degree-d polynomial at [z] is

    |P|^2([z]) = |P(z)|^2 / (|z_0|^2 + ... )^d,

and the L^p norms integrate |P|^p against the unit-volume Fubini-Study
measure (p = 0 is the Mahler measure: exp of the mean of log |P|).  Uniform
sampling on P^M is a normalized standard complex Gaussian, which also gives
the exact monomial moments used as oracles in the tests:

    E Prod |u_i|^(2 a_i) = M! a! / (M+d)!   (u = z / |z|),

so log ||z^a||_0 = -(d/2) H_M for every degree-d monomial.

All estimates are seeded and reproducible; Monte-Carlo results carry their
sample standard error.  ``lp_norm(...).log_value`` is the log of the norm
itself (single bar); callers that work in the log tan^2 convention double it
explicitly.  The sup norm is a certified lower bound (multi-start ascent
refined to stationarity), which is the safe direction for every inequality
it enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from ._kernels import poly_log_abs, poly_values
from .errors import PreconditionError
from .poly import HomogeneousPolynomial, VariableShape

MIN_SAMPLES = 1_000


def harmonic(N: int) -> float:
    """H_N = sum_{j=1..N} 1/j; the Arestov constant is (d/2) H_N."""
    return sum(1.0 / j for j in range(1, N + 1))


@dataclass
class MahlerEstimate:
    """Monte-Carlo norm estimate: log value, standard error, provenance."""

    log_value: float
    stderr: float
    samples: int
    seed: int
    p: float

    def to_json(self) -> dict:
        return {
            "log_value": self.log_value,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
            "p": self.p,
        }


def _terms_arrays(P: HomogeneousPolynomial) -> Tuple[np.ndarray, np.ndarray]:
    items = P.sorted_terms()
    expo = np.array([e for e, _ in items], dtype=np.int64)
    coeffs = np.array([complex(c) for _, c in items], dtype=np.complex128)
    return expo, coeffs


def sample_points(nvars: int, samples: int, seed: int) -> np.ndarray:
    """Standard complex Gaussian rows; projectively uniform on P^(nvars-1)."""
    rng = np.random.default_rng(seed)
    return (
        rng.standard_normal((samples, nvars)) + 1j * rng.standard_normal((samples, nvars))
    ) / math.sqrt(2.0)


def transform_points(Z: np.ndarray, sigma: np.ndarray, shape: VariableShape) -> np.ndarray:
    """Row-substitution z -> z sigma applied per matrix row of each sample."""
    S = Z.shape[0]
    W = Z.reshape(S, shape.rows, shape.cols) @ sigma
    return W.reshape(S, shape.nvars)


def pointwise_log_fs(P: HomogeneousPolynomial, Z: np.ndarray,
                     sigma: Optional[np.ndarray] = None) -> np.ndarray:
    """log |sigma . P|_FS at each sample: log|P(z sigma)| - (d/2) log ||z||^2."""
    expo, coeffs = _terms_arrays(P.to_float())
    if sigma is not None:
        s = float(np.max(np.abs(sigma)))
        pts = transform_points(Z, sigma / s, P.shape)
        corr = P.degree * math.log(s)
    else:
        pts, corr = Z, 0.0
    logs = poly_log_abs(expo, coeffs, pts)
    z2 = np.sum(np.abs(Z) ** 2, axis=1)
    return logs + corr - 0.5 * P.degree * np.log(z2)


def fs_pointwise(P: HomogeneousPolynomial, z) -> float:
    """Squared pointwise Fubini-Study norm |P|^2([z]); scale-invariant."""
    z = np.asarray(z, dtype=np.complex128).reshape(1, -1)
    if z.shape[1] != P.shape.nvars:
        raise PreconditionError("point length does not match the polynomial shape")
    if not np.any(z):
        raise PreconditionError("zero point has no projective class")
    return float(np.exp(2.0 * pointwise_log_fs(P, z)[0]))


def lp_norm(P: HomogeneousPolynomial, p: float, samples: int = 200_000,
            seed: int = 0, sigma: Optional[np.ndarray] = None) -> MahlerEstimate:
    """Monte-Carlo estimate of log ||sigma . P||_p (p = 0 is Mahler)."""
    P.require_nonzero()
    if samples < MIN_SAMPLES:
        raise PreconditionError(f"need at least {MIN_SAMPLES} samples")
    if p < 0:
        raise PreconditionError("p must be >= 0")
    Z = sample_points(P.shape.nvars, samples, seed)
    Y = pointwise_log_fs(P, Z, sigma)
    if p == 0:
        return MahlerEstimate(
            log_value=float(np.mean(Y)),
            stderr=float(np.std(Y, ddof=1) / math.sqrt(samples)),
            samples=samples,
            seed=seed,
            p=0.0,
        )
    X = p * Y
    mx = float(np.max(X))
    w = np.exp(X - mx)
    m = float(np.mean(w))
    se_m = float(np.std(w, ddof=1) / math.sqrt(samples))
    return MahlerEstimate(
        log_value=(mx + math.log(m)) / p,
        stderr=se_m / (m * p),
        samples=samples,
        seed=seed,
        p=float(p),
    )


def log_ratio_sq(P: HomogeneousPolynomial, sigma: np.ndarray, p: float,
                 samples: int = 200_000, seed: int = 0) -> Tuple[float, float]:
    """(log ||sigma.P||_p^2 - log ||P||_p^2, stderr), common random numbers.

    For p = 0 the FS normalizers cancel pointwise, so the estimator is the
    mean of 2(log|P(z sigma)| - log|P(z)|), which has small variance for
    sigma near the unitaries.
    """
    P = P.to_float()
    expo, coeffs = _terms_arrays(P)
    Z = sample_points(P.shape.nvars, samples, seed)
    s = float(np.max(np.abs(sigma)))
    pts = transform_points(Z, sigma / s, P.shape)
    base = poly_log_abs(expo, coeffs, Z)
    moved = poly_log_abs(expo, coeffs, pts) + P.degree * math.log(s)
    if p == 0:
        D = 2.0 * (moved - base)
        return float(np.mean(D)), float(np.std(D, ddof=1) / math.sqrt(samples))
    z2 = 0.5 * P.degree * np.log(np.sum(np.abs(Z) ** 2, axis=1))
    est_moved = _log_mean_exp(p * (moved - z2))
    est_base = _log_mean_exp(p * (base - z2))
    val = 2.0 * (est_moved[0] - est_base[0]) / p
    err = 2.0 * (est_moved[1] + est_base[1]) / p
    return val, err


def _log_mean_exp(X: np.ndarray) -> Tuple[float, float]:
    mx = float(np.max(X))
    w = np.exp(X - mx)
    m = float(np.mean(w))
    se = float(np.std(w, ddof=1) / math.sqrt(X.size))
    return mx + math.log(m), se / m


def sup_norm(P: HomogeneousPolynomial, samples: int = 20_000, seed: int = 0,
             starts: int = 8, tol: float = 1e-8) -> float:
    """Certified lower bound for ||P||_inf: sample max plus projected ascent.

    Multi-start quasi-Newton ascent of log |P|_FS from the best sample
    points, refined to gradient stationarity `tol`; never claimed to be the
    exact supremum.
    """
    P = P.to_float().require_nonzero()
    nv = P.shape.nvars
    Z = sample_points(nv, samples, seed)
    Y = pointwise_log_fs(P, Z)
    order = np.argsort(Y)[::-1]
    expo, coeffs = _terms_arrays(P)
    grads = [_terms_arrays(P.derivative(v)) for v in range(nv)]
    d = P.degree

    def objective(x):
        z = (x[:nv] + 1j * x[nv:]).reshape(1, nv)
        val = poly_values(expo, coeffs, z)[0]
        z2 = float(np.sum(np.abs(z) ** 2))
        if val == 0 or z2 == 0:
            return 1e6, np.zeros(2 * nv)
        g = np.array(
            [poly_values(ge, gc, z)[0] if ge.size else 0.0 for ge, gc in grads]
        )
        ratio = g / val
        f = -(math.log(abs(val)) - 0.5 * d * math.log(z2))
        zz = z.ravel()
        grad_re = -(np.real(ratio) - d * np.real(zz) / z2)
        grad_im = -(-np.imag(ratio) - d * np.imag(zz) / z2)
        return f, np.concatenate([grad_re, grad_im])

    best = float(np.max(Y))
    for k in range(min(starts, samples)):
        z0 = Z[order[k]]
        x0 = np.concatenate([np.real(z0), np.imag(z0)])
        res = minimize(objective, x0, jac=True, method="L-BFGS-B",
                       options={"gtol": tol, "maxiter": 500})
        if math.isfinite(res.fun):
            best = max(best, -float(res.fun))
    return math.exp(best)


# ---------------------------------------------------------------------------
# inequality suite and the conformal factor
# ---------------------------------------------------------------------------


def arestov_check(P: HomogeneousPolynomial, samples: int = 200_000, seed: int = 0) -> dict:
    """Both sides of the sup/Mahler sandwich with 3-sigma slack margins."""
    N = P.shape.nvars - 1
    est0 = lp_norm(P, 0, samples=samples, seed=seed)
    log_sup = math.log(sup_norm(P, seed=seed + 1))
    constant = 0.5 * P.degree * harmonic(N)
    lower_margin = est0.log_value - (log_sup - constant)
    upper_margin = log_sup - est0.log_value
    slack = 3.0 * est0.stderr
    return {
        "log_l0": est0.to_json(),
        "log_sup": log_sup,
        "arestov_constant": constant,
        "lower_margin": lower_margin,
        "upper_margin": upper_margin,
        "slack": slack,
        "lower_holds": lower_margin >= -slack,
        "upper_holds": upper_margin >= -slack,
    }


def jensen_check(P: HomogeneousPolynomial, p: float = 2.0,
                 samples: int = 200_000, seed: int = 0) -> dict:
    """log ||P||_0 <= log ||P||_p, within combined 3-sigma slack."""
    if p <= 0:
        raise PreconditionError("jensen comparison needs p > 0")
    est0 = lp_norm(P, 0, samples=samples, seed=seed)
    estp = lp_norm(P, p, samples=samples, seed=seed)
    margin = estp.log_value - est0.log_value
    slack = 3.0 * (est0.stderr + estp.stderr)
    return {
        "log_l0": est0.to_json(),
        "log_lp": estp.to_json(),
        "p": p,
        "margin": margin,
        "slack": slack,
        "holds": margin >= -slack,
    }


def l2_norm_log_exact(P: HomogeneousPolynomial) -> float:
    """log ||P||_L2 from the exact monomial Gram: ||z^a||^2 = M! a! / (M+d)!."""
    P = P.to_float().require_nonzero()
    m = P.shape.nvars - 1
    base = math.lgamma(m + 1) - math.lgamma(m + P.degree + 1)
    logs = [
        2.0 * math.log(abs(c)) + base + sum(math.lgamma(e + 1) for e in exp)
        for exp, c in P.terms.items()
    ]
    mx = max(logs)
    return 0.5 * (mx + math.log(sum(math.exp(x - mx) for x in logs)))


def conformal_theta(S: HomogeneousPolynomial, samples: int = 200_000, seed: int = 0) -> dict:
    """theta([S]) = 2 log ||S||_0 - 2 log ||S||_L2 (L2 side exact).

    This is the conformal factor that turns the L^2 norm into the norm the
    K-energy identity wants, which is exactly the Mahler norm.
    """
    est0 = lp_norm(S, 0, samples=samples, seed=seed)
    log_l2 = l2_norm_log_exact(S)
    return {
        "theta": 2.0 * est0.log_value - 2.0 * log_l2,
        "stderr": 2.0 * est0.stderr,
        "log_l0": est0.to_json(),
        "log_l2_exact": log_l2,
    }
