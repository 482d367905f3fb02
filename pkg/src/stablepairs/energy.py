"""Orbit distances and the finite-dimensional energy formulas.

Distance convention: this module always reports log tan^2 (squared norms),

    log_tan_sq_dist_p(sigma) = log ||sigma.Delta^deg(R)||_p^2
                             - log ||sigma.R^deg(Delta)||_p^2,

with both components unit-normalized in ||.||_p; the single-log-tan variant
of the asymptotic definitions is half of this, and the asymptotic report
exposes both normalizations.  Powers of R and Delta are never expanded:
every formula is additive in the logs of the base forms.

Energy formulas (n = dim X, d = deg X, curves have n = 1):

    d^2 (n+1) nu(phi_sigma) = deg(R) log(||sigma.Delta||_0^2 / ||Delta||_0^2)
                            - deg(Delta) log(||sigma.R||_0^2 / ||R||_0^2)

    -deg(R) F0(phi_sigma) = log ||sigma.R||_0            (R unit Mahler norm)

and the coercivity expression couples the tensored pair

    (v, w) = (I^q (x) R^((km-1) deg Delta), Delta^(km deg R)),
    q = deg(R) deg(Delta)

through the Hilbert-Schmidt norm of sigma on the identity factor:

    value = k^-(2n+1)/(n+1) * [ km degR log||sigma.Delta||_0^2
            - q log||sigma||_HS^2 - (km-1) degDelta log||sigma.R||_0^2 ].

All Mahler quantities are common-random-number Monte-Carlo ratios with
propagated standard errors.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._kernels import poly_values
from .errors import PreconditionError
from .forms import XPair
from .norms import MahlerEstimate, log_ratio_sq, sample_points, transform_points
from .pairs import (
    DescentOptions,
    HilbertSchmidtFunctional,
    PairFunctional,
    StabilityCertificate,
    descend,
)
from .poly import HomogeneousPolynomial


def _sigma_np(sigma, n: int) -> np.ndarray:
    arr = sigma.to_numpy() if hasattr(sigma, "to_numpy") else np.asarray(sigma, dtype=np.complex128)
    if arr.shape != (n, n):
        raise PreconditionError(f"sigma must be {n} x {n}")
    return arr


def log_tan_dist_p(sigma, xp: XPair, p: float = 0.0, samples: int = 200_000,
                   seed: int = 0) -> dict:
    """log tan^2 distance at sigma between the pair point and the R-point."""
    xp.require_delta()
    sig = _sigma_np(sigma, xp.N + 1)
    dr, err_r = log_ratio_sq(xp.resultant, sig, p, samples=samples, seed=seed)
    dd, err_d = log_ratio_sq(xp.hyperdiscriminant, sig, p, samples=samples, seed=seed + 1)
    value = xp.deg_r * dd - xp.deg_delta * dr
    stderr = xp.deg_r * err_d + xp.deg_delta * err_r
    return {
        "log_tan_sq_dist": value,
        "stderr": stderr,
        "p": p,
        "components": {"delta_ratio_sq": dd, "r_ratio_sq": dr},
    }


def k_energy_algebraic(sigma, xp: XPair, samples: int = 200_000, seed: int = 0) -> dict:
    """nu(phi_sigma) from the Mahler-norm identity, divided by d^2 (n+1)."""
    base = log_tan_dist_p(sigma, xp, 0.0, samples=samples, seed=seed)
    scale = xp.d**2 * (xp.n + 1)
    return {
        "k_energy": base["log_tan_sq_dist"] / scale,
        "stderr": base["stderr"] / scale,
        "scale": scale,
        "components": base["components"],
    }


def aubin_f0_algebraic(sigma, xp: XPair, samples: int = 200_000, seed: int = 0) -> dict:
    """F0(phi_sigma) = -log ||sigma . R||_0^2 / deg R, with R unit-normalized.

    Squared-norm convention throughout this module: the quadrature oracle
    pins the Phillipon-Soule identity to the square of the Mahler norm
    (the single-bar variant is off by exactly the module's declared
    log tan vs log tan^2 factor).
    """
    sig = _sigma_np(sigma, xp.N + 1)
    dr, err = log_ratio_sq(xp.resultant, sig, 0.0, samples=samples, seed=seed)
    return {
        "aubin_f0": -dr / xp.deg_r,
        "stderr": err / xp.deg_r,
        "log_r_ratio_sq": dr,
    }


def coercivity_value(sigma, xp: XPair, m: int, k: int = 1,
                     samples: int = 200_000, seed: int = 0) -> dict:
    """Right side of the coercive estimate for the k-th tensored pair.

    Additive in log space; the identity factor contributes
    q log ||sigma||_HS^2 with q = deg(R) deg(Delta).
    """
    xp.require_delta()
    if m < 1 or k < 1:
        raise PreconditionError("need m >= 1 and k >= 1")
    sig = _sigma_np(sigma, xp.N + 1)
    dr, err_r = log_ratio_sq(xp.resultant, sig, 0.0, samples=samples, seed=seed)
    dd, err_d = log_ratio_sq(xp.hyperdiscriminant, sig, 0.0, samples=samples, seed=seed + 1)
    q = xp.deg_r * xp.deg_delta
    hs2 = float(np.vdot(sig, sig).real)
    log_w_sq = k * m * xp.deg_r * dd
    log_v_sq = q * math.log(hs2) + (k * m - 1) * xp.deg_delta * dr
    prefactor = k ** (-(2 * xp.n + 1)) / (xp.n + 1)
    value = prefactor * (log_w_sq - log_v_sq)
    stderr = prefactor * (k * m * xp.deg_r * err_d + (k * m - 1) * xp.deg_delta * err_r)
    return {
        "coercivity": value,
        "stderr": stderr,
        "q": q,
        "m": m,
        "k": k,
        "prefactor": prefactor,
        "log_w_sq": log_w_sq,
        "log_v_sq": log_v_sq,
        "hilbert_schmidt_sq": hs2,
    }


# ---------------------------------------------------------------------------
# sample-average Mahler functional, for descent over the group at index p
# ---------------------------------------------------------------------------


class MahlerSampleFunctional:
    """Fixed-sample estimate of log ||sigma . P||_p^2 with analytic gradient.

    Common random numbers make the objective a smooth deterministic
    surrogate; p = 0 averages the log directly, p > 0 uses the softmax
    weights of the p-th power.
    """

    def __init__(self, P: HomogeneousPolynomial, p: float = 0.0,
                 samples: int = 20_000, seed: int = 0):
        P = P.to_float().require_nonzero()
        self.P = P
        self.p = float(p)
        self.shape = P.shape
        self.degree = P.degree
        items = P.sorted_terms()
        self.expo = np.array([e for e, _ in items], dtype=np.int64)
        self.coeffs = np.array([complex(c) for _, c in items], dtype=np.complex128)
        derivs = [P.derivative(v) for v in range(P.shape.nvars)]
        self.dexpo = []
        self.dcoeffs = []
        for dP in derivs:
            it = dP.sorted_terms()
            self.dexpo.append(np.array([e for e, _ in it], dtype=np.int64).reshape(len(it), -1))
            self.dcoeffs.append(np.array([complex(c) for _, c in it], dtype=np.complex128))
        self.Z = sample_points(P.shape.nvars, samples, seed)
        self.logz2 = np.log(np.sum(np.abs(self.Z) ** 2, axis=1))
        self.samples = samples

    def _vals(self, sig_hat: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        pts = transform_points(self.Z, sig_hat, self.shape)
        return poly_values(self.expo, self.coeffs, pts), pts

    def log_norm2(self, sigma: np.ndarray) -> float:
        s = float(np.max(np.abs(sigma)))
        vals, _ = self._vals(sigma / s)
        lv = 2.0 * (np.log(np.abs(vals)) + self.degree * math.log(s)) - self.degree * self.logz2
        if self.p == 0:
            return float(np.mean(lv))
        X = 0.5 * self.p * lv
        mx = float(np.max(X))
        return (2.0 / self.p) * (mx + math.log(float(np.mean(np.exp(X - mx)))))

    def moment(self, sigma: np.ndarray) -> np.ndarray:
        s = float(np.max(np.abs(sigma)))
        sig_hat = sigma / s
        vals, pts = self._vals(sig_hat)
        S = self.Z.shape[0]
        rows, cols = self.shape.rows, self.shape.cols
        grad = np.zeros((S, rows * cols), dtype=np.complex128)
        for v in range(rows * cols):
            if self.dcoeffs[v].size:
                grad[:, v] = poly_values(self.dexpo[v], self.dcoeffs[v], pts)
        Wm = self.Z.reshape(S, rows, cols)
        Gm = (grad / vals[:, None]).reshape(S, rows, cols)
        if self.p == 0:
            weights = np.full(S, 1.0 / S)
        else:
            lv = 2.0 * np.log(np.abs(vals)) - self.degree * self.logz2
            X = 0.5 * self.p * lv
            w = np.exp(X - np.max(X))
            weights = w / np.sum(w)
        # m = E_w [ W^T (grad/val) sig_hat^T ]; holomorphic chain rule, the
        # conjugate half is supplied by the 2 Re Tr(H m^T) wrapper
        contrib = np.einsum("s,sri,srj->ij", weights, Wm, Gm)
        return contrib @ sig_hat.T


def xpair_functional(xp: XPair, p: float = 0.0, samples: int = 20_000,
                     seed: int = 0) -> PairFunctional:
    """Descent objective deg(R) log||sigma.Delta||_p^2 - deg(Delta) log||sigma.R||_p^2."""
    xp.require_delta()
    n = xp.N + 1
    return PairFunctional(
        [
            (float(xp.deg_r), MahlerSampleFunctional(xp.hyperdiscriminant, p, samples, seed)),
            (-float(xp.deg_delta), MahlerSampleFunctional(xp.resultant, p, samples, seed + 1)),
        ],
        n,
    )


def orbit_distance(xp: XPair, p: float = 0.0, opts: Optional[DescentOptions] = None,
                   samples: int = 20_000) -> StabilityCertificate:
    """Descent estimate of the orbit-closure log tan^2 distance at index p."""
    opts = opts or DescentOptions()
    func = xpair_functional(xp, p, samples=samples, seed=opts.seed)
    cert = descend(func, opts)
    cert.diagnostics["p"] = p
    cert.diagnostics["mc_samples"] = samples
    cert.diagnostics["convention"] = "log tan^2"
    return cert


def asymptotic_report(entries: Sequence[Tuple[int, XPair]], p: float = 0.0,
                      opts: Optional[DescentOptions] = None,
                      samples: int = 20_000) -> dict:
    """Observational table of -log tan^2 dist against the k-power scalings.

    No verdict is attached: the definitions compare against C k^(2n)
    (semistability) and C k^(2n+1) (stability); the rows also expose the
    degree-based normalization d^2 = k^(2n) for curves embedded by degree.
    """
    if not entries:
        raise PreconditionError("need at least one (k, XPair) entry")
    rows: List[dict] = []
    for k, xp in entries:
        cert = orbit_distance(xp, p, opts=opts, samples=samples)
        neg = -cert.inf_estimate if cert.inf_estimate is not None else math.nan
        rows.append(
            {
                "k": k,
                "d": xp.d,
                "neg_log_tan_sq_dist": neg,
                "per_k2n": neg / k ** (2 * xp.n),
                "per_k2n_plus_1": neg / k ** (2 * xp.n + 1),
                "per_d2": neg / xp.d**2,
                "verdict": cert.verdict,
            }
        )
    return {
        "p": p,
        "convention": "log tan^2; single-log-tan values are half of these",
        "rows": rows,
        "note": "observational only; no stability verdict is implied",
    }
