"""Semistability and stability of pairs.

A pair (v, w) of nonzero vectors in two representations of SL(N+1, C) is
semistable when the projective orbit closure of (v, w) avoids that of
(v, 0).  The exact torus criterion is weight-polytope containment
N(v) in N(w); the group-level question is probed numerically: randomized
conjugate-torus tests, and gradient descent on the Kempf-Ness difference

    value(sigma) = log ||sigma . w||^2 - log ||sigma . v||^2,

whose infimum is the log-tan^2 distance between the orbit closures.  The
descent certifies divergence (with an extracted, verified destabilizing
1-PSG); failure to diverge is evidence only, and certificates say so.

Norm choices: polynomial representations use the L^2 norm with the
unit-volume Fubini-Study measure (monomials are orthogonal with
||z^a||^2 = M! a! / (M+d)! on P^M); tensor representations use the
Hermitian coordinate norm with orthonormal wedge basis.  Both are
unitarily invariant under left multiplication of the group element.

Tensored pairs (I^q (x) v^m, w^(m+1)) from the stable-pair definition are
never expanded: their log-norms are the additive combination

    q log ||sigma||_HS^2 + m log ||sigma . v||^2,

with the Hilbert-Schmidt norm on the identity factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, NonConvergenceError, PreconditionError
from .poly import GroupElement, HomogeneousPolynomial, OnePSG, act, binary_coeffs
from .scalars import EXACT, FLOAT, QQi, scalar_to_complex
from .weights import (
    LatticePolytope,
    TensorVector,
    WeightCharacter,
    act_tensor,
    contains,
    minkowski_sum,
    psg_weight,
    rep_degree,
    scale,
    standard_simplex,
    support,
    weight_polytope,
)

# ---------------------------------------------------------------------------
# pair containers and certificates
# ---------------------------------------------------------------------------


def _group_size(e) -> int:
    if isinstance(e, HomogeneousPolynomial):
        return e.shape.cols
    if isinstance(e, TensorVector):
        return e.group_size
    raise PreconditionError(f"not a representation vector: {type(e).__name__}")


class Pair:
    """Two nonzero vectors in representations of the same SL(N+1)."""

    def __init__(self, v, w, labels: Optional[Tuple[str, str]] = None):
        if isinstance(v, HomogeneousPolynomial):
            v.require_nonzero("pair component v")
        if isinstance(w, HomogeneousPolynomial):
            w.require_nonzero("pair component w")
        if _group_size(v) != _group_size(w):
            raise DimensionError("pair components live under different groups")
        self.v = v
        self.w = w
        self.labels = labels

    @property
    def group_size(self) -> int:
        return _group_size(self.v)

    @property
    def norm_choice(self) -> str:
        return "hermitian" if isinstance(self.v, TensorVector) or isinstance(
            self.w, TensorVector
        ) else "l2"

    def conjugated(self, sigma) -> "Pair":
        return Pair(_act_any(sigma, self.v), _act_any(sigma, self.w), self.labels)


def _act_any(sigma, e):
    if isinstance(e, HomogeneousPolynomial):
        return act(sigma, e)
    return act_tensor(sigma, e)


@dataclass
class StabilityCertificate:
    """Outcome of a torus test or a descent run.

    torus-fail always carries an integer witness lambda (and the conjugator
    under which it separates); divergence-detected carries the extracted
    1-PSG with its verification record; no-divergence-observed is evidence,
    never proof, and the diagnostics say so.
    """

    verdict: str
    witness: Optional[dict] = None
    inf_estimate: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)
    seed: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "inf_estimate": self.inf_estimate,
            "diagnostics": self.diagnostics,
            "seed": self.seed,
        }


# ---------------------------------------------------------------------------
# exact torus tests and randomized conjugate probes
# ---------------------------------------------------------------------------


def torus_semistable(pair: Pair) -> Tuple[bool, Optional[OnePSG]]:
    """Standard-torus criterion: N(v) inside N(w), with witness on failure.

    A failing witness lambda satisfies w_lambda(w) > w_lambda(v) exactly.
    """
    ok, lam = contains(weight_polytope(pair.v), weight_polytope(pair.w))
    if ok:
        return True, None
    assert psg_weight(lam, pair.w) > psg_weight(lam, pair.v)
    return False, lam


def _random_exact_conjugator(rng: np.random.Generator, n: int):
    while True:
        m = rng.integers(-9, 10, size=(n, n))
        if round(abs(np.linalg.det(m.astype(float)))) != 0:
            return [[QQi(int(x)) for x in row] for row in m]


def _random_float_conjugator(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    det = np.linalg.det(z)
    return z / det ** (1.0 / n)


def _is_exact(e) -> bool:
    return (e.mode == EXACT) if isinstance(e, (HomogeneousPolynomial, TensorVector)) else False


def _rational_roots_binary(f: HomogeneousPolynomial) -> List[Tuple[int, int]]:
    """Rational projective roots [p:q] of an exact binary form.

    Only real-rational coefficients are searched; forms with imaginary parts
    return no roots (the probe then falls back to random conjugation).
    """
    coeffs = binary_coeffs(f)
    fr: List[Fraction] = []
    for c in coeffs:
        if not isinstance(c, QQi) or c.im != 0:
            return []
        fr.append(c.re)
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // (g or 1) for x in ints]
    roots: List[Tuple[int, int]] = []
    # ints[0] is the coefficient of x^d: [1:0] is a root iff it vanishes
    if ints[0] == 0:
        roots.append((1, 0))
    poly = list(ints)  # descending powers of x, dehomogenized at y = 1
    while poly and poly[-1] == 0:
        poly.pop()
        if (0, 1) not in roots:
            roots.append((0, 1))
    if len(poly) <= 1:
        return roots
    lead, const = poly[0], poly[-1]

    def divisors(n: int) -> List[int]:
        n = abs(n)
        out = [d for d in range(1, n + 1) if n % d == 0]
        return out or [1]

    seen = set(roots)
    for p in divisors(const):
        for q in divisors(lead):
            for sp in (p, -p):
                if math.gcd(abs(sp), q) != 1:
                    continue
                val = sum(Fraction(c) * Fraction(sp, q) ** (len(poly) - 1 - i)
                          for i, c in enumerate(poly))
                if val == 0 and (sp, q) not in seen:
                    seen.add((sp, q))
                    roots.append((sp, q))
    return roots


def _root_adapted_conjugators(pair: Pair) -> List[List[List[QQi]]]:
    """Exact conjugators sending a rational root of w (then of v) to [0:1].

    Only defined for exact pairs of binary forms; the second row of each
    conjugator is a root of the form, so the conjugated form gains a zero
    coefficient and the standard torus sees the root structure.
    """
    if not (
        isinstance(pair.v, HomogeneousPolynomial)
        and isinstance(pair.w, HomogeneousPolynomial)
        and pair.v.shape.nvars == 2
        and _is_exact(pair.v)
        and _is_exact(pair.w)
    ):
        return []
    out = []
    seen = set()
    for form in (pair.w, pair.v):
        for (p, q) in _rational_roots_binary(form):
            if (p, q) in seen:
                continue
            seen.add((p, q))
            if q != 0:
                rows = [[QQi(1), QQi(0)], [QQi(p), QQi(q)]]
            else:
                rows = [[QQi(0), QQi(1)], [QQi(p), QQi(0)]]
            out.append(rows)
    return out


@dataclass
class ProbeResult:
    passed: bool
    trials_run: int
    failing_trial: Optional[int] = None
    conjugator: Optional[list] = None
    witness: Optional[OnePSG] = None
    seed: Optional[int] = None
    exact: bool = True

    def certificate(self) -> StabilityCertificate:
        if self.passed:
            return StabilityCertificate(
                verdict="no-divergence-observed",
                diagnostics={"probe": "torus", "trials": self.trials_run,
                             "note": "pass after trials is not a proof of semistability"},
                seed=self.seed,
            )
        return StabilityCertificate(
            verdict="torus-fail",
            witness={
                "lambda": list(self.witness.exponents),
                "conjugator": self.conjugator,
                "trial": self.failing_trial,
                "verification": "exact" if self.exact else "thresholded-support",
            },
            diagnostics={"probe": "torus", "trials": self.trials_run},
            seed=self.seed,
        )


def _conj_repr(rows) -> list:
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, QQi):
                r.append(str(x.re) if x.im == 0 else f"{x.re}+{x.im}i")
            else:
                z = complex(x)
                r.append([z.real, z.imag])
        out.append(r)
    return out


def randomized_torus_probe(pair: Pair, trials: int = 20, seed: int = 0) -> ProbeResult:
    """Apply the torus test to (sigma . v, sigma . w) over seeded conjugators.

    Trial 1 is the identity (the standard torus).  For exact pairs of binary
    forms, root-adapted conjugators are tried next, then random ones: integer
    matrices in exact mode (containment is scale-invariant, so unnormalized
    determinants keep everything rational), determinant-normalized complex
    Gaussians in float mode.  Deterministic for a given seed.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    n = pair.group_size
    exact = _is_exact(pair.v) and _is_exact(pair.w)
    planned: List[Optional[list]] = [None]
    planned.extend(_root_adapted_conjugators(pair))
    count = 0
    trial_no = 0
    while trial_no < trials:
        if trial_no < len(planned):
            sigma = planned[trial_no]
        else:
            sigma = (
                _random_exact_conjugator(rng, n)
                if exact
                else _random_float_conjugator(rng, n)
            )
        trial_no += 1
        test_pair = pair if sigma is None else pair.conjugated(sigma)
        ok, lam = torus_semistable(test_pair)
        if not ok:
            return ProbeResult(
                passed=False,
                trials_run=trial_no,
                failing_trial=trial_no,
                conjugator=None if sigma is None else _conj_repr(sigma),
                witness=lam,
                seed=seed,
                exact=exact or sigma is None,
            )
    return ProbeResult(passed=True, trials_run=trials, seed=seed, exact=exact)


# ---------------------------------------------------------------------------
# norm functionals: values and moment matrices for the Kempf-Ness gradient
# ---------------------------------------------------------------------------
#
# Every functional F exposes
#     log_norm2(sigma) -> float                      log ||sigma . e||^2
#     moment(sigma)    -> (n+1, n+1) complex matrix  m
# with the directional derivative of log_norm2 at sigma along a Hermitian H
# (through exp(eps H) sigma) equal to 2 Re Tr(H m^T).  The gradient matrix is
# then m^T + conj(m), projected to traceless Hermitian.


def _scale_split(sigma: np.ndarray) -> Tuple[np.ndarray, float]:
    s = float(np.max(np.abs(sigma)))
    if s == 0.0:
        raise PreconditionError("zero matrix")
    return sigma / s, math.log(s)


def _log_factorial(n: int) -> float:
    return math.lgamma(n + 1)


class PolyL2Functional:
    """log L^2(FS, unit volume) norm of sigma . P for a float polynomial."""

    def __init__(self, P: HomogeneousPolynomial):
        self.P = P.to_float()
        self.nvars = P.shape.nvars
        self.cols = P.shape.cols
        self.degree = P.degree
        m = self.nvars - 1  # complex projective dimension of the domain
        self._logw_base = _log_factorial(m) - _log_factorial(m + P.degree)

    def _log_weight(self, exp) -> float:
        return self._logw_base + sum(_log_factorial(e) for e in exp)

    def _transformed(self, sigma: np.ndarray) -> Tuple[HomogeneousPolynomial, float]:
        scaled, logs = _scale_split(sigma)
        return act(scaled, self.P), 2.0 * self.degree * logs

    def log_norm2(self, sigma: np.ndarray) -> float:
        Q, corr = self._transformed(sigma)
        logs = [
            2.0 * math.log(abs(c)) + self._log_weight(e)
            for e, c in Q.terms.items()
            if c != 0
        ]
        if not logs:
            raise PreconditionError("polynomial annihilated by singular matrix")
        mx = max(logs)
        return mx + math.log(sum(math.exp(x - mx) for x in logs)) + corr

    def moment(self, sigma: np.ndarray) -> np.ndarray:
        # m_ij = <sum_r z_(r,i) d_(r,j) Q, Q> / ||Q||^2 in the monomial Gram
        # basis; masses are rescaled by the dominant one to avoid under/overflow
        Q, _ = self._transformed(sigma)
        items = Q.sorted_terms()
        coeff = dict(items)
        logws = {e: self._log_weight(e) for e, _ in items}
        mass_logs = [2.0 * math.log(abs(c)) + logws[e] for e, c in items]
        mx = max(mass_logs)
        norm2 = sum(math.exp(x - mx) for x in mass_logs)
        n = self.cols
        mom = np.zeros((n, n), dtype=np.complex128)
        for e, c in items:
            for v, ev in enumerate(e):
                if ev == 0:
                    continue
                r, j = divmod(v, self.cols)
                for i in range(n):
                    if i == j:
                        tgt, c2 = e, c
                    else:
                        te = list(e)
                        te[v] -= 1
                        te[r * self.cols + i] += 1
                        tgt = tuple(te)
                        c2 = coeff.get(tgt)
                        if c2 is None:
                            continue
                    lwt = logws.get(tgt)
                    if lwt is None:
                        lwt = self._log_weight(tgt)
                    mag = math.exp(
                        math.log(abs(c)) + math.log(abs(c2)) + lwt - mx
                    )
                    phase = (c / abs(c)) * np.conj(c2 / abs(c2))
                    mom[i, j] += ev * phase * mag
        return mom / norm2


class TensorHermFunctional:
    """Hermitian coordinate norm of sigma . x for a tensor vector.

    Wedge slots are embedded isometrically into antisymmetric two-fold
    tensors so the action and partial traces are plain per-axis matrix
    contractions.
    """

    def __init__(self, x: TensorVector):
        x = x.to_float()
        self.n = x.group_size
        axes_dims: List[int] = []
        slot_axes: List[Tuple[str, int]] = []
        for kind, d in x.slots:
            if kind == "vector":
                slot_axes.append(("vector", len(axes_dims)))
                axes_dims.append(d)
            else:
                slot_axes.append(("wedge2", len(axes_dims)))
                axes_dims.extend([d, d])
        arr = np.zeros(tuple(axes_dims), dtype=np.complex128)
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        for idx, c in x.coords.items():
            z = scalar_to_complex(c)
            keys = [[]]
            weights = [1.0]
            for (kind, _), part in zip(x.slots, idx):
                if kind == "vector":
                    keys = [k + [part] for k in keys]
                else:
                    i, j = part
                    keys = [k + [i, j] for k in keys] + [k + [j, i] for k in keys]
                    weights = [w * inv_sqrt2 for w in weights] + [
                        -w * inv_sqrt2 for w in weights
                    ]
            for k, wgt in zip(keys, weights):
                arr[tuple(k)] += z * wgt
        self.arr = arr
        self.degree = x.degree()
        self.naxes = arr.ndim

    def _transformed(self, sigma: np.ndarray) -> Tuple[np.ndarray, float]:
        scaled, logs = _scale_split(sigma)
        y = self.arr
        for axis in range(self.naxes):
            y = np.tensordot(scaled, y, axes=([1], [axis]))
            y = np.moveaxis(y, 0, axis)
        return y, 2.0 * self.naxes * logs

    def log_norm2(self, sigma: np.ndarray) -> float:
        y, corr = self._transformed(sigma)
        n2 = float(np.vdot(y, y).real)
        if n2 <= 0.0:
            raise PreconditionError("tensor annihilated by singular matrix")
        return math.log(n2) + corr

    def moment(self, sigma: np.ndarray) -> np.ndarray:
        y, _ = self._transformed(sigma)
        n2 = float(np.vdot(y, y).real)
        mom = np.zeros((self.n, self.n), dtype=np.complex128)
        all_axes = list(range(self.naxes))
        for axis in all_axes:
            others = [a for a in all_axes if a != axis]
            # rho[a, b] = sum_rest y[..a..] conj(y[..b..]); m_ij += rho[j, i]
            rho = np.tensordot(y, np.conj(y), axes=(others, others))
            mom += rho.T
        return mom / n2


class HilbertSchmidtFunctional:
    """log Trace(sigma sigma^*): the identity-factor norm of tensored pairs."""

    def __init__(self, n: int):
        self.n = n
        self.degree = 1

    def log_norm2(self, sigma: np.ndarray) -> float:
        return math.log(float(np.vdot(sigma, sigma).real))

    def moment(self, sigma: np.ndarray) -> np.ndarray:
        ss = sigma @ sigma.conj().T
        return ss.T / float(np.trace(ss).real)


class PairFunctional:
    """value(sigma) = sum_k weight_k * log ||sigma . e_k||^2 over components."""

    def __init__(self, parts: Sequence[Tuple[float, object]], size: int):
        self.parts = list(parts)
        self.size = size

    @property
    def scale_slope(self) -> float:
        """d value / d log(c) under sigma -> c sigma: 2 sum_k wt_k deg_k."""
        return 2.0 * sum(wt * f.degree for wt, f in self.parts)

    @classmethod
    def for_pair(cls, pair: Pair) -> "PairFunctional":
        return cls(
            [(-1.0, _functional_for(pair.v)), (1.0, _functional_for(pair.w))],
            pair.group_size,
        )

    def value(self, sigma: np.ndarray) -> float:
        return sum(wt * f.log_norm2(sigma) for wt, f in self.parts)

    def gradient(self, sigma: np.ndarray) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=np.complex128)
        for wt, f in self.parts:
            m += wt * f.moment(sigma)
        g = m.T + np.conj(m)
        g -= (np.trace(g) / self.size) * np.eye(self.size)
        return g


def _functional_for(e):
    if isinstance(e, HomogeneousPolynomial):
        return PolyL2Functional(e)
    if isinstance(e, TensorVector):
        return TensorHermFunctional(e)
    raise PreconditionError("no norm functional for this object")


def kempf_ness_value(sigma, pair: Pair) -> float:
    """log ||sigma . w||^2 - log ||sigma . v||^2 in the pair's norm choice."""
    return PairFunctional.for_pair(pair).value(_sigma_np(sigma, pair.group_size))


def kempf_ness_gradient(sigma, pair: Pair) -> np.ndarray:
    """Gradient over traceless Hermitian H of value(exp(H) sigma) at H = 0."""
    return PairFunctional.for_pair(pair).gradient(_sigma_np(sigma, pair.group_size))


def _sigma_np(sigma, n: int) -> np.ndarray:
    if isinstance(sigma, GroupElement):
        arr = sigma.to_numpy()
    else:
        arr = np.asarray(sigma, dtype=np.complex128)
    if arr.shape != (n, n):
        raise DimensionError(f"expected {(n, n)} matrix, got {arr.shape}")
    return arr


# ---------------------------------------------------------------------------
# descent
# ---------------------------------------------------------------------------


@dataclass
class DescentOptions:
    restarts: int = 3
    max_iters: int = 500
    eta0: float = 0.1
    shrink: float = 0.5
    grow: float = 1.2
    eta_max: float = 10.0
    armijo: float = 1e-4
    grad_tol: float = 1e-9
    divergence_lognorm2: float = 40.0
    divergence_run: int = 200
    seed: int = 0


def _expm_hermitian(h: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(vals)) @ vecs.conj().T


def _round_primitive_direction(logeigs: np.ndarray, max_den: int = 16) -> Optional[Tuple[int, ...]]:
    """Continued-fraction rounding of a normalized log-eigenvalue profile.

    Gaps between consecutive sorted entries are rounded to denominators
    <= max_den, the профиle is rebuilt, mean-shifted to sum zero, and cleared
    to a primitive integer vector.
    """
    order = np.argsort(logeigs)[::-1]
    sorted_vals = logeigs[order]
    span = float(sorted_vals[0] - sorted_vals[-1])
    if span <= 0:
        return None
    gaps = [Fraction(float(sorted_vals[i] - sorted_vals[i + 1]) / span).limit_denominator(max_den)
            for i in range(len(sorted_vals) - 1)]
    profile = [Fraction(0)]
    for g in gaps:
        profile.append(profile[-1] - g)
    n = len(profile)
    mean = sum(profile, Fraction(0)) / n
    profile = [p - mean for p in profile]
    if all(p == 0 for p in profile):
        return None
    den = 1
    for p in profile:
        den = den * p.denominator // math.gcd(den, p.denominator)
    ints = [int(p * den) for p in profile]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // g for x in ints]
    out = [0] * n
    for pos, idx in enumerate(order):
        out[idx] = ints[pos]
    return tuple(out)


def _snap_to_signed_permutation(u: np.ndarray, tol: float = 1e-6):
    """Round a unitary to a generalized permutation with entries 0, ±1, ±i."""
    n = u.shape[0]
    snapped = [[QQi(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            z = u[i, j]
            best = None
            for cand, q in (
                (0.0 + 0.0j, QQi(0)),
                (1.0 + 0.0j, QQi(1)),
                (-1.0 + 0.0j, QQi(-1)),
                (0.0 + 1.0j, QQi(0, 1)),
                (0.0 - 1.0j, QQi(0, -1)),
            ):
                if abs(z - cand) <= tol:
                    best = q
                    break
            if best is None:
                return None
            snapped[i][j] = best
    return snapped


WITNESS_SUPPORT_TOL = 1e-6


def _thresholded(e, tol: float):
    """Drop float coefficients below tol relative to the largest one."""
    if isinstance(e, HomogeneousPolynomial):
        mx = max(abs(c) for c in e.terms.values())
        return HomogeneousPolynomial(
            e.shape, e.degree,
            {k: c for k, c in e.terms.items() if abs(c) > tol * mx}, FLOAT,
        )
    mx = max(abs(scalar_to_complex(c)) for c in e.coords.values())
    return TensorVector(
        e.slots,
        {k: c for k, c in e.coords.items() if abs(scalar_to_complex(c)) > tol * mx},
        FLOAT,
    )


def _verify_destabilizer(pair: Pair, lam: OnePSG, frame: np.ndarray) -> Optional[dict]:
    """Check w_lambda(w) > w_lambda(v) for the pair conjugated into `frame`.

    Exact when the frame snaps to a signed permutation of an exact pair;
    otherwise verified on tolerance-thresholded float supports, cross-checked
    by measuring the Kempf-Ness slope along the candidate direction (the
    slope must reproduce the integer weight gap, which guards the threshold).
    """
    exact_pair = _is_exact(pair.v) and _is_exact(pair.w)
    snapped = _snap_to_signed_permutation(frame)
    if exact_pair and snapped is not None:
        conj = pair.conjugated(snapped)
        wv, ww = psg_weight(lam, conj.v), psg_weight(lam, conj.w)
        if ww > wv:
            return {
                "lambda": list(lam.exponents),
                "conjugator": _conj_repr(snapped),
                "verification": "exact",
                "weights": {"v": wv, "w": ww},
            }
        return None
    fv = pair.v.to_float() if exact_pair else pair.v
    fw = pair.w.to_float() if exact_pair else pair.w
    conj = Pair(fv, fw).conjugated(frame)
    cv = _thresholded(conj.v, WITNESS_SUPPORT_TOL)
    cw = _thresholded(conj.w, WITNESS_SUPPORT_TOL)
    wv, ww = psg_weight(lam, cv), psg_weight(lam, cw)
    if ww <= wv:
        return None
    # slope cross-check along diag(t^lambda) @ frame
    func = PairFunctional.for_pair(Pair(fv, fw))
    vals = []
    for t in (1e-2, 1e-3):
        d = np.diag([t ** a for a in lam.exponents]).astype(np.complex128)
        vals.append(func.value(d @ frame))
    slope = (vals[1] - vals[0]) / (math.log(1e-6) - math.log(1e-4))
    expected = ww - wv
    if abs(slope - expected) > 0.1:
        return None
    return {
        "lambda": list(lam.exponents),
        "conjugator": _conj_repr(frame.tolist()),
        "verification": "numeric-support+slope",
        "weights": {"v": wv, "w": ww},
        "measured_slope": slope,
        "expected_slope": expected,
    }


def descend(pair_or_functional, opts: Optional[DescentOptions] = None,
            pair_for_witness: Optional[Pair] = None) -> StabilityCertificate:
    """Multi-start retraction descent sigma <- exp(-eta grad) sigma.

    Backtracking Armijo line search; divergence is declared when the value
    has decreased strictly for `divergence_run` consecutive accepted steps
    while log ||sigma||_HS^2 exceeds the threshold, and the certificate then
    carries a destabilizing 1-PSG extracted from the log-spectrum of the
    diverging trajectory and verified via exact weights (or thresholded
    supports plus a slope check).  A run that never diverges yields
    no-divergence-observed: evidence, not a proof of semistability.
    """
    opts = opts or DescentOptions()
    if isinstance(pair_or_functional, Pair):
        func = PairFunctional.for_pair(pair_or_functional)
        witness_pair = pair_or_functional
    else:
        func = pair_or_functional
        witness_pair = pair_for_witness
    n = func.size
    rng = np.random.default_rng(opts.seed)
    best_value = math.inf
    diagnostics: dict = {"restarts": [], "rejected_candidates": []}
    witness = None
    diverged = False

    slope = func.scale_slope

    def try_value(sig_hat, ls):
        try:
            val = func.value(sig_hat) + slope * ls
        except PreconditionError:
            return None
        return val if math.isfinite(val) else None

    for restart in range(opts.restarts):
        # sigma is tracked as exp(log_scale) * sig_hat with max |entry| of
        # sig_hat equal to 1, so diverging trajectories never overflow
        raw = np.eye(n, dtype=np.complex128) if restart == 0 else _random_float_conjugator(rng, n)
        sig_hat, log_scale = _scale_split(raw)
        start_value = value = func.value(sig_hat) + slope * log_scale
        eta = opts.eta0
        decreasing_run = 0
        iters = 0
        final_grad = math.nan
        lognorm2 = 2.0 * log_scale + math.log(float(np.vdot(sig_hat, sig_hat).real))
        stalled_extreme = False
        for iters in range(1, opts.max_iters + 1):
            try:
                grad = func.gradient(sig_hat)
            except PreconditionError:
                stalled_extreme = lognorm2 > opts.divergence_lognorm2
                break
            gnorm2 = float(np.vdot(grad, grad).real)
            final_grad = math.sqrt(gnorm2)
            if not math.isfinite(gnorm2):
                stalled_extreme = lognorm2 > opts.divergence_lognorm2
                break
            if final_grad < opts.grad_tol:
                break
            accepted = False
            while eta > 1e-18:
                cand_hat, dls = _scale_split(_expm_hermitian(-eta * grad) @ sig_hat)
                cand_ls = log_scale + dls
                cand_value = try_value(cand_hat, cand_ls)
                if cand_value is not None and cand_value <= value - opts.armijo * eta * gnorm2:
                    accepted = True
                    break
                eta *= opts.shrink
            if not accepted:
                # float cancellation can stall the line search while the
                # trajectory is running off to infinity; a permissive flag is
                # sound because the fallback below only fires on a witness
                # that passes the exact weight test
                stalled_extreme = value < start_value - 10.0 and lognorm2 > 10.0
                break
            if cand_value < value:
                decreasing_run += 1
            else:
                decreasing_run = 0
            sig_hat, log_scale, value = cand_hat, cand_ls, cand_value
            best_value = min(best_value, value)
            lognorm2 = 2.0 * log_scale + math.log(float(np.vdot(sig_hat, sig_hat).real))
            if lognorm2 > opts.divergence_lognorm2:
                # past the norm threshold: freeze step growth so the
                # remaining confirmation window cannot underflow coefficients
                eta = min(eta, opts.eta0)
                if decreasing_run >= opts.divergence_run:
                    diverged = True
                    break
            else:
                eta = min(eta * opts.grow, opts.eta_max)
        sigma = sig_hat
        best_value = min(best_value, value)
        diagnostics["restarts"].append(
            {"iterations": iters, "final_value": value, "final_grad_norm": final_grad}
        )
        if diverged or stalled_extreme:
            sts = sigma.conj().T @ sigma
            eigvals, eigvecs = np.linalg.eigh(sts)
            logeigs = 0.5 * np.log(np.maximum(eigvals.real, 1e-300))
            cand_dir = _round_primitive_direction(logeigs)
            rec = None
            if cand_dir is not None and witness_pair is not None:
                lam = OnePSG([-a for a in cand_dir])
                frame = eigvecs.conj().T
                rec = _verify_destabilizer(witness_pair, lam, frame)
                if rec is not None:
                    witness = rec
                else:
                    diagnostics["rejected_candidates"].append(
                        {"lambda": [-a for a in cand_dir], "reason": "weight test failed"}
                    )
            if diverged:
                break
            if rec is not None:
                # monotone window was cut short by float cancellation, but the
                # extracted 1-PSG passed the weight test: certified divergence
                diverged = True
                diagnostics["stall_confirmed_by_witness"] = True
                break

    if diverged:
        return StabilityCertificate(
            verdict="divergence-detected",
            witness=witness,
            inf_estimate=best_value,
            diagnostics=diagnostics,
            seed=opts.seed,
        )
    diagnostics["note"] = "no divergence observed; this is not a proof of semistability"
    return StabilityCertificate(
        verdict="no-divergence-observed",
        witness=None,
        inf_estimate=best_value,
        diagnostics=diagnostics,
        seed=opts.seed,
    )


# ---------------------------------------------------------------------------
# tensored stable-pair construction
# ---------------------------------------------------------------------------


class TensoredPair:
    """(I^q (x) v^m, w^(m+1)) held implicitly via additive contracts."""

    def __init__(self, base: Pair, m: int, q: Optional[int] = None):
        if m < 1:
            raise PreconditionError("m must be >= 1")
        self.base = base
        self.m = m
        self.q = rep_degree(base.v) if q is None else int(q)
        if self.q < 0:
            raise PreconditionError("q must be >= 0")

    @property
    def group_size(self) -> int:
        return self.base.group_size

    def polytope_sides(self, conjugator=None) -> Tuple[LatticePolytope, LatticePolytope]:
        v = self.base.v if conjugator is None else _act_any(conjugator, self.base.v)
        w = self.base.w if conjugator is None else _act_any(conjugator, self.base.w)
        left = scale(weight_polytope(v), self.m)
        if self.q > 0:
            left = minkowski_sum(scale(standard_simplex(self.group_size), self.q), left)
        right = scale(weight_polytope(w), self.m + 1)
        return left, right

    def torus_semistable(self, conjugator=None) -> Tuple[bool, Optional[OnePSG]]:
        left, right = self.polytope_sides(conjugator)
        ok, lam = contains(left, right)
        return (True, None) if ok else (False, lam)

    def functional(self) -> PairFunctional:
        n = self.group_size
        parts = [
            (float(self.m + 1), _functional_for(self.base.w)),
            (-float(self.m), _functional_for(self.base.v)),
        ]
        if self.q > 0:
            parts.append((-float(self.q), HilbertSchmidtFunctional(n)))
        return PairFunctional(parts, n)

    def log_norm2_sides(self, sigma) -> Tuple[float, float]:
        """(log ||sigma.(I^q x v^m)||^2, log ||sigma.w^(m+1)||^2), additively."""
        sig = _sigma_np(sigma, self.group_size)
        left = self.m * _functional_for(self.base.v).log_norm2(sig)
        if self.q > 0:
            left += self.q * HilbertSchmidtFunctional(self.group_size).log_norm2(sig)
        right = (self.m + 1) * _functional_for(self.base.w).log_norm2(sig)
        return left, right


def build_stable_test_pair(pair: Pair, m: int) -> TensoredPair:
    """The q = deg(V) tensored pair whose semistability defines stability."""
    return TensoredPair(pair, m)


def stable_probe(pair: Pair, m: int, trials: int = 20, seed: int = 0,
                 opts: Optional[DescentOptions] = None) -> StabilityCertificate:
    """Randomized torus probe plus descent for the tensored pair."""
    tp = build_stable_test_pair(pair, m)
    rng = np.random.default_rng(seed)
    n = tp.group_size
    exact = _is_exact(pair.v) and _is_exact(pair.w)
    planned: List[Optional[list]] = [None]
    planned.extend(_root_adapted_conjugators(pair))
    for trial in range(1, trials + 1):
        if trial - 1 < len(planned):
            sigma = planned[trial - 1]
        else:
            sigma = (
                _random_exact_conjugator(rng, n) if exact else _random_float_conjugator(rng, n)
            )
        ok, lam = tp.torus_semistable(sigma)
        if not ok:
            return StabilityCertificate(
                verdict="torus-fail",
                witness={
                    "lambda": list(lam.exponents),
                    "conjugator": None if sigma is None else _conj_repr(sigma),
                    "trial": trial,
                    "verification": "exact" if exact or sigma is None else "thresholded-support",
                },
                diagnostics={"probe": "tensored-torus", "trials": trial, "m": tp.m, "q": tp.q},
                seed=seed,
            )
    cert = descend(tp.functional(), opts or DescentOptions(seed=seed))
    cert.diagnostics["probe"] = "tensored-descent-after-torus-pass"
    cert.diagnostics["m"] = tp.m
    cert.diagnostics["q"] = tp.q
    cert.seed = seed
    return cert
