"""Sparse homogeneous polynomial arithmetic and elimination primitives.

A polynomial is a map from exponent tuples to nonzero coefficients,

    terms: Dict[Tuple[int, ...], QQi | complex]

over the variables of a :class:`VariableShape` (a vector of length N+1, or
a k x (N+1) matrix flattened row-major).  Every stored exponent tuple sums
to the polynomial's degree; zero coefficients are never stored.  Exact mode
uses Gaussian-rational coefficients and is closed under all operations here;
float mode uses complex doubles.

The group acts by right substitution

    (sigma . P)(A) = P(A sigma)

so a diagonal torus element multiplies a monomial by t^(column degrees),
which is what the weight machinery in :mod:`stablepairs.weights` relies on.
Composing two substitutions gives ``act(tau, act(sigma, P)) == act(tau @ sigma, P)``.

Elimination primitives: Sylvester resultants of binary forms (with scalar or
polynomial coefficients, the latter by fraction-free Bareiss elimination),
the binary discriminant, and signed maximal minors of an (n+1) x (n+2)
matrix.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import DimensionError, ExactnessError, PreconditionError
from .scalars import (
    EXACT,
    FLOAT,
    QQi,
    coerce_scalar,
    scalar_is_zero,
    scalar_to_complex,
)

Exponent = Tuple[int, ...]

# Symbolic Sylvester matrices above this form degree are refused: the
# fraction-free elimination blows up combinatorially beyond it.
SYMBOLIC_DEGREE_CAP = 6


class VariableShape:
    """Domain of a polynomial: vector(N+1) or matrix(rows k, cols N+1)."""

    __slots__ = ("kind", "rows", "cols")

    def __init__(self, kind: str, rows: int, cols: int):
        if kind not in ("vector", "matrix"):
            raise PreconditionError(f"unknown shape kind {kind!r}")
        if kind == "vector" and rows != 1:
            raise PreconditionError("vector shape must have rows=1")
        if rows < 1 or cols < 2:
            raise PreconditionError("shape requires k >= 1 and N >= 1")
        self.kind = kind
        self.rows = rows
        self.cols = cols

    @classmethod
    def vector(cls, n_plus_1: int) -> "VariableShape":
        return cls("vector", 1, n_plus_1)

    @classmethod
    def matrix(cls, rows: int, cols: int) -> "VariableShape":
        return cls("matrix", rows, cols)

    @property
    def nvars(self) -> int:
        return self.rows * self.cols

    def column_of(self, flat_index: int) -> int:
        return flat_index % self.cols

    def column_degrees(self, exp: Exponent) -> Tuple[int, ...]:
        """Per-column total exponent of a monomial (its torus character)."""
        out = [0] * self.cols
        for v, e in enumerate(exp):
            out[v % self.cols] += e
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, VariableShape)
            and (self.kind, self.rows, self.cols) == (other.kind, other.rows, other.cols)
        )

    def __hash__(self):
        return hash((self.kind, self.rows, self.cols))

    def __repr__(self):
        if self.kind == "vector":
            return f"VariableShape.vector({self.cols})"
        return f"VariableShape.matrix({self.rows}, {self.cols})"


class HomogeneousPolynomial:
    """Sparse homogeneous polynomial over a VariableShape.

    The zero polynomial (empty term map) is representable for internal
    arithmetic; stability-facing constructors reject it via require_nonzero.
    """

    __slots__ = ("shape", "degree", "terms", "mode")

    def __init__(self, shape: VariableShape, degree: int, terms: Dict[Exponent, object], mode: str):
        if degree < 0:
            raise PreconditionError("degree must be nonnegative")
        if mode not in (EXACT, FLOAT):
            raise PreconditionError(f"unknown mode {mode!r}")
        clean: Dict[Exponent, object] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != shape.nvars:
                raise DimensionError(
                    f"exponent length {len(exp)} != variable count {shape.nvars}"
                )
            if any(e < 0 for e in exp):
                raise PreconditionError("negative exponent")
            if sum(exp) != degree:
                raise PreconditionError(
                    f"term {exp} has total degree {sum(exp)}, expected {degree}"
                )
            c = coerce_scalar(c, mode)
            if scalar_is_zero(c):
                continue
            if exp in clean:
                raise PreconditionError("duplicate exponent key")
            clean[exp] = c
        self.shape = shape
        self.degree = degree
        self.terms = clean
        self.mode = mode

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, shape: VariableShape, degree: int, mode: str = EXACT):
        return cls(shape, degree, {}, mode)

    @classmethod
    def constant(cls, shape: VariableShape, value, mode: str = EXACT):
        return cls(shape, 0, {(0,) * shape.nvars: value}, mode)

    @classmethod
    def monomial(cls, shape: VariableShape, exp: Exponent, coeff=1, mode: str = EXACT):
        return cls(shape, sum(exp), {tuple(exp): coeff}, mode)

    @classmethod
    def variable(cls, shape: VariableShape, index: int, mode: str = EXACT):
        exp = [0] * shape.nvars
        exp[index] = 1
        return cls(shape, 1, {tuple(exp): 1}, mode)

    # -- basics -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def require_nonzero(self, what: str = "polynomial") -> "HomogeneousPolynomial":
        if self.is_zero:
            raise PreconditionError(f"zero {what} is not allowed here")
        return self

    def support_characters(self) -> set:
        """Raw torus characters (column-degree vectors) of the monomials."""
        return {self.shape.column_degrees(exp) for exp in self.terms}

    def sorted_terms(self) -> List[Tuple[Exponent, object]]:
        """Terms in descending lexicographic exponent order (deterministic)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def to_float(self) -> "HomogeneousPolynomial":
        if self.mode == FLOAT:
            return self
        return HomogeneousPolynomial(
            self.shape,
            self.degree,
            {e: scalar_to_complex(c) for e, c in self.terms.items()},
            FLOAT,
        )

    def map_coefficients(self, fn) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial(
            self.shape, self.degree, {e: fn(c) for e, c in self.terms.items()}, self.mode
        )

    # -- ring operations ----------------------------------------------

    def _check_compat(self, other: "HomogeneousPolynomial"):
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        if self.mode != other.mode:
            raise PreconditionError("mode mismatch")

    def __add__(self, other: "HomogeneousPolynomial"):
        self._check_compat(other)
        if self.degree != other.degree:
            raise PreconditionError("cannot add polynomials of different degrees")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return HomogeneousPolynomial(self.shape, self.degree, out, self.mode)

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPolynomial):
            self._check_compat(other)
            out: Dict[Exponent, object] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    s = out.get(e)
                    out[e] = c if s is None else s + c
            return HomogeneousPolynomial(
                self.shape, self.degree + other.degree, out, self.mode
            )
        c = coerce_scalar(other, self.mode)
        if scalar_is_zero(c):
            return HomogeneousPolynomial.zero(self.shape, self.degree, self.mode)
        return self.map_coefficients(lambda x: x * c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PreconditionError("negative power")
        result = HomogeneousPolynomial.constant(self.shape, 1, self.mode)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousPolynomial)
            and self.shape == other.shape
            and self.degree == other.degree
            and self.mode == other.mode
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.shape, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return (
            f"HomogeneousPolynomial({self.shape!r}, degree={self.degree}, "
            f"nterms={len(self.terms)}, mode={self.mode!r})"
        )

    def derivative(self, var: int) -> "HomogeneousPolynomial":
        out: Dict[Exponent, object] = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            e2 = list(e)
            e2[var] = k - 1
            out[tuple(e2)] = c * k
        deg = self.degree - 1 if self.degree > 0 else 0
        return HomogeneousPolynomial(self.shape, deg, out, self.mode)

    # -- normalization -------------------------------------------------

    def content_normalized(self) -> "HomogeneousPolynomial":
        """Scale so coefficients are primitive with the leading one positive real.

        Divides by the lexicographically leading coefficient, then clears the
        rational content.  Exact mode only; the emitted scalar convention makes
        cross-construction ratio tests deterministic.
        """
        if self.is_zero:
            return self
        if self.mode != EXACT:
            raise ExactnessError("content normalization requires exact mode")
        lead = self.sorted_terms()[0][1]
        scaled = {e: c / lead for e, c in self.terms.items()}
        nums: List[int] = []
        dens: List[int] = []
        for c in scaled.values():
            for f in (c.re, c.im):
                if f != 0:
                    nums.append(abs(f.numerator))
                    dens.append(f.denominator)
        mult = Fraction(_lcm_list(dens), _gcd_list(nums))
        return HomogeneousPolynomial(
            self.shape,
            self.degree,
            {e: c * mult for e, c in scaled.items()},
            EXACT,
        )


def _gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g or 1


def _lcm_list(xs: Iterable[int]) -> int:
    l = 1
    for x in xs:
        l = l * x // gcd(l, x)
    return l


# ---------------------------------------------------------------------------
# group elements and one-parameter subgroups
# ---------------------------------------------------------------------------


class GroupElement:
    """Square matrix in SL(N+1); entries in one arithmetic mode.

    Exact mode requires det == 1 exactly; float mode tolerates |det - 1| <= 1e-9.
    """

    __slots__ = ("size", "entries", "mode", "_det", "_hs2")

    DET_TOL = 1e-9

    def __init__(self, entries: Sequence[Sequence[object]], mode: str):
        n = len(entries)
        rows = [[coerce_scalar(x, mode) for x in row] for row in entries]
        if any(len(r) != n for r in rows):
            raise DimensionError("group element must be square")
        self.size = n
        self.entries = rows
        self.mode = mode
        self._det = mat_det(rows, mode)
        if mode == EXACT:
            if self._det != QQi(1, 0):
                raise PreconditionError("exact group element must have det = 1")
        else:
            if abs(self._det - 1.0) > self.DET_TOL:
                raise PreconditionError(
                    f"float group element det {self._det} not within 1e-9 of 1"
                )
        self._hs2 = None

    @classmethod
    def identity(cls, n: int, mode: str = EXACT) -> "GroupElement":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], mode)

    @property
    def determinant(self):
        return self._det

    @property
    def hs_norm2(self) -> float:
        """Hilbert-Schmidt norm squared, Trace(sigma sigma*)."""
        if self._hs2 is None:
            total = 0.0
            for row in self.entries:
                for x in row:
                    z = scalar_to_complex(x)
                    total += z.real * z.real + z.imag * z.imag
            self._hs2 = total
        return self._hs2

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[scalar_to_complex(x) for x in row] for row in self.entries],
            dtype=np.complex128,
        )

    def matmul(self, other: "GroupElement") -> "GroupElement":
        if self.size != other.size or self.mode != other.mode:
            raise DimensionError("group element size/mode mismatch")
        return GroupElement(mat_mul(self.entries, other.entries), self.mode)


class OnePSG:
    """Algebraic one-parameter subgroup of the diagonal torus: t -> diag(t^a_i).

    The exponent vector must sum to zero so the subgroup lands in SL.
    """

    __slots__ = ("exponents",)

    def __init__(self, exponents: Sequence[int]):
        exps = tuple(int(a) for a in exponents)
        if sum(exps) != 0:
            raise PreconditionError("1-PSG exponents must sum to zero")
        self.exponents = exps

    def __len__(self):
        return len(self.exponents)

    def __repr__(self):
        return f"OnePSG({list(self.exponents)})"

    def matrix(self, t: complex) -> np.ndarray:
        return np.diag([complex(t) ** a for a in self.exponents]).astype(np.complex128)


# ---------------------------------------------------------------------------
# scalar matrix helpers (exact Gaussian elimination over the QQi field)
# ---------------------------------------------------------------------------


def mat_mul(a, b):
    n, m, p = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0] * b[0][j]
            for k in range(1, p):
                s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def mat_det(rows, mode: str):
    n = len(rows)
    if mode == FLOAT:
        arr = np.array([[scalar_to_complex(x) for x in r] for r in rows], dtype=complex)
        return complex(np.linalg.det(arr))
    m = [list(r) for r in rows]
    det = QQi(1, 0)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return QQi(0, 0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv_rows = range(col + 1, n)
        lead = m[col][col]
        for r in inv_rows:
            if m[r][col]:
                factor = m[r][col] / lead
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


# ---------------------------------------------------------------------------
# evaluation and the group action
# ---------------------------------------------------------------------------


def _flatten_point(point, shape: VariableShape):
    if isinstance(point, np.ndarray):
        point = point.tolist()
    flat: List[object] = []
    if point and isinstance(point[0], (list, tuple)):
        for row in point:
            flat.extend(row)
    else:
        flat = list(point)
    if len(flat) != shape.nvars:
        raise DimensionError(
            f"point has {len(flat)} entries, shape expects {shape.nvars}"
        )
    return flat


def evaluate(P: HomogeneousPolynomial, point) -> object:
    """Evaluate P at a vector or matrix of scalars matching P.shape."""
    flat = [coerce_scalar(x, P.mode) for x in _flatten_point(point, P.shape)]
    zero = QQi(0, 0) if P.mode == EXACT else 0j
    total = zero
    for exp, c in P.terms.items():
        val = c
        for v, e in enumerate(exp):
            if e == 0:
                continue
            base = flat[v]
            if scalar_is_zero(base):
                val = zero
                break
            for _ in range(e):
                val = val * base
        total = total + val
    return total


def _matrix_rows(sigma, mode: str):
    if isinstance(sigma, GroupElement):
        if sigma.mode != mode:
            if sigma.mode == EXACT and mode == FLOAT:
                return [[scalar_to_complex(x) for x in row] for row in sigma.entries]
            raise PreconditionError("cannot use float group element on exact polynomial")
        return sigma.entries
    if isinstance(sigma, np.ndarray):
        sigma = sigma.tolist()
    return [[coerce_scalar(x, mode) for x in row] for row in sigma]


def act(sigma, P: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """Right substitution action (sigma . P)(A) = P(A sigma).

    ``sigma`` is a GroupElement or a plain square matrix of scalars; its size
    must match P's column count.  Composition satisfies
    act(tau, act(sigma, P)) == act(tau @ sigma, P), and the degree is preserved.
    Scalar matrices are accepted too: containment and support tests are
    invariant under scaling, which keeps exact-mode probing in the rationals.
    """
    rows = _matrix_rows(sigma, P.mode)
    n = P.shape.cols
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionError(f"group element size {len(rows)} != column count {n}")
    zero = QQi(0, 0) if P.mode == EXACT else 0j
    cols = P.shape.cols

    # variable (r, j) of A sigma is sum_i A[r, i] sigma[i][j]
    lin: List[Dict[int, object]] = []
    for v in range(P.shape.nvars):
        r, j = divmod(v, cols)
        lin.append(
            {r * cols + i: rows[i][j] for i in range(n) if not scalar_is_zero(rows[i][j])}
        )

    # cache of expanded powers lin[v]^e, keyed by (v, e)
    power_cache: Dict[Tuple[int, int], Dict[Exponent, object]] = {}

    def linear_power(v: int, e: int) -> Dict[Exponent, object]:
        key = (v, e)
        cached = power_cache.get(key)
        if cached is not None:
            return cached
        base_exp = (0,) * P.shape.nvars
        acc: Dict[Exponent, object] = {base_exp: QQi(1, 0) if P.mode == EXACT else 1.0 + 0j}
        for _ in range(e):
            nxt: Dict[Exponent, object] = {}
            for exp, c in acc.items():
                for w, cw in lin[v].items():
                    e2 = list(exp)
                    e2[w] += 1
                    k = tuple(e2)
                    cv = c * cw
                    s = nxt.get(k)
                    nxt[k] = cv if s is None else s + cv
            acc = {k: c for k, c in nxt.items() if not scalar_is_zero(c)}
        power_cache[key] = acc
        return acc

    out: Dict[Exponent, object] = {}
    for exp, coeff in P.terms.items():
        partial: Dict[Exponent, object] = {(0,) * P.shape.nvars: coeff}
        for v, e in enumerate(exp):
            if e == 0:
                continue
            pw = linear_power(v, e)
            nxt: Dict[Exponent, object] = {}
            for e1, c1 in partial.items():
                for e2, c2 in pw.items():
                    k = tuple(a + b for a, b in zip(e1, e2))
                    cv = c1 * c2
                    s = nxt.get(k)
                    nxt[k] = cv if s is None else s + cv
            partial = nxt
        for k, c in partial.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
    return HomogeneousPolynomial(P.shape, P.degree, out, P.mode)


# ---------------------------------------------------------------------------
# binary forms: coefficient extraction, Sylvester resultants, discriminants
# ---------------------------------------------------------------------------


def binary_coeffs(f: HomogeneousPolynomial) -> List[object]:
    """Coefficients of a binary form by descending x-power: [x^d, ..., y^d]."""
    if f.shape.nvars != 2:
        raise DimensionError("binary form must have exactly two variables")
    d = f.degree
    zero = QQi(0, 0) if f.mode == EXACT else 0j
    out = [zero] * (d + 1)
    for (i, j), c in f.terms.items():
        out[d - i] = c
    return out


def _is_poly_seq(coeffs) -> bool:
    return any(isinstance(c, HomogeneousPolynomial) for c in coeffs)


def _sylvester_rows(fc: List[object], gc: List[object], zero):
    p, q = len(fc) - 1, len(gc) - 1
    n = p + q
    rows = []
    for i in range(q):
        rows.append([zero] * i + list(fc) + [zero] * (n - p - 1 - i))
    for i in range(p):
        rows.append([zero] * i + list(gc) + [zero] * (n - q - 1 - i))
    return rows


def _seq_is_zero(coeffs) -> bool:
    for c in coeffs:
        if isinstance(c, HomogeneousPolynomial):
            if not c.is_zero:
                return False
        elif not scalar_is_zero(coerce_scalar(c, EXACT) if isinstance(c, (int, Fraction, QQi)) else complex(c)):
            return False
    return True


def sylvester_resultant(f, g):
    """Resultant of two nonzero binary forms via the Sylvester determinant.

    ``f`` and ``g`` are HomogeneousPolynomials in two variables, or coefficient
    sequences by descending power of the first variable.  Scalar coefficients
    give a scalar; coefficients that are themselves polynomials in auxiliary
    variables give a polynomial, computed by fraction-free Bareiss elimination
    (exact mode only).  Vanishes iff f and g share a projective root.
    """
    fc = binary_coeffs(f) if isinstance(f, HomogeneousPolynomial) else list(f)
    gc = binary_coeffs(g) if isinstance(g, HomogeneousPolynomial) else list(g)
    if _seq_is_zero(fc) or _seq_is_zero(gc):
        raise PreconditionError("zero form has no resultant")
    if _is_poly_seq(fc) or _is_poly_seq(gc):
        return _symbolic_resultant(fc, gc)
    mode = EXACT if all(isinstance(c, (QQi, int, Fraction)) for c in fc + gc) else FLOAT
    fc = [coerce_scalar(c, mode) for c in fc]
    gc = [coerce_scalar(c, mode) for c in gc]
    zero = QQi(0, 0) if mode == EXACT else 0j
    rows = _sylvester_rows(fc, gc, zero)
    if not rows:
        # both forms are constants: empty Sylvester matrix, resultant 1
        return QQi(1, 0) if mode == EXACT else 1.0 + 0j
    return mat_det(rows, mode)


def _symbolic_resultant(fc, gc) -> HomogeneousPolynomial:
    sample = next(c for c in list(fc) + list(gc) if isinstance(c, HomogeneousPolynomial))
    shape, mode = sample.shape, sample.mode
    if mode != EXACT:
        raise ExactnessError("symbolic resultants require exact coefficients")
    p, q = len(fc) - 1, len(gc) - 1
    if max(p, q) > SYMBOLIC_DEGREE_CAP:
        raise PreconditionError(
            f"symbolic resultant capped at form degree {SYMBOLIC_DEGREE_CAP}"
        )

    def lift(c, deg):
        if isinstance(c, HomogeneousPolynomial):
            if c.shape != shape or c.degree != deg:
                raise DimensionError("symbolic coefficients must share shape and degree")
            return c
        c = coerce_scalar(c, mode)
        if scalar_is_zero(c):
            return HomogeneousPolynomial.zero(shape, deg, mode)
        if deg == 0:
            return HomogeneousPolynomial.constant(shape, c, mode)
        return _raise_mixed()

    fdeg = next((c.degree for c in fc if isinstance(c, HomogeneousPolynomial)), 0)
    gdeg = next((c.degree for c in gc if isinstance(c, HomogeneousPolynomial)), 0)
    frows = [lift(c, fdeg) for c in fc]
    grows = [lift(c, gdeg) for c in gc]
    zero_f = HomogeneousPolynomial.zero(shape, fdeg, mode)
    zero_g = HomogeneousPolynomial.zero(shape, gdeg, mode)
    n = p + q
    rows = []
    for i in range(q):
        rows.append([zero_f] * i + frows + [zero_f] * (n - p - 1 - i))
    for i in range(p):
        rows.append([zero_g] * i + grows + [zero_g] * (n - q - 1 - i))
    return bareiss_poly_det(rows)


def _raise_mixed():
    raise PreconditionError(
        "nonzero scalar coefficients cannot mix with positive-degree polynomial ones"
    )


def poly_divexact(num: HomogeneousPolynomial, den: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """Exact division num / den in the multivariate ring (remainder must be 0)."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero:
        return HomogeneousPolynomial.zero(num.shape, max(num.degree - den.degree, 0), num.mode)
    lead_den_exp = max(den.terms)
    lead_den_c = den.terms[lead_den_exp]
    qterms: Dict[Exponent, object] = {}
    rem = dict(num.terms)
    while rem:
        lead_exp = max(rem)
        lead_c = rem[lead_exp]
        qexp = tuple(a - b for a, b in zip(lead_exp, lead_den_exp))
        if any(e < 0 for e in qexp):
            raise PreconditionError("inexact polynomial division")
        qc = lead_c / lead_den_c
        qterms[qexp] = qc
        for e, c in den.terms.items():
            k = tuple(a + b for a, b in zip(qexp, e))
            s = rem.get(k)
            v = (QQi(0, 0) if s is None else s) - qc * c
            if scalar_is_zero(v):
                rem.pop(k, None)
            else:
                rem[k] = v
    return HomogeneousPolynomial(num.shape, num.degree - den.degree, qterms, num.mode)


def bareiss_poly_det(rows: List[List[HomogeneousPolynomial]]) -> HomogeneousPolynomial:
    """Determinant of a matrix of exact polynomials, fraction-free Bareiss.

    Each intermediate division is by the previous pivot and is exact by the
    Sylvester-identity invariant of the algorithm.
    """
    n = len(rows)
    shape, mode = rows[0][0].shape, rows[0][0].mode
    m = [list(r) for r in rows]
    sign = 1
    prev: HomogeneousPolynomial | None = None
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not m[r][k].is_zero), None)
        if piv is None:
            total_deg = sum(row[0].degree for row in rows)
            return HomogeneousPolynomial.zero(shape, total_deg, mode)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numer = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = poly_divexact(numer, prev) if prev is not None else numer
            m[i][k] = HomogeneousPolynomial.zero(shape, m[i][k].degree, mode)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def binary_discriminant(f):
    """Discriminant of a binary form of degree d >= 2.

    Defined as Res(df/dx, df/dy) divided by d^(d-2); vanishes iff f has a
    repeated projective root, and has degree 2d-2 in the coefficients of f.
    The divisor is recorded in DISCRIMINANT_DIVISOR_RULE for output metadata.
    """
    if isinstance(f, HomogeneousPolynomial):
        coeffs = binary_coeffs(f)
    else:
        coeffs = list(f)
    d = len(coeffs) - 1
    if d < 2:
        raise PreconditionError("discriminant requires degree >= 2")
    # f = sum coeffs[i] x^(d-i) y^i; partials by descending x-power
    fx = [coeffs[i] * (d - i) for i in range(d)]
    fy = [coeffs[i + 1] * (i + 1) for i in range(d)]
    res = sylvester_resultant(fx, fy)
    divisor = d ** (d - 2)
    if isinstance(res, HomogeneousPolynomial):
        inv = QQi(Fraction(1, divisor), 0)
        return res.map_coefficients(lambda c: c * inv)
    if isinstance(res, QQi):
        return res * QQi(Fraction(1, divisor), 0)
    return res / divisor


DISCRIMINANT_DIVISOR_RULE = "res(df/dx, df/dy) / d^(d-2)"


def maximal_minors(A) -> List[object]:
    """Signed maximal minors of an (n+1) x (n+2) scalar matrix.

    Minor j carries sign (-1)^j with column j deleted; for full-rank numeric A
    the result spans ker(A), and A @ minors(A) = 0 identically.
    """
    rows = [list(r) for r in (A.tolist() if isinstance(A, np.ndarray) else A)]
    n1 = len(rows)
    if any(len(r) != n1 + 1 for r in rows):
        raise DimensionError("maximal minors need rows = cols - 1")
    mode = EXACT if all(
        isinstance(x, (QQi, int, Fraction)) for r in rows for x in r
    ) else FLOAT
    rows = [[coerce_scalar(x, mode) for x in r] for r in rows]
    out = []
    for j in range(n1 + 1):
        sub = [[r[c] for c in range(n1 + 1) if c != j] for r in rows]
        d = mat_det(sub, mode)
        out.append(d if j % 2 == 0 else -d)
    return out


def symbolic_maximal_minors(n1: int, mode: str = EXACT) -> List[HomogeneousPolynomial]:
    """Minors of the generic (n+1) x (n+2) matrix as polynomials in its entries."""
    shape = VariableShape.matrix(n1, n1 + 1)
    out = []
    for j in range(n1 + 1):
        cols = [c for c in range(n1 + 1) if c != j]
        terms: Dict[Exponent, object] = {}
        for perm, sgn in _permutations_signed(n1):
            exp = [0] * shape.nvars
            for r in range(n1):
                exp[r * (n1 + 1) + cols[perm[r]]] += 1
            key = tuple(exp)
            val = sgn if j % 2 == 0 else -sgn
            terms[key] = terms.get(key, 0) + val
        out.append(HomogeneousPolynomial(shape, n1, terms, mode))
    return out


def _permutations_signed(n: int):
    import itertools

    base = list(range(n))
    for perm in itertools.permutations(base):
        inv = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        yield perm, (1 if inv % 2 == 0 else -1)
