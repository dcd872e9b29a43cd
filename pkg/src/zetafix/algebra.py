"""Exact linear algebra over the rationals.

Everything an averaging formula needs: fraction-free determinants,
exact characteristic polynomials, compound (exterior-power) matrices,
and eigenvalue classification relative to the unit circle.  Scalars are
``fractions.Fraction`` throughout; floating point enters only in the
final numeric isolation of roots, and every count that feeds a sign
decision is certified by exact Sturm-chain arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AmbiguousClassification

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce int, 'p/q' string, or Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


class Polynomial:
    """Univariate polynomial with Fraction coefficients.

    Coefficients are stored lowest degree first with no trailing zeros;
    the zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    # -- structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    # -- arithmetic

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                           for i in range(n)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.coeffs
        lead = d[-1]
        for k in range(len(rem) - len(d), -1, -1):
            c = rem[k + len(d) - 1] / lead
            if c != 0:
                q[k] = c
                for j, dj in enumerate(d):
                    rem[k + j] -= c * dj
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("division is not exact")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc if self.coeffs else (Fraction(0) if isinstance(x, (int, Fraction)) else 0.0)

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lead = self.leading()
        return Polynomial([c / lead for c in self.coeffs])

    def reversed_poly(self) -> "Polynomial":
        """z^deg * p(1/z); constant term of the result is p's leading one."""
        return Polynomial(tuple(reversed(self.coeffs)))

    def compose_scale(self, c) -> "Polynomial":
        """p(c*z) for a rational scalar c."""
        c = as_rational(c)
        return Polynomial([a * c**i for i, a in enumerate(self.coeffs)])

    def shift_down(self, k: int) -> "Polynomial":
        """Divide by z^k; requires the low-order coefficients to vanish."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ArithmeticError("not divisible by z^k")
        return Polynomial(self.coeffs[k:])

    def float_coeffs_desc(self) -> list[float]:
        return [float(c) for c in reversed(self.coeffs)]

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial((0, 1))

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((1,))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals."""
    while not b.is_zero:
        a, b = b, (a % b).monic() if not (a % b).is_zero else Polynomial()
    return a.monic() if not a.is_zero else a


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: return [(s_i, i)] with p = lead * prod s_i^i,
    each s_i squarefree and pairwise coprime (trivial factors omitted)."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    g = poly_gcd(p, dp)
    if g.degree == 0:
        return [(p, 1)]
    out = []
    c = p.exact_div(g)
    d = dp.exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        s = poly_gcd(c, d)
        if s.degree > 0:
            out.append((s, i))
        c2 = c.exact_div(s) if s.degree > 0 else c
        d = (d.exact_div(s) if s.degree > 0 else d) - c2.derivative()
        c = c2
        i += 1
    return out


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero:
            break
        chain.append(-rem)
    return [q for q in chain if not q.is_zero]

_NEG_INF = object()
_POS_INF = object()


def _sign_at(q: Polynomial, x) -> int:
    if x is _POS_INF:
        return _sign(q.leading())
    if x is _NEG_INF:
        return _sign(q.leading()) * (-1) ** q.degree
    return _sign(q(x))


def _variations(chain, x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Polynomial, lo, hi) -> int:
    """Distinct real roots of squarefree p in (lo, hi]; endpoints may be
    the module-level infinity sentinels.  Endpoints must not be roots."""
    if p.degree < 1:
        return 0
    chain = _sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


def _real_roots_outside(p: Polynomial) -> tuple[int, int]:
    """(count of real roots > 1, count of real roots < -1), with
    multiplicity; p must have no root at 0, 1, or -1."""
    gt, lt = 0, 0
    for s, mult in squarefree_decomposition(p):
        gt += mult * count_real_roots(s, Fraction(1), _POS_INF)
        lt += mult * count_real_roots(s, _NEG_INF, Fraction(-1))
    return gt, lt


def _strip_root(p: Polynomial, r: Fraction) -> tuple[Polynomial, int]:
    lin = Polynomial((-r, 1))
    mult = 0
    while not p.is_zero and p(r) == 0:
        p = p.exact_div(lin)
        mult += 1
    return p, mult


def _trace_polynomial(c: Polynomial) -> Polynomial:
    """For palindromic c of even degree 2k, the degree-k polynomial T with
    c(z)/z^k = T(z + 1/z)."""
    k = c.degree // 2
    # B_j(w) = z^j + z^{-j} as a polynomial in w = z + 1/z
    b_prev = Polynomial((2,))
    b_cur = Polynomial.x()
    t = Polynomial((c.coeffs[k],))
    for j in range(1, k + 1):
        t = t + c.coeffs[k + j] * b_cur
        b_prev, b_cur = b_cur, Polynomial.x() * b_cur - b_prev
    return t


def count_unit_modulus_roots(p: Polynomial) -> int:
    """Exact number of roots of p on the unit circle, with multiplicity."""
    if p.degree < 1:
        return 0
    p = p.monic()
    p, m_one = _strip_root(p, Fraction(1))
    p, m_minus = _strip_root(p, Fraction(-1))
    total = m_one + m_minus
    # zero roots are strictly inside the circle
    nz = 0
    while nz < len(p.coeffs) and p.coeffs[nz] == 0:
        nz += 1
    p = p.shift_down(nz)
    if p.degree < 1:
        return total
    c = poly_gcd(p, p.reversed_poly())
    if c.degree == 0:
        return total
    # c collects every unit-circle root (full multiplicity) plus possible
    # reciprocal off-circle pairs; it is palindromic of even degree.
    if c != c.reversed_poly().monic() or c.degree % 2 != 0:
        raise ArithmeticError("reciprocal factor is not palindromic")
    t = _trace_polynomial(c)
    on_circle_pairs = 0
    for s, mult in squarefree_decomposition(t):
        on_circle_pairs += mult * count_real_roots(s, Fraction(-2), Fraction(2))
    return total + 2 * on_circle_pairs


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------


class RationalMatrix:
    """Immutable square matrix over ``fractions.Fraction``.

    Members
    -------
    rows : tuple of tuple of Fraction
    dim : int

    All arithmetic is exact.  Use :meth:`to_float` to hand the matrix to
    numpy for the (clearly marked) numeric steps.
    """

    __slots__ = ("rows", "dim")

    def __init__(self, rows):
        rs = tuple(tuple(as_rational(x) for x in row) for row in rows)
        n = len(rs)
        if any(len(r) != n for r in rs):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "dim", n)

    def __setattr__(self, *a):
        raise AttributeError("RationalMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix([[Fraction(i == j) for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RationalMatrix({[[str(x) for x in r] for r in self.rows]})"

    def __add__(self, other):
        return RationalMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return RationalMatrix([[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return RationalMatrix([[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum(a * b for a, b in zip(row, col))
                                for col in cols] for row in self.rows])

    def scale(self, c) -> "RationalMatrix":
        c = as_rational(c)
        return RationalMatrix([[c * a for a in r] for r in self.rows])

    def power(self, n: int) -> "RationalMatrix":
        if n < 0:
            return self.inverse().power(-n)
        result = RationalMatrix.identity(self.dim)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def trace(self) -> Fraction:
        return sum(self.rows[i][i] for i in range(self.dim))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)))

    @property
    def is_identity(self) -> bool:
        return self == RationalMatrix.identity(self.dim)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)

    def inverse(self) -> "RationalMatrix":
        n = self.dim
        aug = [list(r) + [Fraction(i == j) for j in range(n)]
               for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return RationalMatrix([row[n:] for row in aug])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Exact basis of the kernel, via reduced row echelon form."""
        n = self.dim
        m = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(n):
            piv = next((r for r in range(row, n) if m[r][col] != 0), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for r in range(n):
                if r != row and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[row])]
            pivots.append(col)
            row += 1
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * n
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(tuple(v))
        return basis


def det(m: RationalMatrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first so every intermediate value stays
    an exact integer; the scaling is divided back out at the end.
    """
    n = m.dim
    if n == 0:
        return Fraction(1)
    scale = 1
    a = []
    for row in m.rows:
        l = math.lcm(*(x.denominator for x in row))
        scale *= l
        a.append([int(x * l) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return Fraction(0)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def char_poly(m: RationalMatrix) -> Polynomial:
    """Monic characteristic polynomial det(zI - M), exactly
    (Faddeev-LeVerrier recursion)."""
    n = m.dim
    ident = RationalMatrix.identity(n)
    coeffs_desc = [Fraction(1)]
    mk = RationalMatrix([[Fraction(0)] * n for _ in range(n)])
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(c)
        c = -(m @ mk).trace() / k
        coeffs_desc.append(c)
    return Polynomial(tuple(reversed(coeffs_desc)))


def exterior_power(m: RationalMatrix, i: int) -> RationalMatrix:
    """i-th compound matrix: entries are i x i minors, with row and column
    index subsets ordered lexicographically."""
    n = m.dim
    if not 0 <= i <= n:
        raise ValueError(f"exterior power index {i} out of range for dim {n}")
    if i == 0:
        return RationalMatrix([[Fraction(1)]])
    subsets = list(itertools.combinations(range(n), i))
    out = []
    for rows_s in subsets:
        out_row = []
        for cols_s in subsets:
            sub = RationalMatrix([[m.rows[r][c] for c in cols_s] for r in rows_s])
            out_row.append(det(sub))
        out.append(out_row)
    return RationalMatrix(out)


# --------------------------------------------------------------------------
# eigenvalue classification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenClassification:
    """Unit-circle bookkeeping for a rational matrix.

    p / n count real eigenvalues > 1 / < -1 (exact, with multiplicity);
    unit_modulus_count is the exact number of eigenvalues on the unit
    circle; expanding_log_product is sum(log |lambda|) over |lambda| > 1
    at working precision; eigenvalues lists (re, im, multiplicity)
    clusters, informational only.
    """

    p: int
    n: int
    unit_modulus_count: int
    expanding_log_product: float
    eigenvalues: tuple[tuple[float, float, int], ...]
    expanding_count: int


def _cluster_roots(roots, merge_tol: float):
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12))):
        for cl in clusters:
            c = sum(cl) / len(cl)
            if abs(r - c) <= merge_tol * max(1.0, abs(c)):
                cl.append(r)
                break
        else:
            clusters.append([r])
    out = []
    for cl in clusters:
        c = sum(cl) / len(cl)
        out.append((float(c.real), float(c.imag), len(cl)))
    return tuple(sorted(out))


def spectral_isolation(m: RationalMatrix, tol: float = 1e-10):
    """Classification plus the numeric roots split into the on-circle
    and off-circle parts (in that order).  Shared backend for
    classify_eigenvalues and the holonomy plus-split."""
    return _classify(m, tol)


def classify_eigenvalues(m: RationalMatrix, tol: float = 1e-10) -> EigenClassification:
    """Classify the spectrum of m relative to the unit circle.

    Counts that feed sign decisions (p, n, unit-circle membership) are
    certified exactly from the characteristic polynomial; the numeric
    roots only contribute the expanding modulus product.  Raises
    AmbiguousClassification when the numeric near-circle root count
    cannot be reconciled with the exact one at this tolerance.
    """
    return _classify(m, tol)[0]


def _classify(m: RationalMatrix, tol: float):
    if not 0 < tol < 1:
        raise ValueError("tolerance must be in (0, 1)")
    p = char_poly(m)
    dim = m.dim
    unit_exact = count_unit_modulus_roots(p)

    core, _ = _strip_root(p, Fraction(1))
    core, _ = _strip_root(core, Fraction(-1))
    nz = 0
    while nz < len(core.coeffs) and core.coeffs[nz] == 0:
        nz += 1
    core = core.shift_down(nz)
    p_count, n_count = _real_roots_outside(core) if core.degree >= 1 else (0, 0)

    roots = list(np.roots(p.float_coeffs_desc())) if dim >= 1 else []
    # The exact count says how many roots sit on the circle; the numeric
    # values only have to tell us which ones, and on which side the rest
    # fall.  Repeated roots perturb like eps^(1/multiplicity), so match
    # by distance and insist on a clean gap before trusting any side.
    roots.sort(key=lambda r: abs(abs(r) - 1.0))
    on, off = roots[:unit_exact], roots[unit_exact:]
    max_on = max((abs(abs(r) - 1.0) for r in on), default=0.0)
    min_off = min((abs(abs(r) - 1.0) for r in off), default=math.inf)
    if max_on > 1e-3 or min_off < max(tol, 10.0 * max_on):
        raise AmbiguousClassification(
            f"cannot separate numeric root moduli from the unit circle: "
            f"{unit_exact} roots lie on it exactly, nearest off-circle "
            f"modulus gap {min_off:.3e}, worst on-circle residue "
            f"{max_on:.3e}; refine the tolerance (tol={tol:g})")
    expanding = [r for r in off if abs(r) > 1.0]
    log_prod = float(sum(math.log(abs(r)) for r in expanding))
    cls = EigenClassification(
        p=p_count,
        n=n_count,
        unit_modulus_count=unit_exact,
        expanding_log_product=log_prod,
        eigenvalues=_cluster_roots(roots, 1e-4),
        expanding_count=len(expanding),
    )
    return cls, tuple(on), tuple(off)


def _euler_phi(k: int) -> int:
    result, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def max_root_of_unity_order(dim: int) -> int:
    """Largest k such that a k-th primitive root of unity can be an
    eigenvalue of a dim x dim rational matrix (phi(k) <= dim)."""
    return max(k for k in range(1, 2 * dim * dim + 2) if _euler_phi(k) <= dim)


def has_root_of_unity_eigenvalue(m: RationalMatrix) -> bool:
    """True iff some eigenvalue is a root of unity, decided exactly by
    gcd with z^k - 1 for every candidate order k."""
    p = char_poly(m)
    for k in range(1, max_root_of_unity_order(m.dim) + 1):
        zk = Polynomial([-1] + [0] * (k - 1) + [1])
        if poly_gcd(p, zk).degree > 0:
            return True
    return False
