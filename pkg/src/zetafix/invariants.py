"""Fixed-point and coincidence invariants by holonomy averaging.

Lefschetz numbers are signed averages of det(I - A D^n) over the
holonomy; Nielsen numbers average the absolute values; Reidemeister
numbers average sigma(det(A - D^n)) where sigma maps 0 to infinity.
Coincidence versions replace I by the second map's linear part.  All
averages are exact, and any non-integer average is an error in the
input data, never rounded away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import RationalMatrix, det
from .errors import (DegenerateFixedSet, NielsenFormulaMismatch,
                     NonIntegralLefschetz, NonIntegralNielsen, NotBlockCompatible,
                     NotCyclic, TrichotomyMismatch)
from .manifolds import (AffineMapSpec, ManifoldSpec, PlusSplit,
                        ensure_compatible, plus_subgroup_spec)
from .ratfunc import SequenceOracle


def default_degree_bound(spec: ManifoldSpec) -> int:
    """Geometric-term budget for zeta reconstruction: every holonomy
    element contributes at most 2^dim signed eigenvalue products."""
    return spec.order * 2 ** spec.dimension


class _Powers:
    """Iteratively extended powers of a fixed matrix."""

    def __init__(self, m: RationalMatrix):
        self._m = m
        self._p = [RationalMatrix.identity(m.dim)]

    def get(self, n: int) -> RationalMatrix:
        while len(self._p) <= n:
            self._p.append(self._p[-1] @ self._m)
        return self._p[n]


def _average(values, order: int, err) -> int:
    s = sum(values, Fraction(0)) / order
    if s.denominator != 1:
        raise err(f"holonomy average {s} is not an integer")
    return int(s)


def lefschetz(spec: ManifoldSpec, mapping: AffineMapSpec, n: int = 1) -> int:
    """L(f^n) = (1/|Phi|) sum_A det(I - A D^n)."""
    ensure_compatible(spec, mapping)
    if n < 1:
        raise ValueError("iterate must be >= 1")
    ident = RationalMatrix.identity(spec.dimension)
    dn = mapping.linear.power(n)
    return _average((det(ident - a @ dn) for _, a in spec.holonomy),
                    spec.order, NonIntegralLefschetz)


def nielsen(spec: ManifoldSpec, mapping: AffineMapSpec, n: int = 1) -> int:
    """N(f^n) = (1/|Phi|) sum_A |det(I - A D^n)|."""
    ensure_compatible(spec, mapping)
    if n < 1:
        raise ValueError("iterate must be >= 1")
    ident = RationalMatrix.identity(spec.dimension)
    dn = mapping.linear.power(n)
    return _average((abs(det(ident - a @ dn)) for _, a in spec.holonomy),
                    spec.order, NonIntegralNielsen)


def reidemeister(spec: ManifoldSpec, mapping: AffineMapSpec, n: int = 1):
    """R(f^n) = (1/|Phi|) sum_A sigma(det(A - D^n)), sigma(0) = inf.

    Deliberately uses the det(A - D^n) form rather than det(I - A D^n);
    the two agree because inversion permutes the holonomy, which makes
    agreement with the Nielsen number a genuine cross-check.
    """
    ensure_compatible(spec, mapping)
    if n < 1:
        raise ValueError("iterate must be >= 1")
    dn = mapping.linear.power(n)
    dets = [det(a - dn) for _, a in spec.holonomy]
    if any(v == 0 for v in dets):
        return math.inf
    return _average((abs(v) for v in dets), spec.order, NonIntegralNielsen)


def lefschetz_plus(spec: ManifoldSpec, mapping: AffineMapSpec,
                   split: PlusSplit, n: int = 1) -> int:
    """Lefschetz number of the lift to the orientation double cover
    determined by the plus part of the holonomy."""
    return lefschetz(plus_subgroup_spec(spec, split), mapping, n)


def nielsen_from_lefschetz(spec: ManifoldSpec, mapping: AffineMapSpec,
                           split: PlusSplit, k: int = 1) -> int:
    """Nielsen number via the sign formula
    N(f^k) = (-1)^(p + (k+1)n) * L(f^k)                 (plus part = all)
    N(f^k) = (-1)^(p + (k+1)n) * (L(f+^k) - L(f^k))     (proper plus part)
    cross-checked against the averaging route on every call."""
    sign = (-1) ** (split.p + (k + 1) * split.n)
    if not split.is_proper:
        value = sign * lefschetz(spec, mapping, k)
    else:
        value = sign * (lefschetz_plus(spec, mapping, split, k)
                        - lefschetz(spec, mapping, k))
    direct = nielsen(spec, mapping, k)
    if value != direct:
        raise NielsenFormulaMismatch(
            f"sign formula gives {value} but averaging gives {direct} "
            f"for iterate {k} of {mapping.label!r}")
    return value


# --------------------------------------------------------------------------
# invariant sequences (for zeta reconstruction)
# --------------------------------------------------------------------------


def lefschetz_sequence(spec: ManifoldSpec, mapping: AffineMapSpec,
                       degree_bound: int | None = None) -> SequenceOracle:
    ensure_compatible(spec, mapping)
    powers = _Powers(mapping.linear)
    ident = RationalMatrix.identity(spec.dimension)
    mats = [a for _, a in spec.holonomy]

    def fn(n: int) -> int:
        dn = powers.get(n)
        return _average((det(ident - a @ dn) for a in mats),
                        spec.order, NonIntegralLefschetz)

    bound = default_degree_bound(spec) if degree_bound is None else degree_bound
    return SequenceOracle(fn, bound, name=f"lefschetz:{spec.name}:{mapping.label}")


def nielsen_sequence(spec: ManifoldSpec, mapping: AffineMapSpec,
                     degree_bound: int | None = None) -> SequenceOracle:
    ensure_compatible(spec, mapping)
    powers = _Powers(mapping.linear)
    ident = RationalMatrix.identity(spec.dimension)
    mats = [a for _, a in spec.holonomy]

    def fn(n: int) -> int:
        dn = powers.get(n)
        return _average((abs(det(ident - a @ dn)) for a in mats),
                        spec.order, NonIntegralNielsen)

    bound = default_degree_bound(spec) if degree_bound is None else degree_bound
    return SequenceOracle(fn, bound, name=f"nielsen:{spec.name}:{mapping.label}")


def reidemeister_sequence(spec: ManifoldSpec, mapping: AffineMapSpec,
                          degree_bound: int | None = None) -> SequenceOracle:
    """Values may be math.inf; zeta construction must check definedness
    before consuming this."""
    ensure_compatible(spec, mapping)
    powers = _Powers(mapping.linear)
    mats = [a for _, a in spec.holonomy]

    def fn(n: int):
        dn = powers.get(n)
        dets = [det(a - dn) for a in mats]
        if any(v == 0 for v in dets):
            return math.inf
        return _average((abs(v) for v in dets), spec.order, NonIntegralNielsen)

    bound = default_degree_bound(spec) if degree_bound is None else degree_bound
    return SequenceOracle(fn, bound, name=f"reidemeister:{spec.name}:{mapping.label}")


# --------------------------------------------------------------------------
# coincidence invariants
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoincidenceNumbers:
    """L, N, R for a pair of maps on one manifold.  nielsen is None when
    the manifold is non-orientable (the averaging formula needs
    orientability); reidemeister may be math.inf."""

    lefschetz: int
    nielsen: int | None
    reidemeister: object  # int or math.inf


def coincidence_numbers(spec: ManifoldSpec, map_f: AffineMapSpec,
                        map_g: AffineMapSpec, n: int = 1) -> CoincidenceNumbers:
    """Averaged coincidence invariants of the iterate pair (f^n, g^n):
    determinants det(E^n - A D^n) over the holonomy."""
    ensure_compatible(spec, map_f)
    ensure_compatible(spec, map_g)
    if n < 1:
        raise ValueError("iterate must be >= 1")
    dn = map_f.linear.power(n)
    en = map_g.linear.power(n)
    dets = [det(en - a @ dn) for _, a in spec.holonomy]
    lef = _average(dets, spec.order, NonIntegralLefschetz)
    nie = (_average((abs(v) for v in dets), spec.order, NonIntegralNielsen)
           if spec.orientable else None)
    if any(v == 0 for v in dets):
        rei = math.inf
    else:
        rei = _average((abs(v) for v in dets), spec.order, NonIntegralNielsen)
    return CoincidenceNumbers(lef, nie, rei)


# --------------------------------------------------------------------------
# cyclic holonomy decomposition and the coincidence trichotomy
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicDecomposition:
    """Isotypic decomposition of a cyclic holonomy representation:
    trivial part (dimension m_triv), sign part (k_tau), and rotation
    pairs with the listed angles in (0, pi).  basis_change columns are
    ordered trivial, sign, rotations; in that basis the generator is
    blockdiag(I, -I, R(theta_1), ...)."""

    generator_label: str
    order: int
    m_triv: int
    k_tau: int
    rotation_angles: tuple[float, ...]
    basis_change: np.ndarray


def _element_order(m: RationalMatrix, cap: int) -> int | None:
    p = m
    order = 1
    while not p.is_identity:
        p = p @ m
        order += 1
        if order > cap:
            return None
    return order


def cyclic_decomposition(spec: ManifoldSpec) -> CyclicDecomposition:
    """Find a generator of the holonomy and split space into its
    trivial, sign, and rotation isotypic parts.  Raises NotCyclic when
    no element generates the whole group."""
    gen_label = None
    for l, m in spec.holonomy:
        if _element_order(m, spec.order) == spec.order:
            gen_label = l
            break
    if gen_label is None:
        raise NotCyclic(f"holonomy of {spec.name!r} has no generator")
    a0 = spec.matrix(gen_label)
    ident = RationalMatrix.identity(spec.dimension)
    triv = (a0 - ident).nullspace()
    tau = (a0 + ident).nullspace()
    m_triv, k_tau = len(triv), len(tau)

    cols = [[float(x) for x in v] for v in triv] + [[float(x) for x in v] for v in tau]
    angles = []
    w, vecs = np.linalg.eig(a0.to_float())
    order = spec.order
    pairs = [(math.atan2(w[i].imag, w[i].real), i) for i in range(len(w))
             if w[i].imag > 1e-9]
    pairs.sort(key=lambda p: (round(p[0], 9), p[1]))
    for theta, i in pairs:
        k_int = round(theta * order / (2 * math.pi))
        angles.append(2 * math.pi * k_int / order)
        v = vecs[:, i]
        cols.append(list(np.real(v)))
        cols.append(list(np.imag(v)))
    basis = np.array(cols, dtype=float).T
    if basis.shape != (spec.dimension, spec.dimension):
        raise NotCyclic(
            f"decomposition of {gen_label!r} does not fill the space "
            f"(got {basis.shape[1]} columns for dimension {spec.dimension})")
    # confirm the claimed block form
    conj = np.linalg.solve(basis, a0.to_float() @ basis)
    expected = np.zeros_like(conj)
    expected[:m_triv, :m_triv] = np.eye(m_triv)
    expected[m_triv:m_triv + k_tau, m_triv:m_triv + k_tau] = -np.eye(k_tau)
    off = m_triv + k_tau
    for theta in angles:
        c, s = math.cos(theta), math.sin(theta)
        expected[off:off + 2, off:off + 2] = [[c, s], [-s, c]]
        off += 2
    if not np.allclose(conj, expected, atol=1e-8):
        raise ArithmeticError("generator does not reduce to rotation form")
    return CyclicDecomposition(gen_label, order, m_triv, k_tau,
                               tuple(angles), basis)


def _column_space(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    rows = [list(r) for r in m.rows]
    n = m.dim
    work = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(n):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    cols = list(zip(*rows))
    return [tuple(cols[c]) for c in pivots]


@dataclass(frozen=True)
class TrichotomyReport:
    """Coincidence Nielsen number predicted by the cyclic-holonomy case
    analysis, with the sign data that selected the case."""

    case: int
    predicted_nielsen: int
    averaged_nielsen: int
    det_diff_sign: int   # sign of det(E_tau - D_tau)
    det_sum_sign: int    # sign of det(E_tau + D_tau)
    m_triv: int
    k_tau: int


def coincidence_trichotomy(spec: ManifoldSpec, map_f: AffineMapSpec,
                           map_g: AffineMapSpec) -> TrichotomyReport:
    """Case analysis for coincidence Nielsen numbers under cyclic
    orientable holonomy.

    Case 1 (no sign part): N = |L|.  Case 2 (det(E_tau - D_tau) and
    det(E_tau + D_tau) not of opposite sign): N = |L|.  Case 3: N =
    |L_0 - L| where L_0 averages over the index-2 subgroup generated by
    the generator's square.  The prediction is cross-checked against
    the averaged Nielsen number; disagreement raises TrichotomyMismatch.
    """
    if not spec.orientable:
        raise ValueError("trichotomy requires an orientable manifold")
    ensure_compatible(spec, map_f)
    ensure_compatible(spec, map_g)
    dec = cyclic_decomposition(spec)
    a0 = spec.matrix(dec.generator_label)
    ident = RationalMatrix.identity(spec.dimension)
    triv = (a0 - ident).nullspace()
    tau = (a0 + ident).nullspace()
    rot = _column_space(a0 @ a0 - ident)
    cols = list(triv) + list(tau) + list(rot)
    if len(cols) != spec.dimension:
        raise NotBlockCompatible("isotypic pieces do not fill the space")
    basis = RationalMatrix(list(zip(*cols)))
    binv = basis.inverse()
    mt, kt = len(triv), len(tau)

    def _piece(i: int) -> int:
        if i < mt:
            return 0
        return 1 if i < mt + kt else 2

    def blocks(mat: RationalMatrix) -> RationalMatrix:
        conj = binv @ mat @ basis
        for i in range(spec.dimension):
            for j in range(spec.dimension):
                pi, pj = _piece(i), _piece(j)
                if pi != pj and min(pi, pj) < 2 and conj.rows[i][j] != 0:
                    raise NotBlockCompatible(
                        f"linear part does not preserve the isotypic "
                        f"pieces (entry {i},{j} nonzero)")
        return RationalMatrix([[conj.rows[i][j] for j in range(mt, mt + kt)]
                               for i in range(mt, mt + kt)]) if kt else None

    d_tau = blocks(map_f.linear)
    e_tau = blocks(map_g.linear)

    coin = coincidence_numbers(spec, map_f, map_g, 1)
    lef = coin.lefschetz
    if kt == 0:
        case, predicted, s1, s2 = 1, abs(lef), 0, 0
    else:
        d1 = det(e_tau - d_tau)
        d2 = det(e_tau + d_tau)
        s1 = (d1 > 0) - (d1 < 0)
        s2 = (d2 > 0) - (d2 < 0)
        if d1 * d2 >= 0:
            case, predicted = 2, abs(lef)
        else:
            sq = a0 @ a0
            half = []
            p = RationalMatrix.identity(spec.dimension)
            for _ in range(spec.order):
                for l, m in spec.holonomy:
                    if m == p and (l, m) not in half:
                        half.append((l, m))
                p = p @ sq
            sub = ManifoldSpec(spec.name + "0", spec.dimension, tuple(half))
            lef0 = coincidence_numbers(sub, map_f, map_g, 1).lefschetz
            case, predicted = 3, abs(lef0 - lef)
    if coin.nielsen != predicted:
        raise TrichotomyMismatch(
            f"case {case} predicts N = {predicted} but averaging gives "
            f"{coin.nielsen}")
    return TrichotomyReport(case, predicted, coin.nielsen, s1, s2, mt, kt)


# --------------------------------------------------------------------------
# torus periodic-point oracle
# --------------------------------------------------------------------------


def _snf_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonal of an integer Smith-type reduction (no divisibility
    normalization; the absolute product is what matters here)."""
    n = len(a)
    diag = []
    a = [row[:] for row in a]
    for t in range(n):
        # find smallest nonzero entry in the trailing submatrix
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                diag.append(0)
                break
            bi, bj = best
            a[t], a[bi] = a[bi], a[t]
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = a[i][t] // piv
                if q:
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                if a[i][t] != 0:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // piv
                if q:
                    for i in range(t, n):
                        a[i][j] -= q * a[i][t]
                if a[t][j] != 0:
                    dirty = True
            if not dirty:
                diag.append(piv)
                break
    return diag


def torus_periodic_points(d_mat: RationalMatrix, n: int) -> int:
    """Number of n-periodic points of the toral endomorphism induced by
    an integer matrix: solutions of (I - D^n) x = 0 mod Z^m, counted by
    Smith-form coset enumeration.  Equals |det(I - D^n)| when finite;
    DegenerateFixedSet when the fixed set is a positive-dimensional
    subtorus (det = 0)."""
    if not d_mat.is_integral():
        raise ValueError("torus endomorphisms need an integer matrix")
    if n < 1:
        raise ValueError("iterate must be >= 1")
    m = RationalMatrix.identity(d_mat.dim) - d_mat.power(n)
    rows = [[int(x) for x in r] for r in m.rows]
    diag = _snf_diagonal(rows)
    if any(v == 0 for v in diag):
        raise DegenerateFixedSet(
            f"det(I - D^{n}) = 0: fixed set is a subtorus")
    count = 1
    for v in diag:
        count *= abs(v)
    return count
