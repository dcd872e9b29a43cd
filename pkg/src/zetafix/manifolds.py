"""Input model: flat-quotient manifold data and affine self-maps.

A manifold is described by its dimension and the finite holonomy group,
given as exact rational matrices; a self-map by the linear part D of an
affine lift (plus an optional translation, echoed but never needed by
the invariant formulas).  This module validates that data, splits the
holonomy by orientation behaviour on the expanding subspace of D, and
decides whether the Reidemeister zeta function can exist at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import (RationalMatrix, as_rational, char_poly,
                      classify_eigenvalues, has_root_of_unity_eigenvalue,
                      spectral_isolation)
from .errors import (DimensionMismatch, InfiniteOrderElement, NotAGroup,
                     NonInvariantSubspace)


@dataclass(frozen=True)
class ManifoldSpec:
    """Finite holonomy data for a flat-quotient manifold.

    holonomy maps labels to exact rational matrices; it must form a
    group under matrix product (checked by validate_spec, which every
    public computation calls through ensure_valid).
    """

    name: str
    dimension: int
    holonomy: tuple[tuple[str, RationalMatrix], ...]

    @staticmethod
    def make(name: str, dimension: int, holonomy) -> "ManifoldSpec":
        return ManifoldSpec(name, int(dimension),
                            tuple((str(l), m if isinstance(m, RationalMatrix)
                                   else RationalMatrix(m)) for l, m in holonomy))

    @property
    def order(self) -> int:
        return len(self.holonomy)

    @property
    def orientable(self) -> bool:
        from .algebra import det
        return all(det(m) == 1 for _, m in self.holonomy)

    def labels(self) -> list[str]:
        return [l for l, _ in self.holonomy]

    def matrix(self, label: str) -> RationalMatrix:
        for l, m in self.holonomy:
            if l == label:
                return m
        raise KeyError(label)

    def identity_label(self) -> str:
        ident = RationalMatrix.identity(self.dimension)
        for l, m in self.holonomy:
            if m == ident:
                return l
        raise NotAGroup("holonomy does not contain the identity")


@dataclass(frozen=True)
class AffineMapSpec:
    """Affine self-map data: linear part D and optional translation."""

    label: str
    linear: RationalMatrix
    translation: tuple[Fraction, ...] | None = None

    @staticmethod
    def make(label: str, linear, translation=None) -> "AffineMapSpec":
        lin = linear if isinstance(linear, RationalMatrix) else RationalMatrix(linear)
        tr = None if translation is None else tuple(as_rational(t) for t in translation)
        return AffineMapSpec(str(label), lin, tr)


@dataclass(frozen=True)
class ValidationReport:
    orientable: bool
    element_orders: tuple[tuple[str, int], ...]


def validate_spec(spec: ManifoldSpec) -> ValidationReport:
    """Check the holonomy is a finite matrix group of the right size.

    Raises DimensionMismatch, NotAGroup, or InfiniteOrderElement; on
    success reports orientability and each element's order.
    """
    n = spec.dimension
    if n < 1:
        raise DimensionMismatch("dimension must be >= 1")
    if not spec.holonomy:
        raise NotAGroup("holonomy is empty")
    labels = spec.labels()
    if len(set(labels)) != len(labels):
        raise NotAGroup("duplicate holonomy labels")
    mats = {}
    for l, m in spec.holonomy:
        if m.dim != n:
            raise DimensionMismatch(
                f"holonomy element {l!r} is {m.dim}x{m.dim}, expected {n}x{n}")
        if m in mats:
            raise NotAGroup(f"elements {mats[m]!r} and {l!r} share a matrix")
        mats[m] = l
    ident = RationalMatrix.identity(n)
    if ident not in mats:
        raise NotAGroup("holonomy does not contain the identity")
    for l, m in spec.holonomy:
        from .algebra import det
        if det(m) == 0:
            raise NotAGroup(f"element {l!r} is singular")
        for l2, m2 in spec.holonomy:
            if (m @ m2) not in mats:
                raise NotAGroup(f"product {l!r}*{l2!r} is not in the holonomy")
    # closure + identity + finiteness make inverses automatic, but check
    # explicitly so the failure message is precise
    for l, m in spec.holonomy:
        if not any((m @ m2).is_identity for _, m2 in spec.holonomy):
            raise NotAGroup(f"element {l!r} has no inverse in the holonomy")
    orders = []
    for l, m in spec.holonomy:
        p = m
        order = 1
        while not p.is_identity:
            p = p @ m
            order += 1
            if order > spec.order:
                raise InfiniteOrderElement(f"element {l!r} has order > {spec.order}")
        orders.append((l, order))
    return ValidationReport(orientable=spec.orientable,
                            element_orders=tuple(orders))


def ensure_compatible(spec: ManifoldSpec, mapping: AffineMapSpec) -> None:
    if mapping.linear.dim != spec.dimension:
        raise DimensionMismatch(
            f"map {mapping.label!r} linear part is {mapping.linear.dim}-dimensional, "
            f"manifold is {spec.dimension}-dimensional")
    if mapping.translation is not None and len(mapping.translation) != spec.dimension:
        raise DimensionMismatch("translation length does not match dimension")


@dataclass(frozen=True)
class PlusSplit:
    """Holonomy split by orientation behaviour on the expanding subspace.

    plus_membership: label -> True when the element acts with
    determinant +1 on the expanding spectral subspace of D.
    is_proper: True when the plus part is a proper (index-2) subgroup.
    p / n: exact counts of real eigenvalues of D above 1 / below -1.
    """

    plus_membership: tuple[tuple[str, bool], ...]
    is_proper: bool
    p: int
    n: int
    expanding_dim: int

    def plus_labels(self) -> list[str]:
        return [l for l, inside in self.plus_membership if inside]

    def member(self, label: str) -> bool:
        for l, inside in self.plus_membership:
            if l == label:
                return inside
        raise KeyError(label)


def compute_plus_split(spec: ManifoldSpec, mapping: AffineMapSpec,
                       tol: float = 1e-10) -> PlusSplit:
    """Determine which holonomy elements preserve orientation on the
    expanding subspace of the map's linear part.

    The expanding spectral subspace itself need not be holonomy
    invariant; its complement (the non-expanding generalized eigenspace)
    always is for consistent input, so each element's determinant on
    the expanding side is computed as det(A) / det(A restricted to the
    non-expanding subspace).  Restriction residues above 1e-6, or
    determinants that fail to round to +/-1 within 1e-6, raise
    NonInvariantSubspace.
    """
    ensure_compatible(spec, mapping)
    d_mat = mapping.linear
    cls, on_roots, off_roots = spectral_isolation(d_mat, tol)
    m = spec.dimension
    k = cls.expanding_count
    from .algebra import det as exact_det

    if k == 0:
        membership = tuple((l, True) for l, _ in spec.holonomy)
        return PlusSplit(membership, False, cls.p, cls.n, 0)

    if k == m:
        dets = {l: float(exact_det(a)) for l, a in spec.holonomy}
        basis = None
    else:
        nonexp = list(on_roots) + [r for r in off_roots if abs(r) < 1.0]
        ann = np.poly(np.array(nonexp))        # annihilator of the non-expanding part
        ann = np.real(ann)                     # roots are conjugation-closed
        df = d_mat.to_float()
        qd = np.zeros_like(df)
        for c in ann:
            qd = qd @ df + c * np.eye(m)
        # ker q(D) = non-expanding subspace, dimension m - k
        _, sing, vt = np.linalg.svd(qd)
        if k > 0 and sing[k - 1] < 1e4 * (sing[k] if k < m else 0.0) + 1e-12:
            raise NonInvariantSubspace(
                "cannot separate the expanding subspace numerically")
        basis = vt[k:].T                       # orthonormal, shape (m, m-k)
        dets = {}
        for l, a in spec.holonomy:
            af = a.to_float()
            aq = af @ basis
            restricted = basis.T @ aq
            residual = np.linalg.norm(aq - basis @ restricted)
            if residual > 1e-6 * max(1.0, np.linalg.norm(af)):
                raise NonInvariantSubspace(
                    f"holonomy element {l!r} moves the non-expanding subspace "
                    f"(residual {residual:.3e})")
            det_restricted = np.linalg.det(restricted)
            if abs(det_restricted) < 1e-9:
                raise NonInvariantSubspace(
                    f"holonomy element {l!r} degenerates on the non-expanding subspace")
            dets[l] = float(exact_det(a)) / det_restricted

    membership = []
    for l, _ in spec.holonomy:
        v = dets[l]
        if abs(v - 1.0) <= 1e-6:
            membership.append((l, True))
        elif abs(v + 1.0) <= 1e-6:
            membership.append((l, False))
        else:
            raise NonInvariantSubspace(
                f"expanding-subspace determinant of {l!r} is {v:.9f}, "
                f"not within 1e-6 of +/-1")
    membership = tuple(membership)
    is_proper = not all(inside for _, inside in membership)
    return PlusSplit(membership, is_proper, cls.p, cls.n, k)


def plus_subgroup_spec(spec: ManifoldSpec, split: PlusSplit) -> ManifoldSpec:
    """The manifold data of the orientation-preserving double cover
    associated with a proper split (or the same spec when not proper)."""
    if not split.is_proper:
        return spec
    kept = tuple((l, m) for l, m in spec.holonomy if split.member(l))
    return ManifoldSpec(spec.name + "+", spec.dimension, kept)


def is_virtually_unipotent(spec: ManifoldSpec, mapping: AffineMapSpec,
                           tol: float = 1e-10) -> bool:
    """True when every eigenvalue of the linear part lies on the unit
    circle (decided exactly)."""
    ensure_compatible(spec, mapping)
    cls = classify_eigenvalues(mapping.linear, tol)
    return cls.unit_modulus_count == spec.dimension


@dataclass(frozen=True)
class ZetaDefinedness:
    """Outcome of the Reidemeister-zeta definedness scan.

    status is 'defined' (no root-of-unity eigenvalue, so every R(f^n) is
    finite), 'undefined' (witness iterate and holonomy label recorded),
    or 'unknown' (root-of-unity eigenvalue present but no vanishing
    determinant found within the scan bound).
    """

    status: str
    witness_n: int | None = None
    witness_label: str | None = None


def reidemeister_zeta_defined(spec: ManifoldSpec, mapping: AffineMapSpec,
                              n_max: int = 64) -> ZetaDefinedness:
    """Decide definedness of the Reidemeister zeta function.

    Without root-of-unity eigenvalues all R(f^n) are finite: defined.
    Otherwise scan n <= n_max for det(I - A D^n) = 0 (exactly); the
    first hit is an undefined witness, and exhausting the scan returns
    unknown rather than guessing.
    """
    ensure_compatible(spec, mapping)
    if not has_root_of_unity_eigenvalue(mapping.linear):
        return ZetaDefinedness("defined")
    from .algebra import det as exact_det
    ident = RationalMatrix.identity(spec.dimension)
    power = ident
    for n in range(1, n_max + 1):
        power = power @ mapping.linear
        for l, a in spec.holonomy:
            if exact_det(ident - a @ power) == 0:
                return ZetaDefinedness("undefined", witness_n=n, witness_label=l)
    return ZetaDefinedness("unknown")
