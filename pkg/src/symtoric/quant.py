"""Quantization of toric manifolds and reduction by subtori.

The quantization of ``M_Delta`` has one basis element per lattice point
``b`` of ``Delta``, the restriction of the monomial ``z^a`` with exponent
``a = pi^T b - lambda``.  Reducing by a subtorus ``H <= T^N`` keeps the
``H``-invariant monomials on one side and the lattice points of the slice
``Delta_H`` on the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .delzant import DelzantData
from .errors import InputError, IntegralityFailure, KernelConditionViolated
from .exact import dual_lattice_pairing, integer_solution
from .polytope import (SliceResult, enumerate_vertices, lattice_points, slice,
                       verify_delzant)
from .torus import Subtorus

__all__ = [
    "Integrality",
    "QuantBasis",
    "QRReport",
    "prequantum_integrality",
    "quantization_basis",
    "exponent_space_count",
    "check_subtorus_in_kernel_rho",
    "invariant_subspace",
    "reduced_polytope",
    "qr_check",
    "OPENNESS_NOTE",
]

OPENNESS_NOTE = ("unchecked hypothesis: the semistable set H_C . J_H^{-1}(0) is assumed open")


@dataclass(frozen=True)
class Integrality:
    lambda_integral: bool
    iota_lambda_integral: bool

    @property
    def passed(self) -> bool:
        return self.lambda_integral and self.iota_lambda_integral


def prequantum_integrality(d: DelzantData) -> Integrality:
    lam_ok = all(x.denominator == 1 for x in d.lam)
    pair = dual_lattice_pairing(d.kernel_basis, d.lam) if d.kernel_basis.rows else ()
    return Integrality(lam_ok, all(x.denominator == 1 for x in pair))


@dataclass(frozen=True)
class QuantBasis:
    points: tuple[tuple[int, ...], ...]
    exponents: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.points)

    def exponent_of(self, b) -> tuple[int, ...]:
        return self.exponents[self.points.index(tuple(b))]


def _require_integral(d: DelzantData) -> None:
    it = prequantum_integrality(d)
    if not it.passed:
        which = "lambda" if not it.lambda_integral else "the pullback of lambda to the kernel"
        raise IntegralityFailure(f"{which} is not integral")


def quantization_basis(d: DelzantData) -> QuantBasis:
    _require_integral(d)
    pts = lattice_points(d.polytope)
    exps = []
    for b in pts:
        a = tuple(int(s) for s in d.polytope.slack(b))
        if any(x < 0 for x in a):
            raise AssertionError(f"negative exponent at lattice point {b}")
        exps.append(a)
    return QuantBasis(tuple(pts), tuple(exps))


def exponent_space_count(d: DelzantData) -> int:
    """Count ``a in Z^N_{>=0}`` with ``kernel_basis (a + lambda) = 0`` and ``a + lambda in pi^T Z^n``.

    An enumeration over exponent space, independent of the lattice-point scan;
    the box for ``a_i`` runs up to the largest slack of facet ``i`` over the
    vertices.
    """
    _require_integral(d)
    verts = enumerate_vertices(d.polytope)
    lam = [int(x) for x in d.lam]
    bounds = []
    for i in range(d.N):
        top = max(d.polytope.slack(v)[i] for v in verts)
        bounds.append(int(top // 1))
    kb = d.kernel_basis
    pit = d.pi.T if d.n else None
    count = 0
    for a in product(*(range(b + 1) for b in bounds)):
        shifted = [x + l for x, l in zip(a, lam)]
        if kb.rows and any(kb.apply(shifted)):
            continue
        if d.n == 0:
            if any(shifted):
                continue
        elif integer_solution(pit, shifted) is None:
            continue
        count += 1
    return count


def _check_ambient(d: DelzantData, h: Subtorus) -> None:
    if h.ambient_rank != d.N:
        raise InputError(f"subtorus lives in rank {h.ambient_rank}, the polytope has {d.N} facets")


def kernel_rho_pairings(d: DelzantData, h: Subtorus) -> tuple[Fraction, ...]:
    _check_ambient(d, h)
    return dual_lattice_pairing(h.basis, d.lam) if h.dim else ()


def check_subtorus_in_kernel_rho(d: DelzantData, h: Subtorus) -> bool:
    """``<lambda, eta_j> = 0`` for every basis row: ``H`` acts trivially on the fibre."""
    return not any(kernel_rho_pairings(d, h))


def _require_kernel(d: DelzantData, h: Subtorus) -> None:
    pairs = kernel_rho_pairings(d, h)
    if any(pairs):
        raise KernelConditionViolated(
            "subtorus is not in the kernel of the fibre character: <lambda, eta> = "
            + ", ".join(str(x) for x in pairs), pairs)


def _pushed_generators(d: DelzantData, h: Subtorus) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in d.pi.apply(eta)) for eta in h.generators()] if d.n else \
        [() for _ in h.generators()]


def invariant_subspace(qb: QuantBasis, d: DelzantData, h: Subtorus) -> QuantBasis:
    """Basis elements of weight zero for ``H``.

    Membership is decided twice, by ``<a, eta> = 0`` on exponents and by
    ``<b, pi eta> = 0`` on lattice points; a disagreement raises.
    """
    _require_kernel(d, h)
    etas = h.generators()
    pushed = _pushed_generators(d, h)
    pts, exps = [], []
    for b, a in zip(qb.points, qb.exponents):
        by_exp = all(sum(x * y for x, y in zip(a, eta)) == 0 for eta in etas)
        by_pt = all(sum(x * y for x, y in zip(b, u)) == 0 for u in pushed)
        if by_exp != by_pt:
            raise AssertionError(f"invariance tests disagree at {b}")
        if by_exp:
            pts.append(b)
            exps.append(a)
    return QuantBasis(tuple(pts), tuple(exps))


def reduced_polytope(d: DelzantData, h: Subtorus) -> SliceResult:
    _require_kernel(d, h)
    eqs = [(u, 0) for u in _pushed_generators(d, h) if any(u)]
    return slice(d.polytope, eqs)


@dataclass(frozen=True)
class QRReport:
    h_in_kernel_rho: bool
    quantization_count: int
    invariant_count: int
    reduced: SliceResult
    reduced_count: int
    injective: bool
    counts_equal: bool
    reduced_is_delzant: bool
    invariant_points: tuple[tuple[int, ...], ...] = ()
    notes: tuple[str, ...] = field(default=(OPENNESS_NOTE,))

    @property
    def label(self) -> str:
        if self.reduced_is_delzant:
            return "reduced quantization"
        return "conjectural reduced quantization"


def qr_check(d: DelzantData, h: Subtorus) -> QRReport:
    """Compare ``dim Q(M)^H`` with ``dim Q(M_0)``.

    The reduced side is counted from ``Delta_H`` in its own lattice, without
    reference to the invariant monomials; the map between the two sides sends
    an invariant basis element ``b`` to the slice coordinates of ``b``.
    """
    _check_ambient(d, h)
    _require_kernel(d, h)
    qb = quantization_basis(d)
    inv = invariant_subspace(qb, d, h)
    red = reduced_polytope(d, h)
    if red.polytope is None:
        red_pts: list = []
        red_delzant = False
    else:
        red_pts = lattice_points(red.polytope) if red.integral_origin else []
        red_delzant = verify_delzant(red.polytope).passed
    # kappa: invariant lattice point -> its coordinates in the slice lattice
    images = []
    for b in inv.points:
        y = _slice_coordinates(red, b)
        images.append(y)
    injective = len(set(images)) == len(images) and all(y is not None for y in images)
    if red.polytope is not None:
        injective = injective and all(y is None or red.polytope.contains(y) for y in images)
    return QRReport(
        h_in_kernel_rho=True,
        quantization_count=qb.count,
        invariant_count=inv.count,
        reduced=red,
        reduced_count=len(red_pts),
        injective=injective,
        counts_equal=inv.count == len(red_pts),
        reduced_is_delzant=red_delzant,
        invariant_points=inv.points,
    )


def _slice_coordinates(red: SliceResult, b):
    from .exact import solve
    diff = [Fraction(x) - o for x, o in zip(b, red.origin)]
    if red.basis.cols == 0:
        return () if not any(diff) else None
    y = solve(red.basis, diff)
    if y is None or any(c.denominator != 1 for c in y):
        return None
    return tuple(int(c) for c in y)
