"""The Delzant construction for a Delzant polytope.

For ``Delta = {x : <x, v_i> >= lambda_i}`` with ``N`` facets in ``R^n`` the
map ``pi : R^N -> R^n`` sends ``e_i`` to ``v_i``; its integer kernel is the
Lie algebra lattice of the subtorus ``K <= T^N`` that is divided out of the
level set in ``C^N``.

Points of ``C^N`` are tracked only through their moduli ``m_i = |z_i|^2 / 2``
(phases are absorbed by the torus).  The identification used throughout is
``m_i = <b, v_i> - lambda_i`` for the point lying over ``b`` in ``Delta``, so
the ``T^N`` momentum is ``m + lambda = pi^T b`` and the ``K`` momentum
``kernel_basis @ (m + lambda)`` vanishes exactly on the level set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, NegativeModulus, NotDelzant, OutsidePolytope
from .exact import Matrix, as_rational, integer_kernel, smith_normal_form, solve
from .polytope import HPolytope, enumerate_vertices, face_lattice, verify_delzant
from .symplin import WeightRep

__all__ = [
    "DelzantData",
    "LevelPoint",
    "build_delzant",
    "momentum",
    "level_point_from_polytope",
    "freeness_certificate",
    "FreenessReport",
    "moment_roundtrip_check",
    "kernel_weight_rep",
]


@dataclass(frozen=True)
class DelzantData:
    polytope: HPolytope
    pi: Matrix
    kernel_basis: Matrix
    lam: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return self.polytope.dim

    @property
    def N(self) -> int:
        return self.polytope.n_facets


def build_delzant(p: HPolytope, check: bool = True) -> DelzantData:
    """Assemble the exact-sequence data of ``p``.

    With ``check=False`` the Delzant test is skipped, which is useful for
    studying how the construction fails on non-Delzant input.
    """
    if check:
        report = verify_delzant(p)
        if not report.passed:
            raise NotDelzant(f"polytope is not Delzant: failed {', '.join(report.failed_checks())}",
                             report)
    pi = p.normal_matrix() if p.dim else Matrix([], p.n_facets)
    kernel = integer_kernel(pi) if p.dim else Matrix.identity(p.n_facets)
    return DelzantData(p, pi, kernel, tuple(p.offsets))


def _moduli(d: DelzantData, moduli: Sequence) -> tuple[Fraction, ...]:
    m = tuple(as_rational(x) for x in moduli)
    if len(m) != d.N:
        raise InputError(f"expected {d.N} moduli, got {len(m)}")
    for i, x in enumerate(m):
        if x < 0:
            raise NegativeModulus(f"modulus {i} is negative ({x})")
    return m


def momentum(d: DelzantData, moduli: Sequence) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """``(full, restricted)``: the ``T^N`` momentum ``m + lambda`` and its ``K`` part."""
    m = _moduli(d, moduli)
    full = tuple(a + b for a, b in zip(m, d.lam))
    restricted = tuple(Fraction(x) for x in d.kernel_basis.apply(full)) if d.kernel_basis.rows else ()
    return full, restricted


@dataclass(frozen=True)
class LevelPoint:
    b: tuple[Fraction, ...]
    moduli: tuple[Fraction, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.moduli) if x > 0)


def level_point_from_polytope(d: DelzantData, b: Sequence) -> LevelPoint:
    b = tuple(as_rational(x) for x in b)
    if len(b) != d.n:
        raise InputError(f"point has length {len(b)}, expected {d.n}")
    slack = d.polytope.slack(b)
    if any(s < 0 for s in slack):
        raise OutsidePolytope(f"point {[str(x) for x in b]} is outside the polytope")
    return LevelPoint(b, slack)


def recover_point(d: DelzantData, full: Sequence) -> tuple[Fraction, ...] | None:
    """The unique ``b`` with ``pi^T b = full``, or ``None`` if there is none."""
    if d.n == 0:
        return () if not any(full) else None
    return solve(d.pi.T, list(full))


@dataclass(frozen=True)
class FreenessReport:
    faces: tuple[tuple[tuple[int, ...], bool, tuple[int, ...]], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.faces)

    def failures(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(act, inv) for act, ok, inv in self.faces if not ok]


def freeness_certificate(d: DelzantData) -> FreenessReport:
    """Per face ``I``: ``K`` meets ``T_I = {t : t_j = 1 for j not in I}`` trivially.

    That holds iff the columns ``j not in I`` of the kernel basis have a left
    inverse over ``Z``, i.e. their SNF is all ones of full rank ``N - n``.
    """
    r = d.kernel_basis.rows
    out = []
    for f in face_lattice(d.polytope).faces:
        cols = [j for j in range(d.N) if j not in f.active_set]
        if r == 0:
            out.append((f.active_set, True, ()))
            continue
        sub = d.kernel_basis.select_columns(cols)
        if not cols:
            out.append((f.active_set, False, ()))
            continue
        inv, _, _ = smith_normal_form(sub)
        inv = tuple(inv)
        ok = len(inv) == r and all(x == 1 for x in inv)
        out.append((f.active_set, ok, inv))
    return FreenessReport(tuple(out))


def _sample_points(d: DelzantData, samples: int, seed: int) -> list[tuple[Fraction, ...]]:
    fp = face_lattice(d.polytope)
    verts = enumerate_vertices(d.polytope)
    pts = list(verts)
    pts += [f.witness for f in fp.faces if f.witness not in pts]
    rng = random.Random(seed)
    for _ in range(samples):
        weights = [Fraction(rng.randint(0, 4)) for _ in verts]
        total = sum(weights)
        if total == 0:
            continue
        pts.append(tuple(sum(w * v[k] for w, v in zip(weights, verts)) / total
                         for k in range(d.n)))
    return pts


def moment_roundtrip_check(d: DelzantData, samples: int = 20, seed: int = 1729,
                           points: Sequence[Sequence] | None = None) -> bool:
    """Polytope point -> level point -> momentum -> polytope point, exactly.

    Samples are the vertices, every face witness (the centroid included) and
    ``samples`` random convex combinations of vertices, unless ``points`` is
    given explicitly.
    """
    pts = [tuple(as_rational(x) for x in p) for p in points] if points is not None \
        else _sample_points(d, samples, seed)
    for b in pts:
        lp = level_point_from_polytope(d, b)
        full, restricted = momentum(d, lp.moduli)
        if any(restricted):
            return False
        back = recover_point(d, full)
        if back is None or tuple(back) != tuple(b):
            return False
        if not d.polytope.contains(back):
            return False
        active = set(d.polytope.active_set(b))
        if set(lp.support) != set(range(d.N)) - active:
            return False
    return True


def kernel_weight_rep(d: DelzantData) -> WeightRep:
    """``K`` acting on ``C^N``: coordinate ``i`` has weight column ``i`` of the kernel basis.

    The shift is ``-lambda`` pulled back to ``K``, so that the quadratic
    momentum at a point with moduli ``m`` is ``kernel_basis @ (m + lambda)``.
    """
    kb = d.kernel_basis
    weights = tuple(tuple(kb[r, i] for r in range(kb.rows)) for i in range(d.N))
    shift = tuple(-x for x in kb.apply(d.lam)) if kb.rows else ()
    return WeightRep(kb.rows, weights, shift)
