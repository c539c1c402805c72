"""Orbit-type and infinitesimal stratifications of linear torus actions.

A subtorus ``H`` (basis rows ``eta_1..eta_r``) of ``T^d`` acts on ``C^m``
through the weights ``w_j``; in ``H``'s own coordinates coordinate ``j``
rotates with the character whose exponent is row ``j`` of the pairing matrix
``M = W eta^T``.  The stabilizer of a point depends only on its support
``S``: it is ``{s in R^r / Z^r : M_S s in Z^S}``.  Tori are abelian, so
stabilizers are compared for equality rather than up to conjugacy.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .delzant import DelzantData
from .errors import InputError, NotDelzant
from .exact import (Matrix, column_echelon, hermite_normal_form, nullspace, saturate,
                    smith_normal_form)
from .polytope import face_lattice, frontier_check, verify_delzant
from .torus import Subtorus

__all__ = [
    "StabilizerData",
    "Stratum",
    "StratReport",
    "pairing_matrix",
    "stabilizer_of_support",
    "orbit_type_partition",
    "infinitesimal_partition",
    "orbit_dimension_components",
    "reduced_space_strata",
]


def _weights(weights) -> Matrix:
    if isinstance(weights, Matrix):
        return weights
    rows = [tuple(int(x) for x in r) for r in weights]
    if not rows:
        raise InputError("weight matrix needs at least a column count; pass a Matrix")
    return Matrix(rows, len(rows[0]))


def pairing_matrix(weights, h: Subtorus | None = None) -> Matrix:
    """``m x r`` matrix of ``<w_j, eta_k>``."""
    w = _weights(weights)
    h = h or Subtorus.full(w.cols)
    if h.ambient_rank != w.cols:
        raise InputError(f"weights have rank {w.cols}, subtorus ambient rank is {h.ambient_rank}")
    return w @ h.basis.T


@dataclass(frozen=True)
class StabilizerData:
    """Stabilizer of the points with support ``support``.

    ``canonical_form`` is the HNF basis of the character lattice spanned by
    the rows of ``M_S``; the stabilizer is its annihilator in ``R^r / Z^r``,
    so equal canonical forms mean equal stabilizers.  ``kernel_subspace`` is
    the canonical basis (columns) of the Lie algebra of the identity component.
    """

    rank: int
    support: tuple[int, ...]
    kernel_subspace: Matrix
    component_group_order: int
    canonical_form: Matrix

    @property
    def dim(self) -> int:
        return self.kernel_subspace.cols

    @property
    def key(self):
        return (self.canonical_form.rows, self.canonical_form.entries)

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0 and self.component_group_order == 1


def stabilizer_of_support(weights, h: Subtorus | None, support: Sequence[int]) -> StabilizerData:
    m = pairing_matrix(weights, h)
    r = m.cols
    s = tuple(sorted(set(support)))
    if any(j < 0 or j >= m.rows for j in s):
        raise InputError(f"support {s} out of range for {m.rows} coordinates")
    ms = m.select_rows(s)
    if ms.rows == 0:
        return StabilizerData(r, s, Matrix.identity(r), 1, Matrix([], r))
    ker = nullspace(ms)
    ker = column_echelon(ker) if ker.cols else ker
    d, _, _ = smith_normal_form(ms)
    order = 1
    for x in d:
        if x:
            order *= x
    hnf, _ = hermite_normal_form(ms)
    rows = [row for row in hnf.row_list() if any(row)]
    return StabilizerData(r, s, ker, order, Matrix(rows, r))


@dataclass(frozen=True)
class Stratum:
    """A union of support cells sharing a stabilizer (or its Lie algebra).

    ``max_support`` contains every support of the class, so the stratum is
    the closure-dense cell over it together with lower cells; ``dim`` is its
    real dimension.
    """

    supports: tuple[tuple[int, ...], ...]
    max_support: tuple[int, ...]
    stabilizer: StabilizerData
    dim: int


@dataclass(frozen=True)
class StratReport:
    kind: str
    strata: tuple[Stratum, ...]
    order: frozenset[tuple[int, int]]
    frontier_ok: bool
    violations: tuple[str, ...] = ()
    checks: tuple[tuple[str, bool], ...] = ()

    @property
    def count(self) -> int:
        return len(self.strata)

    def stratum_of(self, support: Sequence[int]) -> int:
        key = tuple(sorted(support))
        for i, s in enumerate(self.strata):
            if key in s.supports:
                return i
        raise KeyError(key)


def _all_supports(m: int) -> list[tuple[int, ...]]:
    return [c for k in range(m + 1) for c in combinations(range(m), k)]


def _group(weights, h, keyfn, kind: str) -> StratReport:
    m = pairing_matrix(weights, h).rows
    classes: dict = {}
    stabs = {}
    for s in _all_supports(m):
        st = stabilizer_of_support(weights, h, s)
        stabs[s] = st
        classes.setdefault(keyfn(st), []).append(s)
    strata = []
    bad = []
    for key, sups in classes.items():
        top = tuple(sorted(set().union(*map(set, sups))))
        if top not in sups:
            bad.append(f"class with supports {sups} has no largest support")
        strata.append(Stratum(tuple(sups), top, stabs[top] if top in stabs else stabs[sups[-1]],
                              2 * len(top)))
    strata.sort(key=lambda s: (s.dim, s.max_support))
    order, more = _cell_frontier(strata)
    bad += more
    return StratReport(kind, tuple(strata), order, not bad, tuple(bad))


def _cell_frontier(strata: Sequence[Stratum]) -> tuple[frozenset, list[str]]:
    """Closure order and frontier violations computed on support cells.

    The closure of the cell of points with support ``S`` is the union of the
    cells ``S' <= S``, so a stratum's closure is the down-set of its supports.
    """
    bad = []
    order = set()
    downs = []
    for st in strata:
        down = set()
        for s in st.supports:
            down |= {t for t in _all_subsets(s)}
        downs.append(down)
    for a, sa in enumerate(strata):
        for b, sb in enumerate(strata):
            if a == b:
                continue
            meets = any(s in downs[a] for s in sb.supports)
            if not meets:
                continue
            if not all(s in downs[a] for s in sb.supports):
                bad.append(f"stratum {sb.max_support} meets the closure of {sa.max_support} without lying in it")
                continue
            if sb.dim >= sa.dim:
                bad.append(f"dimension does not drop from {sa.max_support} to {sb.max_support}")
            order.add((b, a))
    return frozenset(order), bad


def _all_subsets(s: tuple[int, ...]):
    for k in range(len(s) + 1):
        yield from combinations(s, k)


def orbit_type_partition(weights, h: Subtorus | None = None) -> StratReport:
    """Group supports by stabilizer; each class is one connected orbit-type piece."""
    return _group(weights, h, lambda st: st.key, "orbit-type")


def infinitesimal_partition(weights, h: Subtorus | None = None) -> StratReport:
    """Group supports by the stabilizer's Lie algebra.

    Also checks that the orbit-type partition refines this one and that the
    classes agree with :func:`orbit_dimension_components`.
    """
    rep = _group(weights, h, lambda st: (st.kernel_subspace.cols, st.kernel_subspace.entries),
                 "infinitesimal")
    orbit = orbit_type_partition(weights, h)
    refines = all(len({rep.stratum_of(s) for s in st.supports}) == 1 for st in orbit.strata)
    ours = sorted(sorted(st.supports) for st in rep.strata)
    by_dim = sorted(sorted(c) for c in orbit_dimension_components(weights, h))
    checks = (("refined_by_orbit_type", refines), ("matches_orbit_dimension", ours == by_dim))
    bad = list(rep.violations) + [f"check failed: {n}" for n, ok in checks if not ok]
    return StratReport(rep.kind, rep.strata, rep.order, not bad, tuple(bad), checks)


def orbit_dimension_components(weights, h: Subtorus | None = None) -> list[list[tuple[int, ...]]]:
    """Supports grouped by orbit dimension ``rank M_S``, split into connected pieces.

    Two supports of equal orbit dimension are joined when one contains the
    other; the classes are the connected components of that relation.  This
    uses only ranks, never kernels.
    """
    m = pairing_matrix(weights, h)
    sups = _all_supports(m.rows)
    from .exact import rank
    dims = {s: (rank(m.select_rows(s)) if s else 0) for s in sups}
    parent = {s: s for s in sups}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in sups:
        for t in sups:
            if dims[s] == dims[t] and len(s) < len(t) and set(s) <= set(t):
                parent[find(s)] = find(t)
    comps: dict = {}
    for s in sups:
        comps.setdefault(find(s), []).append(s)
    return list(comps.values())


@dataclass(frozen=True)
class FaceStratum:
    active_set: tuple[int, ...]
    face_dim: int
    dim: int
    stabilizer_basis: Matrix
    lattice_index: int


@dataclass(frozen=True)
class ReducedStrata:
    strata: tuple[FaceStratum, ...]
    order: frozenset[tuple[int, int]]
    frontier_ok: bool
    violations: tuple[str, ...] = ()

    @property
    def count(self) -> int:
        return len(self.strata)


def reduced_space_strata(d: DelzantData) -> ReducedStrata:
    """Strata of ``M_Delta`` by ``T^n`` stabilizer, one per open face of ``Delta``.

    Over the face with active set ``I`` the stabilizer has Lie algebra
    ``span{v_i : i in I}``; its lattice is the saturation of that span, and
    ``lattice_index`` records how far the normals are from generating it
    (1 for Delzant polytopes).
    """
    report = verify_delzant(d.polytope)
    if not report.passed:
        raise NotDelzant("reduced strata need a Delzant polytope", report)
    n = d.n
    fp = face_lattice(d.polytope)
    strata = []
    bad = []
    for f in fp.faces:
        vs = Matrix([d.polytope.normals[i] for i in f.active_set], n)
        basis = saturate(vs)
        index = 1
        if vs.rows:
            for x in smith_normal_form(vs)[0]:
                if x:
                    index *= x
        dim = 2 * f.dim
        if dim != 2 * (n - len(f.active_set)):
            bad.append(f"face {f.active_set} has dim {f.dim} but {len(f.active_set)} active facets")
        strata.append(FaceStratum(f.active_set, f.dim, dim, basis, index))
    ok, more = frontier_check(fp)
    bad += more
    return ReducedStrata(tuple(strata), fp.order, ok and not bad, tuple(bad))
