"""Exact half-space polytopes ``{x : <x, v_i> >= lambda_i}``.

Everything here is exhaustive and exact: vertices come from solving every
``n``-subset of facets, faces from the vertex incidence structure.  That is
fine for the desk-scale polytopes this package deals with (tens of facets).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import Empty, InconsistentEquations, InputError, Unbounded
from .exact import (Matrix, as_rational, det, integer_kernel, integer_solution, nullspace,
                    rank, smith_normal_form, solve)

__all__ = [
    "HPolytope",
    "Face",
    "FacePoset",
    "DelzantCheck",
    "SliceResult",
    "enumerate_vertices",
    "face_lattice",
    "frontier_check",
    "verify_delzant",
    "lattice_points",
    "slice",
]


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), 0)


@dataclass(frozen=True)
class HPolytope:
    dim: int
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        normals = tuple(tuple(int(x) for x in v) for v in self.normals)
        offsets = tuple(as_rational(x) for x in self.offsets)
        if len(normals) != len(offsets):
            raise InputError("need one offset per facet normal")
        seen = set()
        for i, v in enumerate(normals):
            if len(v) != self.dim:
                raise InputError(f"facet {i}: normal has length {len(v)}, expected {self.dim}")
            if not any(v):
                raise InputError(f"facet {i}: zero normal")
            if math.gcd(*v) != 1:
                raise InputError(f"facet {i}: normal {v} is not primitive")
            if (v, offsets[i]) in seen:
                raise InputError(f"facet {i}: duplicate facet")
            seen.add((v, offsets[i]))
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def from_facets(cls, facets: Sequence[tuple[Sequence[int], object]], dim: int | None = None):
        facets = list(facets)
        if dim is None:
            if not facets:
                raise InputError("dimension required for a polytope without facets")
            dim = len(facets[0][0])
        return cls(dim, tuple(tuple(v) for v, _ in facets), tuple(o for _, o in facets))

    @property
    def n_facets(self) -> int:
        return len(self.normals)

    def normal_matrix(self) -> Matrix:
        """``n x N`` integer matrix whose columns are the normals."""
        return Matrix.from_columns(self.normals, self.dim)

    def slack(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(Fraction(_dot(x, v)) - o for v, o in zip(self.normals, self.offsets))

    def contains(self, x: Sequence) -> bool:
        return all(s >= 0 for s in self.slack(x))

    def active_set(self, x: Sequence) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.slack(x)) if s == 0)

    def permuted(self, order: Sequence[int]) -> "HPolytope":
        return HPolytope(self.dim, tuple(self.normals[i] for i in order),
                         tuple(self.offsets[i] for i in order))

    def transformed(self, u: Matrix) -> "HPolytope":
        """Image under ``x -> u x`` for unimodular ``u``: normals become ``u^{-T} v``."""
        from .exact import inverse
        uinv_t = inverse(u).T
        normals = [tuple(int(c) for c in uinv_t.apply(v)) for v in self.normals]
        return HPolytope(self.dim, tuple(normals), self.offsets)


def _recession_directions(p: HPolytope) -> list[tuple]:
    """Nonzero ``d`` with ``<d, v_i> >= 0`` for all facets, or ``[]`` if none exist.

    The recession cone ``{d : V d >= 0}`` is nonzero iff it contains a line
    (``V`` has a kernel) or, being pointed, an extreme ray.  Extreme rays lie
    on one-dimensional intersections of ``n - 1`` facet hyperplanes, so a
    finite search decides it exactly.
    """
    n = p.dim
    if n == 0:
        return []
    vm = Matrix(p.normals, n) if p.normals else Matrix([], n)
    lines = nullspace(vm)
    if lines.cols:
        return [lines.col(0)]
    out = []
    for sub in combinations(range(p.n_facets), n - 1):
        rows = Matrix([p.normals[i] for i in sub], n)
        k = nullspace(rows)
        if k.cols != 1:
            continue
        d = k.col(0)
        for s in (d, tuple(-x for x in d)):
            if all(_dot(s, v) >= 0 for v in p.normals):
                out.append(s)
                return out
    return out


def enumerate_vertices(p: HPolytope) -> list[tuple[Fraction, ...]]:
    rec = _recession_directions(p)
    if rec:
        raise Unbounded(f"polyhedron is unbounded along direction {[str(x) for x in rec[0]]}")
    n = p.dim
    found = set()
    for sub in combinations(range(p.n_facets), n):
        a = Matrix([p.normals[i] for i in sub], n)
        if n and det(a) == 0:
            continue
        x = solve(a, [p.offsets[i] for i in sub]) if n else ()
        if x is not None and p.contains(x):
            found.add(tuple(Fraction(c) for c in x))
    if not found:
        raise Empty("polytope has no feasible point")
    return sorted(found)


def _affine_dim(points: Sequence[Sequence]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(q, base)) for q in points[1:]]
    return rank(Matrix(diffs, len(base)))


@dataclass(frozen=True)
class Face:
    """Open face ``{x in P : active set of x is exactly I}``."""

    active_set: tuple[int, ...]
    dim: int
    witness: tuple[Fraction, ...]
    vertices: tuple[tuple[Fraction, ...], ...] = ()


@dataclass(frozen=True)
class FacePoset:
    """Faces with the closure order; ``(i, j) in order`` means face i lies in the closure of face j."""

    faces: tuple[Face, ...]
    order: frozenset[tuple[int, int]]
    polytope: HPolytope | None = field(default=None, compare=False)

    def index(self, active_set: Sequence[int]) -> int:
        key = tuple(sorted(active_set))
        for i, f in enumerate(self.faces):
            if f.active_set == key:
                return i
        raise KeyError(key)

    def below(self, i: int) -> list[int]:
        return sorted(a for a, b in self.order if b == i)

    def above(self, i: int) -> list[int]:
        return sorted(b for a, b in self.order if a == i)

    def f_vector(self) -> tuple[int, ...]:
        top = max(f.dim for f in self.faces)
        return tuple(sum(1 for f in self.faces if f.dim == d) for d in range(top + 1))


def face_lattice(p: HPolytope) -> FacePoset:
    verts = enumerate_vertices(p)
    vact = {v: frozenset(p.active_set(v)) for v in verts}
    sets = set(vact.values())
    frontier = set(sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in sets:
                c = a & b
                if c not in sets and c not in new:
                    new.add(c)
        sets |= new
        frontier = new
    top = frozenset.intersection(*vact.values())
    sets.add(top)

    faces = []
    for s in sets:
        fv = tuple(v for v in verts if s <= vact[v])
        witness = tuple(sum(c) / len(fv) for c in zip(*fv)) if p.dim else ()
        faces.append(Face(tuple(sorted(s)), _affine_dim(fv), witness, fv))
    faces.sort(key=lambda f: (f.dim, f.active_set))
    order = set()
    for i, a in enumerate(faces):
        for j, b in enumerate(faces):
            if i != j and set(b.active_set) < set(a.active_set):
                order.add((i, j))
    return FacePoset(tuple(faces), frozenset(order), p)


def frontier_check(fp: FacePoset) -> tuple[bool, list[str]]:
    """Check the frontier condition combinatorially; returns ``(ok, violations)``.

    The closure of the open face ``Sigma_I`` must be the union of the
    ``Sigma_J`` with ``I`` a subset of ``J``.  On a face family this means the
    order is reverse inclusion of active sets, dimensions drop strictly along
    it, every face of positive dimension has at least two faces of one lower
    dimension in its closure, and everything sits in the closure of the top
    face.  If the poset remembers its polytope, witnesses are checked too.
    """
    faces = fp.faces
    bad: list[str] = []
    if not faces:
        return False, ["poset has no faces"]
    for i, a in enumerate(faces):
        for j, b in enumerate(faces):
            if i == j:
                continue
            expected = set(b.active_set) < set(a.active_set)
            if expected != ((i, j) in fp.order):
                rel = "missing" if expected else "spurious"
                bad.append(f"{rel} order relation {a.active_set} <= {b.active_set}")
    for i, j in sorted(fp.order):
        if faces[i].dim >= faces[j].dim:
            bad.append(f"dimension does not drop from {faces[j].active_set} to {faces[i].active_set}")
    for i, f in enumerate(faces):
        if f.dim > 0:
            facets = [k for k in fp.below(i) if faces[k].dim == f.dim - 1]
            if len(facets) < 2:
                bad.append(f"face {f.active_set} of dim {f.dim} has {len(facets)} faces of dim {f.dim - 1} in its closure")
    top_dim = max(f.dim for f in faces)
    tops = [i for i, f in enumerate(faces) if f.dim == top_dim]
    if len(tops) != 1:
        bad.append(f"{len(tops)} faces of top dimension")
    else:
        t = tops[0]
        for i, f in enumerate(faces):
            if i != t and (i, t) not in fp.order:
                bad.append(f"face {f.active_set} is not in the closure of the top face")
    if fp.polytope is not None:
        for f in faces:
            if fp.polytope.active_set(f.witness) != f.active_set:
                bad.append(f"witness of face {f.active_set} realizes {fp.polytope.active_set(f.witness)}")
    return (not bad), bad


@dataclass(frozen=True)
class DelzantCheck:
    surjective_on_lattice: bool
    simple: bool
    vertex_unimodular: bool
    invariant_factors: tuple[int, ...]
    failing_vertices: tuple[tuple[tuple[Fraction, ...], tuple[int, ...], object], ...] = ()

    @property
    def passed(self) -> bool:
        return self.surjective_on_lattice and self.simple and self.vertex_unimodular

    def failed_checks(self) -> list[str]:
        names = ("surjective_on_lattice", "simple", "vertex_unimodular")
        return [n for n in names if not getattr(self, n)]


def verify_delzant(p: HPolytope) -> DelzantCheck:
    verts = enumerate_vertices(p)
    n = p.dim
    if n == 0:
        factors: tuple[int, ...] = ()
        surj = True
    elif p.n_facets == 0:
        factors, surj = (), False
    else:
        d, _, _ = smith_normal_form(p.normal_matrix())
        factors = tuple(d)
        surj = len(d) == n and all(x == 1 for x in d)
    simple = True
    unimod = True
    failing = []
    for v in verts:
        act = p.active_set(v)
        if len(act) != n:
            simple = False
            failing.append((v, act, "not simple"))
            continue
        if n == 0:
            continue
        dt = det(Matrix([p.normals[i] for i in act], n))
        if dt not in (1, -1):
            unimod = False
            failing.append((v, act, dt))
    if not simple:
        unimod = False
    return DelzantCheck(surj, simple, unimod, factors, tuple(failing))


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def lattice_points(p: HPolytope) -> list[tuple[int, ...]]:
    """All integer points of ``p`` in lexicographic order."""
    try:
        verts = enumerate_vertices(p)
    except Empty:
        return []
    n = p.dim
    if n == 0:
        return [()]
    lo = [_ceil(min(v[k] for v in verts)) for k in range(n)]
    hi = [_floor(max(v[k] for v in verts)) for k in range(n)]
    # a facet constrains coordinate k once every coordinate after k is absent from it
    last = {}
    for i, v in enumerate(p.normals):
        k = max(j for j, c in enumerate(v) if c)
        last.setdefault(k, []).append(i)

    out = []

    def rec(prefix: list[int]):
        k = len(prefix)
        if k == n:
            out.append(tuple(prefix))
            return
        a, b = lo[k], hi[k]
        for i in last.get(k, ()):
            v = p.normals[i]
            rest = p.offsets[i] - _dot(prefix, v[:k])
            c = v[k]
            if c > 0:
                a = max(a, _ceil(Fraction(rest) / c))
            else:
                b = min(b, _floor(Fraction(rest) / c))
        for x in range(a, b + 1):
            prefix.append(x)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


@dataclass(frozen=True)
class SliceResult:
    """``P ∩ {<x, c_j> = r_j}`` in coordinates ``x = origin + basis @ y``.

    ``basis`` (columns) is a Z-basis of ``Z^n ∩ {x : <x, c_j> = 0}``.  When
    ``integral_origin`` holds, lattice points of ``polytope`` map exactly to
    the integer points of the slice; otherwise the slice has none.
    """

    polytope: HPolytope | None
    origin: tuple[Fraction, ...]
    basis: Matrix
    integral_origin: bool

    @property
    def is_empty(self) -> bool:
        return self.polytope is None

    def to_ambient(self, y: Sequence) -> tuple[Fraction, ...]:
        return tuple(o + c for o, c in zip(self.origin, self.basis.apply(y)))

    def ambient_lattice_points(self) -> list[tuple[int, ...]]:
        if self.polytope is None or not self.integral_origin:
            return []
        pts = [tuple(int(c) for c in self.to_ambient(y)) for y in lattice_points(self.polytope)]
        return sorted(pts)


def _restrict(p: HPolytope, origin, basis: Matrix):
    """Facets of ``p`` pulled back to ``y`` coordinates; ``None`` if visibly empty."""
    k = basis.cols
    best: dict[tuple[int, ...], Fraction] = {}
    order = []
    for v, o in zip(p.normals, p.offsets):
        w = tuple(int(c) for c in basis.T.apply(v))
        off = Fraction(o) - _dot(origin, v)
        if not any(w):
            if off > 0:
                return None
            continue
        g = math.gcd(*w)
        w = tuple(c // g for c in w)
        off = off / g
        if w not in best:
            order.append(w)
            best[w] = off
        else:
            best[w] = max(best[w], off)
    return [(w, best[w]) for w in order], k


def _irredundant(facets, k):
    poly = HPolytope.from_facets(facets, k)
    try:
        verts = enumerate_vertices(poly)
    except Empty:
        return None, None
    implicit = [i for i, (w, o) in enumerate(facets) if all(_dot(x, w) == o for x in verts)]
    keep = []
    for i, (w, o) in enumerate(facets):
        tight = [x for x in verts if _dot(x, w) == o]
        if tight and _affine_dim(tight) == k - 1 and len(tight) >= 1:
            keep.append((w, o))
    return implicit, keep


def slice(p: HPolytope, equations: Sequence[tuple[Sequence[int], object]]) -> SliceResult:
    n = p.dim
    if not equations:
        return SliceResult(p, (Fraction(0),) * n, Matrix.identity(n), True)
    cs = Matrix([tuple(int(x) for x in c) for c, _ in equations], n)
    rs = [as_rational(r) for _, r in equations]
    if any(len(c) != n for c, _ in equations):
        raise InputError("equation length does not match the polytope dimension")
    x0 = integer_solution(cs, rs)
    integral = x0 is not None
    if x0 is None:
        x0 = solve(cs, rs)
        if x0 is None:
            raise InconsistentEquations("the equations have no common solution")
    origin = tuple(Fraction(c) for c in x0)
    basis = integer_kernel(cs).T
    if basis.rows == 0:
        basis = Matrix.zeros(n, basis.cols)
    restricted = _restrict(p, origin, basis)
    if restricted is None:
        return SliceResult(None, origin, basis, integral)
    facets, k = restricted
    try:
        implicit, keep = _irredundant(facets, k)
    except Unbounded:
        raise
    if implicit is None:
        return SliceResult(None, origin, basis, integral)
    if implicit:
        # lower dimensional slice: cut down to its affine hull and go again
        inner = slice(HPolytope.from_facets(facets, k), [facets[i] for i in implicit])
        if inner.polytope is None:
            return SliceResult(None, origin, basis, integral)
        new_origin = tuple(o + c for o, c in zip(origin, basis.apply(inner.origin)))
        return SliceResult(inner.polytope, new_origin, basis @ inner.basis,
                           integral and inner.integral_origin)
    return SliceResult(HPolytope.from_facets(keep, k), origin, basis, integral)
