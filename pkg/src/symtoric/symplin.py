"""Exact linear symplectic algebra.

Vectors of a symplectic space are coordinate tuples; the form is a skew
matrix ``Omega`` with ``omega(u, v) = u^T Omega v``.  Complex vectors (entries
:class:`~symtoric.exact.Gaussian`) live in the complexification and are paired
bilinearly, never sesquilinearly.

The standard space of dimension ``2n`` uses coordinates
``(x_1..x_n, y_1..y_n)`` with ``omega(e_i, f_j) = delta_ij``, where ``e_i`` and
``f_i`` are the coordinate vectors of ``x_i`` and ``y_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import (Degenerate, InputError, InvarianceViolation, NotLagrangian,
                     OddDimension, PreconditionError)
from .exact import (Gaussian, as_rational, I, Matrix, column_echelon, conj, nullspace,
                    rank, solve, span_contains, span_intersection)
from .torus import Subtorus

__all__ = [
    "standard_form",
    "SymplecticSpace",
    "Subspace",
    "ReducedSpace",
    "WeightRep",
    "FiniteGroupRep",
    "SingularReduction",
    "darboux_basis",
    "symplectic_complement",
    "classify_subspace",
    "linear_reduce",
    "reduce_lagrangian",
    "lagrangian_type",
    "is_positive",
    "hermitian_gram",
    "positive_orbit_intersection_check",
    "fixed_subspace",
    "is_invariant",
    "singular_reduce",
    "singular_reduce_lagrangian",
    "quadratic_momentum",
    "momentum_components",
    "fundamental_vector",
    "momentum_zero_decomposition_check",
]


def standard_form(n: int) -> Matrix:
    """``[[0, I_n], [-I_n, 0]]``."""
    rows = []
    for i in range(2 * n):
        r = [0] * (2 * n)
        if i < n:
            r[n + i] = 1
        else:
            r[i - n] = -1
        rows.append(r)
    return Matrix(rows, 2 * n)


def _bilinear(form: Matrix, u: Sequence, v: Sequence):
    s = 0
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = form.row(i)
        for j, vj in enumerate(v):
            if vj and row[j]:
                s = s + ui * row[j] * vj
    return s


@dataclass(frozen=True)
class SymplecticSpace:
    """``(Q^{2n}, omega)`` with ``omega`` given by a skew nonsingular matrix."""

    form: Matrix

    def __post_init__(self):
        f = self.form
        if not f.is_square():
            raise InputError("symplectic form must be a square matrix")
        for i in range(f.rows):
            for j in range(i, f.cols):
                if f[i, j] != -f[j, i]:
                    raise InputError("symplectic form is not skew-symmetric")
        if f.rows % 2:
            raise OddDimension(f"a symplectic space is even dimensional, got dimension {f.rows}")
        if rank(f) != f.rows:
            raise Degenerate("form is degenerate")

    @classmethod
    def standard(cls, n: int) -> "SymplecticSpace":
        return cls(standard_form(n))

    @property
    def dim(self) -> int:
        return self.form.rows

    @property
    def n(self) -> int:
        return self.form.rows // 2

    def omega(self, u: Sequence, v: Sequence):
        return _bilinear(self.form, u, v)

    def is_standard(self) -> bool:
        return self.form == standard_form(self.n)

    def basis_names(self) -> list[str]:
        n = self.n
        if self.is_standard():
            return [f"e{i + 1}" for i in range(n)] + [f"f{i + 1}" for i in range(n)]
        return [f"b{i + 1}" for i in range(self.dim)]


def _has_complex(m: Matrix) -> bool:
    return any(isinstance(x, Gaussian) and x.im for x in m.entries)


class Subspace:
    """A linear subspace of a symplectic space or of its complexification.

    ``vectors`` may be any spanning set given as matrix columns; the stored
    ``basis`` is the canonical reduced column echelon form, so two subspaces
    are equal exactly when their bases are equal.
    """

    __slots__ = ("ambient", "basis", "field")

    def __init__(self, ambient: SymplecticSpace, vectors: Matrix, field: str | None = None):
        if vectors.rows != ambient.dim:
            raise InputError(f"vectors have length {vectors.rows}, ambient dimension is {ambient.dim}")
        if field is None:
            field = "complex" if _has_complex(vectors) else "real"
        if field not in ("real", "complex"):
            raise InputError(f"unknown field tag {field!r}")
        if field == "real" and _has_complex(vectors):
            raise InputError("real subspace given non-real vectors")
        self.ambient = ambient
        self.field = field
        self.basis = column_echelon(vectors) if vectors.cols else Matrix.zeros(ambient.dim, 0)

    @classmethod
    def span(cls, ambient: SymplecticSpace, vectors: Sequence[Sequence], field: str | None = None):
        return cls(ambient, Matrix.from_columns(list(vectors), ambient.dim), field)

    @classmethod
    def zero(cls, ambient: SymplecticSpace, field: str = "real"):
        return cls(ambient, Matrix.zeros(ambient.dim, 0), field)

    @classmethod
    def whole(cls, ambient: SymplecticSpace, field: str = "real"):
        return cls(ambient, Matrix.identity(ambient.dim), field)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[tuple]:
        return self.basis.col_list()

    def complexify(self) -> "Subspace":
        if self.field == "complex":
            return self
        return Subspace(self.ambient, self.basis, "complex")

    def conj(self) -> "Subspace":
        return Subspace(self.ambient, self.basis.conj(), self.field)

    def contains(self, v: Sequence) -> bool:
        return span_contains(self.basis, Matrix.from_columns([v], self.ambient.dim))

    def __le__(self, other: "Subspace") -> bool:
        return span_contains(other.basis, self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        fld = "complex" if "complex" in (self.field, other.field) else "real"
        return Subspace(self.ambient, span_intersection(self.basis, other.basis), fld)

    def __add__(self, other: "Subspace") -> "Subspace":
        fld = "complex" if "complex" in (self.field, other.field) else "real"
        return Subspace(self.ambient, self.basis.hstack(other.basis), fld)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, field={self.field}, basis={self.basis!r})"


def _gram_schmidt(space_dim: int, vectors: list[tuple], omega) -> tuple[list, list]:
    """Symplectic Gram-Schmidt over any exact field.

    Consumes a basis and returns ``(es, fs)`` with ``omega(e_i, f_j) = delta``
    and all other pairings zero.
    """
    todo = [tuple(Fraction(x) if isinstance(x, int) else x for x in v) for v in vectors]
    es, fs = [], []
    while todo:
        e = todo.pop(0)
        k = next((i for i, w in enumerate(todo) if omega(e, w)), None)
        if k is None:
            raise Degenerate("vectors span a degenerate subspace")
        w = todo.pop(k)
        c = omega(e, w)
        f = tuple(x / c for x in w)
        rest = []
        for v in todo:
            a, b = omega(v, f), omega(v, e)
            rest.append(tuple(vi - a * ei + b * fi for vi, ei, fi in zip(v, e, f)))
        todo = rest
        es.append(e)
        fs.append(f)
    return es, fs


def darboux_basis(s: SymplecticSpace) -> Matrix:
    """Columns ``e_1..e_n, f_1..f_n`` with ``B^T Omega B`` the standard form.

    The procedure is deterministic: each ``e`` is the first unused vector and
    its partner is the first remaining vector pairing nontrivially with it.
    """
    basis = [tuple(Fraction(int(i == j)) for i in range(s.dim)) for j in range(s.dim)]
    es, fs = _gram_schmidt(s.dim, basis, s.omega)
    return Matrix.from_columns(es + fs, s.dim)


def symplectic_complement(c: Subspace) -> Subspace:
    """``C^omega = {v : omega(v, c) = 0 for all c in C}``."""
    amb = c.ambient
    if c.dim == 0:
        return Subspace.whole(amb, c.field)
    # omega(v, c_j) = v^T Omega c_j, so C^omega = ker((Omega B)^T)
    constraints = (amb.form @ c.basis).T
    return Subspace(amb, nullspace(constraints), c.field)


def classify_subspace(c: Subspace) -> str:
    """One of ``lagrangian``, ``isotropic``, ``coisotropic``, ``symplectic``, ``generic``."""
    comp = symplectic_complement(c)
    iso = c <= comp
    coiso = comp <= c
    if iso and coiso:
        return "lagrangian"
    if iso:
        return "isotropic"
    if coiso:
        return "coisotropic"
    if c.intersect(comp).dim == 0:
        return "symplectic"
    return "generic"


@dataclass(frozen=True)
class ReducedSpace:
    """The linear reduction ``V_0 = C / (C ∩ C^omega)``.

    ``space`` is a standard symplectic space; ``lifts`` holds, as columns, a
    representative in ``C`` of each of its Darboux basis vectors; ``projection``
    is the matrix of the reduction map on ``source.basis``.
    """

    source: Subspace
    space: SymplecticSpace
    lifts: Matrix
    projection: Matrix

    def project(self, v: Sequence) -> tuple:
        """Image of ``v`` (a vector of ``C`` or of its complexification)."""
        x = solve(self.source.basis, list(v))
        if x is None:
            raise InputError("vector does not lie in the reduced subspace")
        return self.projection.apply(x)

    def pullback_ok(self) -> bool:
        """Check ``pi_0^* omega_0 == omega|_C`` on the basis of ``C``."""
        cb = self.source.basis
        lhs = self.projection.T @ self.space.form @ self.projection
        rhs = cb.T @ self.source.ambient.form @ cb
        return lhs == rhs


def linear_reduce(c: Subspace) -> ReducedSpace:
    if c.field != "real":
        raise InputError("linear reduction expects a real subspace")
    amb = c.ambient
    null = c.intersect(symplectic_complement(c))
    picked = []
    span = null.basis
    for v in c.vectors():
        trial = span.hstack(Matrix.from_columns([v], amb.dim))
        if rank(trial) > span.cols:
            picked.append(v)
            span = trial
    k = len(picked)
    if k == 0:
        space = SymplecticSpace(Matrix([], 0))
        lifts = Matrix.zeros(amb.dim, 0)
        proj = Matrix([], c.dim)
        return ReducedSpace(c, space, lifts, proj)
    q = Matrix.from_columns(picked, amb.dim)
    gram = q.T @ amb.form @ q
    es, fs = _gram_schmidt(k, [tuple(Fraction(int(i == j)) for i in range(k)) for j in range(k)],
                           lambda u, v: _bilinear(gram, u, v))
    b = Matrix.from_columns(es + fs, k)
    lifts = q @ b
    # coordinates of each basis vector of C in the basis (lifts, null basis)
    solver = lifts.hstack(null.basis)
    coords = [solve(solver, v)[:k] for v in c.vectors()]
    proj = Matrix.from_columns(coords, k)
    return ReducedSpace(c, SymplecticSpace.standard(k // 2), lifts, proj)


def _require_lagrangian(l: Subspace) -> None:
    if 2 * l.dim != l.ambient.dim or not l <= symplectic_complement(l):
        raise NotLagrangian(f"subspace of dimension {l.dim} is not Lagrangian in dimension {l.ambient.dim}")


def reduce_lagrangian(l: Subspace, c: Subspace, reduced: ReducedSpace | None = None) -> Subspace:
    """``L_0 = pi_0(L ∩ C_C)`` inside the complexified reduction of ``C``.

    ``c`` need not be coisotropic; callers can test the result with
    :func:`classify_subspace`.
    """
    _require_lagrangian(l)
    if c.field != "real":
        raise InputError("the reducing subspace must be real")
    if reduced is None:
        reduced = linear_reduce(c)
    meet = l.complexify().intersect(c.complexify())
    images = [reduced.project(v) for v in meet.vectors()]
    return Subspace(reduced.space, Matrix.from_columns(images, reduced.space.dim), "complex")


def lagrangian_type(l: Subspace) -> str:
    """``real``, ``totally_complex`` or ``mixed``."""
    _require_lagrangian(l)
    lc = l.complexify()
    bar = lc.conj()
    if bar == lc:
        return "real"
    if lc.intersect(bar).dim == 0:
        return "totally_complex"
    return "mixed"


def hermitian_gram(l: Subspace) -> Matrix:
    """Gram matrix of ``<v, w> = i omega(v, conj w)`` on the basis of ``l``."""
    vs = l.vectors()
    om = l.ambient.omega
    return Matrix([[I * om(v, tuple(conj(x) for x in w)) for w in vs] for v in vs], len(vs))


def _positive_definite(h: Matrix) -> bool:
    # LDL* without pivoting: a Hermitian matrix is positive definite iff every
    # pivot met this way is a positive real
    a = [list(r) for r in h.row_list()]
    n = len(a)
    for k in range(n):
        p = a[k][k]
        p = p.re if isinstance(p, Gaussian) else p
        if p <= 0:
            return False
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return True


def is_positive(l: Subspace) -> bool:
    _require_lagrangian(l)
    return _positive_definite(hermitian_gram(l))


def positive_orbit_intersection_check(l: Subspace, c: Subspace) -> bool:
    """Verify ``L ∩ (C^omega)_C = {0}`` for positive ``L`` and coisotropic ``C``."""
    _require_lagrangian(l)
    if not is_positive(l):
        raise PreconditionError("Lagrangian is not positive")
    if c.field != "real" or classify_subspace(c) not in ("coisotropic", "lagrangian"):
        raise PreconditionError("reducing subspace is not a real coisotropic subspace")
    return l.intersect(symplectic_complement(c).complexify()).dim == 0


# representations


@dataclass(frozen=True)
class WeightRep:
    """Torus ``T^d`` acting on ``C^m`` with integer weights, plus an optional shift.

    Coordinates of the underlying ``R^{2m}`` are ``(x_1..x_m, y_1..y_m)`` with
    ``z_j = x_j + i y_j`` and the standard form.  The infinitesimal action of
    ``xi`` sends ``(x_j, y_j)`` to ``<w_j, xi> (y_j, -x_j)``, which makes the
    weight-one quadratic momentum ``+|z|^2 / 2``.
    """

    torus_rank: int
    weights: tuple[tuple[int, ...], ...]
    shift: tuple[Fraction, ...] = ()

    def __post_init__(self):
        w = tuple(tuple(int(x) for x in row) for row in self.weights)
        for row in w:
            if len(row) != self.torus_rank:
                raise InputError("weight length does not match torus rank")
        object.__setattr__(self, "weights", w)
        s = tuple(as_rational(x) for x in self.shift)
        if not s:
            s = (Fraction(0),) * self.torus_rank
        if len(s) != self.torus_rank:
            raise InputError("shift length does not match torus rank")
        object.__setattr__(self, "shift", s)

    @property
    def m(self) -> int:
        return len(self.weights)

    @property
    def space(self) -> SymplecticSpace:
        return SymplecticSpace.standard(self.m)

    def weight_matrix(self) -> Matrix:
        return Matrix(self.weights, self.torus_rank)

    def pairings(self, xi: Sequence) -> list:
        if len(xi) != self.torus_rank:
            raise InputError("Lie algebra element has the wrong length")
        return [sum((a * b for a, b in zip(w, xi)), 0) for w in self.weights]

    def generator_matrix(self, xi: Sequence) -> Matrix:
        m = self.m
        c = self.pairings(xi)
        rows = [[0] * (2 * m) for _ in range(2 * m)]
        for j, cj in enumerate(c):
            rows[j][m + j] = cj
            rows[m + j][j] = -cj
        return Matrix(rows, 2 * m)

    def lie_generators(self, subtorus: Subtorus | None = None) -> list[Matrix]:
        h = subtorus or Subtorus.full(self.torus_rank)
        if h.ambient_rank != self.torus_rank:
            raise InputError("subtorus ambient rank does not match the torus rank")
        return [self.generator_matrix(eta) for eta in h.generators()]

    def restrict(self, coords: Sequence[int]) -> "WeightRep":
        """Subrepresentation on the complex coordinates ``coords``, unshifted."""
        return WeightRep(self.torus_rank, tuple(self.weights[j] for j in coords))

    def act(self, torus_point: Sequence[Gaussian], v: Sequence) -> tuple:
        """Act by ``t = (u_1..u_d)``, ``|u_l| = 1``: ``z_j -> prod u_l^{-w_jl} z_j``."""
        if len(torus_point) != self.torus_rank:
            raise InputError("torus point has the wrong length")
        units = [u if isinstance(u, Gaussian) else Gaussian(u) for u in torus_point]
        if any(u.norm() != 1 for u in units):
            raise InputError("torus coordinates must have modulus one")
        m = self.m
        out_x, out_y = [], []
        for j, w in enumerate(self.weights):
            z = Gaussian(v[j], v[m + j])
            for u, k in zip(units, w):
                z = z * u ** (-k)
            out_x.append(z.re)
            out_y.append(z.im)
        return tuple(out_x + out_y)


def _symplectic_matrix(g: Matrix, form: Matrix) -> bool:
    return g.T @ form @ g == form


@dataclass(frozen=True)
class FiniteGroupRep:
    """A finite group of symplectic matrices on standard ``Q^{2n}``, by generators.

    The group is enumerated on construction; a group with more than
    ``order_bound`` elements is rejected as (probably) infinite.
    """

    dim: int
    generators: tuple[Matrix, ...]
    order_bound: int = 256
    elements: tuple[Matrix, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.dim % 2:
            raise OddDimension("representation space must be even dimensional")
        form = standard_form(self.dim // 2)
        gens = tuple(Matrix(g.map(Fraction).row_list(), g.cols) for g in self.generators)
        for g in gens:
            if g.shape != (self.dim, self.dim):
                raise InputError("generator has the wrong shape")
            if not _symplectic_matrix(g, form):
                raise InputError("generator does not preserve the symplectic form")
        object.__setattr__(self, "generators", gens)
        ident = Matrix.identity(self.dim, Fraction(1))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g @ x
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > self.order_bound:
                            raise InputError(
                                f"group generated has more than {self.order_bound} elements")
            frontier = nxt
        object.__setattr__(self, "elements", tuple(sorted(seen, key=lambda m: [str(x) for x in m.entries])))

    @property
    def space(self) -> SymplecticSpace:
        return SymplecticSpace.standard(self.dim // 2)

    @property
    def order(self) -> int:
        return len(self.elements)


def _action(rep, subgroup=None) -> tuple[str, list[Matrix]]:
    if isinstance(rep, FiniteGroupRep):
        gens = rep.generators
        if subgroup is not None:
            gens = [gens[i] for i in subgroup]
        return "finite", list(gens)
    if isinstance(rep, WeightRep):
        return "torus", rep.lie_generators(subgroup)
    raise InputError(f"unsupported representation {type(rep).__name__}")


def _fixed_basis(kind: str, gens: list[Matrix], dim: int) -> Matrix:
    if not gens:
        return Matrix.identity(dim)
    blocks = []
    for g in gens:
        blocks.append(g - Matrix.identity(dim) if kind == "finite" else g)
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    return nullspace(stacked)


def fixed_subspace(rep, subgroup=None) -> Subspace:
    """``V^K`` for a finite group (``subgroup`` = generator indices) or a subtorus."""
    kind, gens = _action(rep, subgroup)
    space = rep.space
    return Subspace(space, _fixed_basis(kind, gens, space.dim), "real")


def _invariant(kind: str, gens: list[Matrix], s: Subspace) -> bool:
    for g in gens:
        image = g @ s.basis
        if not span_contains(s.basis, image):
            return False
    return True


def is_invariant(rep, s: Subspace, subgroup=None) -> bool:
    """Invariance under the generators (enough for the whole group)."""
    kind, gens = _action(rep, subgroup)
    return _invariant(kind, gens, s)


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    top = a.hstack(Matrix.zeros(a.rows, b.cols))
    bottom = Matrix.zeros(b.rows, a.cols).hstack(b)
    return top.vstack(bottom)


@dataclass(frozen=True)
class SingularReduction:
    coisotropic: Subspace
    reduced: ReducedSpace
    lagrangian: Subspace
    invariant_splitting_ok: bool


def singular_reduce(v_rep, w_rep, f: Subspace, l: Subspace) -> SingularReduction:
    """Reduce ``L`` along ``C = F ⊕ W^K`` inside ``V ⊕ W``.

    ``V ⊕ W`` uses block coordinates (V's, then W's) with the block-diagonal
    form.  ``F`` is a real Lagrangian of ``V``; ``L`` lives in ``(V ⊕ W)_C``.
    Both must be invariant under the common group ``K``.
    """
    kind_v, gens_v = _action(v_rep)
    kind_w, gens_w = _action(w_rep)
    if kind_v != kind_w or len(gens_v) != len(gens_w):
        raise InputError("V and W must be representations of the same group")
    vs, ws = v_rep.space, w_rep.space
    if f.ambient != vs:
        raise InputError("F must be a subspace of V")
    if f.field != "real":
        raise InputError("F must be real")
    _require_lagrangian(f)
    if not _invariant(kind_v, gens_v, f):
        raise InvarianceViolation("F is not K-invariant")
    total = SymplecticSpace(_block_diag(vs.form, ws.form))
    if l.ambient != total:
        raise InputError("L must be a subspace of V ⊕ W in block coordinates")
    _require_lagrangian(l)
    gens = [_block_diag(a, b) for a, b in zip(gens_v, gens_w)]
    if not _invariant(kind_v, gens, l):
        raise InvarianceViolation("L is not K-invariant")

    wk = _fixed_basis(kind_w, gens_w, ws.dim)
    cols = [tuple(v) + (0,) * ws.dim for v in f.vectors()]
    cols += [(0,) * vs.dim + tuple(w) for w in wk.col_list()]
    c = Subspace(total, Matrix.from_columns(cols, total.dim), "real")

    # L splits along S = (V ⊕ W)^K and its complement when it is invariant
    s = Subspace(total, _fixed_basis(kind_v, gens, total.dim), "real")
    sw = symplectic_complement(s)
    lc = l.complexify()
    split_ok = (lc.intersect(s.complexify()).dim + lc.intersect(sw.complexify()).dim) == l.dim
    if not split_ok:
        raise InvarianceViolation("L does not split along the fixed subspace")

    reduced = linear_reduce(c)
    l0 = reduce_lagrangian(l, c, reduced)
    return SingularReduction(c, reduced, l0, split_ok)


def singular_reduce_lagrangian(v_rep, w_rep, f: Subspace, l: Subspace) -> Subspace:
    return singular_reduce(v_rep, w_rep, f, l).lagrangian


# quadratic momentum maps


def _check_point(rep: WeightRep, v: Sequence) -> None:
    if len(v) != 2 * rep.m:
        raise InputError(f"point has length {len(v)}, expected {2 * rep.m}")


def fundamental_vector(rep: WeightRep, xi: Sequence, v: Sequence) -> tuple:
    _check_point(rep, v)
    return rep.generator_matrix(xi).apply(v)


def quadratic_momentum(rep: WeightRep, v: Sequence, xi: Sequence) -> Fraction:
    """``<J_V(v), xi> = omega(xi_V(v), v) / 2 - <shift, xi>``."""
    _check_point(rep, v)
    xv = fundamental_vector(rep, xi, v)
    val = rep.space.omega(xv, v) / 2
    return Fraction(val) - sum((a * b for a, b in zip(rep.shift, xi)), Fraction(0))


def momentum_components(rep: WeightRep, v: Sequence) -> tuple[Fraction, ...]:
    d = rep.torus_rank
    return tuple(quadratic_momentum(rep, v, [int(i == k) for i in range(d)]) for k in range(d))


def _subtorus_momentum(rep: WeightRep, h: Subtorus, v: Sequence) -> tuple:
    return tuple(quadratic_momentum(rep, v, eta) for eta in h.generators())


def _unit(t: Fraction) -> Gaussian:
    # rational point of the unit circle
    d = 1 + t * t
    return Gaussian((1 - t * t) / d, 2 * t / d)


def _rational(rng: random.Random, span: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def _zero_level_moduli(rep: WeightRep, h: Subtorus, coords: list[int]) -> list[tuple[int, ...]]:
    """Small moduli vectors ``m`` on ``coords`` with ``sum_j m_j <w_j, eta> = 0``.

    Entries are kept in ``{0, 1, 2}`` so ``2 m_j`` is a sum of two squares and
    the point can be realized with rational coordinates.
    """
    out = []
    if len(coords) > 8:
        return out
    pair = [[sum(a * b for a, b in zip(rep.weights[j], eta)) for eta in h.generators()] for j in coords]
    for m in product((0, 1, 2), repeat=len(coords)):
        if not any(m):
            continue
        if all(sum(mj * pj[l] for mj, pj in zip(m, pair)) == 0 for l in range(h.dim)):
            out.append(m)
    return out


def momentum_zero_decomposition_check(rep: WeightRep, subtorus: Subtorus | None = None,
                                      samples: int = 100, seed: int = 20240607) -> bool:
    """Check ``J_V^{-1}(0) = J_W^{-1}(0) + V^K`` and ``J_V^{-1}(0)^K = V^K`` on samples.

    ``K`` is the subtorus (default: the whole torus), ``V^K`` its fixed
    coordinates and ``W`` the remaining coordinates as a subrepresentation.
    Half the samples are drawn from the zero level of ``J_W`` when it has
    nontrivial rational points.  The shift is ignored: this is a statement
    about the quadratic momentum map.
    """
    h = subtorus or Subtorus.full(rep.torus_rank)
    m = rep.m
    base = WeightRep(rep.torus_rank, rep.weights)
    fixed = [j for j, w in enumerate(base.weights)
             if all(sum(a * b for a, b in zip(w, eta)) == 0 for eta in h.generators())]
    moving = [j for j in range(m) if j not in fixed]
    sub = base.restrict(moving)
    vk_space = fixed_subspace(base, h)
    kinds = _zero_level_moduli(base, h, moving)
    rng = random.Random(seed)
    gens = base.lie_generators(h)

    def embed(xs, ys, idx):
        v = [Fraction(0)] * (2 * m)
        for a, j in enumerate(idx):
            v[j] = xs[a]
            v[m + j] = ys[a]
        return v

    for s in range(samples):
        vk_x = [_rational(rng) for _ in fixed]
        vk_y = [_rational(rng) for _ in fixed]
        if kinds and s % 2 == 0:
            mod = kinds[rng.randrange(len(kinds))]
            wx, wy = [], []
            for mj in mod:
                z = {0: Gaussian(0), 1: Gaussian(1, 1), 2: Gaussian(2, 0)}[mj]
                z = z * _unit(Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
                wx.append(z.re)
                wy.append(z.im)
        else:
            wx = [_rational(rng) for _ in moving]
            wy = [_rational(rng) for _ in moving]
        vk = embed(vk_x, vk_y, fixed)
        w_full = embed(wx, wy, moving)
        v = [a + b for a, b in zip(vk, w_full)]
        if not vk_space.contains(vk):
            return False
        jv = _subtorus_momentum(base, h, v)
        jw = _subtorus_momentum(sub, h, list(wx) + list(wy))
        if any(_subtorus_momentum(base, h, vk)):
            return False
        if jv != jw:
            return False
        if (not any(jv)) != (not any(jw)):
            return False
        if not any(jv):
            # K-fixed zero-level points are exactly V^K
            is_fixed = all(not any(g.apply(v)) for g in gens)
            if is_fixed != vk_space.contains(v):
                return False
    return True
