"""Random exact inputs for the property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from symtoric.exact import Gaussian, I, Matrix, inverse, nullspace, rank
from symtoric.symplin import (FiniteGroupRep, Subspace, SymplecticSpace, WeightRep,
                              _gram_schmidt, standard_form)


def rand_int_matrix(rng: random.Random, r: int, c: int, span: int = 3) -> Matrix:
    return Matrix([[rng.randint(-span, span) for _ in range(c)] for _ in range(r)], c)


def random_form(rng: random.Random, n: int) -> Matrix:
    """A nondegenerate skew rational ``2n x 2n`` matrix."""
    dim = 2 * n
    while True:
        if rng.random() < 0.5:
            rows = [[Fraction(0)] * dim for _ in range(dim)]
            for i in range(dim):
                for j in range(i + 1, dim):
                    x = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                    rows[i][j] = x
                    rows[j][i] = -x
            m = Matrix(rows, dim)
        else:
            p = rand_int_matrix(rng, dim, dim)
            m = p.T @ standard_form(n) @ p
        if rank(m) == dim:
            return m


def random_symplectic(rng: random.Random, n: int, factors: int = 3) -> Matrix:
    """Product of random symplectic shears and block scalings on standard ``R^{2n}``."""
    dim = 2 * n
    g = Matrix.identity(dim)
    for _ in range(factors):
        kind = rng.randrange(3)
        if kind < 2:
            s = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    s[i][j] = s[j][i] = rng.randint(-2, 2)
            rows = []
            for i in range(dim):
                r = [int(i == j) for j in range(dim)]
                if kind == 0 and i < n:
                    for j in range(n):
                        r[n + j] = s[i][j]
                if kind == 1 and i >= n:
                    for j in range(n):
                        r[j] = s[i - n][j]
                rows.append(r)
            f = Matrix(rows, dim)
        else:
            while True:
                a = rand_int_matrix(rng, n, n, 2)
                if rank(a) == n:
                    break
            ait = inverse(a).T
            rows = [list(a.row(i)) + [0] * n for i in range(n)]
            rows += [[0] * n + list(ait.row(i)) for i in range(n)]
            f = Matrix(rows, dim)
        g = f @ g
    return g


def random_subspace(rng: random.Random, space: SymplecticSpace, k: int) -> Subspace:
    vecs = [[Fraction(rng.randint(-3, 3)) for _ in range(space.dim)] for _ in range(k)]
    return Subspace(space, Matrix.from_columns(vecs, space.dim), "real")


def _symmetric(rng, n, complex_part: str):
    """Random symmetric matrix; ``complex_part`` in real | positive | complex | mixed."""
    a = [[Gaussian(0) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            re = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            im = Fraction(0)
            if complex_part == "complex":
                im = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            a[i][j] = a[j][i] = Gaussian(re, im)
    if complex_part == "positive":
        # diagonally dominant positive imaginary part
        for i in range(n):
            for j in range(i + 1, n):
                t = Fraction(rng.randint(-1, 1), 2)
                a[i][j] = a[j][i] = a[i][j] + I * t
            a[i][i] = a[i][i] + I * (n + rng.randint(0, 2))
    if complex_part == "mixed" and n >= 2:
        for i in range(n):
            a[i][i] = a[i][i] + I * (1 if i == 0 else 0)
    return a


def random_lagrangian(rng: random.Random, n: int, kind: str = "complex",
                      transform: Matrix | None = None) -> Subspace:
    """Graph ``{(x, A x)}`` of a symmetric ``A`` moved by a real symplectic matrix.

    ``kind`` real gives a real Lagrangian, positive a positive one (Im A > 0),
    mixed one with Im A of rank 1, complex a generic one.
    """
    a = _symmetric(rng, n, kind)
    cols = []
    for j in range(n):
        v = [Gaussian(int(i == j)) for i in range(n)] + [a[i][j] for i in range(n)]
        cols.append(v)
    m = Matrix.from_columns(cols, 2 * n)
    g = transform if transform is not None else random_symplectic(rng, n)
    space = SymplecticSpace.standard(n)
    return Subspace(space, g @ m, "complex")


def random_coisotropic(rng: random.Random, n: int, k: int | None = None,
                       transform: Matrix | None = None) -> Subspace:
    """``g . span{e_1..e_n, f_1..f_k}`` for a random symplectic ``g``."""
    if k is None:
        k = rng.randint(0, n)
    g = transform if transform is not None else random_symplectic(rng, n)
    space = SymplecticSpace.standard(n)
    base = [tuple(int(i == j) for i in range(2 * n)) for j in list(range(n)) + list(range(n, n + k))]
    return Subspace(space, g @ Matrix.from_columns(base, 2 * n), "real")


def random_lagrangian_in(rng: random.Random, space: SymplecticSpace, basis: list, real: bool = False):
    """Random Lagrangian (complex unless ``real``) of the symplectic subspace spanned by ``basis``."""
    if not basis:
        return []
    es, fs = _gram_schmidt(space.dim, list(basis), space.omega)
    k = len(es)
    out = []
    a = _symmetric(rng, k, "real" if real else "complex")
    for j in range(k):
        v = list(es[j])
        for i in range(k):
            v = [x + a[i][j] * y for x, y in zip(v, fs[i])]
        out.append(tuple(v))
    return out


def annihilator(space: SymplecticSpace, a: list, target: list) -> list:
    """Vectors of span(target) omega-orthogonal to every vector of ``a``."""
    if not target:
        return []
    if not a:
        return list(target)
    t = Matrix.from_columns(target, space.dim)
    cons = Matrix([[space.omega(u, t.col(j)) for j in range(t.cols)] for u in a], t.cols)
    k = nullspace(cons)
    return [t.apply(k.col(j)) for j in range(k.cols)]


def random_subset_span(rng, vecs: list) -> list:
    """Random subspace of span(vecs), as a list of vectors."""
    if not vecs:
        return []
    a = rng.randint(0, len(vecs))
    out = []
    for _ in range(a):
        coeffs = [Fraction(rng.randint(-2, 2)) for _ in vecs]
        out.append(tuple(sum((c * v[i] for c, v in zip(coeffs, vecs)), Gaussian(0))
                         for i in range(len(vecs[0]))))
    return out


def eigenspace(gens: list[Matrix], values: list, infinitesimal: bool) -> list:
    """Joint eigenspace ``g_l v = lam_l v`` (or ``X_l v = i lam_l v``)."""
    dim = gens[0].rows
    stack = None
    for g, lam in zip(gens, values):
        ev = I * lam if infinitesimal else lam
        m = g - Matrix.identity(dim).map(lambda x: x * ev)
        stack = m if stack is None else stack.vstack(m)
    k = nullspace(stack)
    return k.col_list()


def invariant_lagrangian(rng, space: SymplecticSpace, gens: list[Matrix], characters: list,
                         infinitesimal: bool, inverse) -> list:
    """A random invariant complex Lagrangian from the eigenspace decomposition.

    ``characters`` lists the joint eigenvalues that occur; ``inverse`` maps a
    character to the one it is paired with by omega.
    """
    vecs = []
    done = set()
    for chi in characters:
        if chi in done:
            continue
        dual = inverse(chi)
        e = eigenspace(gens, list(chi), infinitesimal)
        if dual == chi:
            vecs += random_lagrangian_in(rng, space, e)
            done.add(chi)
        else:
            ed = eigenspace(gens, list(dual), infinitesimal)
            a = random_subset_span(rng, e)
            vecs += a + annihilator(space, a, ed)
            done |= {chi, dual}
    return vecs


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    top = a.hstack(Matrix.zeros(a.rows, b.cols))
    return top.vstack(Matrix.zeros(b.rows, a.cols).hstack(b))


def rot4_lift() -> Matrix:
    """Cotangent lift of the quarter turn of ``R^2``: ``diag(R, R)`` on ``(x1, x2, y1, y2)``."""
    return Matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], 4)


def finite_instance(rng: random.Random, order: int):
    """``(v_rep, w_rep, F, L)`` for a random invariant instance of ``Z_2`` or ``Z_4``."""
    if order == 2:
        nv = rng.randint(1, 2)
        nw = rng.randint(0, 4 - nv)
        sv = [rng.choice((1, -1)) for _ in range(nv)]
        sw = [rng.choice((1, 1, -1)) for _ in range(nw)]

        def diag(signs):
            m = len(signs)
            return Matrix([[signs[i % m] if i == j else 0 for j in range(2 * m)] for i in range(2 * m)],
                          2 * m)
        gv, gw = diag(sv), diag(sw) if nw else Matrix([], 0)
        v = FiniteGroupRep(2 * nv, (gv,))
        w = FiniteGroupRep(2 * nw, (gw,))
        f_vecs = []
        for s in (1, -1):
            idx = [i for i in range(nv) if sv[i] == s]
            basis = []
            for i in idx:
                basis.append(tuple(int(j == i) for j in range(2 * nv)))
                basis.append(tuple(int(j == nv + i) for j in range(2 * nv)))
            f_vecs += random_lagrangian_in(rng, v.space, basis, real=True)
        chars = [(1,), (-1,)]

        def inv(c):
            return c
    else:
        choice = rng.randrange(3)
        if choice == 0:
            gv = rot4_lift()
            f_vecs = [(1, 0, 0, 0), (0, 1, 0, 0)]
        elif choice == 1:
            gv = Matrix([[1, 0], [0, 1]], 2)
            f_vecs = random_lagrangian_in(rng, SymplecticSpace.standard(1), [(1, 0), (0, 1)], real=True)
        else:
            gv = Matrix([[-1, 0], [0, -1]], 2)
            f_vecs = random_lagrangian_in(rng, SymplecticSpace.standard(1), [(1, 0), (0, 1)], real=True)
        room = 8 - gv.rows
        blocks = []
        while room >= 2:
            opts = [Matrix([[0, -1], [1, 0]], 2), Matrix([[1, 0], [0, 1]], 2), Matrix([[-1, 0], [0, -1]], 2)]
            if room >= 4:
                opts.append(rot4_lift())
            b = rng.choice(opts + [opts[1], None])
            if b is None:
                break
            blocks.append(b)
            room -= b.rows
        gw, _ = _to_standard_layout(blocks)
        v = FiniteGroupRep(gv.rows, (gv,))
        w = FiniteGroupRep(gw.rows, (gw,)) if gw.rows else FiniteGroupRep(0, (Matrix([], 0),))
        chars = [(1,), (-1,), (I,), (-I,)]

        def inv(c):
            return (Fraction(1) / c[0],)
    total = SymplecticSpace(block_diag(v.space.form, w.space.form))
    g_total = block_diag(v.generators[0], w.generators[0])
    lvecs = invariant_lagrangian(rng, total, [g_total], chars, False, inv)
    f = Subspace(v.space, Matrix.from_columns(f_vecs, v.dim), "real")
    l = Subspace(total, Matrix.from_columns(lvecs, total.dim), "complex")
    return v, w, f, l


def _to_standard_layout(blocks: list[Matrix]) -> tuple[Matrix, list]:
    """Direct sum of blocks (each in standard layout) rewritten in the standard layout."""
    if not blocks:
        return Matrix([], 0), []
    ns = [b.rows // 2 for b in blocks]
    n = sum(ns)
    # position of each block coordinate in the big standard layout
    pos = []
    off = 0
    for k in ns:
        pos.append([off + i for i in range(k)] + [n + off + i for i in range(k)])
        off += k
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for b, p in zip(blocks, pos):
        for i in range(b.rows):
            for j in range(b.cols):
                rows[p[i]][p[j]] = b[i, j]
    return Matrix(rows, 2 * n), pos


def torus_instance(rng: random.Random, d: int):
    """``(v_rep, w_rep, F, L)`` for a random invariant instance of a torus ``T^d``."""
    pairs = rng.randint(0, 1)
    zeros = rng.randint(0 if pairs else 1, 1)
    wv = []
    for _ in range(pairs):
        w = tuple(rng.randint(-2, 2) for _ in range(d))
        wv += [w, tuple(-x for x in w)]
    wv += [(0,) * d] * zeros
    mv = len(wv)
    f_vecs = []
    for p in range(pairs):
        a, b = 2 * p, 2 * p + 1
        x = [0] * (2 * mv)
        x[a] = x[b] = 1
        y = [0] * (2 * mv)
        y[mv + a] = 1
        y[mv + b] = -1
        f_vecs += [tuple(x), tuple(y)]
    for z in range(zeros):
        j = 2 * pairs + z
        basis = [tuple(int(i == j) for i in range(2 * mv)), tuple(int(i == mv + j) for i in range(2 * mv))]
        f_vecs += random_lagrangian_in(rng, SymplecticSpace.standard(mv), basis, real=True)
    mw = rng.randint(0, 4 - mv)
    ww = [(0,) * d if rng.random() < 0.5 else tuple(rng.randint(-2, 2) for _ in range(d))
          for _ in range(mw)]
    v = WeightRep(d, tuple(wv))
    w = WeightRep(d, tuple(ww))
    total = SymplecticSpace(block_diag(v.space.form, w.space.form))
    gens = []
    for k in range(d):
        xi = [int(i == k) for i in range(d)]
        gens.append(block_diag(v.generator_matrix(xi), w.generator_matrix(xi)))
    chars = set()
    for wt in wv + ww:
        chars.add(tuple(wt))
        chars.add(tuple(-x for x in wt))
    chars = sorted(chars)
    lvecs = invariant_lagrangian(rng, total, gens, chars, True, lambda c: tuple(-x for x in c))
    f = Subspace(v.space, Matrix.from_columns(f_vecs, v.space.dim), "real")
    l = Subspace(total, Matrix.from_columns(lvecs, total.dim), "complex")
    return v, w, f, l


def unimodular(rng: random.Random, n: int, steps: int = 6) -> Matrix:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1, 2, -2))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5 and n:
        m[0] = [-x for x in m[0]]
    return Matrix(m, n)



# CLI invocations over the fixture files, with the exit code each must give
FIXTURE_DIR = __import__("pathlib").Path(__file__).parent / "fixtures"


def _f(name: str) -> str:
    return str(FIXTURE_DIR / f"{name}.json")


CLI_CASES = [
    (["polytope", "verify", _f("cp2_k1")], 0),
    (["polytope", "verify", _f("hexagon")], 0),
    (["polytope", "faces", _f("hexagon")], 0),
    (["polytope", "faces", _f("point")], 0),
    (["polytope", "points", _f("cp2_k3")], 0),
    (["polytope", "construct", _f("cp1xcp1_k2")], 0),
    (["quantize", _f("cp1_k5"), "--basis"], 0),
    (["quantize", _f("cp2_k3")], 0),
    (["qr", _f("cp1xcp1_k2"), "--subtorus", _f("subtorus_diagonal")], 0),
    (["qr", _f("cp1xcp1_k2"), "--subtorus", _f("subtorus_antidiagonal")], 0),
    (["qr", _f("cp1xcp1_k2"), "--subtorus", _f("subtorus_trivial")], 0),
    (["stratify", _f("rep_weights_1_2")], 0),
    (["stratify", _f("rep_t2_standard")], 0),
    (["stratify", _f("rep_trivial")], 0),
    (["stratify", "--reduced", _f("cp2_k1")], 0),
    (["symplin", "darboux", _f("form_standard4")], 0),
    (["symplin", "darboux", _f("form_scaled2")], 0),
    (["symplin", "complement", _f("isotropic_A")], 0),
    (["symplin", "reduce-lagrangian", _f("lagrangian_L1"), _f("coisotropic_C")], 0),
    (["symplin", "reduce-lagrangian", _f("lagrangian_L2"), _f("coisotropic_C")], 0),
    (["symplin", "reduce-lagrangian", _f("lagrangian_L3"), _f("coisotropic_C")], 0),
    (["symplin", "reduce-lagrangian", _f("lagrangian_L4"), _f("coisotropic_C")], 0),
    (["polytope", "verify", _f("weighted_projective")], 1),
    (["polytope", "verify", _f("halfplane")], 1),
    (["polytope", "construct", _f("weighted_projective")], 1),
    (["quantize", _f("cp1_half")], 1),
    (["qr", _f("cp1xcp1_k2"), "--subtorus", _f("subtorus_bad_kernel")], 1),
    (["symplin", "darboux", _f("form_odd3")], 1),
    (["polytope", "verify", _f("malformed")], 2),
    (["polytope", "verify", _f("bad_normal")], 2),
    (["polytope", "verify", _f("does_not_exist")], 2),
    (["symplin", "darboux", _f("form_not_skew")], 2),
    (["frobnicate"], 2),
]
