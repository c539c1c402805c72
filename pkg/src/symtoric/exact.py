"""Exact scalars, dense matrices, and rational/integer linear algebra.

Rationals are :class:`fractions.Fraction`; rational-complex numbers are
:class:`Gaussian`.  Every routine here is exact; nothing ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Gaussian",
    "I",
    "Matrix",
    "as_rational",
    "as_scalar",
    "conj",
    "rref",
    "rank",
    "rank_kernel",
    "nullspace",
    "solve",
    "inverse",
    "det",
    "pivot_columns",
    "column_echelon",
    "span_contains",
    "same_span",
    "span_intersection",
    "hermite_normal_form",
    "smith_normal_form",
    "integer_kernel",
    "integer_solution",
    "is_unimodular",
    "is_primitive",
    "saturate",
    "dual_lattice_pairing",
]


def as_rational(x) -> Fraction:
    """Parse an int, Fraction, or ``"p/q"`` string into a Fraction.

    Floats are rejected: they cannot be represented faithfully.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Gaussian):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.re
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class Gaussian:
    """A rational complex number ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Gaussian(x, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Gaussian(self.re * other, self.im * other)
        if not isinstance(other, Gaussian):
            return NotImplemented
        return Gaussian(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if not n:
            raise ZeroDivisionError("Gaussian division by zero")
        p = self * o.conjugate()
        return Gaussian(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else Gaussian(1) / self
        out = Gaussian(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        """``|z|^2``, always a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = Gaussian(0, 1)


def as_scalar(x):
    """Rational if possible, otherwise Gaussian."""
    if isinstance(x, Gaussian):
        return x.re if not x.im else x
    if isinstance(x, dict):
        return as_scalar(Gaussian(as_rational(x.get("re", 0)), as_rational(x.get("im", 0))))
    return as_rational(x)


def conj(x):
    if isinstance(x, Gaussian):
        return x.conjugate()
    return x


def _is_zero(x) -> bool:
    return not x


class Matrix:
    """Immutable dense matrix over any exact ring (int, Fraction, Gaussian).

    ``rows`` and ``cols`` are the shape; ``entries`` is the row-major flat
    tuple.  A matrix with zero rows still remembers its column count.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(r) for r in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    # construction helpers

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> "Matrix":
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls((entries[i * cols:(i + 1) * cols] for i in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        return cls(([c[i] for c in columns] for i in range(nrows)), len(columns))

    @classmethod
    def identity(cls, n: int, one=1) -> "Matrix":
        zero = one - one
        return cls(([one if i == j else zero for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int, zero=0) -> "Matrix":
        return cls(([zero] * cols for _ in range(rows)), cols)

    # access

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def row_list(self) -> list[tuple]:
        return list(self._data)

    def col_list(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "Matrix":
        return Matrix(([r[j] for r in self._data] for j in range(self.cols)), self.rows)

    # arithmetic

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.col_list()
        out = []
        for r in self._data:
            row = []
            for c in ocols:
                s = 0
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix(out, other.cols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self._data:
            s = 0
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(([a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: c * x)

    def map(self, f) -> "Matrix":
        return Matrix(([f(x) for x in r] for r in self._data), self.cols)

    def conj(self) -> "Matrix":
        return self.map(conj)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix((a + b for a, b in zip(self._data, other._data)), self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Matrix(self._data + other._data, self.cols)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(([r[j] for j in idx] for r in self._data), len(idx))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix((self._data[i] for i in idx), self.cols)

    def is_zero(self) -> bool:
        return all(_is_zero(x) for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self._data]}, cols={self.cols})"


def _field(x):
    # promote ints to Fractions so division stays exact
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


# field linear algebra (Fraction or Gaussian entries)

def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [[_field(x) for x in r] for r in m.row_list()]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(a, nc), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> Matrix:
    """Kernel basis as the columns of a ``cols x k`` matrix."""
    r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return Matrix.from_columns(basis, m.cols)


def rank_kernel(m: Matrix) -> tuple[int, Matrix]:
    """Rank of ``m`` and a kernel basis (as columns); rank + nullity = cols."""
    _, pivots = rref(m)
    return len(pivots), nullspace(m)


def solve(a: Matrix, b: Sequence):
    """One solution ``x`` of ``a x = b`` as a tuple, or ``None`` if inconsistent."""
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    aug = a.hstack(Matrix(([x] for x in b), 1))
    r, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [Fraction(0)] * a.cols
    for i, p in enumerate(pivots):
        x[p] = r[i, a.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    r, pivots = rref(m.hstack(Matrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r.select_columns(range(n, 2 * n))


def det(m: Matrix):
    """Determinant by fraction-exact elimination; integer input gives an int."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    a = [[_field(x) for x in r] for r in m.row_list()]
    n = m.rows
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    if isinstance(d, Fraction) and d.denominator == 1 and all(
            isinstance(x, int) for x in m.entries):
        return int(d)
    return d


def pivot_columns(m: Matrix) -> list[int]:
    """Indices of a maximal independent subset of columns (greedy, left to right)."""
    return rref(m)[1]


def column_echelon(m: Matrix) -> Matrix:
    """Canonical basis of the column span: reduced column echelon form, zero columns dropped."""
    r, pivots = rref(m.T)
    return Matrix.from_columns([r.row(i) for i in range(len(pivots))], m.rows)


def span_contains(a: Matrix, b: Matrix) -> bool:
    """True iff every column of ``b`` lies in the column span of ``a``."""
    if b.cols == 0:
        return True
    return rank(a.hstack(b)) == rank(a)


def same_span(a: Matrix, b: Matrix) -> bool:
    return column_echelon(a) == column_echelon(b)


def span_intersection(a: Matrix, b: Matrix) -> Matrix:
    """Basis (columns, canonical) of colspan(a) ∩ colspan(b)."""
    if a.cols == 0 or b.cols == 0:
        return Matrix.zeros(a.rows, 0)
    k = nullspace(a.hstack(-b))
    vecs = [a.apply(k.col(j)[:a.cols]) for j in range(k.cols)]
    if not vecs:
        return Matrix.zeros(a.rows, 0)
    return column_echelon(Matrix.from_columns(vecs, a.rows))


# integer lattice algebra

def _check_int(m: Matrix):
    for x in m.entries:
        if isinstance(x, Fraction) and x.denominator == 1:
            continue
        if not isinstance(x, int) or isinstance(x, bool):
            raise TypeError(f"integer matrix expected, found {x!r}")


def _int_rows(m: Matrix) -> list[list[int]]:
    _check_int(m)
    return [[int(x) for x in r] for r in m.row_list()]


def hermite_normal_form(m: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  In ``h`` the
    nonzero rows come first, pivots are positive, and every entry above a
    pivot lies in ``[0, pivot)``.
    """
    a = _int_rows(m)
    nr, nc = m.rows, m.cols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def addmul(i, j, q):
        # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    r = 0
    for c in range(nc):
        if r >= nr:
            break
        while True:
            nz = [i for i in range(r, nr) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(a[i][c]), i))
            if p != r:
                swap(p, r)
            done = True
            for i in range(r + 1, nr):
                if a[i][c]:
                    addmul(i, r, a[i][c] // a[r][c])
                    if a[i][c]:
                        done = False
            if done:
                break
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                addmul(i, r, q)
        r += 1
    return Matrix(a, nc), Matrix(u, nr)


def smith_normal_form(m: Matrix) -> tuple[tuple[int, ...], Matrix, Matrix]:
    """Smith normal form ``(d, u, v)`` with ``u @ m @ v`` diagonal.

    ``d`` has length ``min(rows, cols)``, entries nonnegative, and each
    divides the next.
    """
    a = _int_rows(m)
    nr, nc = m.rows, m.cols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, q):
        # row_i -= q row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_add(i, j, q):
        # col_i -= q col_j
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    for t in range(min(nr, nc)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            if pi != t:
                row_swap(pi, t)
            if pj != t:
                col_swap(pj, t)
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    row_add(i, t, a[i][t] // a[t][t])
                    clean = clean and not a[i][t]
            for j in range(t + 1, nc):
                if a[t][j]:
                    col_add(j, t, a[t][j] // a[t][t])
                    clean = clean and not a[t][j]
            if not clean:
                continue
            bad = next((i for i in range(t + 1, nr)
                        if any(a[i][j] % a[t][t] for j in range(t + 1, nc))), None)
            if bad is None:
                break
            # fold the offending row in so the next pass sees a smaller remainder
            row_add(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    d = tuple(a[i][i] for i in range(min(nr, nc)))
    return d, Matrix(u, nr), Matrix(v, nc)


def integer_kernel(m: Matrix) -> Matrix:
    """Z-basis of ``{x in Z^n : m x = 0}`` as the rows of a matrix, in HNF."""
    h, u = hermite_normal_form(m.T)
    rows = [u.row(i) for i in range(h.rows) if not any(h.row(i))]
    k = Matrix(rows, m.cols)
    if rows:
        k, _ = hermite_normal_form(k)
    return k


def integer_solution(a: Matrix, b: Sequence):
    """An integer solution of ``a x = b``, or ``None`` if there is none."""
    b = [as_rational(x) for x in b]
    if any(x.denominator != 1 for x in b):
        return None
    d, u, v = smith_normal_form(a)
    ub = u.apply([int(x) for x in b])
    y = [0] * a.cols
    for i, ubi in enumerate(ub):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if ubi != 0:
                return None
        else:
            if ubi % di:
                return None
            y[i] = ubi // di
    return v.apply(y)


def is_unimodular(m: Matrix) -> bool:
    return m.is_square() and det(m) in (1, -1)


def is_primitive(m: Matrix) -> bool:
    """Rows independent and spanning a saturated sublattice (all invariant factors 1)."""
    if m.rows == 0:
        return True
    d, _, _ = smith_normal_form(m)
    return len(d) == m.rows and all(x == 1 for x in d)


def saturate(m: Matrix) -> Matrix:
    """Z-basis (rows, HNF) of ``span_Q(rows of m) ∩ Z^n``."""
    if m.rows == 0:
        return Matrix([], m.cols)
    perp = integer_kernel(m)
    if perp.rows == 0:
        return Matrix.identity(m.cols)
    return integer_kernel(perp)


def dual_lattice_pairing(lattice_basis: Matrix, functional: Sequence) -> tuple[Fraction, ...]:
    """Pairings ``<functional, b_j>`` against each basis row ``b_j``."""
    f = [as_rational(x) for x in functional]
    if len(f) != lattice_basis.cols:
        raise ValueError("functional length does not match the lattice rank")
    return tuple(sum((fi * bi for fi, bi in zip(f, row)), Fraction(0))
                 for row in lattice_basis.row_list())
