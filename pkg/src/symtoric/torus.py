"""Connected subtori of a standard torus, given by primitive lattice bases."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .exact import Matrix, is_primitive, rank


@dataclass(frozen=True)
class Subtorus:
    """Subtorus ``H <= T^N`` whose Lie algebra has Z-basis ``basis`` (rows).

    The rows must be independent and span a saturated sublattice of ``Z^N``;
    that is exactly the condition for ``exp`` of their span to be a closed
    connected subgroup whose integral lattice they generate.  ``r = 0`` is the
    trivial subtorus.
    """

    ambient_rank: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_rank:
            raise InputError(
                f"subtorus basis has {self.basis.cols} columns, ambient rank is {self.ambient_rank}")
        if rank(self.basis) != self.basis.rows:
            raise InputError("subtorus basis rows are linearly dependent")
        if not is_primitive(self.basis):
            raise InputError("subtorus basis is not primitive (some invariant factor exceeds 1)")

    @classmethod
    def from_rows(cls, ambient_rank: int, rows) -> "Subtorus":
        rows = [[int(x) for x in r] for r in rows]
        return cls(ambient_rank, Matrix(rows, ambient_rank))

    @classmethod
    def full(cls, n: int) -> "Subtorus":
        return cls(n, Matrix.identity(n))

    @classmethod
    def trivial(cls, n: int) -> "Subtorus":
        return cls(n, Matrix([], n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def generators(self) -> list[tuple[int, ...]]:
        return self.basis.row_list()
