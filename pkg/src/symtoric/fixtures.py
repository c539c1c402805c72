"""Standard polytopes: the moment polytopes of small toric manifolds and a few non-examples."""

from __future__ import annotations

from .polytope import HPolytope


def cp1(k: int = 1) -> HPolytope:
    """``[0, k]``."""
    return HPolytope(1, ((1,), (-1,)), (0, -k))


def cp2(k: int = 1) -> HPolytope:
    """``k`` times the standard triangle."""
    return HPolytope(2, ((1, 0), (0, 1), (-1, -1)), (0, 0, -k))


def cp1xcp1(k: int = 1) -> HPolytope:
    """``[0, k]^2``, facets ordered factor by factor: ``x >= 0, -x >= -k, y >= 0, -y >= -k``."""
    return HPolytope(2, ((1, 0), (-1, 0), (0, 1), (0, -1)), (0, -k, 0, -k))


def hexagon() -> HPolytope:
    """The Delzant hexagon with vertices (0,1),(1,0),(3,0),(3,2),(2,3),(0,3)."""
    return HPolytope(2, ((1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)),
                     (0, 0, 1, -3, -3, -5))


def weighted_projective() -> HPolytope:
    """Triangle with normals (1,0),(0,1),(-1,-2); not smooth at the vertex (0,1)."""
    return HPolytope(2, ((1, 0), (0, 1), (-1, -2)), (0, 0, -2))


def point() -> HPolytope:
    """The zero dimensional polytope."""
    return HPolytope(0, (), ())


def cube(k: int = 1, n: int = 3) -> HPolytope:
    normals, offsets = [], []
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        normals += [e, tuple(-x for x in e)]
        offsets += [0, -k]
    return HPolytope(n, tuple(normals), tuple(offsets))


def simplex(k: int = 1, n: int = 3) -> HPolytope:
    normals = [tuple(int(j == i) for j in range(n)) for i in range(n)] + [(-1,) * n]
    return HPolytope(n, tuple(normals), (0,) * n + (-k,))


ALL_DELZANT = {
    "cp1": cp1(3),
    "cp2": cp2(3),
    "cp1xcp1": cp1xcp1(2),
    "hexagon": hexagon(),
    "point": point(),
    "cube": cube(2),
    "simplex3": simplex(2),
}
