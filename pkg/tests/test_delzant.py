from fractions import Fraction
from math import isqrt

import pytest

from symtoric import fixtures
from symtoric.delzant import (build_delzant, freeness_certificate, kernel_weight_rep,
                              level_point_from_polytope, momentum, moment_roundtrip_check,
                              recover_point)
from symtoric.errors import InputError, NegativeModulus, NotDelzant, OutsidePolytope
from symtoric.exact import Matrix, is_primitive, smith_normal_form
from symtoric.polytope import face_lattice, verify_delzant
from symtoric.symplin import momentum_components

HALF = Fraction(1, 2)


def test_cp1_and_cp2_data():
    d = build_delzant(fixtures.cp1(3))
    assert d.pi == Matrix([[1, -1]])
    assert d.kernel_basis in (Matrix([[1, 1]]), Matrix([[-1, -1]]))
    d2 = build_delzant(fixtures.cp2(1))
    assert d2.kernel_basis in (Matrix([[1, 1, 1]]), Matrix([[-1, -1, -1]]))


def test_non_delzant_rejected():
    with pytest.raises(NotDelzant) as info:
        build_delzant(fixtures.weighted_projective())
    assert info.value.report.failed_checks() == ["vertex_unimodular"]
    # the unchecked construction still goes through
    assert build_delzant(fixtures.weighted_projective(), check=False).kernel_basis.rows == 1


@pytest.mark.parametrize("name", sorted(fixtures.ALL_DELZANT))
def test_exact_sequence(name):
    d = build_delzant(fixtures.ALL_DELZANT[name])
    assert d.kernel_basis.rows == d.N - d.n
    if d.n and d.kernel_basis.rows:
        assert not any(any(r) for r in (d.pi @ d.kernel_basis.T).row_list())
        assert all(x == 1 for x in smith_normal_form(d.kernel_basis)[0])
        assert is_primitive(d.kernel_basis)


def test_momentum_examples():
    d = build_delzant(fixtures.cp1(1))
    full, restricted = momentum(d, (HALF, HALF))
    assert full == (HALF, -HALF)
    assert restricted == (0,)
    # the vertex b = 0 of the triangle
    d2 = build_delzant(fixtures.cp2(2))
    lp = level_point_from_polytope(d2, (0, 0))
    assert momentum(d2, lp.moduli)[1] == (0,)
    with pytest.raises(InputError):
        momentum(d, (1,))
    with pytest.raises(NegativeModulus):
        momentum(d, (-1, 2))


def test_level_points():
    for k in (1, 2, 5):
        d = build_delzant(fixtures.cp1(k))
        assert level_point_from_polytope(d, (Fraction(k, 2),)).moduli == (Fraction(k, 2),) * 2
    d = build_delzant(fixtures.simplex(2))
    lp = level_point_from_polytope(d, (0, 0, 0))
    assert lp.support == (3,)
    with pytest.raises(OutsidePolytope):
        level_point_from_polytope(d, (3, 0, 0))


def _rational_sqrt(q):
    q = Fraction(q)
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    return Fraction(a, b) if a * a == q.numerator and b * b == q.denominator else None


def test_kernel_momentum_matches_quadratic_model():
    """The K momentum of the weight model agrees with kernel_basis @ (m + lambda)."""
    d = build_delzant(fixtures.cp2(3))
    rep = kernel_weight_rep(d)
    # points whose moduli m_i have 2 m_i a rational square, so z_i = sqrt(2 m_i) is exact
    for b in [(HALF, HALF), (HALF, 2), (2, HALF), (Fraction(1, 8), Fraction(1, 8))]:
        lp = level_point_from_polytope(d, b)
        xs = [_rational_sqrt(2 * m) for m in lp.moduli]
        if b != (Fraction(1, 8), Fraction(1, 8)):
            assert None not in xs
        if None in xs:
            continue
        v = xs + [0] * d.N
        assert momentum_components(rep, v) == momentum(d, lp.moduli)[1] == (0,)
    # off the level set the two still agree
    off = [_rational_sqrt(2 * m) for m in (2, HALF, 2)]
    assert momentum_components(rep, off + [0] * 3) == momentum(d, (2, HALF, 2))[1] == (Fraction(3, 2),)


def test_freeness_examples():
    assert freeness_certificate(build_delzant(fixtures.cp2(1))).passed
    assert freeness_certificate(build_delzant(fixtures.point())).passed
    bad = freeness_certificate(build_delzant(fixtures.weighted_projective(), check=False))
    assert not bad.passed
    fails = bad.failures()
    assert len(fails) == 1
    active, factors = fails[0]
    assert active == (0, 2) and factors == (2,)


@pytest.mark.parametrize("name", sorted(fixtures.ALL_DELZANT) + ["wp"])
def test_freeness_iff_vertex_unimodular(name):
    p = fixtures.ALL_DELZANT.get(name) or fixtures.weighted_projective()
    d = build_delzant(p, check=False)
    assert freeness_certificate(d).passed == verify_delzant(p).vertex_unimodular


def test_roundtrip_examples():
    d = build_delzant(fixtures.cp1(2))
    assert moment_roundtrip_check(d, points=[(0,), (1,), (2,), (HALF,)])
    d3 = build_delzant(fixtures.cp2(3))
    assert len(face_lattice(d3.polytope).faces) == 7
    assert moment_roundtrip_check(d3, points=[f.witness for f in face_lattice(d3.polytope).faces])


@pytest.mark.parametrize("name", sorted(fixtures.ALL_DELZANT))
def test_roundtrip_and_support_bookkeeping(name):
    d = build_delzant(fixtures.ALL_DELZANT[name])
    assert moment_roundtrip_check(d, samples=15)
    for f in face_lattice(d.polytope).faces:
        lp = level_point_from_polytope(d, f.witness)
        assert set(lp.support) == set(range(d.N)) - set(f.active_set)
        # a generic point over the face: stratum of dimension 2(n - |I|)
        assert f.dim == d.n - len(f.active_set)
        assert recover_point(d, momentum(d, lp.moduli)[0]) == tuple(f.witness)
