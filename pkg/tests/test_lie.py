import random
from fractions import Fraction

import pytest

from weylkit import lie, linalg
from weylkit.constructors import heisenberg, standard_symplectic
from weylkit.errors import NonCommutingImages, NotADerivation

from helpers import random_algebra, random_invertible

F = Fraction

H3 = heisenberg(standard_symplectic(2))


def sol3_x_r():
    # [e4,e2] = e2, [e4,e3] = -e3, e1 central
    return lie.LieAlgebra.from_brackets(4, {(3, 1): {1: F(1)},
                                            (3, 2): {2: F(-1)}})


def test_from_brackets_antisymmetry_fill():
    alg = lie.LieAlgebra.from_brackets(3, {(0, 1): {2: F(2)}})
    assert alg.c[0][1][2] == F(2)
    assert alg.c[1][0][2] == F(-2)
    assert lie.bracket(alg, alg.basis_vector(1), alg.basis_vector(0)) == \
        [F(0), F(0), F(-2)]


def test_bracket_is_bilinear():
    x = [F(1), F(2), F(0)]
    y = [F(0), F(1), F(3)]
    lhs = lie.bracket(H3, [2 * v for v in x], y)
    rhs = [2 * v for v in lie.bracket(H3, x, y)]
    assert lhs == rhs


def test_validate_accepts_known_algebras():
    assert lie.validate(lie.abelian(5)).ok
    assert lie.validate(H3).ok
    assert lie.validate(sol3_x_r()).ok


def test_validate_reports_jacobi_violation():
    # [e1,e2]=e3, [e1,e3]=e1 fails Jacobi on (e1,e2,e3)
    bad = lie.LieAlgebra.from_brackets(3, {(0, 1): {2: F(1)},
                                           (0, 2): {0: F(1)}})
    report = lie.validate(bad)
    assert not report.ok
    assert report.antisymmetry_ok
    assert not report.jacobi_ok
    assert report.first_violation == (0, 1, 2)


def test_ad_matrix_columns_are_brackets():
    x = [F(1), F(1), F(0)]
    m = lie.ad_matrix(H3, x)
    for j in range(3):
        col = [m[i][j] for i in range(3)]
        assert col == lie.bracket(H3, x, H3.basis_vector(j))


def test_series_and_flags_heisenberg():
    assert lie.is_nilpotent(H3)
    assert lie.is_solvable(H3)
    assert lie.nilpotency_class(H3) == 2
    assert [s.dim for s in lie.lower_central_series(H3)] == [3, 1, 0]
    assert [s.dim for s in lie.derived_series(H3)] == [3, 1, 0]
    assert lie.center(H3).basis == ((F(0), F(0), F(1)),)
    assert lie.vergne_type(H3) == (2, 1)


def test_series_and_flags_solvable():
    s = sol3_x_r()
    assert lie.is_solvable(s)
    assert not lie.is_nilpotent(s)
    assert lie.is_unimodular(s)
    assert [x.dim for x in lie.derived_series(s)] == [4, 2, 0]
    assert lie.center(s).dim == 1


def test_not_unimodular():
    aff = lie.LieAlgebra.from_brackets(2, {(0, 1): {1: F(1)}})
    assert not lie.is_unimodular(aff)
    assert lie.is_solvable(aff)


def test_metabelian_signature():
    assert lie.metabelian_signature(H3) == (2, 1)
    # sol3_x_r is solvable but not metabelian-nilpotent in the two-step sense
    filiform = lie.LieAlgebra.from_brackets(
        4, {(0, 1): {2: F(1)}, (0, 2): {3: F(1)}})
    assert lie.metabelian_signature(filiform) is None


def test_semidirect_sum_layout():
    rot = [[F(0), F(-1), F(0)], [F(1), F(0), F(0)], [F(0), F(0), F(0)]]
    ext = lie.semidirect_sum(lie.abelian(1), H3, [rot])
    assert ext.dim == 4
    # base first, acting direction last
    assert lie.bracket(ext, ext.basis_vector(3), ext.basis_vector(0)) == \
        [F(0), F(1), F(0), F(0)]
    assert lie.validate(ext).ok


def test_semidirect_sum_rejections():
    with pytest.raises(ValueError):
        lie.semidirect_sum(H3, lie.abelian(1), [[[F(0)]]])
    scale = [[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(0), F(0), F(1)]]
    with pytest.raises(NotADerivation) as exc:
        lie.semidirect_sum(lie.abelian(1), H3, [scale])
    assert exc.value.witness == (0, 0, 1)
    rot = [[F(0), F(-1), F(0)], [F(1), F(0), F(0)], [F(0), F(0), F(0)]]
    shear = [[F(0), F(0), F(0)], [F(1), F(0), F(0)], [F(0), F(0), F(0)]]
    with pytest.raises(NonCommutingImages):
        lie.semidirect_sum(lie.abelian(2), H3, [rot, shear])


def test_transform_preserves_invariants():
    rng = random.Random(11)
    for _ in range(15):
        alg = random_algebra(rng)
        p = random_invertible(rng, alg.dim)
        moved = lie.transform(alg, p)
        assert lie.validate(moved).ok
        assert lie.is_nilpotent(moved) == lie.is_nilpotent(alg)
        assert lie.is_solvable(moved) == lie.is_solvable(alg)
        assert lie.is_unimodular(moved) == lie.is_unimodular(alg)
        assert lie.center(moved).dim == lie.center(alg).dim
        assert [s.dim for s in lie.lower_central_series(moved)] == \
            [s.dim for s in lie.lower_central_series(alg)]


def test_subspace_bracket():
    full = linalg.Subspace.full(3)
    derived = lie.subspace_bracket(H3, full, full)
    assert derived.dim == 1
    assert derived.contains_vector([F(0), F(0), F(5)])
