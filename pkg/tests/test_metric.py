import random
from fractions import Fraction

import pytest

from weylkit import catalog, lie
from weylkit.constructors import heisenberg, standard_symplectic
from weylkit.errors import (DegeneratePlane, InexactSqrt,
                            NotPositiveDefinite)
from weylkit.metric import (InnerProduct, MetricLieAlgebra,
                            covariant_derivative, curvature_components,
                            is_parallel, levi_civita, orthonormalize,
                            plane_gram_det, sectional_curvature)

from helpers import random_metric_algebra

F = Fraction


def standard(alg):
    return MetricLieAlgebra(algebra=alg,
                            metric=InnerProduct.standard(alg.dim))


def sol3_x_r():
    # [e4,e2] = e2, [e4,e3] = -e3, e1 spans the flat factor
    return standard(lie.LieAlgebra.from_brackets(
        4, {(3, 1): {1: F(1)}, (3, 2): {2: F(-1)}}))


def test_inner_product_validation():
    with pytest.raises(NotPositiveDefinite):
        InnerProduct.from_rows([[F(1), F(2)], [F(3), F(1)]])
    with pytest.raises(NotPositiveDefinite):
        InnerProduct.from_rows([[F(1), F(2)], [F(2), F(1)]])
    with pytest.raises(ValueError):
        InnerProduct.from_rows([[F(1), F(0)]])
    g = InnerProduct.from_rows([[F(2), F(1)], [F(1), F(2)]])
    assert g.inner([F(1), F(0)], [F(0), F(1)]) == F(1)
    assert g.norm2([F(1), F(-1)]) == F(2)


def test_levi_civita_heisenberg_oracle():
    m = standard(heisenberg(standard_symplectic(2)))
    conn = levi_civita(m)
    # the z-generator twists the plane by half a unit
    assert m.inner(conn.gamma[0][1], m.algebra.basis_vector(2)) == F(1, 2)
    assert list(conn.gamma[0][2]) == [F(0), F(-1, 2), F(0)]


def test_levi_civita_solvable_oracle():
    m = sol3_x_r()
    conn = levi_civita(m)
    assert m.inner(conn.gamma[1][1], m.algebra.basis_vector(3)) == F(1)
    e2, e3, e4 = (m.algebra.basis_vector(i) for i in (1, 2, 3))
    assert sectional_curvature(m, conn, e2, e4) == F(-1)
    assert sectional_curvature(m, conn, e2, e3) == F(1)


def test_torsion_free_on_random_instances():
    rng = random.Random(5)
    for _ in range(10):
        m = random_metric_algebra(rng)
        conn = levi_civita(m)
        n = m.dim
        for i in range(n):
            for j in range(i + 1, n):
                ei = m.algebra.basis_vector(i)
                ej = m.algebra.basis_vector(j)
                diff = [a - b for a, b in
                        zip(conn.gamma[i][j], conn.gamma[j][i])]
                assert diff == lie.bracket(m.algebra, ei, ej)


def test_covariant_derivative_bilinearity():
    m = sol3_x_r()
    conn = levi_civita(m)
    x = [F(1), F(2), F(0), F(1)]
    y = [F(0), F(1), F(1), F(0)]
    two_x = [2 * v for v in x]
    assert covariant_derivative(conn, two_x, y) == \
        [2 * v for v in covariant_derivative(conn, x, y)]


def test_curvature_abelian_is_flat():
    m = standard(lie.abelian(4))
    conn = levi_civita(m)
    comps = curvature_components(m, conn)
    for plane in comps:
        for row in plane:
            for vec in row:
                assert not any(vec)


def test_sectional_degenerate_plane():
    m = standard(lie.abelian(3))
    conn = levi_civita(m)
    x = [F(1), F(1), F(0)]
    assert plane_gram_det(m, x, [2 * v for v in x]) == F(0)
    with pytest.raises(DegeneratePlane):
        sectional_curvature(m, conn, x, [2 * v for v in x])


def test_is_parallel():
    flat = standard(lie.abelian(3))
    assert is_parallel(flat, [F(1), F(2), F(3)])
    m = standard(heisenberg(standard_symplectic(2)))
    assert not is_parallel(m, m.algebra.basis_vector(2))


def test_orthonormalize_recovers_milnor_frame():
    params = {"b11": F(2)}
    m = catalog.build("nil_x_r", params)
    frame = orthonormalize(m)
    assert frame.mode == "exact"
    # [X3, X4] = (1/b11) X1 in the orthonormal frame
    assert frame.constants[2][3][0] == F(1, 2)
    # structure constants of an orthonormal frame are antisymmetric in i,j
    n = m.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert frame.constants[i][j][k] == -frame.constants[j][i][k]


def test_orthonormalize_inexact_falls_back_to_float():
    m = MetricLieAlgebra(algebra=lie.abelian(1),
                         metric=InnerProduct.from_rows([[F(2)]]))
    with pytest.raises(InexactSqrt):
        orthonormalize(m)
    frame = orthonormalize(m, mode="float")
    assert frame.mode == "float"
    assert abs(frame.matrix[0][0] - 2 ** -0.5) < 1e-12
