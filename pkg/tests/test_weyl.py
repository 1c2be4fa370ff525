import random
import warnings
from fractions import Fraction

import pytest

from weylkit import catalog, lie
from weylkit.errors import CentralField, NotInSnpSpace, ZeroField
from weylkit.metric import (InnerProduct, MetricLieAlgebra, levi_civita,
                            sectional_curvature)
from weylkit.weyl import (check_w2, snp_space, stretch_scan, verify_structure,
                          weyl_connection, weyl_sectional_exact)

from helpers import random_metric_algebra

F = Fraction


def standard(alg):
    return MetricLieAlgebra(algebra=alg,
                            metric=InnerProduct.standard(alg.dim))


def test_weyl_connection_abelian_formula():
    # on an abelian algebra the whole connection comes from the field
    m = standard(lie.abelian(3))
    e = [F(1), F(0), F(2)]
    conn = weyl_connection(m, e)
    for i in range(3):
        for j in range(3):
            expected = [F(0)] * 3
            if i == j:
                expected = list(e)
            expected[i] -= e[j]
            expected[j] -= e[i]
            assert list(conn.gamma[i][j]) == expected
    assert conn.field == (F(1), F(0), F(2))


def test_weyl_zero_field_reduces_to_levi_civita():
    rng = random.Random(2)
    for _ in range(5):
        m = random_metric_algebra(rng)
        lc = levi_civita(m)
        wc = weyl_connection(m, [F(0)] * m.dim)
        assert wc.gamma == lc.gamma
        x = m.algebra.basis_vector(0)
        y = m.algebra.basis_vector(m.dim - 1)
        if m.dim > 1:
            assert weyl_sectional_exact(m, wc, x, y) == \
                sectional_curvature(m, lc, x, y)


def test_check_w2():
    with pytest.raises(ZeroField):
        check_w2(standard(lie.abelian(2)), [F(0), F(0)])
    m = catalog.build("nil_x_r", {"b11": F(1)})
    assert check_w2(m, m.algebra.basis_vector(1))
    s = catalog.build("sol3_x_r", {"b12": F(0), "b13": F(0), "b23": F(0),
                                   "b44": F(1)})
    # ad of the expanding direction is symmetric, not skew
    assert not check_w2(s, s.algebra.basis_vector(3))


def test_snp_space_nil_x_r():
    m = catalog.build("nil_x_r", {"b11": F(2)})
    rep = snp_space(m)
    assert rep.solution_space.dim == 1
    assert rep.solution_space.contains_vector([F(0), F(1), F(0), F(0)])
    assert rep.is_central_only
    assert rep.parallel_verified
    assert rep.w2_verified
    assert rep.unimodular


def test_snp_space_rotation_field_not_central():
    m = catalog.build("nil_rtimes_s1", {"b11": F(1), "b12": F(0),
                                        "b44": F(1)}, form=2)
    rep = snp_space(m)
    assert rep.solution_space.dim == 1
    assert rep.solution_space.contains_vector([F(0), F(0), F(0), F(1)])
    assert not rep.is_central_only


def test_snp_space_warns_on_non_unimodular():
    aff = lie.LieAlgebra.from_brackets(2, {(0, 1): {1: F(1)}})
    with pytest.warns(UserWarning):
        rep = snp_space(standard(aff))
    assert not rep.unimodular


def test_snp_space_with_sampling():
    m = catalog.build("nil_x_r", {"b11": F(1)})
    rep = snp_space(m, w1_samples=50, seed=3)
    assert rep.w1_max_sampled is not None
    assert rep.w1_max_sampled <= 1e-9


def test_verify_structure_pass():
    m = catalog.build("nil_rtimes_s1", {"b11": F(1), "b12": F(0),
                                        "b44": F(1)}, form=2)
    rep = verify_structure(m, [F(0), F(0), F(0), F(1)])
    assert rep.ideal_ok
    assert rep.solvable_ok
    assert rep.unimodular_ok
    assert rep.skew_ok
    assert rep.derived_match_ok
    assert rep.ok


def test_verify_structure_rejections():
    m = catalog.build("nil_x_r", {"b11": F(1)})
    with pytest.raises(CentralField):
        verify_structure(m, m.algebra.basis_vector(1))
    s = catalog.build("sol3_x_r", {"b12": F(1), "b13": F(0), "b23": F(0),
                                   "b44": F(1)})
    # e1 is central here, so the central rejection wins; e4 acts
    # non-trivially and is the witness for the membership rejection
    with pytest.raises(CentralField):
        verify_structure(s, s.algebra.basis_vector(0))
    with pytest.raises(NotInSnpSpace):
        verify_structure(s, s.algebra.basis_vector(3))
    with pytest.raises(CentralField):
        verify_structure(s, [F(0)] * 4)


def test_stretch_scan_gamma0():
    m = catalog.build("nil_x_r", {"b11": F(1)})
    e = [F(0), F(1), F(0), F(0)]
    with pytest.raises(ZeroField):
        stretch_scan(m, [F(0)] * 4, [1])
    scan = stretch_scan(m, e, [F(1, 4), F(1, 2), 1, 10], samples=300, seed=7)
    verdicts = [entry.verdict for entry in scan.entries]
    # gamma0 = 1/2 exactly for this metric; below it the scan finds
    # positive planes, at and above it none
    assert verdicts == ["positive", "nonpositive", "nonpositive",
                        "nonpositive"]
    assert scan.gamma0_estimate == 0.5
    first = scan.entries[0]
    assert first.positive_count > 0
    assert first.max_k > 1e-9


def test_stretch_scan_reuses_planes_monotonically():
    rng = random.Random(19)
    m = catalog.build("sol3_x_r", {"b12": F(0), "b13": F(0), "b23": F(0),
                                   "b44": F(1)})
    scan = stretch_scan(m, [F(1), F(0), F(0), F(0)],
                        [F(1, 2), 1, 2, 10], samples=200,
                        seed=rng.randrange(1000))
    seen_nonpositive = False
    for entry in scan.entries:
        if entry.verdict == "nonpositive":
            seen_nonpositive = True
        else:
            assert not seen_nonpositive, "verdicts must be monotone in gamma"
