import random
from fractions import Fraction

import pytest

from weylkit import catalog, lie, linalg
from weylkit.catalog import (build, deterministic_draws, expected_snp,
                             families, family_def, milnor_matrix,
                             random_params, verify_classification,
                             _perturbed_algebra)
from weylkit.errors import InadmissibleParams

F = Fraction

ALL_FAMILIES = ("r4", "nil_x_r", "nil4", "sol4_mn", "sol3_x_r", "sol4_0",
                "sol4_0_prime", "sol4_mu", "isom_r2_x_r", "sol4_1",
                "nil_rtimes_s1")


def test_family_registry():
    assert families() == ALL_FAMILIES
    for fid in families():
        fdef = family_def(fid)
        assert fdef.fid == fid
        assert fdef.forms()
    assert family_def("nil_rtimes_s1").forms() == (1, 2)
    with pytest.raises(KeyError):
        family_def("nope")


def test_build_validates_algebra_and_metric():
    rng = random.Random(0)
    for fid in families():
        for form in family_def(fid).forms():
            params = random_params(fid, rng, form=form)
            m = build(fid, params, form=form)
            assert lie.validate(m.algebra).ok
            assert lie.is_unimodular(m.algebra)
            assert m.dim == 4
            b = milnor_matrix(fid, params, form=form)
            # the frame columns are orthonormal for the built metric
            for a in range(4):
                for c in range(4):
                    xa = [b[r][a] for r in range(4)]
                    xc = [b[r][c] for r in range(4)]
                    want = F(1) if a == c else F(0)
                    assert m.inner(xa, xc) == want


def test_param_checking():
    with pytest.raises(InadmissibleParams) as exc:
        build("nil_x_r", {})
    assert any("b11" in v for v in exc.value.violations)
    with pytest.raises(InadmissibleParams):
        build("nil_x_r", {"b11": F(1), "b99": F(1)})
    with pytest.raises(InadmissibleParams):
        build("nil_x_r", {"b11": F(0)})
    with pytest.raises(InadmissibleParams):
        build("sol4_mn", {"lam": F(1), "b12": F(0), "b13": F(0),
                          "b23": F(0), "b44": F(1)})
    with pytest.raises(InadmissibleParams):
        build("isom_r2_x_r", {"b22": F(1), "b13": F(0), "b23": F(0),
                              "b44": F(1)})
    with pytest.raises(InadmissibleParams):
        build("nil_x_r", {"b11": F(1)}, form=2)
    # signed pair constraint on the first rotation form
    with pytest.raises(InadmissibleParams):
        build("nil_rtimes_s1", {"b11": F(1), "b12": F(1), "b13": F(-1),
                                "b33": F(1, 2), "b44": F(1)})


def test_expected_snp_rules():
    full = expected_snp("r4")
    assert full.space.dim == 4
    line = expected_snp("nil_x_r", {"b11": F(7)})
    assert line.space.basis == ((F(0), F(1), F(0), F(0)),)
    assert expected_snp("sol3_x_r", {"b12": F(0), "b13": F(0), "b23": F(1),
                                     "b44": F(1)}).space.dim == 1
    assert expected_snp("sol3_x_r", {"b12": F(1), "b13": F(0), "b23": F(0),
                                     "b44": F(1)}).space.dim == 0
    assert expected_snp("isom_r2_x_r", {"b13": F(0), "b23": F(0),
                                        "b22": F(1, 2),
                                        "b44": F(1)}).space.dim == 1
    assert expected_snp("isom_r2_x_r", {"b13": F(1), "b23": F(0),
                                        "b22": F(1, 2),
                                        "b44": F(1)}).space.dim == 0
    assert expected_snp("nil_rtimes_s1", {"b11": F(1), "b12": F(0),
                                          "b44": F(1)}, form=2).space.dim == 1
    assert expected_snp("nil_rtimes_s1", {"b11": F(1), "b12": F(2),
                                          "b44": F(1)}, form=2).space.dim == 0
    for fid in ("nil4", "sol4_0", "sol4_0_prime", "sol4_1"):
        rng = random.Random(4)
        assert expected_snp(fid, random_params(fid, rng)).space.dim == 0
    # the two inferred-answer families carry the flag
    assert expected_snp("sol4_mn", {"lam": F(2), "b12": F(0), "b13": F(0),
                                    "b23": F(0), "b44": F(1)}).inferred
    assert not expected_snp("nil_x_r", {"b11": F(1)}).inferred


def test_deterministic_draws_cover_boundaries():
    draws = dict(deterministic_draws("sol3_x_r", 1))
    assert draws["canonical"]["b12"] == F(0)
    assert draws["canonical"]["b13"] == F(0)
    assert "generic" in draws
    assert "boundary_except_b12" in draws
    assert "boundary_except_b13" in draws
    d2 = dict(deterministic_draws("nil_rtimes_s1", 2))
    assert d2["canonical"]["b12"] == F(0)
    d3 = dict(deterministic_draws("sol4_mn", 1))
    assert any(v.get("lam") == F(21, 20) for v in d3.values())


def test_random_params_admissible_everywhere():
    rng = random.Random(123)
    for fid in families():
        for form in family_def(fid).forms():
            for _ in range(25):
                params = random_params(fid, rng, form=form)
                build(fid, params, form=form)  # must not raise


def test_sweep_zero_mismatches_small():
    rep = verify_classification(trials=3, seed=11)
    assert rep.ok
    assert rep.mismatch_count == 0
    fams = {(e.family, e.form) for e in rep.entries}
    for fid in families():
        for form in family_def(fid).forms():
            assert (fid, form) in fams
    for entry in rep.entries:
        assert entry.valid
        assert entry.match
        if entry.computed_dim:
            assert entry.parallel_ok
            assert entry.w2_ok


def test_sweep_is_deterministic():
    a = verify_classification(trials=2, seed=5)
    b = verify_classification(trials=2, seed=5)
    assert a.entries == b.entries
    c = verify_classification(trials=2, seed=6)
    assert c.entries != a.entries


def test_negative_control_detects_perturbation():
    rep = verify_classification(trials=2, seed=0,
                                perturb_family="nil_rtimes_s1")
    assert not rep.ok
    assert rep.mismatch_count > 0
    assert all(e.family == "nil_rtimes_s1"
               for e in rep.entries if not e.match)


def test_perturbation_needs_brackets():
    with pytest.raises(ValueError):
        _perturbed_algebra(lie.abelian(4))
    h = catalog.build("nil_x_r", {"b11": F(1)}).algebra
    flipped = _perturbed_algebra(h)
    assert flipped.c != h.c
    assert lie.validate(flipped).ok
