"""Catalog of 4-dimensional unimodular metric Lie algebras.

Each family couples a bracket table with a triangular frame ("Milnor
frame") whose columns X_1..X_4 are declared orthonormal; the inner
product on the standard basis is therefore G = (B B^T)^{-1} where B has
the frame vectors as columns.  For every admissible parameter choice the
catalog predicts the exact space of stretched-non-positive fields, and
verify_classification sweeps deterministic and random parameter draws
comparing that prediction with the computed space.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import lie, linalg
from .errors import CentralField, InadmissibleParams
from .lie import LieAlgebra
from .linalg import Mat, Subspace, frac
from .metric import InnerProduct, MetricLieAlgebra
from .weyl import snp_space, verify_structure

_POS = "pos"          # > 0
_NONNEG = "nonneg"    # >= 0
_ANY = "any"
_OPEN01 = "open01"    # 0 < x < 1
_GT1 = "gt1"          # > 1

_LABELS = ("e1", "e2", "e3", "e4")


def _alg(brackets: Dict[Tuple[int, int], Dict[int, object]]) -> LieAlgebra:
    """Bracket table with 1-based indices."""
    shifted = {(i - 1, j - 1): {k - 1: v for k, v in img.items()}
               for (i, j), img in brackets.items()}
    return LieAlgebra.from_brackets(4, shifted, labels=_LABELS)


def _cols(*columns: Sequence[Fraction]) -> Mat:
    """Matrix whose columns are the given frame vectors."""
    return [[columns[j][i] for j in range(4)] for i in range(4)]


def _e(i: int, coef: Fraction = Fraction(1)) -> List[Fraction]:
    v = linalg.zeros(4)
    v[i - 1] = coef
    return v


@dataclass(frozen=True)
class ExpectedSnp:
    space: Subspace
    description: str
    # True when the expected answer rests on a general argument (for
    # example, expansion rates with nonzero real part) rather than a
    # family-specific solution of the defining equations.
    inferred: bool = False


@dataclass(frozen=True)
class FamilyDef:
    fid: str
    name: str
    struct_params: Tuple[Tuple[str, str], ...]
    milnor: Dict[int, Tuple[Tuple[str, str], ...]]
    build_algebra: Callable[[Dict[str, Fraction]], LieAlgebra]
    frame: Callable[[Dict[str, Fraction], int], Mat]
    expected: Callable[[Dict[str, Fraction], int], ExpectedSnp]
    rule_params: Dict[int, Tuple[str, ...]] = field(default_factory=dict)
    extra_check: Optional[Callable[[Dict[str, Fraction], int], List[str]]] = None
    extra_draws: Tuple[Tuple[str, Dict[str, Fraction]], ...] = ()

    def forms(self) -> Tuple[int, ...]:
        return tuple(sorted(self.milnor))

    def param_spec(self, form: int) -> Tuple[Tuple[str, str], ...]:
        return self.struct_params + self.milnor[form]


_ZERO4 = Subspace.zero(4)


def _zero_expected(reason: str, inferred: bool = False) -> ExpectedSnp:
    return ExpectedSnp(space=_ZERO4, description=reason, inferred=inferred)


# ---------------------------------------------------------------------------
# family definitions
# ---------------------------------------------------------------------------

def _r4_def() -> FamilyDef:
    def build(params):
        return lie.abelian(4, labels=_LABELS)

    def frame(params, form):
        return linalg.identity(4)

    def expected(params, form):
        return ExpectedSnp(space=Subspace.full(4),
                           description="abelian: every field is stretched-"
                                       "non-positive")
    return FamilyDef(fid="r4", name="R4", struct_params=(),
                     milnor={1: ()}, build_algebra=build, frame=frame,
                     expected=expected)


def _nil_x_r_def() -> FamilyDef:
    def build(params):
        return _alg({(3, 4): {1: 1}})

    def frame(params, form):
        return _cols(_e(1, params["b11"]), _e(2), _e(3), _e(4))

    def expected(params, form):
        return ExpectedSnp(space=Subspace(4, [_e(2)]),
                           description="central direction complementing the "
                                       "Heisenberg factor")
    return FamilyDef(fid="nil_x_r", name="Nil3 x R", struct_params=(),
                     milnor={1: (("b11", _POS),)}, build_algebra=build,
                     frame=frame, expected=expected)


def _nil4_def() -> FamilyDef:
    def build(params):
        return _alg({(2, 4): {1: 1}, (3, 4): {2: 1}})

    def frame(params, form):
        x2 = _e(1, params["b12"])
        x2[1] = params["b22"]
        return _cols(_e(1, params["b11"]), x2, _e(3), _e(4))

    def expected(params, form):
        return _zero_expected("filiform bracket tower admits no nonzero field")
    return FamilyDef(fid="nil4", name="Nil4", struct_params=(),
                     milnor={1: (("b11", _POS), ("b12", _NONNEG),
                                 ("b22", _POS))},
                     build_algebra=build, frame=frame, expected=expected)


def _triangular_frame(params: Dict[str, Fraction]) -> Mat:
    """X1=e1, X2=b12 e1+e2, X3=b13 e1+b23 e2+e3, X4=b44 e4."""
    x2 = _e(2)
    x2[0] = params["b12"]
    x3 = _e(3)
    x3[0] = params["b13"]
    x3[1] = params["b23"]
    return _cols(_e(1), x2, x3, _e(4, params["b44"]))


def _sol4_mn_def() -> FamilyDef:
    def build(params):
        lam = params["lam"]
        return _alg({(4, 1): {1: lam}, (4, 2): {2: 1},
                     (4, 3): {3: -1 - lam}})

    def expected(params, form):
        return _zero_expected("real distinct expansion rates force the zero "
                              "field", inferred=True)
    return FamilyDef(fid="sol4_mn", name="Sol4(m,n)",
                     struct_params=(("lam", _GT1),),
                     milnor={1: (("b12", _NONNEG), ("b13", _ANY),
                                 ("b23", _NONNEG), ("b44", _POS))},
                     build_algebra=build,
                     frame=lambda p, f: _triangular_frame(p),
                     expected=expected,
                     extra_draws=(("near_boundary",
                                   {"lam": Fraction(21, 20),
                                    "b12": Fraction(0), "b13": Fraction(0),
                                    "b23": Fraction(0), "b44": Fraction(1)}),))


def _sol3_x_r_def() -> FamilyDef:
    def build(params):
        return _alg({(4, 2): {2: 1}, (4, 3): {3: -1}})

    def expected(params, form):
        if params["b12"] == 0 and params["b13"] == 0:
            return ExpectedSnp(space=Subspace(4, [_e(1)]),
                               description="flat direction orthogonal to the "
                                           "hyperbolic-plane factor")
        return _zero_expected("off the aligned frame the flat direction "
                              "leaves the orthogonal complement of the "
                              "derived algebra")
    return FamilyDef(fid="sol3_x_r", name="Sol3 x R", struct_params=(),
                     milnor={1: (("b12", _NONNEG), ("b13", _ANY),
                                 ("b23", _NONNEG), ("b44", _POS))},
                     build_algebra=build,
                     frame=lambda p, f: _triangular_frame(p),
                     expected=expected,
                     rule_params={1: ("b12", "b13")})


def _sol4_0_def() -> FamilyDef:
    def build(params):
        return _alg({(4, 1): {1: 1}, (4, 2): {2: 1}, (4, 3): {3: -2}})

    def frame(params, form):
        x3 = _e(3)
        x3[0] = params["b13"]
        return _cols(_e(1), _e(2), x3, _e(4, params["b44"]))

    def expected(params, form):
        return _zero_expected("nonzero real expansion rates force the zero "
                              "field")
    return FamilyDef(fid="sol4_0", name="Sol4(0)", struct_params=(),
                     milnor={1: (("b13", _NONNEG), ("b44", _POS))},
                     build_algebra=build, frame=frame, expected=expected)


def _sol4_0p_def() -> FamilyDef:
    def build(params):
        return _alg({(4, 1): {1: 1}, (4, 2): {1: 1, 2: 1},
                     (4, 3): {3: -2}})

    def frame(params, form):
        x2 = _e(2, params["b22"])
        x3 = _e(3)
        x3[0] = params["b13"]
        x3[1] = params["b23"]
        return _cols(_e(1), x2, x3, _e(4, params["b44"]))

    def expected(params, form):
        return _zero_expected("nonzero real expansion rates force the zero "
                              "field")
    return FamilyDef(fid="sol4_0_prime", name="Sol4(0)'", struct_params=(),
                     milnor={1: (("b13", _NONNEG), ("b22", _POS),
                                 ("b23", _ANY), ("b44", _POS))},
                     build_algebra=build, frame=frame, expected=expected)


def _sol4_mu_def() -> FamilyDef:
    def build(params):
        mu = params["mu"]
        return _alg({(4, 1): {1: mu, 2: -1}, (4, 2): {1: 1, 2: mu},
                     (4, 3): {3: -2 * mu}})

    def expected(params, form):
        return _zero_expected("spiral expansion rates have nonzero real part, "
                              "forcing the zero field", inferred=True)
    return FamilyDef(fid="sol4_mu", name="Sol4(mu)",
                     struct_params=(("mu", _POS),),
                     milnor={1: (("b12", _NONNEG), ("b13", _ANY),
                                 ("b23", _NONNEG), ("b44", _POS))},
                     build_algebra=build,
                     frame=lambda p, f: _triangular_frame(p),
                     expected=expected)


def _isom_r2_x_r_def() -> FamilyDef:
    def build(params):
        return _alg({(4, 1): {2: -1}, (4, 2): {1: 1}})

    def frame(params, form):
        x2 = _e(2, params["b22"])
        x3 = _e(3)
        x3[0] = params["b13"]
        x3[1] = params["b23"]
        return _cols(_e(1), x2, x3, _e(4, params["b44"]))

    def expected(params, form):
        if params["b13"] == 0 and params["b23"] == 0:
            return ExpectedSnp(space=Subspace(4, [_e(3)]),
                               description="central direction orthogonal to "
                                           "the rotated plane")
        return _zero_expected("off the aligned frame the central direction "
                              "leaves the orthogonal complement of the "
                              "derived algebra")
    return FamilyDef(fid="isom_r2_x_r", name="Isom(R2) x R", struct_params=(),
                     milnor={1: (("b13", _NONNEG), ("b22", _OPEN01),
                                 ("b23", _NONNEG), ("b44", _POS))},
                     build_algebra=build, frame=frame, expected=expected,
                     rule_params={1: ("b13", "b23")})


def _sol4_1_def() -> FamilyDef:
    def build(params):
        return _alg({(2, 3): {1: 1}, (4, 2): {2: 1}, (4, 3): {3: -1}})

    def frame(params, form):
        x1 = _e(1, params["b11"])
        x2 = _e(2)
        x2[0] = params["b12"]
        x3 = _e(3)
        x3[0] = params["b13"]
        x3[1] = params["b23"]
        return _cols(x1, x2, x3, _e(4, params["b44"]))

    def expected(params, form):
        return _zero_expected("mixed nilpotent and expanding directions "
                              "force the zero field")
    return FamilyDef(fid="sol4_1", name="Sol4(1)", struct_params=(),
                     milnor={1: (("b11", _POS), ("b12", _NONNEG),
                                 ("b13", _ANY), ("b23", _NONNEG),
                                 ("b44", _POS))},
                     build_algebra=build, frame=frame, expected=expected)


def _nil_rtimes_s1_def() -> FamilyDef:
    def build(params):
        return _alg({(2, 3): {1: 1}, (4, 2): {3: -1}, (4, 3): {2: 1}})

    def frame(params, form):
        x1 = _e(1, params["b11"])
        x2 = _e(2)
        x2[0] = params["b12"]
        if form == 1:
            x3 = _e(3, params["b33"])
            x3[0] = params["b13"]
        else:
            x3 = _e(3)
        return _cols(x1, x2, x3, _e(4, params["b44"]))

    def expected(params, form):
        if form == 2 and params["b12"] == 0:
            return ExpectedSnp(space=Subspace(4, [_e(4)]),
                               description="rotation direction acting skewly "
                                           "on the Heisenberg ideal")
        if form == 1:
            return _zero_expected("unequal weights on the rotated plane "
                                  "break skewness")
        return _zero_expected("off the aligned frame the rotation direction "
                              "leaves the orthogonal complement of the "
                              "derived algebra")

    def extra(params, form):
        if form == 1 and params["b12"] * params["b13"] < 0:
            return ["b12*b13 must be nonnegative"]
        return []
    return FamilyDef(fid="nil_rtimes_s1", name="Nil3 rtimes S1",
                     struct_params=(),
                     milnor={1: (("b11", _POS), ("b12", _ANY), ("b13", _ANY),
                                 ("b33", _OPEN01), ("b44", _POS)),
                             2: (("b11", _POS), ("b12", _NONNEG),
                                 ("b44", _POS))},
                     build_algebra=build, frame=frame, expected=expected,
                     rule_params={2: ("b12",)}, extra_check=extra)


_REGISTRY: Dict[str, FamilyDef] = {}
for _f in (_r4_def(), _nil_x_r_def(), _nil4_def(), _sol4_mn_def(),
           _sol3_x_r_def(), _sol4_0_def(), _sol4_0p_def(), _sol4_mu_def(),
           _isom_r2_x_r_def(), _sol4_1_def(), _nil_rtimes_s1_def()):
    _REGISTRY[_f.fid] = _f


def families() -> Tuple[str, ...]:
    return tuple(_REGISTRY)


def family_def(fid: str) -> FamilyDef:
    if fid not in _REGISTRY:
        raise KeyError(f"unknown family {fid!r}; known: {', '.join(_REGISTRY)}")
    return _REGISTRY[fid]


# ---------------------------------------------------------------------------
# building instances
# ---------------------------------------------------------------------------

def _check_params(fdef: FamilyDef, params: Dict[str, Fraction],
                  form: int) -> Dict[str, Fraction]:
    if form not in fdef.milnor:
        raise InadmissibleParams(
            f"family {fdef.fid!r} has no form {form}", [f"form={form}"])
    spec = fdef.param_spec(form)
    names = [n for n, _ in spec]
    clean = {k: frac(v) for k, v in params.items()}
    violations = []
    for n in names:
        if n not in clean:
            violations.append(f"missing parameter {n}")
    for k in clean:
        if k not in names:
            violations.append(f"unexpected parameter {k}")
    if not violations:
        for n, kind in spec:
            v = clean[n]
            if kind == _POS and not v > 0:
                violations.append(f"{n} must be positive")
            elif kind == _NONNEG and not v >= 0:
                violations.append(f"{n} must be nonnegative")
            elif kind == _OPEN01 and not (0 < v < 1):
                violations.append(f"{n} must lie strictly between 0 and 1")
            elif kind == _GT1 and not v > 1:
                violations.append(f"{n} must exceed 1")
        if fdef.extra_check is not None:
            violations.extend(fdef.extra_check(clean, form))
    if violations:
        raise InadmissibleParams(
            f"inadmissible parameters for family {fdef.fid!r}", violations)
    return clean


def milnor_matrix(fid: str, params: Dict[str, Fraction], form: int = 1) -> Mat:
    fdef = family_def(fid)
    clean = _check_params(fdef, params, form)
    return fdef.frame(clean, form)


def build(fid: str, params: Optional[Dict[str, Fraction]] = None,
          form: int = 1) -> MetricLieAlgebra:
    fdef = family_def(fid)
    clean = _check_params(fdef, params or {}, form)
    algebra = fdef.build_algebra(clean)
    b = fdef.frame(clean, form)
    bbt = linalg.mat_mul(b, linalg.transpose(b))
    gram = linalg.inverse(bbt)
    return MetricLieAlgebra(algebra=algebra,
                            metric=InnerProduct.from_rows(gram))


def expected_snp(fid: str, params: Optional[Dict[str, Fraction]] = None,
                 form: int = 1) -> ExpectedSnp:
    fdef = family_def(fid)
    clean = _check_params(fdef, params or {}, form)
    return fdef.expected(clean, form)


# ---------------------------------------------------------------------------
# parameter draws
# ---------------------------------------------------------------------------

def _band(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    den = rng.randint(8, 16)
    num_lo = -(-(lo.numerator * den) // lo.denominator)  # ceil
    num_hi = (hi.numerator * den) // hi.denominator
    return Fraction(rng.randint(num_lo, num_hi), den)


def _draw_kind(rng: random.Random, kind: str) -> Fraction:
    # The stretch grid of the sectional-curvature scan starts at
    # gamma = 1, and the first nonpositive stretch scales with frame
    # coefficients (directly or inversely, by family, and
    # multiplicatively across shears), so random draws keep to a
    # normalized band around 1: diagonal scales in [1/2, 3/4], shears
    # in [1/4, 1/2].
    if kind == _POS:
        return _band(rng, Fraction(1, 2), Fraction(3, 4))
    if kind == _NONNEG:
        if rng.random() < 0.15:
            return Fraction(0)
        return _band(rng, Fraction(1, 4), Fraction(1, 2))
    if kind == _ANY:
        if rng.random() < 0.15:
            return Fraction(0)
        sign = 1 if rng.random() < 0.5 else -1
        return sign * _band(rng, Fraction(1, 4), Fraction(1, 2))
    if kind == _OPEN01:
        # at least 3/4: small values push the first nonpositive stretch
        # of the plane-isometry family past 1
        num = rng.randint(3, 15)
        return Fraction(num, num + 1)
    if kind == _GT1:
        return 1 + _band(rng, Fraction(1, 2), Fraction(3, 4))
    raise ValueError(f"unknown parameter kind {kind!r}")


def random_params(fid: str, rng: random.Random,
                  form: int = 1) -> Dict[str, Fraction]:
    fdef = family_def(fid)
    if form not in fdef.milnor:
        raise InadmissibleParams(
            f"family {fid!r} has no form {form}", [f"form={form}"])
    params = {name: _draw_kind(rng, kind)
              for name, kind in fdef.param_spec(form)}
    if fdef.fid == "nil_rtimes_s1" and form == 1:
        # keep the signed pair on one side: b12 * b13 >= 0
        sign = 1 if rng.random() < 0.5 else -1
        params["b12"] = sign * abs(params["b12"])
        params["b13"] = sign * abs(params["b13"])
    return params


_CANONICAL = {_POS: Fraction(1), _NONNEG: Fraction(0), _ANY: Fraction(0),
              _OPEN01: Fraction(3, 4), _GT1: Fraction(2)}
_GENERIC = {_POS: Fraction(3, 2), _NONNEG: Fraction(1), _ANY: Fraction(-1),
            _OPEN01: Fraction(1, 3), _GT1: Fraction(3)}


def _fixed_params(fdef: FamilyDef, form: int, table) -> Dict[str, Fraction]:
    return {name: table[kind] for name, kind in fdef.param_spec(form)}


def deterministic_draws(fid: str, form: int) -> List[Tuple[str, Dict[str, Fraction]]]:
    """Canonical (boundary), generic, and single-parameter partial-boundary
    draws, plus any family-specific extras."""
    fdef = family_def(fid)
    draws = [("canonical", _fixed_params(fdef, form, _CANONICAL)),
             ("generic", _fixed_params(fdef, form, _GENERIC))]
    for name in fdef.rule_params.get(form, ()):
        params = _fixed_params(fdef, form, _CANONICAL)
        kind = dict(fdef.param_spec(form))[name]
        params[name] = _GENERIC[kind]
        draws.append((f"boundary_except_{name}", params))
    for label, params in fdef.extra_draws:
        draws.append((label, dict(params)))
    return draws


# ---------------------------------------------------------------------------
# the classification sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepEntry:
    family: str
    form: int
    kind: str
    params: Tuple[Tuple[str, str], ...]  # (name, value as str), sorted
    expected_dim: int
    computed_dim: Optional[int]
    match: bool
    valid: bool
    central_only: Optional[bool]
    parallel_ok: Optional[bool]
    w2_ok: Optional[bool]
    structure_ok: Optional[bool]


@dataclass(frozen=True)
class SweepReport:
    trials: int
    seed: int
    perturb_family: Optional[str]
    entries: Tuple[SweepEntry, ...]

    @property
    def mismatch_count(self) -> int:
        return sum(1 for e in self.entries if not e.match)

    @property
    def ok(self) -> bool:
        return self.mismatch_count == 0


def _perturbed_algebra(algebra: LieAlgebra) -> LieAlgebra:
    """Negate the last bracket pair in the table: a deliberate error for
    negative-control sweeps."""
    target = None
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            if any(algebra.c[i][j]):
                target = (i, j)
    if target is None:
        raise ValueError("family has no bracket to perturb")
    i, j = target
    c = [[list(col) for col in row] for row in algebra.c]
    c[i][j] = [-v for v in c[i][j]]
    c[j][i] = [-v for v in c[j][i]]
    return LieAlgebra(dim=algebra.dim,
                      c=tuple(tuple(tuple(col) for col in row) for row in c),
                      labels=algebra.labels)


def _run_draw(fdef: FamilyDef, form: int, kind: str,
              params: Dict[str, Fraction], perturb: bool) -> SweepEntry:
    fixed = tuple(sorted((k, str(v)) for k, v in params.items()))
    expected = fdef.expected(params, form)
    m = build(fdef.fid, params, form)
    if perturb:
        m = MetricLieAlgebra(algebra=_perturbed_algebra(m.algebra),
                             metric=m.metric)
    if not lie.validate(m.algebra).ok:
        return SweepEntry(family=fdef.fid, form=form, kind=kind, params=fixed,
                          expected_dim=expected.space.dim, computed_dim=None,
                          match=False, valid=False, central_only=None,
                          parallel_ok=None, w2_ok=None, structure_ok=None)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = snp_space(m)
    match = report.solution_space == expected.space
    structure_ok: Optional[bool] = None
    if not report.solution_space.is_zero() and not report.is_central_only:
        oks = []
        for b in report.solution_space.basis:
            try:
                oks.append(verify_structure(m, list(b)).ok)
            except CentralField:
                continue
        if oks:
            structure_ok = all(oks)
    return SweepEntry(family=fdef.fid, form=form, kind=kind, params=fixed,
                      expected_dim=expected.space.dim,
                      computed_dim=report.solution_space.dim, match=match,
                      valid=True, central_only=report.is_central_only,
                      parallel_ok=report.parallel_verified,
                      w2_ok=report.w2_verified, structure_ok=structure_ok)


def verify_classification(trials: int = 25, seed: int = 0,
                          perturb_family: Optional[str] = None) -> SweepReport:
    """Sweep every family and form; deterministic draws first, then seeded
    random draws.  A perturbed family gets a deliberately wrong bracket so
    the sweep's power to detect errors is itself testable."""
    if perturb_family is not None and perturb_family not in _REGISTRY:
        raise ValueError(f"unknown family {perturb_family!r}")
    entries: List[SweepEntry] = []
    for fid, fdef in _REGISTRY.items():
        perturb = fid == perturb_family
        for form in fdef.forms():
            for kind, params in deterministic_draws(fid, form):
                entries.append(_run_draw(fdef, form, kind, params, perturb))
            for t in range(trials):
                rng = random.Random(f"{seed}:{fid}:{form}:{t}")
                params = random_params(fid, rng, form)
                entries.append(_run_draw(fdef, form, f"random_{t}", params,
                                         perturb))
    return SweepReport(trials=trials, seed=seed, perturb_family=perturb_family,
                      entries=tuple(entries))
