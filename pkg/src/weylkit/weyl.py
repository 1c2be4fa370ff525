"""Invariant Weyl connections and stretched-non-positive fields.

For a vector field E (identified with its dual one-form through the
metric) the Weyl connection is

    nabla^E_X Y = nabla_X Y - <E,Y> X - <E,X> Y + <X,Y> E,

where nabla is Levi-Civita.  A field E is stretched-non-positive (SNP)
when ad_E is skew-symmetric and E is orthogonal to the derived algebra;
such fields form a linear subspace computed here exactly.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import lie, linalg, metric as metric_mod
from .errors import CentralField, NotInSnpSpace, ZeroField
from .lie import ad_matrix, bracket, is_unimodular, subspace_bracket
from .linalg import Subspace, Vec, vector, zeros
from .metric import (Connection, MetricLieAlgebra, covariant_derivative,
                     curvature_components, curvature_tensor, levi_civita)


@dataclass(frozen=True)
class WeylConnection:
    """Same component layout as Connection, plus the defining field."""
    gamma: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    field: Tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.gamma)


def _metric_dual(m: MetricLieAlgebra, e: Sequence[Fraction]) -> Vec:
    """phi_i = <E, e_i> for the one-form paired with E."""
    g = m.metric.gram
    n = m.dim
    return [sum((g[i][l] * e[l] for l in range(n) if e[l]), linalg.ZERO)
            for i in range(n)]


def weyl_connection(m: MetricLieAlgebra, e: Sequence[Fraction],
                    lc: Optional[Connection] = None) -> WeylConnection:
    if lc is None:
        lc = levi_civita(m)
    n = m.dim
    ev = vector(e)
    phi = _metric_dual(m, ev)
    g = m.metric.gram
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            comp = list(lc.gamma[i][j])
            if phi[j]:
                comp[i] -= phi[j]
            if phi[i]:
                comp[j] -= phi[i]
            gij = g[i][j]
            if gij:
                for k in range(n):
                    if ev[k]:
                        comp[k] += gij * ev[k]
            row.append(tuple(comp))
        gamma.append(tuple(row))
    return WeylConnection(gamma=tuple(gamma), field=tuple(ev))


def weyl_sectional_exact(m: MetricLieAlgebra, conn: WeylConnection,
                         x: Sequence[Fraction],
                         y: Sequence[Fraction]) -> Fraction:
    den = metric_mod.plane_gram_det(m, x, y)
    if den == 0:
        from .errors import DegeneratePlane
        raise DegeneratePlane("plane spanned by a linearly dependent pair")
    num = m.inner(curvature_tensor(m, conn, x, y, y), x)
    return num / den


def weyl_sectional(m: MetricLieAlgebra, conn: WeylConnection, x, y) -> float:
    return float(weyl_sectional_exact(m, conn, vector(x), vector(y)))


# ---------------------------------------------------------------------------
# the SNP subspace
# ---------------------------------------------------------------------------

def check_w2(m: MetricLieAlgebra, e: Sequence[Fraction]) -> bool:
    """Second stretch condition by polarization on a basis of E-perp:

    <[E, Y_i], Y_j> + <[E, Y_j], Y_i> = 0 for all i <= j.
    """
    ev = vector(e)
    if linalg.is_zero_vec(ev):
        raise ZeroField("the zero field has no orthogonal complement test")
    phi = _metric_dual(m, ev)
    perp = linalg.kernel([phi], m.dim)
    for a in range(len(perp)):
        for b in range(a, len(perp)):
            lhs = m.inner(bracket(m.algebra, ev, perp[a]), perp[b]) \
                + m.inner(bracket(m.algebra, ev, perp[b]), perp[a])
            if lhs != 0:
                return False
    return True


@dataclass(frozen=True)
class SnpReport:
    solution_space: Subspace
    is_central_only: bool
    parallel_verified: bool
    w2_verified: bool
    unimodular: bool
    w1_max_sampled: Optional[float] = None


def _snp_system(m: MetricLieAlgebra) -> List[Vec]:
    """Rows of the linear system cutting out the SNP fields."""
    n = m.dim
    g = [list(r) for r in m.metric.gram]
    rows: List[Vec] = []
    # skewness of ad_E: G ad_E + ad_E^T G = 0, linear in the coordinates of E
    mats = []
    for l in range(n):
        a = ad_matrix(m.algebra, m.algebra.basis_vector(l))
        ga = linalg.mat_mul(g, a)
        s = [[ga[i][j] + ga[j][i] for j in range(n)] for i in range(n)]
        mats.append(s)
    for i in range(n):
        for j in range(i, n):
            row = [mats[l][i][j] for l in range(n)]
            if not linalg.is_zero_vec(row):
                rows.append(row)
    # orthogonality to the derived algebra
    derived = subspace_bracket(m.algebra, Subspace.full(n), Subspace.full(n))
    for v in derived.basis:
        gv = linalg.mat_vec(g, list(v))
        if not linalg.is_zero_vec(gv):
            rows.append(gv)
    return rows


def snp_space(m: MetricLieAlgebra, w1_samples: int = 0,
              seed: int = 0) -> SnpReport:
    """Exact solution space of the SNP conditions, with verification flags."""
    n = m.dim
    rows = _snp_system(m)
    basis = linalg.kernel(rows, n)
    space = Subspace(n, basis)

    unimod = is_unimodular(m.algebra)
    if not unimod:
        warnings.warn("algebra is not unimodular; the stretched-curvature "
                      "analysis assumes a unimodular algebra", stacklevel=2)

    center = lie.center(m.algebra)
    central_only = center.contains(space)

    lc = levi_civita(m)
    parallel_ok = True
    w2_ok = True
    for b in space.basis:
        if not metric_mod.is_parallel(m, b, lc):
            parallel_ok = False
        if not check_w2(m, list(b)):
            w2_ok = False

    w1_max: Optional[float] = None
    if w1_samples > 0 and not space.is_zero():
        rng = random.Random(seed)
        gf = np.array([[float(v) for v in row] for row in m.metric.gram])
        worst = None
        for b in space.basis:
            conn = weyl_connection(m, list(b), lc)
            tensor = _float_curvature(m, conn)
            xs, ys = _sample_planes(rng, gf, n, w1_samples)
            vals = _sectional_values(tensor, gf, xs, ys)
            mx = float(vals.max())
            worst = mx if worst is None else max(worst, mx)
        w1_max = worst

    return SnpReport(solution_space=space, is_central_only=central_only,
                     parallel_verified=parallel_ok, w2_verified=w2_ok,
                     unimodular=unimod, w1_max_sampled=w1_max)


# ---------------------------------------------------------------------------
# structure of the orthogonal complement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    ideal_ok: bool
    solvable_ok: bool
    unimodular_ok: bool
    skew_ok: bool
    derived_match_ok: bool

    @property
    def ok(self) -> bool:
        return (self.ideal_ok and self.solvable_ok and self.unimodular_ok
                and self.skew_ok and self.derived_match_ok)


def verify_structure(m: MetricLieAlgebra, e: Sequence[Fraction]) -> StructureReport:
    """Check the predicted structure of s = E-perp for a nonzero SNP field E:

    s is a solvable unimodular ideal containing the derived algebra,
    ad_E acts skewly on s, and [s,s] together with ad_E(s) spans the
    derived algebra.
    """
    n = m.dim
    ev = vector(e)
    if linalg.is_zero_vec(ev):
        raise CentralField("field is zero")
    if all(linalg.is_zero_vec(bracket(m.algebra, ev, m.algebra.basis_vector(j)))
           for j in range(n)):
        raise CentralField("field is central; the structure theory needs "
                           "a non-central field")
    report = snp_space(m)
    if not report.solution_space.contains_vector(ev):
        raise NotInSnpSpace("field does not satisfy the SNP conditions")

    phi = _metric_dual(m, ev)
    s = Subspace(n, linalg.kernel([phi], n))

    ideal_ok = all(
        s.contains_vector(bracket(m.algebra, m.algebra.basis_vector(i), list(y)))
        for i in range(n) for y in s.basis)

    # derived series of s inside the ambient algebra
    solvable_ok = False
    current = s
    for _ in range(n + 1):
        if current.is_zero():
            solvable_ok = True
            break
        nxt = subspace_bracket(m.algebra, current, current)
        if nxt.dim == current.dim:
            break
        current = nxt

    unimodular_ok = True
    if ideal_ok:
        for y in s.basis:
            tr = linalg.ZERO
            good = True
            for j, z in enumerate(s.basis):
                w = bracket(m.algebra, list(y), list(z))
                coords = s.coordinates(w)
                if coords is None:
                    good = False
                    break
                tr += coords[j]
            if not good or tr != 0:
                unimodular_ok = False
                break
    else:
        unimodular_ok = False

    skew_ok = True
    for a in range(s.dim):
        for b in range(a, s.dim):
            ya, yb = list(s.basis[a]), list(s.basis[b])
            v = m.inner(bracket(m.algebra, ev, ya), yb) \
                + m.inner(ya, bracket(m.algebra, ev, yb))
            if v != 0:
                skew_ok = False
                break
        if not skew_ok:
            break

    full = Subspace.full(n)
    derived = subspace_bracket(m.algebra, full, full)
    ss = subspace_bracket(m.algebra, s, s)
    ad_e_s = Subspace(n, [bracket(m.algebra, ev, list(y)) for y in s.basis])
    derived_match_ok = s.contains(derived) and ss.sum(ad_e_s) == derived

    return StructureReport(ideal_ok=ideal_ok, solvable_ok=solvable_ok,
                           unimodular_ok=unimodular_ok, skew_ok=skew_ok,
                           derived_match_ok=derived_match_ok)


# ---------------------------------------------------------------------------
# curvature scan over stretched fields
# ---------------------------------------------------------------------------

def _float_curvature(m: MetricLieAlgebra, conn) -> np.ndarray:
    """T[i][j][k][l] = <R(e_i,e_j)e_k, e_l>, exact then converted to float."""
    n = m.dim
    comps = curvature_components(m, conn)
    g = m.metric.gram
    t = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                vecc = comps[i][j][k]
                for l in range(n):
                    s = linalg.ZERO
                    for p in range(n):
                        if vecc[p] and g[p][l]:
                            s += vecc[p] * g[p][l]
                    t[i, j, k, l] = float(s)
    return t


def _sample_planes(rng: random.Random, gf: np.ndarray, n: int,
                   count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Random planes with uniform[-1,1] coordinates; near-degenerate
    pairs (Gram determinant below 1e-8) are rejected."""
    xs, ys = [], []
    while len(xs) < count:
        x = np.array([rng.uniform(-1.0, 1.0) for _ in range(n)])
        y = np.array([rng.uniform(-1.0, 1.0) for _ in range(n)])
        xx = x @ gf @ x
        yy = y @ gf @ y
        xy = x @ gf @ y
        if xx * yy - xy * xy < 1e-8:
            continue
        xs.append(x)
        ys.append(y)
    return np.array(xs), np.array(ys)


def _sectional_values(t: np.ndarray, gf: np.ndarray, xs: np.ndarray,
                      ys: np.ndarray) -> np.ndarray:
    num = np.einsum("ijkl,si,sj,sk,sl->s", t, xs, ys, ys, xs)
    xx = np.einsum("si,ij,sj->s", xs, gf, xs)
    yy = np.einsum("si,ij,sj->s", ys, gf, ys)
    xy = np.einsum("si,ij,sj->s", xs, gf, ys)
    return num / (xx * yy - xy * xy)


@dataclass(frozen=True)
class GammaEntry:
    gamma: float
    max_k: float
    positive_count: int
    verdict: str  # "nonpositive" or "positive"


@dataclass(frozen=True)
class StretchScan:
    field: Tuple[Fraction, ...]
    entries: Tuple[GammaEntry, ...]
    gamma0_estimate: Optional[float]
    samples: int
    seed: int
    tolerance: float


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    try:
        return Fraction(str(x))
    except ValueError:
        return Fraction(x)


def stretch_scan(m: MetricLieAlgebra, e: Sequence[Fraction],
                 gammas: Sequence, samples: int = 200, seed: int = 0,
                 tolerance: float = 1e-9) -> StretchScan:
    """Sample Weyl sectional curvatures of the stretched family gamma * E.

    The same sampled planes are reused at every gamma, so per-plane
    monotonicity of the curvature in gamma carries over to the verdicts.
    The curvature tensor is built exactly at each gamma and only then
    converted to floats.
    """
    ev = vector(e)
    if linalg.is_zero_vec(ev):
        raise ZeroField("cannot scan stretches of the zero field")
    n = m.dim
    rng = random.Random(seed)
    gf = np.array([[float(v) for v in row] for row in m.metric.gram])
    xs, ys = _sample_planes(rng, gf, n, samples)
    lc = levi_civita(m)
    entries = []
    gamma0: Optional[float] = None
    for gm in gammas:
        gq = _as_fraction(gm)
        conn = weyl_connection(m, [gq * v for v in ev], lc)
        t = _float_curvature(m, conn)
        vals = _sectional_values(t, gf, xs, ys)
        pos = int((vals > tolerance).sum())
        verdict = "nonpositive" if pos == 0 else "positive"
        if verdict == "nonpositive" and gamma0 is None:
            gamma0 = float(gm)
        entries.append(GammaEntry(gamma=float(gm), max_k=float(vals.max()),
                                  positive_count=pos, verdict=verdict))
    return StretchScan(field=tuple(ev), entries=tuple(entries),
                       gamma0_estimate=gamma0, samples=samples, seed=seed,
                       tolerance=tolerance)
