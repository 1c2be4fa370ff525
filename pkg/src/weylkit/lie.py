"""Finite-dimensional real Lie algebras via exact structure constants.

An algebra of dimension n stores c[i][j][k] = coefficient of e_k in
[e_i, e_j], all rational, 0-based indices. Construction does not run the
Jacobi check; validate() does, and reports the first violating triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .errors import NonCommutingImages, NotADerivation, NotNilpotent
from .linalg import Subspace, Vec, frac, zeros

Brackets = Mapping[Tuple[int, int], Mapping[int, object]]


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    c: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if len(self.c) != self.dim or any(
            len(ci) != self.dim or any(len(cij) != self.dim for cij in ci)
            for ci in self.c
        ):
            raise ValueError("structure constant array must be dim x dim x dim")
        if self.labels is not None and len(self.labels) != self.dim:
            raise ValueError("labels length must match dimension")

    @classmethod
    def from_brackets(cls, dim: int, brackets: Brackets,
                      labels: Optional[Sequence[str]] = None) -> "LieAlgebra":
        """Build from a sparse {(i, j): {k: value}} table, 0-based.

        Each entry defines [e_i, e_j]; the reversed bracket is filled in by
        antisymmetry. Listing both orientations with inconsistent values is
        an error.
        """
        c = [[[linalg.ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        seen = {}
        for (i, j), comps in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i}, {j}) out of range")
            if i == j:
                raise ValueError(f"bracket ({i}, {i}) of a vector with itself")
            vals = {k: frac(v) for k, v in comps.items()}
            for k in vals:
                if not 0 <= k < dim:
                    raise ValueError(f"component index {k} out of range")
            if (j, i) in seen:
                other = seen[(j, i)]
                if any(vals.get(k, linalg.ZERO) != -other.get(k, linalg.ZERO)
                       for k in set(vals) | set(other)):
                    raise ValueError(f"inconsistent brackets for pair ({i}, {j})")
                continue
            if (i, j) in seen:
                raise ValueError(f"duplicate bracket entry ({i}, {j})")
            seen[(i, j)] = vals
            for k, v in vals.items():
                c[i][j][k] = v
                c[j][i][k] = -v
        return cls(dim=dim,
                   c=tuple(tuple(tuple(row) for row in plane) for plane in c),
                   labels=tuple(labels) if labels is not None else None)

    def basis_vector(self, i: int) -> Vec:
        v = zeros(self.dim)
        v[i] = linalg.ONE
        return v


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    antisymmetry_ok: bool
    jacobi_ok: bool
    first_violation: Optional[Tuple[int, int, int]] = None
    residual: Optional[Tuple[Fraction, ...]] = None


def bracket(L: LieAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    n = L.dim
    out = zeros(n)
    c = L.c
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        ci = c[i]
        for j in range(n):
            yj = y[j]
            if not yj:
                continue
            f = xi * yj
            cij = ci[j]
            for k in range(n):
                if cij[k]:
                    out[k] += f * cij[k]
    return out


def ad_matrix(L: LieAlgebra, x: Sequence[Fraction]) -> List[Vec]:
    """Matrix of ad_x = [x, .]; column j holds the components of [x, e_j]."""
    n = L.dim
    m = [zeros(n) for _ in range(n)]
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        ci = L.c[i]
        for j in range(n):
            cij = ci[j]
            for k in range(n):
                if cij[k]:
                    m[k][j] += xi * cij[k]
    return m


def validate(L: LieAlgebra) -> ValidationReport:
    n = L.dim
    c = L.c
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    return ValidationReport(
                        ok=False, antisymmetry_ok=False, jacobi_ok=False,
                        first_violation=(i, j, k),
                        residual=(c[i][j][k] + c[j][i][k],))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                res = zeros(n)
                for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
                    cab = c[a][b]
                    for l in range(n):
                        f = cab[l]
                        if f:
                            cld = c[l][d]
                            for m in range(n):
                                if cld[m]:
                                    res[m] += f * cld[m]
                if not linalg.is_zero_vec(res):
                    return ValidationReport(
                        ok=False, antisymmetry_ok=True, jacobi_ok=False,
                        first_violation=(i, j, k), residual=tuple(res))
    return ValidationReport(ok=True, antisymmetry_ok=True, jacobi_ok=True)


def is_unimodular(L: LieAlgebra) -> bool:
    # tr(ad e_i) = sum_k c[i][k][k]
    return all(sum(L.c[i][k][k] for k in range(L.dim)) == 0 for i in range(L.dim))


def subspace_bracket(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    vectors = [bracket(L, u, v) for u in a.basis for v in b.basis]
    return Subspace(L.dim, vectors)


def derived_series(L: LieAlgebra) -> List[Subspace]:
    series = [Subspace.full(L.dim)]
    while True:
        nxt = subspace_bracket(L, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.is_zero():
            break
    return series


def lower_central_series(L: LieAlgebra) -> List[Subspace]:
    full = Subspace.full(L.dim)
    series = [full]
    while True:
        nxt = subspace_bracket(L, full, series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.is_zero():
            break
    return series


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].is_zero()


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].is_zero()


def nilpotency_class(L: LieAlgebra) -> int:
    series = lower_central_series(L)
    if not series[-1].is_zero():
        raise NotNilpotent("lower central series does not terminate")
    return len(series) - 1


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    rows = []
    for j in range(n):
        for k in range(n):
            row = [L.c[i][j][k] for i in range(n)]
            if not linalg.is_zero_vec(row):
                rows.append(row)
    if not rows:
        return Subspace.full(n)
    return Subspace(n, linalg.kernel(rows, n))


def vergne_type(L: LieAlgebra) -> Tuple[int, ...]:
    series = lower_central_series(L)
    if not series[-1].is_zero():
        raise NotNilpotent("Vergne type requires a nilpotent algebra")
    dims = [s.dim for s in series]
    return tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))


def metabelian_signature(L: LieAlgebra) -> Optional[Tuple[int, int]]:
    """(codim, dim) of the derived algebra when [g, [g, g]] = 0, else None."""
    derived = subspace_bracket(L, Subspace.full(L.dim), Subspace.full(L.dim))
    if not subspace_bracket(L, Subspace.full(L.dim), derived).is_zero():
        return None
    if not subspace_bracket(L, derived, derived).is_zero():
        return None
    return (L.dim - derived.dim, derived.dim)


def abelian(dim: int, labels: Optional[Sequence[str]] = None) -> LieAlgebra:
    return LieAlgebra.from_brackets(dim, {}, labels=labels)


def is_abelian(L: LieAlgebra) -> bool:
    return all(not L.c[i][j][k]
               for i in range(L.dim) for j in range(L.dim) for k in range(L.dim))


def _is_derivation(n_alg: LieAlgebra, d: Sequence[Sequence[Fraction]]):
    """Return None if d satisfies Leibniz on n_alg, else a witness pair."""
    q = n_alg.dim
    cols = [[d[r][j] for r in range(q)] for j in range(q)]
    for i in range(q):
        for j in range(i + 1, q):
            lhs = linalg.mat_vec(d, bracket(n_alg, n_alg.basis_vector(i),
                                            n_alg.basis_vector(j)))
            rhs = linalg.vec_add(
                bracket(n_alg, cols[i], n_alg.basis_vector(j)),
                bracket(n_alg, n_alg.basis_vector(i), cols[j]))
            if lhs != rhs:
                return (i, j)
    return None


def semidirect_sum(a: LieAlgebra, n: LieAlgebra,
                   phi: Sequence[Sequence[Sequence[Fraction]]]) -> LieAlgebra:
    """Semidirect sum of an abelian algebra a acting on n.

    Basis order: n first (indices 0..n.dim-1), then a. phi[r] is the matrix
    by which the r-th basis vector of a acts on n; each must be a derivation
    of n and the matrices must commute pairwise.
    """
    if not is_abelian(a):
        raise ValueError("first summand must be abelian")
    if len(phi) != a.dim:
        raise ValueError("need one action matrix per basis vector of a")
    q = n.dim
    mats = [linalg.matrix(m) for m in phi]
    for r, d in enumerate(mats):
        if len(d) != q or any(len(row) != q for row in d):
            raise ValueError(f"action matrix {r} must be {q} x {q}")
        witness = _is_derivation(n, d)
        if witness is not None:
            raise NotADerivation(
                f"action matrix {r} fails Leibniz on basis pair {witness}",
                witness=(r,) + witness)
    for r in range(len(mats)):
        for s in range(r + 1, len(mats)):
            ab = linalg.mat_mul(mats[r], mats[s])
            ba = linalg.mat_mul(mats[s], mats[r])
            if ab != ba:
                raise NonCommutingImages(f"action matrices {r} and {s} do not commute")
    dim = q + a.dim
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i in range(q):
        for j in range(i + 1, q):
            comps = {k: n.c[i][j][k] for k in range(q) if n.c[i][j][k]}
            if comps:
                table[(i, j)] = comps
    for r in range(a.dim):
        d = mats[r]
        for j in range(q):
            comps = {k: d[k][j] for k in range(q) if d[k][j]}
            if comps:
                table[(q + r, j)] = comps
    return LieAlgebra.from_brackets(dim, table)


def transform(L: LieAlgebra, p: Sequence[Sequence[Fraction]]) -> LieAlgebra:
    """Structure constants in the new basis f_j = sum_i p[i][j] e_i (columns)."""
    n = L.dim
    pm = linalg.matrix(p)
    pinv = linalg.inverse(pm)
    cols = [[pm[i][j] for i in range(n)] for j in range(n)]
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = linalg.mat_vec(pinv, bracket(L, cols[i], cols[j]))
            comps = {k: w[k] for k in range(n) if w[k]}
            if comps:
                table[(i, j)] = comps
    return LieAlgebra.from_brackets(n, table)
