"""Left-invariant metric geometry on a Lie algebra.

The Levi-Civita connection comes from the Koszul formula for
left-invariant fields,

    2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>,

and the curvature convention is

    R(x, y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z.

All values are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from . import lie, linalg
from .errors import DegeneratePlane, InexactSqrt, NotPositiveDefinite
from .lie import LieAlgebra
from .linalg import Vec, frac, zeros


@dataclass(frozen=True)
class InnerProduct:
    gram: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.gram)
        if n == 0 or any(len(row) != n for row in self.gram):
            raise ValueError("Gram matrix must be square and nonempty")
        for i in range(n):
            for j in range(i + 1, n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise NotPositiveDefinite("Gram matrix is not symmetric")
        for k in range(1, n + 1):
            minor = [row[:k] for row in self.gram[:k]]
            if linalg.det(minor) <= 0:
                raise NotPositiveDefinite(
                    f"leading principal minor of order {k} is not positive")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "InnerProduct":
        return cls(gram=tuple(tuple(frac(v) for v in row) for row in rows))

    @classmethod
    def standard(cls, dim: int) -> "InnerProduct":
        return cls.from_rows(linalg.identity(dim))

    @property
    def dim(self) -> int:
        return len(self.gram)

    def inner(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        total = linalg.ZERO
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gram[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    total += xi * row[j] * yj
        return total

    def norm2(self, x: Sequence[Fraction]) -> Fraction:
        return self.inner(x, x)


@dataclass(frozen=True)
class MetricLieAlgebra:
    algebra: LieAlgebra
    metric: InnerProduct

    def __post_init__(self):
        if self.algebra.dim != self.metric.dim:
            raise ValueError("algebra and metric dimensions differ")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def inner(self, x, y) -> Fraction:
        return self.metric.inner(x, y)

    def norm2(self, x) -> Fraction:
        return self.metric.norm2(x)


@dataclass(frozen=True)
class Connection:
    """gamma[i][j] is the component vector of nabla_{e_i} e_j."""
    gamma: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.gamma)


def levi_civita(m: MetricLieAlgebra) -> Connection:
    n = m.dim
    c = m.algebra.c
    g = m.metric.gram
    ginv = linalg.inverse([list(r) for r in g])
    # cg[i][j][k] = <[e_i, e_j], e_k>
    cg = [[[linalg.ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cij = c[i][j]
            for k in range(n):
                s = linalg.ZERO
                for l in range(n):
                    if cij[l] and g[l][k]:
                        s += cij[l] * g[l][k]
                cg[i][j][k] = s
    half = Fraction(1, 2)
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            rhs = [half * (cg[i][j][k] - cg[j][k][i] + cg[k][i][j])
                   for k in range(n)]
            row.append(tuple(linalg.mat_vec(ginv, rhs)))
        gamma.append(tuple(row))
    return Connection(gamma=tuple(gamma))


def covariant_derivative(conn: Connection, x: Sequence[Fraction],
                         y: Sequence[Fraction]) -> Vec:
    n = conn.dim
    out = zeros(n)
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        gi = conn.gamma[i]
        for j in range(n):
            yj = y[j]
            if not yj:
                continue
            f = xi * yj
            gij = gi[j]
            for k in range(n):
                if gij[k]:
                    out[k] += f * gij[k]
    return out


def curvature_tensor(m: MetricLieAlgebra, conn, x, y, z) -> Vec:
    """R(x, y)z for any connection object exposing gamma."""
    a = covariant_derivative(conn, x, covariant_derivative(conn, y, z))
    b = covariant_derivative(conn, y, covariant_derivative(conn, x, z))
    c = covariant_derivative(conn, lie.bracket(m.algebra, x, y), z)
    return [p - q - r for p, q, r in zip(a, b, c)]


def curvature_components(m: MetricLieAlgebra, conn) -> List[List[List[Vec]]]:
    """Full tensor: entry [i][j][k] is the component vector of R(e_i,e_j)e_k."""
    n = m.dim
    basis = [m.algebra.basis_vector(i) for i in range(n)]
    return [[[curvature_tensor(m, conn, basis[i], basis[j], basis[k])
              for k in range(n)] for j in range(n)] for i in range(n)]


def plane_gram_det(m: MetricLieAlgebra, x, y) -> Fraction:
    return m.norm2(x) * m.norm2(y) - m.inner(x, y) ** 2


def sectional_curvature(m: MetricLieAlgebra, conn: Connection, x, y) -> Fraction:
    den = plane_gram_det(m, x, y)
    if den == 0:
        raise DegeneratePlane("plane spanned by a linearly dependent pair")
    num = m.inner(curvature_tensor(m, conn, x, y, y), x)
    return num / den


def is_parallel(m: MetricLieAlgebra, e: Sequence[Fraction],
                conn: Optional[Connection] = None) -> bool:
    if conn is None:
        conn = levi_civita(m)
    ev = linalg.vector(e)
    for i in range(m.dim):
        if not linalg.is_zero_vec(
                covariant_derivative(conn, m.algebra.basis_vector(i), ev)):
            return False
    return True


# ---------------------------------------------------------------------------
# orthonormal frames
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrthoFrame:
    """Orthonormal frame: columns of matrix are the frame in old coordinates.

    In exact mode the entries and structure constants are Fractions; in
    float mode both are floats.
    """
    mode: str
    matrix: Tuple[Tuple[object, ...], ...]
    constants: Tuple[Tuple[Tuple[object, ...], ...], ...]


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    rn = isqrt(x.numerator)
    rd = isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def orthonormalize(m: MetricLieAlgebra, mode: str = "exact") -> OrthoFrame:
    """Gram-Schmidt on the standard basis, in standard order.

    Exact mode requires every intermediate squared norm to be a rational
    square (InexactSqrt otherwise); float mode returns a floating frame.
    """
    if mode not in ("exact", "float"):
        raise ValueError("mode must be 'exact' or 'float'")
    n = m.dim
    us: List[Vec] = []
    norms2: List[Fraction] = []
    for k in range(n):
        u = m.algebra.basis_vector(k)
        for prev, p2 in zip(us, norms2):
            coef = m.inner(u, prev) / p2
            if coef:
                u = [a - coef * b for a, b in zip(u, prev)]
        n2 = m.norm2(u)
        if n2 <= 0:
            raise NotPositiveDefinite("Gram-Schmidt hit a nonpositive norm")
        us.append(u)
        norms2.append(n2)
    # exact structure constants in the unnormalized orthogonal frame
    umat = [[us[j][i] for j in range(n)] for i in range(n)]
    scaled = lie.transform(m.algebra, umat)
    if mode == "exact":
        roots = []
        for n2 in norms2:
            r = _exact_sqrt(n2)
            if r is None:
                raise InexactSqrt(f"norm squared {n2} is not a rational square")
            roots.append(r)
        cols = [[us[j][i] / roots[j] for j in range(n)] for i in range(n)]
        # [X_i, X_j] = sum_k c_ijk (r_k / (r_i r_j)) X_k for X_k = u_k / r_k
        consts = tuple(
            tuple(tuple(scaled.c[i][j][k] * roots[k] / (roots[i] * roots[j])
                        for k in range(n)) for j in range(n)) for i in range(n))
        return OrthoFrame(mode="exact",
                          matrix=tuple(tuple(row) for row in cols),
                          constants=consts)
    roots_f = [float(n2) ** 0.5 for n2 in norms2]
    cols_f = [[float(us[j][i]) / roots_f[j] for j in range(n)] for i in range(n)]
    consts_f = tuple(
        tuple(tuple(float(scaled.c[i][j][k]) * roots_f[k]
                    / (roots_f[i] * roots_f[j])
                    for k in range(n)) for j in range(n)) for i in range(n))
    return OrthoFrame(mode="float",
                      matrix=tuple(tuple(row) for row in cols_f),
                      constants=consts_f)
