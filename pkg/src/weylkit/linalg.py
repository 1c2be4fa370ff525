"""Exact rational linear algebra.

Matrices are lists of rows of Fraction. The elimination core works on
primitive integer rows (each row scaled by the lcm of denominators and
divided by the gcd), which keeps entry growth under control and makes
the inner loops integer arithmetic. Pivoting is leftmost-column with the
first nonzero row, which is exact and yields canonical reduced bases.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Vec = List[Fraction]
Mat = List[List[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def vector(values: Iterable) -> Vec:
    return [frac(v) for v in values]


def matrix(rows: Iterable[Iterable]) -> Mat:
    return [vector(r) for r in rows]


def zeros(n: int) -> Vec:
    return [ZERO] * n


def identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[Fraction]]) -> Mat:
    return [list(col) for col in zip(*m)]


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vec:
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), ZERO) for row in m]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt]
            for row in a]


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return [x + y for x, y in zip(a, b)]


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return [x - y for x, y in zip(a, b)]


def vec_scale(s: Fraction, a: Sequence[Fraction]) -> Vec:
    return [s * x for x in a]


def is_zero_vec(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


# ---------------------------------------------------------------------------
# integer elimination core
# ---------------------------------------------------------------------------

def _primitive_int_row(row: Sequence[Fraction]) -> List[int]:
    den = 1
    for x in row:
        d = x.denominator
        den = den // gcd(den, d) * d
    ints = [int(x.numerator * (den // x.denominator)) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            return ints
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _row_echelon_int(rows: List[List[int]], ncols: int) -> List[int]:
    """In-place forward elimination; returns the pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        a = prow[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            b = ri[c]
            if not b:
                continue
            g = gcd(a, b)
            ma = a // g
            mb = b // g
            ri[c] = 0
            for t in range(c + 1, ncols):
                ri[t] = ma * ri[t] - mb * prow[t]
            g2 = 0
            for t in range(c + 1, ncols):
                g2 = gcd(g2, ri[t])
                if g2 == 1:
                    break
            if g2 > 1:
                for t in range(c + 1, ncols):
                    ri[t] //= g2
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    del rows[r:]
    return pivots


def _echelon(mat: Sequence[Sequence[Fraction]], ncols: int):
    rows = [_primitive_int_row(row) for row in mat if not is_zero_vec(row)]
    pivots = _row_echelon_int(rows, ncols)
    return rows, pivots


def rank(mat: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> int:
    if not mat:
        return 0
    if ncols is None:
        ncols = len(mat[0])
    _, pivots = _echelon(mat, ncols)
    return len(pivots)


def rref(mat: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form (pivots normalized to 1, cleared upward)."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    rows, pivots = _echelon(mat, ncols)
    fr = [[Fraction(v) for v in row] for row in rows]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        piv = fr[i][c]
        fr[i] = [x / piv for x in fr[i]]
        for k in range(i):
            f = fr[k][c]
            if f:
                fr[k] = [x - f * y for x, y in zip(fr[k], fr[i])]
    return fr, pivots


def kernel(mat: Sequence[Sequence[Fraction]], ncols: int) -> List[Vec]:
    """Canonical basis of the right null space {v : mat @ v = 0}."""
    reduced, pivots = rref(mat, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -reduced[i][f]
        basis.append(v)
    return basis


def solve(mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vec]:
    """One exact solution of mat @ x = rhs (free variables zero), or None."""
    ncols = len(mat[0]) if mat else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = zeros(ncols)
    for i, c in enumerate(pivots):
        x[c] = reduced[i][ncols]
    return x


def det(mat: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(mat)
    a = [list(row) for row in mat]
    sign = 1
    result = ONE
    for c in range(n):
        p = None
        for i in range(c, n):
            if a[i][c]:
                p = i
                break
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result if sign > 0 else -result


def inverse(mat: Sequence[Sequence[Fraction]]) -> Mat:
    n = len(mat)
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(mat)]
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced[:n]]


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """Rational subspace of an ambient coordinate space.

    Stores a canonical reduced basis (RREF rows), so equal subspaces have
    identical bases; equality is nevertheless tested by mutual containment.
    """

    __slots__ = ("ambient", "basis", "_pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence[Fraction]] = ()):
        self.ambient = ambient
        vecs = [vector(v) for v in vectors]
        vecs = [v for v in vecs if not is_zero_vec(v)]
        if vecs:
            reduced, pivots = rref(vecs, ambient)
            self.basis = tuple(tuple(row) for row in reduced[:len(pivots)])
            self._pivots = tuple(pivots)
        else:
            self.basis = ()
            self._pivots = ()

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, identity(ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        residual = vector(v)
        for row, c in zip(self.basis, self._pivots):
            f = residual[c]
            if f:
                residual = [x - f * y for x, y in zip(residual, row)]
        return is_zero_vec(residual)

    def contains(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains_vector(v) for v in other.basis)

    def coordinates(self, v: Sequence[Fraction]) -> Optional[Vec]:
        """Coefficients of v in the canonical basis, or None if v is outside.

        The basis rows are in RREF, so the coefficient on each row is just
        the entry of v at that row's pivot column.
        """
        coeffs = [v[c] for c in self._pivots]
        residual = vector(v)
        for row, f in zip(self.basis, coeffs):
            if f:
                residual = [x - f * y for x, y in zip(residual, row)]
        if not is_zero_vec(residual):
            return None
        return coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.contains(other) and other.contains(self)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def span(vectors: Iterable[Sequence[Fraction]], ambient: int) -> Subspace:
    return Subspace(ambient, vectors)
