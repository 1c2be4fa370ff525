"""Constructions that produce metric Lie algebras with prescribed
stretched-non-positive fields, plus the derivation machinery they need.

The extension construction takes a unimodular algebra n with an inner
product, a derivation acting skewly on it, and an abelian complement;
the complement directions of the result are always SNP fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import lie, linalg
from .errors import (DegenerateForm, DuplicateTerm, NotSkewDerivation,
                     NotSurjective, NotUnimodular, OddDimension, ParseError,
                     RangeError)
from .lie import LieAlgebra
from .linalg import Mat, frac
from .metric import InnerProduct, MetricLieAlgebra


# ---------------------------------------------------------------------------
# two-step nilpotent algebras from antisymmetric forms
# ---------------------------------------------------------------------------

def standard_symplectic(dim: int) -> Mat:
    """The block form with F(e_1,e_2) = F(e_3,e_4) = ... = 1."""
    if dim <= 0:
        raise ValueError("dimension must be positive")
    if dim % 2:
        raise OddDimension(f"symplectic form needs an even dimension, got {dim}")
    f = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(dim // 2):
        f[2 * k][2 * k + 1] = Fraction(1)
        f[2 * k + 1][2 * k] = Fraction(-1)
    return f


def _check_antisymmetric(f: Sequence[Sequence[Fraction]]) -> Mat:
    n = len(f)
    rows = [[frac(v) for v in row] for row in f]
    if any(len(row) != n for row in rows):
        raise ValueError("form matrix must be square")
    for i in range(n):
        for j in range(n):
            if rows[i][j] != -rows[j][i]:
                raise ValueError("form matrix must be antisymmetric")
    return rows


def heisenberg(form: Sequence[Sequence[Fraction]]) -> LieAlgebra:
    """Central extension of an even-dimensional abelian algebra by a line,
    with bracket [e_i, e_j] = F(e_i, e_j) z.  Nondegenerate F required."""
    f = _check_antisymmetric(form)
    n = len(f)
    if n % 2:
        raise OddDimension(f"form has odd size {n}")
    if linalg.det(f) == 0:
        raise DegenerateForm("form is degenerate")
    dim = n + 1
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if f[i][j]:
                brackets[(i, j)] = {n: f[i][j]}
    labels = tuple(f"e{i + 1}" for i in range(n)) + ("z",)
    return LieAlgebra.from_brackets(dim, brackets, labels=labels)


def n2_heisenberg(form1: Sequence[Sequence[Fraction]],
                  form2: Sequence[Sequence[Fraction]]) -> LieAlgebra:
    """Two-step algebra with two central directions, one per form.

    The pair of forms must be linearly independent, otherwise the bracket
    does not reach the whole center.
    """
    f1 = _check_antisymmetric(form1)
    f2 = _check_antisymmetric(form2)
    n = len(f1)
    if len(f2) != n:
        raise ValueError("forms must have equal size")
    flat = [[f1[i][j] for i in range(n) for j in range(n)],
            [f2[i][j] for i in range(n) for j in range(n)]]
    if linalg.rank(flat, n * n) < 2:
        raise NotSurjective("the two forms are linearly dependent")
    dim = n + 2
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            img = {}
            if f1[i][j]:
                img[n] = f1[i][j]
            if f2[i][j]:
                img[n + 1] = f2[i][j]
            if img:
                brackets[(i, j)] = img
    labels = tuple(f"e{i + 1}" for i in range(n)) + ("z1", "z2")
    return LieAlgebra.from_brackets(dim, brackets, labels=labels)


def dyer() -> LieAlgebra:
    """A 9-dimensional nilpotent algebra whose derivation algebra is
    itself nilpotent, so it carries no skew derivations for any metric.

    The bracket table is filtered but not graded: the x9 terms in
    [x1,x6] and [x3,x5] sit above the weights of their arguments.  A
    graded table cannot work here, its weight derivation would be a
    semisimple element of Der."""
    table = {
        (1, 2): {3: 1},
        (1, 3): {4: 1},
        (1, 4): {6: 2, 7: 2},
        (1, 5): {7: 1},
        (1, 6): {8: -1, 9: 1},
        (1, 7): {8: -2},
        (1, 8): {9: 1},
        (2, 3): {5: 1},
        (2, 4): {7: 1},
        (2, 5): {6: 1},
        (2, 6): {8: -1},
        (2, 7): {8: -1},
        (2, 8): {9: 1},
        (3, 4): {8: 2},
        (3, 5): {9: 1},
        (3, 7): {9: 1},
        (4, 5): {9: -1},
    }
    brackets = {(i - 1, j - 1): {k - 1: v for k, v in img.items()}
                for (i, j), img in table.items()}
    labels = tuple(f"x{i}" for i in range(1, 10))
    return LieAlgebra.from_brackets(9, brackets, labels=labels)


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _derivation_data(alg: LieAlgebra) -> Tuple[Tuple[Tuple[Fraction, ...], ...],
                                               Tuple[int, ...]]:
    """Kernel basis of the Leibniz system, flattened row-major, plus the
    free columns of the solve (used for coordinate extraction)."""
    n = alg.dim
    c = alg.c
    rows: List[List[Fraction]] = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for l in range(n):
                    if c[i][j][l]:
                        row[k * n + l] += c[i][j][l]
                for p in range(n):
                    if c[p][j][k]:
                        row[p * n + i] -= c[p][j][k]
                    if c[i][p][k]:
                        row[p * n + j] -= c[i][p][k]
                if any(row):
                    rows.append(row)
    reduced, pivots = linalg.rref(rows, n * n)
    pivot_set = set(pivots)
    free = tuple(q for q in range(n * n) if q not in pivot_set)
    basis = []
    for fcol in free:
        v = [Fraction(0)] * (n * n)
        v[fcol] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fcol]
        basis.append(tuple(v))
    return tuple(basis), free


def _reshape(flat: Sequence[Fraction], n: int) -> Mat:
    return [[flat[p * n + q] for q in range(n)] for p in range(n)]


def derivations(alg: LieAlgebra) -> List[Mat]:
    """Basis of the derivation algebra, as matrices acting on columns."""
    flat, _ = _derivation_data(alg)
    return [_reshape(v, alg.dim) for v in flat]


def skew_derivations(alg: LieAlgebra, inner: InnerProduct) -> List[Mat]:
    """Derivations D with G D + D^T G = 0, solved inside the derivation
    algebra rather than over all matrices."""
    if alg.dim != inner.dim:
        raise ValueError("algebra and inner product dimensions differ")
    n = alg.dim
    g = [list(r) for r in inner.gram]
    ds = derivations(alg)
    if not ds:
        return []
    sym = []
    for d in ds:
        gd = linalg.mat_mul(g, d)
        sym.append([[gd[i][j] + gd[j][i] for j in range(n)] for i in range(n)])
    rows = []
    for i in range(n):
        for j in range(i, n):
            row = [sym[r][i][j] for r in range(len(ds))]
            if any(row):
                rows.append(row)
    combos = linalg.kernel(rows, len(ds))
    out = []
    for combo in combos:
        mat = [[Fraction(0)] * n for _ in range(n)]
        for coef, d in zip(combo, ds):
            if coef:
                for p in range(n):
                    for q in range(n):
                        if d[p][q]:
                            mat[p][q] += coef * d[p][q]
        out.append(mat)
    return out


def is_characteristically_nilpotent(alg: LieAlgebra) -> bool:
    """Whether the derivation algebra is nilpotent under the commutator."""
    flat, free = _derivation_data(alg)
    m = len(flat)
    if m == 0:
        return True
    n = alg.dim
    mats = [_reshape(v, n) for v in flat]
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for a in range(m):
        for b in range(a + 1, m):
            ab = linalg.mat_mul(mats[a], mats[b])
            ba = linalg.mat_mul(mats[b], mats[a])
            w = [ab[p][q] - ba[p][q] for p in range(n) for q in range(n)]
            coords = [w[fc] for fc in free]
            # the commutator of derivations is a derivation; its coordinates
            # are read off the free columns, then checked
            recon = [Fraction(0)] * (n * n)
            for coef, v in zip(coords, flat):
                if coef:
                    for idx in range(n * n):
                        if v[idx]:
                            recon[idx] += coef * v[idx]
            if recon != w:
                raise RuntimeError("derivation commutator left the "
                                   "derivation space; this is a bug")
            img = {r: coords[r] for r in range(m) if coords[r]}
            if img:
                brackets[(a, b)] = img
    der_alg = LieAlgebra.from_brackets(m, brackets)
    return lie.is_nilpotent(der_alg)


# ---------------------------------------------------------------------------
# graded two-step tensors with digit encoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GtTensor:
    """Bracket tensor for a two-step algebra on generators e_1..e_m with
    center f_1..f_n, encoded as digit triples "abc": [e_a, e_b] gains f_c."""
    m: int
    n: int
    terms: Tuple[Tuple[int, int, int], ...]

    def text(self) -> str:
        return " ".join(f"{a}{b}{c}" for a, b, c in self.terms)


def parse_gt_tensor(text: str, m: int, n: int) -> GtTensor:
    if not (2 <= m <= 9):
        raise ValueError("m must lie in 2..9 for digit encoding")
    if not (1 <= n <= 9):
        raise ValueError("n must lie in 1..9 for digit encoding")
    terms: List[Tuple[int, int, int]] = []
    seen = set()
    for pos, token in enumerate(text.split()):
        if len(token) != 3 or not token.isdigit():
            raise ParseError(f"token {pos + 1} ({token!r}) is not a "
                             "three-digit group")
        a, b, c = int(token[0]), int(token[1]), int(token[2])
        if not (1 <= a <= m):
            raise RangeError(f"token {token!r}: generator index {a} "
                             f"outside 1..{m}")
        if not (1 <= b <= m):
            raise RangeError(f"token {token!r}: generator index {b} "
                             f"outside 1..{m}")
        if a == b:
            raise RangeError(f"token {token!r}: repeated generator index")
        if not (1 <= c <= n):
            raise RangeError(f"token {token!r}: center index {c} "
                             f"outside 1..{n}")
        key = (min(a, b), max(a, b), c)
        if key in seen:
            raise DuplicateTerm(f"token {token!r} repeats the pair "
                                f"({key[0]},{key[1]}) -> {c}")
        seen.add(key)
        terms.append((a, b, c))
    return GtTensor(m=m, n=n, terms=tuple(terms))


def gt_algebra(tensor: GtTensor) -> LieAlgebra:
    m, n = tensor.m, tensor.n
    dim = m + n
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for a, b, c in tensor.terms:
        i, j, sign = (a - 1, b - 1, Fraction(1)) if a < b else \
                     (b - 1, a - 1, Fraction(-1))
        img = brackets.setdefault((i, j), {})
        k = m + c - 1
        img[k] = img.get(k, Fraction(0)) + sign
    labels = tuple(f"u{i + 1}" for i in range(m)) + \
        tuple(f"v{j + 1}" for j in range(n))
    return LieAlgebra.from_brackets(dim, brackets, labels=labels)


def gt_surjective(tensor: GtTensor) -> bool:
    """Whether the bracket image spans the whole center."""
    alg = gt_algebra(tensor)
    full = linalg.Subspace.full(alg.dim)
    return lie.subspace_bracket(alg, full, full).dim == tensor.n


# ---------------------------------------------------------------------------
# extensions with prescribed SNP directions
# ---------------------------------------------------------------------------

def build_snp_extension(base: LieAlgebra, inner: InnerProduct, deriv: Mat,
                        a_dim: int = 1) -> MetricLieAlgebra:
    """Extend (base, inner) by an abelian complement whose first direction
    acts through the given skew derivation and the rest act trivially.

    The metric is the orthogonal sum of inner with the standard product on
    the complement; every complement direction is then an SNP field.
    """
    if a_dim < 1:
        raise ValueError("complement dimension must be at least 1")
    if base.dim != inner.dim:
        raise ValueError("algebra and inner product dimensions differ")
    if not lie.is_unimodular(base):
        raise NotUnimodular("base algebra is not unimodular")
    n = base.dim
    d = [[frac(v) for v in row] for row in deriv]
    if len(d) != n or any(len(row) != n for row in d):
        raise ValueError("derivation matrix has the wrong shape")
    g = [list(r) for r in inner.gram]
    gd = linalg.mat_mul(g, d)
    for i in range(n):
        for j in range(i, n):
            if gd[i][j] + gd[j][i] != 0:
                raise NotSkewDerivation(
                    "derivation is not skew for the given inner product")
    comp = lie.abelian(a_dim)
    zero = [[Fraction(0)] * n for _ in range(n)]
    phi = [d] + [zero] * (a_dim - 1)
    total = lie.semidirect_sum(comp, base, phi)
    dim = n + a_dim
    gram = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            gram[i][j] = g[i][j]
    for k in range(a_dim):
        gram[n + k][n + k] = Fraction(1)
    return MetricLieAlgebra(algebra=total,
                            metric=InnerProduct.from_rows(gram))
