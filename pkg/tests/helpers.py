"""Shared generators for randomized tests.

Everything here produces exact rational data.  Random SPD matrices come
from A^T A with a triangular A whose diagonal is strictly positive, so
positive definiteness holds by construction.
"""

import random
from fractions import Fraction

from weylkit import catalog, lie
from weylkit.constructors import (derivations, heisenberg, n2_heisenberg,
                                  standard_symplectic)
from weylkit.errors import WeylkitError
from weylkit.metric import InnerProduct, MetricLieAlgebra


def random_spd(rng: random.Random, n: int) -> InnerProduct:
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = Fraction(rng.randint(1, 4))
        for j in range(i + 1, n):
            a[i][j] = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
    g = [[sum(a[k][i] * a[k][j] for k in range(n)) for j in range(n)]
         for i in range(n)]
    return InnerProduct.from_rows(g)


def rand_antisym(rng: random.Random, n: int):
    f = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-2, 2))
            f[i][j] = v
            f[j][i] = -v
    return f


def random_invertible(rng: random.Random, n: int):
    # shears applied to a signed diagonal; always invertible
    p = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        p[i][i] = Fraction(rng.choice([1, -1, 2]), rng.choice([1, 2]))
    for _ in range(2 * n):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = Fraction(rng.randint(-2, 2))
        p[i] = [x + c * y for x, y in zip(p[i], p[j])]
    return p


def random_combo(rng: random.Random, mats, n: int):
    coeffs = [rng.randint(-2, 2) for _ in mats]
    return [[sum(c * m[i][j] for c, m in zip(coeffs, mats))
             for j in range(n)] for i in range(n)]


_H3 = heisenberg(standard_symplectic(2))
_H5 = heisenberg(standard_symplectic(4))


def random_algebra(rng: random.Random) -> lie.LieAlgebra:
    """A valid Lie algebra of dimension at most 6, in a scrambled basis."""
    kind = rng.randrange(6)
    if kind == 0:
        alg = lie.abelian(rng.randint(1, 6))
    elif kind == 1:
        alg = _H3 if rng.random() < 0.5 else _H5
    elif kind == 2:
        fid = rng.choice(catalog.families())
        form = rng.choice(catalog.family_def(fid).forms())
        alg = catalog.build(fid, catalog.random_params(rng=rng, fid=fid,
                                                       form=form),
                            form=form).algebra
    elif kind == 3:
        while True:
            try:
                alg = n2_heisenberg(rand_antisym(rng, 4), rand_antisym(rng, 4))
                break
            except WeylkitError:
                continue
    elif kind == 4:
        d = random_combo(rng, derivations(_H3), 3)
        alg = lie.semidirect_sum(lie.abelian(1), _H3, [d])
    else:
        while True:
            try:
                alg = heisenberg(rand_antisym(rng, 4))
                break
            except WeylkitError:
                continue
    if rng.random() < 0.6:
        alg = lie.transform(alg, random_invertible(rng, alg.dim))
    return alg


def random_metric_algebra(rng: random.Random) -> MetricLieAlgebra:
    alg = random_algebra(rng)
    return MetricLieAlgebra(algebra=alg, metric=random_spd(rng, alg.dim))
