"""Seeded random inputs: integral units, bounded non-integral elements, lattices.

All generators take a :class:`random.Random` so that runs are reproducible
from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .matq import Lattice, MatQq, hnf
from .padic import PadicCtx, ZqElem, teichmuller
from .profinite import Perm

__all__ = [
    "random_zq",
    "random_unit",
    "random_elementary",
    "random_teichmuller_diagonal",
    "random_integral_gl",
    "random_hnf_lattice",
    "random_bounded",
    "perturbed_lattice",
    "permutation_matrix",
    "random_context",
]


def random_zq(ctx: PadicCtx, rng: random.Random) -> ZqElem:
    return ZqElem(ctx, [rng.randrange(ctx.pk) for _ in range(ctx.d)])


def random_unit(ctx: PadicCtx, rng: random.Random) -> ZqElem:
    while True:
        x = random_zq(ctx, rng)
        if x.is_unit():
            return x


def _nonzero_residue(ctx, rng):
    while True:
        a = ctx.fq([rng.randrange(ctx.p) for _ in range(ctx.d)])
        if not a.is_zero():
            return a


def random_elementary(ctx: PadicCtx, n: int, rng: random.Random) -> MatQq:
    """A transvection 1 + lambda E_ij, or a unit scaling of one coordinate."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 1 or rng.random() < 0.25:
        i = rng.randrange(n)
        rows[i][i] = random_unit(ctx, rng)
    else:
        i, j = rng.sample(range(n), 2)
        rows[i][j] = random_zq(ctx, rng)
    return MatQq(ctx, rows)


def random_teichmuller_diagonal(ctx: PadicCtx, n: int, rng: random.Random, pool=None) -> MatQq:
    """Diagonal of Teichmuller lifts; ``pool`` restricts the residues used."""
    entries = []
    for _ in range(n):
        a = rng.choice(pool) if pool else _nonzero_residue(ctx, rng)
        entries.append(teichmuller(a, ctx))
    return MatQq(ctx, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def random_integral_gl(ctx: PadicCtx, n: int, rng: random.Random) -> MatQq:
    """Random element of GL_n(O).

    Half the draws are plain products of elementary matrices and a
    Teichmuller diagonal; the rest are conjugates of (Teichmuller diagonal
    with repeated residues) * (upper unitriangular), so that reductions with
    nontrivial unipotent part occur often.
    """
    g = random_teichmuller_diagonal(ctx, n, rng)
    if rng.random() < 0.5:
        for _ in range(2 * n + 1):
            g = g @ random_elementary(ctx, n, rng)
        return g
    pool = [_nonzero_residue(ctx, rng) for _ in range(max(1, n // 2))]
    d = random_teichmuller_diagonal(ctx, n, rng, pool)
    upper = [
        [1 if i == j else (random_zq(ctx, rng) if j > i else 0) for j in range(n)]
        for i in range(n)
    ]
    core = d @ MatQq(ctx, upper)
    h = MatQq.identity(ctx, n)
    for _ in range(2 * n):
        h = h @ random_elementary(ctx, n, rng)
    return h @ core @ h.inverse()


def random_hnf_lattice(ctx: PadicCtx, n: int, rng: random.Random, max_exp: int = 2) -> Lattice:
    """Random lattice class with diagonal exponents in [0, max_exp]."""
    exps = [rng.randint(0, max_exp) for _ in range(n)]
    low = min(exps)
    exps = [e - low for e in exps]
    cols = []
    for j in range(n):
        col = []
        for i in range(n):
            if i == j:
                col.append(ctx.p ** exps[i])
            elif i < j:
                num = rng.randrange(ctx.p ** (exps[i] + 1))
                col.append(Fraction(num, ctx.p) if rng.random() < 0.3 else num)
            else:
                col.append(0)
        cols.append(col)
    return hnf(ctx, cols)


def random_bounded(ctx: PadicCtx, n: int, rng: random.Random, max_exp: int = 2):
    """(g, lattice, u) with g = B u B^-1 bounded and usually non-integral.

    The representative of g is taken as the input itself, so g carries the
    full precision of the context rather than what survives conjugation.
    """
    lattice = random_hnf_lattice(ctx, n, rng, max_exp)
    u = random_integral_gl(ctx, n, rng)
    g = lattice.unframe(u)
    return MatQq(ctx, g.body, g.scale), lattice, u


def perturbed_lattice(lattice: Lattice, rng: random.Random) -> Lattice:
    """Image of the lattice under a random integral matrix times p-power diagonal."""
    ctx, n = lattice.ctx, lattice.n
    e = MatQq.identity(ctx, n)
    for _ in range(n):
        e = e @ random_elementary(ctx, n, rng)
    shift = MatQq.diagonal(ctx, [ctx.p ** rng.randint(0, 1) for _ in range(n)])
    m = lattice.matrix() @ shift @ e
    rows = m.exact()
    return hnf(ctx, [[rows[i][j] for i in range(n)] for j in range(n)])


def permutation_matrix(ctx: PadicCtx, perm: Perm) -> MatQq:
    """Matrix sending e_i to e_perm(i)."""
    n = perm.degree
    return MatQq(ctx, [[1 if perm(j) == i else 0 for j in range(n)] for i in range(n)])


def random_context(rng: random.Random, primes=(2, 3, 5, 7), max_d=2, max_k=8, min_k=2) -> PadicCtx:
    return PadicCtx(rng.choice(primes), rng.randint(1, max_d), rng.randint(min_k, max_k))
