"""Matrices over the residue field F_q and their multiplicative Jordan decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce as _fold

from sympy import factorint

from . import _linalg
from .errors import Singular
from .padic import FqElem, PadicCtx

__all__ = [
    "MatFq",
    "FinJordanPair",
    "charpoly_fq",
    "is_unipotent_fq",
    "is_semisimple_fq",
    "minimal_polynomial_fq",
    "fin_jordan",
    "mult_order",
    "exponent_bound",
]


class MatFq:
    """Square matrix with entries in F_q."""

    __slots__ = ("ctx", "n", "rows")

    def __init__(self, ctx: PadicCtx, rows):
        rows = tuple(tuple(ctx.fq(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatFq is immutable")

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, _linalg.identity(n, 0, 1))

    @classmethod
    def _from_coeffs(cls, ctx, coeff_rows):
        return cls(ctx, [[FqElem(ctx, c) for c in row] for row in coeff_rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _zero(self):
        return FqElem(self.ctx, (0,) * self.ctx.d)

    def __matmul__(self, other: "MatFq") -> "MatFq":
        return MatFq(self.ctx, _linalg.matmul(self.rows, other.rows, self._zero()))

    def __add__(self, other):
        return MatFq(self.ctx, [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return MatFq(self.ctx, [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __pow__(self, e: int) -> "MatFq":
        if e < 0:
            raise ValueError("negative powers are not supported")
        p = self.ctx.p
        arr = _linalg.regular_matrix(
            [[x.coeffs for x in row] for row in self.rows], self.ctx.modulus, p
        )
        res = _linalg.regular_pow(arr, e, p)
        return MatFq._from_coeffs(self.ctx, _linalg.from_regular(res, self.n, self.ctx.d))

    def __eq__(self, other):
        if not isinstance(other, MatFq):
            return NotImplemented
        return self.ctx.field_key == other.ctx.field_key and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(x.coeffs for x in r) for r in self.rows))

    def is_identity(self) -> bool:
        return self == MatFq.identity(self.ctx, self.n)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def det(self) -> FqElem:
        return charpoly_fq(self)[0] * (-1) ** self.n

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[list(x.coeffs) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, ctx, obj):
        return cls(ctx, [[ctx.fq(x) if isinstance(x, list) else int(x) for x in r] for r in obj["entries"]])

    def __repr__(self):
        if self.ctx.d == 1:
            body = [[x.coeffs[0] for x in r] for r in self.rows]
        else:
            body = [[list(x.coeffs) for x in r] for r in self.rows]
        return f"MatFq({body}, q={self.ctx.q})"


@dataclass(frozen=True)
class FinJordanPair:
    s: MatFq
    u: MatFq
    exponents: tuple


def charpoly_fq(g: MatFq) -> list:
    """det(x - g) over F_q, constant term first."""
    zero = g._zero()
    return _linalg.berkowitz(g.rows, zero, zero + 1)


def is_unipotent_fq(g: MatFq) -> bool:
    one = MatFq.identity(g.ctx, g.n)
    return ((g - one) ** g.n).is_zero()


def minimal_polynomial_fq(g: MatFq) -> list:
    """Monic minimal polynomial, from the first linear dependence among powers of g."""
    n, ctx = g.n, g.ctx
    zero = g._zero()
    one = zero + 1
    # echelon rows: (vector, combination of powers that produced it)
    basis = []
    power = MatFq.identity(ctx, n)
    for m in range(n + 1):
        vec = [x for r in power.rows for x in r]
        combo = [zero] * m + [one]
        for pivot, bvec, bcombo in basis:
            c = vec[pivot]
            if not c.is_zero():
                vec = [x - c * y for x, y in zip(vec, bvec)]
                padded = bcombo + [zero] * (len(combo) - len(bcombo))
                combo = [x - c * y for x, y in zip(combo, padded)]
        nz = next((i for i, x in enumerate(vec) if not x.is_zero()), None)
        if nz is None:
            return _linalg.poly_trim(combo)
        inv = vec[nz].inverse()
        basis.append((nz, [x * inv for x in vec], [x * inv for x in combo]))
        power = power @ g
    raise AssertionError("Cayley-Hamilton violated")


def is_semisimple_fq(g: MatFq) -> bool:
    """True iff the minimal polynomial of g is squarefree."""
    if g.det().is_zero():
        raise Singular("matrix is singular over F_q")
    m = minimal_polynomial_fq(g)
    return len(_linalg.poly_gcd(m, _linalg.poly_derivative(m))) == 1


def exponent_bound(q: int, n: int) -> int:
    """lcm of q^e - 1 for 1 <= e <= n: every semisimple order in GL_n(F_q) divides it."""
    return _fold(math.lcm, (q**e - 1 for e in range(1, n + 1)), 1)


def unipotent_exponent(p: int, n: int) -> int:
    """Least a with p^a >= n."""
    a = 0
    while p**a < n:
        a += 1
    return a


def fin_jordan(g: MatFq) -> FinJordanPair:
    """Multiplicative Jordan decomposition g = s u via CRT powers of g."""
    if g.det().is_zero():
        raise Singular("matrix is singular over F_q")
    p = g.ctx.p
    big_m = exponent_bound(g.ctx.q, g.n)
    pa = p ** unipotent_exponent(p, g.n)
    c_s = _linalg.crt_exponent(pa, big_m)
    c_u = _linalg.crt_exponent(big_m, pa)
    return FinJordanPair(g**c_s, g**c_u, (c_s, c_u))


def mult_order(g: MatFq) -> int:
    """Multiplicative order, by descending from the exponent bound prime by prime."""
    if g.det().is_zero():
        raise Singular("matrix is singular over F_q")
    p = g.ctx.p
    bound = p ** unipotent_exponent(p, g.n) * exponent_bound(g.ctx.q, g.n)
    order = bound
    for ell in factorint(bound):
        while order % ell == 0 and (g ** (order // ell)).is_identity():
            order //= ell
    return order
