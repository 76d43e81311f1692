"""Matrices over Z_q / Q_q, boundedness, and lattices in Hermite normal form.

A :class:`MatQq` stores ``p^(-scale) * body`` with ``body`` over Z_q mod p^k,
together with one absolute precision ``prec`` for the whole matrix: the true
matrix lies in ``value + p^prec M_n(O)``.  Internally the stored
representative is treated as an exact matrix over the number field
Q[x]/(f), so conjugations and inverses lose nothing beyond what ``prec``
already accounts for.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import _linalg
from .errors import (
    NotBounded,
    PrecisionInsufficient,
    RankDeficient,
    Singular,
)
from .ffield import MatFq
from .padic import PadicCtx, QqElem, ZqElem, valuation_int

__all__ = [
    "MatQq",
    "Lattice",
    "charpoly_zq",
    "is_bounded",
    "stable_lattice",
    "hnf",
    "lattice_stabilizes",
    "conjugate_into_integral",
    "integral_frame",
    "standard_lattice",
]


def _vp_fraction(c: Fraction, p: int) -> Optional[int]:
    if c == 0:
        return None
    return valuation_int(c.numerator, p) - valuation_int(c.denominator, p)


class _K:
    """Exact element of Q[x]/(f), f the integer lift of the context modulus."""

    __slots__ = ("f", "c")

    def __init__(self, f, coeffs):
        self.f = f
        self.c = tuple(coeffs)

    @classmethod
    def of(cls, ctx: PadicCtx, value) -> "_K":
        d = ctx.d
        if isinstance(value, _K):
            return value
        if isinstance(value, ZqElem):
            return cls(ctx.modulus, [Fraction(x) for x in value.coeffs])
        if isinstance(value, QqElem):
            if value.unit is None:
                return cls(ctx.modulus, [Fraction(0)] * d)
            return _scale(cls.of(ctx, value.unit), ctx.p, value.v)
        if isinstance(value, (int, Fraction)):
            return cls(ctx.modulus, [Fraction(value)] + [Fraction(0)] * (d - 1))
        coeffs = [Fraction(x) for x in value]
        return cls(ctx.modulus, coeffs + [Fraction(0)] * (d - len(coeffs)))

    def _new(self, coeffs):
        return _K(self.f, coeffs)

    def __add__(self, o):
        return self._new(x + y for x, y in zip(self.c, o.c))

    def __sub__(self, o):
        return self._new(x - y for x, y in zip(self.c, o.c))

    def __neg__(self):
        return self._new(-x for x in self.c)

    def __mul__(self, o):
        if isinstance(o, int):
            return self._new(x * o for x in self.c)
        return self._new(_polymulmod(self.c, o.c, self.f))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.c)

    def valuation(self, p: int) -> Optional[int]:
        vals = [_vp_fraction(x, p) for x in self.c if x]
        return min(vals) if vals else None

    def inverse(self) -> "_K":
        d = len(self.f) - 1
        if d == 1:
            return self._new([1 / self.c[0]])
        g, s = _q_xgcd(list(self.c), [Fraction(x) for x in self.f])
        inv = 1 / g[0]
        s = [x * inv for x in s] + [Fraction(0)] * d
        return self._new(s[:d])

    def __eq__(self, o):
        return isinstance(o, _K) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"_K({[str(x) for x in self.c]})"


def _scale(x: _K, p: int, e: int) -> _K:
    factor = Fraction(p) ** e
    return x._new(c * factor for c in x.c)


def _polymulmod(a, b, f):
    d = len(f) - 1
    if d == 1:
        return (a[0] * b[0],)
    prod = [Fraction(0)] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for top in range(2 * d - 2, d - 1, -1):
        c = prod[top]
        if c:
            for j in range(d):
                prod[top - d + j] -= c * f[j]
    return tuple(prod[:d])


def _q_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _q_xgcd(a, b):
    """(g, s) with s*a = g mod b over Q[x]."""
    r0, r1 = _q_trim(a), _q_trim(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        quot = [Fraction(0)] * max(len(r0) - len(r1) + 1, 1)
        rem = list(r0)
        while len(rem) >= len(r1) and rem:
            shift = len(rem) - len(r1)
            c = rem[-1] / r1[-1]
            quot[shift] = c
            for i, y in enumerate(r1):
                rem[shift + i] -= c * y
            rem = _q_trim(rem)
        r0, r1 = r1, rem
        prod = [Fraction(0)] * (len(quot) + len(s1))
        for i, x in enumerate(quot):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        n = max(len(s0), len(prod))
        s0, s1 = s1, _q_trim(
            [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0) for i in range(n)]
        )
    return r0, s0


def _to_zq(ctx: PadicCtx, x: _K, k: Optional[int] = None) -> ZqElem:
    """Reduce a p-integral number field element mod p^k."""
    mod = ctx.p ** (k or ctx.k)
    coeffs = []
    for c in x.c:
        if c.denominator % ctx.p == 0:
            raise ValueError("element is not p-integral")
        coeffs.append(c.numerator * pow(c.denominator, -1, mod) % mod)
    return ZqElem(ctx, coeffs)


def _mat_valuation(rows, p) -> Optional[int]:
    vals = [x.valuation(p) for r in rows for x in r if not x.is_zero()]
    return min(vals) if vals else None


def _exact_inverse(rows):
    """Gauss-Jordan inverse over the number field; None if singular."""
    n = len(rows)
    zero = rows[0][0] - rows[0][0]
    one = zero._new([Fraction(1)] + [Fraction(0)] * (len(zero.c) - 1))
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(r[n:]) for r in a)


class MatQq:
    """Square matrix over Q_q, stored as ``p^(-scale) * body``.

    ``prec`` is the absolute precision: entries are known modulo p^prec.
    It defaults to ``k - scale`` and never exceeds it.
    """

    __slots__ = ("ctx", "n", "scale", "body", "prec")

    def __init__(self, ctx: PadicCtx, body, scale: int = 0, prec: Optional[int] = None):
        body = [[ctx.zq(x) for x in row] for row in body]
        n = len(body)
        if n == 0 or any(len(r) != n for r in body):
            raise ValueError("matrix must be square and non-empty")
        if prec is None:
            prec = ctx.k - scale
        p = ctx.p
        while scale > 0 and all(x.valuation() >= 1 for r in body for x in r):
            body = [[ZqElem(ctx, (c // p for c in x.coeffs)) for x in r] for r in body]
            scale -= 1
        if scale < 0:
            factor = p**-scale
            body = [[x * factor for x in r] for r in body]
            scale = 0
        sets = object.__setattr__
        sets(self, "ctx", ctx)
        sets(self, "n", n)
        sets(self, "scale", scale)
        sets(self, "body", tuple(tuple(r) for r in body))
        sets(self, "prec", min(prec, ctx.k - scale))

    def __setattr__(self, name, value):
        raise AttributeError("MatQq is immutable")

    __hash__ = None

    # construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, ctx: PadicCtx, rows, prec: Optional[int] = None) -> "MatQq":
        """Build from ints, Fractions with p-power denominators, or Z_q/Q_q elements."""
        exact = [[_K.of(ctx, x) for x in r] for r in rows]
        return cls._from_exact(ctx, exact, prec)

    @classmethod
    def _from_exact(cls, ctx: PadicCtx, rows, prec: Optional[int] = None) -> "MatQq":
        v = _mat_valuation(rows, ctx.p)
        scale = max(0, -v) if v is not None else 0
        body = [[_to_zq(ctx, _scale(x, ctx.p, scale)) for x in r] for r in rows]
        if prec is None:
            prec = ctx.k - scale
        return cls(ctx, body, scale, prec)

    @classmethod
    def identity(cls, ctx: PadicCtx, n: int) -> "MatQq":
        return cls(ctx, _linalg.identity(n, 0, 1))

    @classmethod
    def diagonal(cls, ctx: PadicCtx, entries) -> "MatQq":
        n = len(entries)
        return cls.from_rows(ctx, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def exact(self):
        return tuple(
            tuple(_scale(_K.of(self.ctx, x), self.ctx.p, -self.scale) for x in r) for r in self.body
        )

    def entry(self, i: int, j: int) -> QqElem:
        x = _K.of(self.ctx, self.body[i][j])
        v = x.valuation(self.ctx.p)
        if v is None or v - self.scale >= self.prec:
            return QqElem(self.ctx, self.prec)
        return QqElem(self.ctx, v - self.scale, _to_zq(self.ctx, _scale(x, self.ctx.p, -v)))

    # arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MatQq):
            raise TypeError("expected MatQq")
        if self.ctx.field_key != other.ctx.field_key or self.n != other.n:
            raise ValueError("incompatible matrices")

    def __matmul__(self, other: "MatQq") -> "MatQq":
        self._check(other)
        prod = _linalg.matmul(self.exact(), other.exact(), _K.of(self.ctx, 0))
        prec = min(self.prec - other.scale, other.prec - self.scale)
        return MatQq._from_exact(self.ctx, prod, prec)

    def __add__(self, other: "MatQq") -> "MatQq":
        self._check(other)
        rows = [[x + y for x, y in zip(r, s)] for r, s in zip(self.exact(), other.exact())]
        return MatQq._from_exact(self.ctx, rows, min(self.prec, other.prec))

    def __sub__(self, other: "MatQq") -> "MatQq":
        self._check(other)
        rows = [[x - y for x, y in zip(r, s)] for r, s in zip(self.exact(), other.exact())]
        return MatQq._from_exact(self.ctx, rows, min(self.prec, other.prec))

    def scale_by_p(self, r: int) -> "MatQq":
        """p^r times this matrix."""
        return MatQq(self.ctx, self.body, self.scale - r, self.prec + r)

    def __pow__(self, e: int) -> "MatQq":
        if e < 0:
            return self.inverse() ** (-e)
        if self.scale == 0:
            # integral: use the regular-representation kernel
            mod = self.ctx.p ** max(self.prec, 1)
            arr = _linalg.regular_matrix(
                [[x.coeffs for x in r] for r in self.body], self.ctx.modulus, mod
            )
            res = _linalg.regular_pow(arr, e, mod)
            return MatQq(self.ctx, _linalg.from_regular(res, self.n, self.ctx.d), 0, self.prec)
        result, base = MatQq.identity(self.ctx, self.n), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def inverse(self) -> "MatQq":
        """Exact inverse of the representative; precision degrades by twice the inverse's scale."""
        inv = _exact_inverse(self.exact())
        det_v, det_prec = self._det_certificate()
        if inv is None or det_v is None or det_v >= det_prec:
            raise Singular("invertibility cannot be certified at this precision")
        v = _mat_valuation(inv, self.ctx.p)
        t = -v if v is not None else 0
        return MatQq._from_exact(self.ctx, inv, self.prec - 2 * t)

    def conjugate_by(self, h: "MatQq") -> "MatQq":
        """h^-1 * self * h."""
        return h.inverse() @ self @ h

    def _det_certificate(self):
        cp, precs = _charpoly_exact(self)
        return cp[0].valuation(self.ctx.p), precs[0]

    # predicates --------------------------------------------------------

    def congruent(self, other: "MatQq", m: int) -> bool:
        """Representatives agree modulo p^m."""
        self._check(other)
        for r, s in zip(self.exact(), other.exact()):
            for x, y in zip(r, s):
                v = (x - y).valuation(self.ctx.p)
                if v is not None and v < m:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, MatQq):
            return NotImplemented
        if self.ctx.field_key != other.ctx.field_key or self.n != other.n:
            return False
        return self.congruent(other, min(self.prec, other.prec))

    def is_integral(self) -> bool:
        return self.scale == 0

    def is_identity(self, m: Optional[int] = None) -> bool:
        m = self.prec if m is None else m
        return self.congruent(MatQq.identity(self.ctx, self.n), m)

    def is_diagonal(self) -> bool:
        return all(
            self.entry(i, j).is_zero for i in range(self.n) for j in range(self.n) if i != j
        )

    def reduce(self) -> MatFq:
        if self.scale != 0:
            raise ValueError("matrix is not integral")
        if self.prec < 1:
            raise PrecisionInsufficient("matrix not known modulo p")
        return MatFq(self.ctx, [[x.reduce() for x in r] for r in self.body])

    def with_prec(self, prec: int) -> "MatQq":
        return MatQq(self.ctx, self.body, self.scale, min(prec, self.prec))

    def block_diag(self, other: "MatQq") -> "MatQq":
        a, b = self.exact(), other.exact()
        zero = _K.of(self.ctx, 0)
        n, m = self.n, other.n
        rows = [list(r) + [zero] * m for r in a] + [[zero] * n + list(r) for r in b]
        prec = min(self.prec, other.prec)
        return MatQq._from_exact(self.ctx, rows, prec)

    def in_z_p(self) -> bool:
        """All entries have vanishing higher coefficients (lie in Q_p)."""
        return all(not any(x.coeffs[1:]) for r in self.body for x in r)

    # serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "scale": self.scale,
            "prec": self.prec,
            "entries": [[x.to_json() for x in r] for r in self.body],
        }

    @classmethod
    def from_json(cls, ctx: PadicCtx, obj: dict) -> "MatQq":
        body = [[ZqElem.from_json(ctx, x) for x in r] for r in obj["entries"]]
        if "n" in obj and int(obj["n"]) != len(body):
            raise ValueError("declared n does not match entries")
        prec = obj.get("prec")
        return cls(ctx, body, int(obj.get("scale", 0)), None if prec is None else int(prec))

    def __repr__(self):
        if self.ctx.d == 1:
            body = [[x.coeffs[0] for x in r] for r in self.body]
        else:
            body = [[list(x.coeffs) for x in r] for r in self.body]
        pre = f"p^-{self.scale} * " if self.scale else ""
        return f"MatQq({pre}{body} + O(p^{self.prec}))"


# --- characteristic polynomial and boundedness ------------------------------


def _charpoly_exact(g: MatQq):
    """Exact char poly of the representative and the absolute precision of each coefficient.

    The coefficient of x^i is a signed sum of (n-i)-minors; perturbing g
    by p^prec moves it by at most p^(prec - (n-i-1)*scale).
    """
    zero = _K.of(g.ctx, 0)
    coeffs = _linalg.berkowitz(g.exact(), zero, _K.of(g.ctx, 1))
    n, s = g.n, g.scale
    precs = [g.prec - max(n - i - 1, 0) * s for i in range(n)] + [None]
    return coeffs, precs


def charpoly_zq(g: MatQq) -> list:
    """det(x - g) with Q_q coefficients, constant term first."""
    coeffs, precs = _charpoly_exact(g)
    out = []
    p = g.ctx.p
    for c, prec in zip(coeffs, precs):
        v = c.valuation(p)
        if prec is None:
            out.append(QqElem(g.ctx, v, _to_zq(g.ctx, _scale(c, p, -v))))
        elif v is None or v >= prec:
            if prec < 0:
                raise PrecisionInsufficient("char poly coefficient not known to integral precision")
            out.append(QqElem(g.ctx, prec))
        else:
            out.append(QqElem(g.ctx, v, _to_zq(g.ctx, _scale(c, p, -v))))
    return out


def _certified_valuations(g: MatQq):
    """(valuation or None, precision) per coefficient; None means 'at least precision'."""
    coeffs, precs = _charpoly_exact(g)
    out = []
    for c, prec in zip(coeffs[:-1], precs[:-1]):
        v = c.valuation(g.ctx.p)
        out.append((v if v is not None and v < prec else None, prec))
    return out


def is_bounded(g: MatQq) -> bool:
    """Integral characteristic polynomial with unit determinant."""
    vals = _certified_valuations(g)
    det_v, det_prec = vals[0]
    if det_v is None:
        raise Singular("determinant vanishes at the available precision")
    if det_v != 0:
        return False
    for v, prec in vals[1:]:
        if v is not None:
            if v < 0:
                return False
        elif prec < 0:
            raise PrecisionInsufficient("cannot certify integrality of the char poly")
    return True


# --- lattices ---------------------------------------------------------------


def _canonical_mod(x: _K, p: int, e: int) -> _K:
    """Canonical representative of x modulo p^e O, coefficientwise in [0, p^e)."""
    out = []
    for c in x.c:
        v = _vp_fraction(c, p)
        if v is None or v >= e:
            out.append(Fraction(0))
            continue
        t = max(0, -v)
        scaled = c * p**t
        m = scaled.numerator * pow(scaled.denominator, -1, p ** (e + t)) % p ** (e + t)
        out.append(Fraction(m, p**t))
    return x._new(out)


class Lattice:
    """Full-rank O-lattice in Q_q^n up to homothety, in column Hermite normal form.

    ``basis[i][j]`` is row i of basis column j: upper triangular, diagonal
    ``p^exponents[i]`` with minimum exponent 0, and the entry in row i of a
    later column is the canonical representative modulo p^exponents[i].
    """

    __slots__ = ("ctx", "n", "basis", "exponents")

    def __init__(self, ctx: PadicCtx, basis, exponents):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "n", len(exponents))
        object.__setattr__(self, "basis", tuple(tuple(r) for r in basis))
        object.__setattr__(self, "exponents", tuple(exponents))

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (
            self.ctx.field_key == other.ctx.field_key
            and self.exponents == other.exponents
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.exponents, self.basis))

    def matrix(self) -> MatQq:
        """Basis as an exact MatQq (precision is the context's)."""
        return MatQq._from_exact(self.ctx, self.basis)

    def _conj(self, rows, left, right):
        zero = _K.of(self.ctx, 0)
        return _linalg.matmul(_linalg.matmul(left, rows, zero), right, zero)

    def _loss(self) -> int:
        """Precision lost by conjugating with the (exact) basis."""
        p = self.ctx.p
        binv = _exact_inverse(self.basis)
        return -min(_mat_valuation(self.basis, p), 0) - min(_mat_valuation(binv, p), 0)

    def frame(self, g: "MatQq") -> "MatQq":
        """B^-1 g B for the basis B."""
        conj, prec = _frame(g, self)
        return MatQq._from_exact(g.ctx, conj, prec)

    def unframe(self, h: "MatQq") -> "MatQq":
        """B h B^-1 for the basis B."""
        binv = _exact_inverse(self.basis)
        rows = self._conj(h.exact(), self.basis, binv)
        return MatQq._from_exact(h.ctx, rows, h.prec - self._loss())

    def columns(self):
        return [[self.basis[i][j] for i in range(self.n)] for j in range(self.n)]

    @property
    def max_exponent(self) -> int:
        return max(self.exponents)

    def is_standard(self) -> bool:
        return self == standard_lattice(self.ctx, self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "exponents": list(self.exponents),
            "basis": [[[str(c) for c in x.c] for x in r] for r in self.basis],
        }

    def __repr__(self):
        if self.ctx.d == 1:
            body = [[str(x.c[0]) for x in r] for r in self.basis]
        else:
            body = [[[str(c) for c in x.c] for x in r] for r in self.basis]
        return f"Lattice({body})"


def standard_lattice(ctx: PadicCtx, n: int) -> Lattice:
    one, zero = _K.of(ctx, 1), _K.of(ctx, 0)
    basis = [[one if i == j else zero for j in range(n)] for i in range(n)]
    return Lattice(ctx, basis, (0,) * n)


def _as_exact_vector(ctx, col):
    return [_K.of(ctx, x) for x in col]


def _hnf_mod(ctx: PadicCtx, gens, n: int, w: int):
    """Column HNF of span(gens) + p^w O^n, computed exactly in Z_q / p^(w+1).

    ``gens`` are integer coefficient vectors (lists of d-tuples).
    Returns (basis columns, diagonal exponents).
    """
    p, d = ctx.p, ctx.d
    wctx = ctx.with_precision(w + 1)

    def el(c):
        return ZqElem(wctx, c)

    work = [[el(x) for x in g] for g in gens]
    for i in range(n):
        work.append([el((p**w,) + (0,) * (d - 1)) if r == i else el((0,) * d) for r in range(n)])
    basis = [None] * n
    exps = [0] * n
    for r in reversed(range(n)):
        work = [g for g in work if any(not x.is_zero() for x in g)]
        best, best_v = None, None
        for idx, g in enumerate(work):
            if not g[r].is_zero():
                v = g[r].valuation()
                if best is None or v < best_v:
                    best, best_v = idx, v
        pivot = work.pop(best)
        unit = pivot[r].divide_by_p(best_v)
        inv = unit.inverse()
        pivot = [x * inv for x in pivot]
        new_work = []
        for g in work:
            x = g[r]
            if not x.is_zero():
                lam = x.divide_by_p(best_v)
                g = [a - lam * b for a, b in zip(g, pivot)]
            new_work.append(g)
        work = new_work
        basis[r] = pivot
        exps[r] = best_v
    # reduce entries above the diagonal
    for j in range(n):
        for i in reversed(range(j)):
            pe = p ** exps[i]
            lam = el(tuple(c // pe for c in basis[j][i].coeffs))
            if not lam.is_zero():
                basis[j] = [a - lam * b for a, b in zip(basis[j], basis[i])]
    return basis, exps


def _lattice_from_generators(ctx: PadicCtx, cols, w_start: int, w_cap: int) -> Lattice:
    n = len(cols[0])
    p = ctx.p
    v = _mat_valuation(cols, p)
    if v is None:
        raise RankDeficient("all generators vanish")
    # shift so that generators are integral with minimum valuation 0
    gens = []
    for col in cols:
        vec = []
        for x in col:
            y = _scale(x, p, -v)
            vec.append(y)
        gens.append(vec)
    w = max(w_start, 2)
    while True:
        mod = p ** (w + 1)
        int_gens = []
        for vec in gens:
            row = []
            for y in vec:
                cs = []
                for c in y.c:
                    cs.append(c.numerator * pow(c.denominator, -1, mod) % mod)
                row.append(tuple(cs))
            int_gens.append(row)
        basis, exps = _hnf_mod(ctx, int_gens, n, w)
        # exact once sum(exps) < w: then p^w O^n lies in p * span, and Nakayama applies
        if sum(exps) < w:
            break
        if w >= w_cap:
            raise RankDeficient("generators do not span Q_q^n at the working precision")
        w *= 2
    tmin = min(exps)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = _K.of(ctx, basis[j][i].coeffs) if i <= j else _K.of(ctx, 0)
            row.append(_scale(x, p, -tmin))
        rows.append(row)
    exps = [e - tmin for e in exps]
    for j in range(n):
        for i in range(j):
            rows[i][j] = _canonical_mod(rows[i][j], p, exps[i])
    return Lattice(ctx, rows, exps)


def hnf(ctx: PadicCtx, cols: Sequence) -> Lattice:
    """Lattice spanned by the given column vectors (entries exact), in HNF."""
    cols = [_as_exact_vector(ctx, c) for c in cols]
    if not cols:
        raise RankDeficient("no generators")
    n = len(cols[0])
    return _lattice_from_generators(ctx, cols, ctx.k + n, 64 * (ctx.k + n) * n)


def stable_lattice(g: MatQq) -> Lattice:
    """The lattice sum of g^i O^n for 0 <= i < n, which g maps onto itself."""
    if not is_bounded(g):
        raise NotBounded("element does not stabilize a lattice")
    n = g.n
    if g.scale == 0:
        return standard_lattice(g.ctx, n)
    # the generators g^i e_j (i < n) carry errors of size p^(prec - (n-2)*scale),
    # already inside p * O^n once is_bounded has certified the determinant
    rows = g.exact()
    power = _linalg.identity(n, _K.of(g.ctx, 0), _K.of(g.ctx, 1))
    cols = []
    for _ in range(n):
        cols.extend([[power[i][j] for i in range(n)] for j in range(n)])
        power = _linalg.matmul(power, rows, _K.of(g.ctx, 0))
    return _lattice_from_generators(g.ctx, cols, g.ctx.k + n * g.scale, 64 * (g.ctx.k + n * g.scale) * n)


def _frame(g: MatQq, lattice: Lattice, source: Optional[Lattice] = None):
    """T^-1 g T with T = B_source^-1 B_lattice (exact rows), and its precision.

    ``source`` is the basis g is written in; the standard one by default.
    """
    p, zero = g.ctx.p, _K.of(g.ctx, 0)
    t = lattice.basis
    if source is not None:
        t = _linalg.matmul(_exact_inverse(source.basis), t, zero)
    tinv = _exact_inverse(t)
    conj = _linalg.matmul(_linalg.matmul(tinv, g.exact(), zero), t, zero)
    loss = -min(_mat_valuation(t, p), 0) - min(_mat_valuation(tinv, p), 0)
    return conj, g.prec - loss


def lattice_stabilizes(g: MatQq, lattice: Lattice, source: Optional[Lattice] = None) -> bool:
    """g L = L, tested as integrality and unit determinant of B^-1 g B.

    With ``source`` given, g is read in that lattice's basis.
    """
    conj, prec = _frame(g, lattice, source)
    p = g.ctx.p
    if prec < 1:
        raise PrecisionInsufficient("frame precision below 1")
    for r in conj:
        for x in r:
            v = x.valuation(p)
            if v is not None and v < 0:
                return False
    h = MatQq._from_exact(g.ctx, conj, prec)
    # integral with singular reduction: g L is a proper sublattice of L
    return not h.reduce().det().is_zero()


def conjugate_into_integral(g: MatQq):
    """(B, h) with B a stable lattice basis and h = B^-1 g B in GL_n(O).

    ``h.prec`` reports the precision surviving the conjugation.
    """
    lattice, h = integral_frame(g)
    return lattice.matrix(), h


def integral_frame(g: MatQq):
    """Like :func:`conjugate_into_integral` but returns the Lattice itself."""
    lattice = stable_lattice(g)
    conj, prec = _frame(g, lattice)
    if prec < 1:
        raise PrecisionInsufficient(f"conjugate known only to precision {prec}")
    h = MatQq._from_exact(g.ctx, conj, prec)
    if h.scale != 0:
        raise PrecisionInsufficient("conjugate is not integral at the available precision")
    return lattice, h
