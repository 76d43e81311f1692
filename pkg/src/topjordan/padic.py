"""Fixed-precision arithmetic in the unramified ring Z_q and its residue field.

Elements of Z_q = Z_p[x]/(f) are stored as coefficient tuples
``(c_0, ..., c_{d-1})`` reduced mod p^k, where ``f`` is the integer lift of
a monic irreducible polynomial over F_p (by default a Conway polynomial).
Residue field elements use the same layout with coefficients reduced mod p.
Everything is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ContextMismatch, InvalidContext, NonUnit, PrecisionInsufficient

__all__ = [
    "CONWAY_POLYNOMIALS",
    "PadicCtx",
    "FqElem",
    "ZqElem",
    "QqElem",
    "zq_arith",
    "zq_inv",
    "reduce",
    "teichmuller",
    "qq_normalize",
    "valuation_int",
]

# Coefficients listed constant term first, leading 1 last.
CONWAY_POLYNOMIALS = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (11, 1): (9, 1),
    (11, 2): (2, 7, 1),
    (11, 3): (9, 2, 0, 1),
    (11, 4): (2, 10, 8, 0, 1),
    (13, 1): (11, 1),
    (13, 2): (2, 12, 1),
    (13, 3): (11, 2, 0, 1),
    (13, 4): (2, 12, 3, 0, 1),
}


def valuation_int(n: int, p: int) -> Optional[int]:
    """p-adic valuation of an integer; ``None`` for zero."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# --- polynomials over F_p, as coefficient lists (low degree first) ---------


def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a, b, p):
    a = [c % p for c in a]
    b = _fp_trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    a = _fp_trim(a)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a = _fp_trim(a)
    return quot, a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _fp_trim([(x - y) % p for x, y in zip(a, b)])


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a), _fp_trim(b)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def _fp_xgcd(a, b, p):
    """Return (g, s) with s*a = g mod b."""
    r0, r1 = _fp_trim(a), _fp_trim(b)
    s0, s1 = [1], []
    while r1:
        q, r = _fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1, p), p)
    return r0, s0


def _fp_powmod(a, e, f, p):
    result = [1]
    base = _fp_divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _fp_divmod(_fp_mul(result, base, p), f, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), f, p)[1]
        e >>= 1
    return result


def is_irreducible_fp(f: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p via x^{p^i} - x gcds."""
    f = _fp_trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    power = x
    for i in range(1, d + 1):
        power = _fp_powmod(power, p, f, p)
        if i <= d // 2:
            g = _fp_gcd(f, _fp_sub(power, x, p), p)
            if len(g) > 1:
                return False
    return _fp_trim(_fp_sub(power, x, p)) == []


# --- Z/p^N [x] / (f) ------------------------------------------------------


def _mulmod(a, b, f, mod):
    """Product of coefficient tuples modulo the monic lift ``f`` and ``mod``."""
    d = len(f) - 1
    if d == 1:
        return ((a[0] * b[0]) % mod,)
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for top in range(2 * d - 2, d - 1, -1):
        c = prod[top]
        if c:
            base = top - d
            for j in range(d):
                prod[base + j] -= c * f[j]
    return tuple(c % mod for c in prod[:d])


@dataclass(frozen=True)
class PadicCtx:
    """Arithmetic context: prime ``p``, residue degree ``d``, precision ``k``.

    ``modulus`` is the full monic coefficient list of the defining
    polynomial over F_p, constant term first.  When omitted a Conway
    polynomial from the built-in table is used.
    """

    p: int
    d: int = 1
    k: int = 1
    modulus: Optional[tuple] = field(default=None)

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise InvalidContext(f"p={self.p!r} is not prime")
        if self.p >= 2**16:
            raise InvalidContext("p must be below 2^16")
        if self.d < 1:
            raise InvalidContext("residue degree must be >= 1")
        if self.k < 1:
            raise InvalidContext("precision k must be >= 1")
        if self.modulus is None:
            try:
                mod = CONWAY_POLYNOMIALS[(self.p, self.d)]
            except KeyError:
                raise InvalidContext(
                    f"no built-in modulus for p={self.p}, d={self.d}; supply one"
                ) from None
        else:
            mod = tuple(int(c) % self.p for c in self.modulus)
            if len(mod) != self.d + 1 or mod[-1] != 1:
                raise InvalidContext("modulus must be monic of degree d")
            if not is_irreducible_fp(mod, self.p):
                raise InvalidContext("modulus is reducible over F_p")
        object.__setattr__(self, "modulus", tuple(mod))

    @property
    def q(self) -> int:
        return self.p**self.d

    @property
    def field_key(self) -> tuple:
        return (self.p, self.modulus)

    @property
    def pk(self) -> int:
        return self.p**self.k

    def with_precision(self, k: int) -> "PadicCtx":
        return PadicCtx(self.p, self.d, k, self.modulus)

    # constructors -------------------------------------------------------

    def zq(self, value) -> "ZqElem":
        """Coerce an int, coefficient sequence, or element into Z_q."""
        if isinstance(value, ZqElem):
            if value.ctx.p != self.p or value.ctx.modulus != self.modulus:
                raise ContextMismatch("element belongs to another field")
            return ZqElem(self, value.coeffs)
        if isinstance(value, FqElem):
            return ZqElem(self, value.coeffs)
        if isinstance(value, int):
            return ZqElem(self, (value,) + (0,) * (self.d - 1))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) > self.d:
            raise ValueError("too many coefficients")
        return ZqElem(self, coeffs + (0,) * (self.d - len(coeffs)))

    def fq(self, value) -> "FqElem":
        if isinstance(value, (ZqElem, FqElem)):
            return FqElem(self, value.coeffs)
        if isinstance(value, int):
            return FqElem(self, (value,) + (0,) * (self.d - 1))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) > self.d:
            raise ValueError("too many coefficients")
        return FqElem(self, coeffs + (0,) * (self.d - len(coeffs)))

    def fq_elements(self):
        """Iterate over all q elements of the residue field."""
        for n in range(self.q):
            coeffs = []
            for _ in range(self.d):
                n, c = divmod(n, self.p)
                coeffs.append(c)
            yield FqElem(self, tuple(coeffs))

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "PadicCtx":
        modulus = obj.get("modulus")
        return cls(
            int(obj["p"]),
            int(obj.get("d", 1)),
            int(obj.get("k", 1)),
            tuple(int(c) for c in modulus) if modulus is not None else None,
        )


def _check_same(a, b):
    if a.ctx is not b.ctx and a._key(a.ctx) != b._key(b.ctx):
        raise ContextMismatch("operands live in different contexts")


class _Elem:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: PadicCtx, coeffs):
        mod = self._modulus(ctx)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(int(c) % mod for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _coerce(self, other):
        if isinstance(other, type(self)):
            _check_same(self, other)
            return other
        if isinstance(other, int):
            return type(self)(self.ctx, (other,) + (0,) * (self.ctx.d - 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return type(self)(self.ctx, (x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return type(self)(self.ctx, (x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return type(self)(self.ctx, (-x for x in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mod = self._modulus(self.ctx)
        return type(self)(self.ctx, _mulmod(self.coeffs, other.coeffs, self.ctx.modulus, mod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = type(self)(self.ctx, (1,) + (0,) * (self.ctx.d - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, type(self)):
            return NotImplemented
        return self._key(self.ctx) == other._key(other.ctx) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.ctx.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class FqElem(_Elem):
    """Element of the residue field F_q = F_p[x]/(modulus)."""

    __slots__ = ()

    @staticmethod
    def _modulus(ctx):
        return ctx.p

    @staticmethod
    def _key(ctx):
        return ctx.field_key

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        g, s = _fp_xgcd(self.coeffs, self.ctx.modulus, self.ctx.p)
        # g is a nonzero constant since the modulus is irreducible
        c = pow(g[0], -1, self.ctx.p)
        s = [x * c for x in s] + [0] * self.ctx.d
        return FqElem(self.ctx, s[: self.ctx.d])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def frobenius(self) -> "FqElem":
        return self ** self.ctx.p

    def __repr__(self):
        if self.ctx.d == 1:
            return f"FqElem({self.coeffs[0]})"
        return f"FqElem({list(self.coeffs)})"


class ZqElem(_Elem):
    """Element of Z_q known modulo p^k."""

    __slots__ = ()

    @staticmethod
    def _modulus(ctx):
        return ctx.pk

    @staticmethod
    def _key(ctx):
        return (ctx.field_key, ctx.k)

    def valuation(self) -> int:
        """Exact valuation, or ``k`` when the element is zero mod p^k."""
        vals = [valuation_int(c, self.ctx.p) for c in self.coeffs if c]
        return min(vals) if vals else self.ctx.k

    def is_unit(self) -> bool:
        return any(c % self.ctx.p for c in self.coeffs)

    def reduce(self) -> FqElem:
        return FqElem(self.ctx, self.coeffs)

    def inverse(self) -> "ZqElem":
        return zq_inv(self)

    def divide_by_p(self, t: int) -> "ZqElem":
        """Exact division by p^t of an element of valuation >= t.

        The top t digits of the result are unknown and filled with zeros.
        """
        pt = self.ctx.p**t
        if any(c % pt for c in self.coeffs):
            raise ArithmeticError(f"element not divisible by p^{t}")
        return ZqElem(self.ctx, (c // pt for c in self.coeffs))

    def __int__(self):
        if any(self.coeffs[1:]):
            raise TypeError("element does not lie in Z_p")
        return self.coeffs[0]

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, ctx: PadicCtx, obj) -> "ZqElem":
        if isinstance(obj, dict):
            obj = obj["coeffs"]
        if isinstance(obj, (int, str)):
            return ctx.zq(int(obj))
        return ctx.zq([int(c) for c in obj])

    def __repr__(self):
        if self.ctx.d == 1:
            return f"ZqElem({self.coeffs[0]} mod {self.ctx.p}^{self.ctx.k})"
        return f"ZqElem({list(self.coeffs)} mod {self.ctx.p}^{self.ctx.k})"


@dataclass(frozen=True)
class QqElem:
    """``p^v * unit`` with a Z_q unit, or zero.

    For a zero element ``v`` is the certified lower bound on the valuation
    (the element vanishes to absolute precision ``v``).
    """

    ctx: PadicCtx
    v: int
    unit: Optional[ZqElem] = None

    @property
    def is_zero(self) -> bool:
        return self.unit is None

    def valuation(self) -> int:
        return self.v

    def to_json(self) -> dict:
        if self.unit is None:
            return {"zero": True, "min_v": self.v}
        return {"v": self.v, "unit": self.unit.to_json()}

    @classmethod
    def from_json(cls, ctx: PadicCtx, obj: dict) -> "QqElem":
        if obj.get("zero"):
            return cls(ctx, int(obj.get("min_v", ctx.k)))
        return cls(ctx, int(obj["v"]), ZqElem.from_json(ctx, obj["unit"]))

    def __repr__(self):
        if self.unit is None:
            return f"QqElem(0 + O(p^{self.v}))"
        return f"QqElem(p^{self.v} * {self.unit!r})"


def zq_arith(a: ZqElem, b: ZqElem, op: str) -> ZqElem:
    _check_same(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def zq_inv(a: ZqElem) -> ZqElem:
    """Inverse of a unit: invert mod p, then Newton-lift y -> y(2 - a y)."""
    if not a.is_unit():
        raise NonUnit(f"{a!r} is not a unit")
    ctx = a.ctx
    y = ZqElem(ctx, a.reduce().inverse().coeffs)
    prec = 1
    while prec < ctx.k:
        y = y * (2 - a * y)
        prec *= 2
    return y


def reduce(a: ZqElem) -> FqElem:
    return a.reduce()


def teichmuller(a: FqElem, ctx: Optional[PadicCtx] = None) -> ZqElem:
    """Multiplicative lift of a residue class to a (q-1)-th root of unity.

    Any lift is pushed to the root of unity by k-1 applications of
    y -> y^q; each application fixes one more p-adic digit.
    """
    ctx = ctx or a.ctx
    y = ctx.zq(a.coeffs)
    if y.is_zero():
        return y
    for _ in range(ctx.k - 1):
        y = y ** ctx.q
    if y ** ctx.q != y:
        raise ArithmeticError("Teichmuller iteration failed to converge")
    return y


def qq_normalize(s: int, a: ZqElem, *, certify: bool = False) -> QqElem:
    """Canonical form ``p^(ord(a) - s) * unit`` of the value ``a / p^s``.

    ``a`` is known modulo p^k, so a vanishing ``a`` gives a zero with
    valuation bound ``k - s``; pass ``certify=True`` to demand an exact
    valuation instead.
    """
    ctx = a.ctx
    if a.is_zero():
        if certify:
            raise PrecisionInsufficient(
                f"valuation of element not certified below p^{ctx.k}"
            )
        return QqElem(ctx, ctx.k - s)
    t = a.valuation()
    return QqElem(ctx, t - s, a.divide_by_p(t))
