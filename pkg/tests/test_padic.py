import itertools
import json

import pytest
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_pow_mod
from hypothesis import given
from hypothesis import strategies as st

from topjordan.errors import ContextMismatch, InvalidContext, NonUnit, PrecisionInsufficient
from topjordan.padic import (
    CONWAY_POLYNOMIALS,
    PadicCtx,
    QqElem,
    ZqElem,
    is_irreducible_fp,
    qq_normalize,
    reduce,
    teichmuller,
    zq_arith,
    zq_inv,
)

X = sympy.symbols("x")


def sympy_mul(ctx, a, b):
    """Oracle: multiply in Z[x], reduce by the integer lift of the modulus, then mod p^k."""
    f = sympy.Poly(list(reversed(ctx.modulus)), X)
    pa = sympy.Poly(list(reversed(a.coeffs)), X)
    pb = sympy.Poly(list(reversed(b.coeffs)), X)
    r = (pa * pb).rem(f)
    coeffs = list(reversed(r.all_coeffs()))
    coeffs += [0] * (ctx.d - len(coeffs))
    return tuple(int(c) % ctx.pk for c in coeffs)


CTXS = [PadicCtx(2, 2, 3), PadicCtx(3, 2, 4), PadicCtx(5, 1, 6), PadicCtx(7, 3, 2), PadicCtx(2, 1, 9)]


@st.composite
def triples(draw):
    ctx = draw(st.sampled_from(CTXS))
    el = st.lists(st.integers(0, ctx.pk - 1), min_size=ctx.d, max_size=ctx.d)
    return ctx, *(ctx.zq(draw(el)) for _ in range(3))


class TestContext:
    def test_defaults(self):
        ctx = PadicCtx(5)
        assert (ctx.d, ctx.k, ctx.q, ctx.modulus) == (1, 1, 5, (3, 1))

    @pytest.mark.parametrize("p", [1, 4, 9, 2**16 + 1])
    def test_bad_prime(self, p):
        with pytest.raises(InvalidContext):
            PadicCtx(p)

    def test_bad_precision_and_degree(self):
        with pytest.raises(InvalidContext):
            PadicCtx(5, 1, 0)
        with pytest.raises(InvalidContext):
            PadicCtx(5, 0, 2)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(InvalidContext):
            PadicCtx(5, 2, 2, (1, 0, 1))  # x^2 + 1 = (x-2)(x-3) mod 5

    def test_non_monic_rejected(self):
        with pytest.raises(InvalidContext):
            PadicCtx(5, 2, 2, (2, 4, 3))

    def test_custom_modulus(self):
        ctx = PadicCtx(5, 2, 2, (2, 0, 1))  # x^2 + 2, irreducible since -2 is a non-square mod 5
        assert ctx.modulus == (2, 0, 1)

    def test_missing_table_entry(self):
        with pytest.raises(InvalidContext):
            PadicCtx(17, 2, 2)

    def test_json_roundtrip(self):
        ctx = PadicCtx(3, 2, 5)
        assert PadicCtx.from_json(json.loads(json.dumps(ctx.to_json()))) == ctx


@pytest.mark.parametrize("key", sorted(CONWAY_POLYNOMIALS))
def test_conway_table(key):
    p, d = key
    f = CONWAY_POLYNOMIALS[key]
    poly = sympy.Poly(list(reversed(f)), X, modulus=p)
    assert poly.is_irreducible
    assert is_irreducible_fp(f, p)
    # primitive: x generates F_q^*
    order = p**d - 1
    dense = list(reversed(f))
    for ell in sympy.factorint(order):
        assert gf_pow_mod([1, 0], order // ell, dense, p, ZZ) != [1]
    # norm compatible with the degree-1 entry: (-1)^d f(0) is the primitive root
    if d > 1:
        assert ((-1) ** d * f[0]) % p == (-CONWAY_POLYNOMIALS[(p, 1)][0]) % p


def test_irreducibility_checker_against_sympy():
    for p in (2, 3):
        for d in (2, 3):
            for tail in itertools.product(range(p), repeat=d):
                f = tail + (1,)
                expected = sympy.Poly(list(reversed(f)), X, modulus=p).is_irreducible
                assert is_irreducible_fp(f, p) == expected


class TestArithmetic:
    def test_golden(self):
        ctx = PadicCtx(5, 1, 2)
        assert zq_arith(ctx.zq(7), ctx.zq(18), "add") == 0
        assert zq_arith(ctx.zq(7), ctx.zq(18), "mul") == 1
        assert zq_arith(ctx.zq(7), ctx.zq(18), "sub") == ctx.zq(7 - 18)

    def test_golden_extension(self):
        # x^2 = -x - 1 modulo x^2 + x + 1, i.e. 7 + 7x mod 8
        ctx = PadicCtx(2, 2, 3)
        x = ctx.zq([0, 1])
        assert (x * x).coeffs == (7, 7)
        assert (x * x).coeffs == sympy_mul(ctx, x, x)

    def test_unknown_op(self):
        ctx = PadicCtx(5, 1, 2)
        with pytest.raises(ValueError):
            zq_arith(ctx.zq(1), ctx.zq(2), "div")

    def test_context_mismatch(self):
        a = PadicCtx(5, 1, 2).zq(1)
        with pytest.raises(ContextMismatch):
            a + PadicCtx(5, 1, 3).zq(1)
        with pytest.raises(ContextMismatch):
            a * PadicCtx(7, 1, 2).zq(1)

    @given(triples())
    def test_ring_axioms(self, t):
        ctx, a, b, c = t
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a - a == 0
        assert (a * b).coeffs == sympy_mul(ctx, a, b)

    @given(triples())
    def test_inverse(self, t):
        ctx, a, _, _ = t
        if not a.is_unit():
            with pytest.raises(NonUnit):
                zq_inv(a)
            return
        assert a * zq_inv(a) == 1
        assert zq_inv(zq_inv(a)) == a

    def test_inverse_golden(self):
        ctx = PadicCtx(5, 1, 2)
        assert zq_inv(ctx.zq(7)) == 18
        assert zq_inv(ctx.zq(1)) == 1
        with pytest.raises(NonUnit):
            zq_inv(ctx.zq(5))

    def test_inverse_exhaustive_small(self):
        ctx = PadicCtx(3, 2, 2)
        for c in itertools.product(range(9), repeat=2):
            a = ctx.zq(c)
            if a.is_unit():
                assert (a * a.inverse()).coeffs == (1, 0)

    def test_valuation_and_divide(self):
        ctx = PadicCtx(5, 1, 4)
        assert ctx.zq(50).valuation() == 2
        assert ctx.zq(0).valuation() == 4
        assert ctx.zq(50).divide_by_p(2) == 2

    def test_reduce(self):
        assert reduce(PadicCtx(5, 1, 2).zq(7)).coeffs == (2,)
        assert reduce(PadicCtx(5, 1, 2).zq(0)).is_zero()
        assert reduce(PadicCtx(3, 2, 2).zq([4, 3])).coeffs == (1, 0)

    def test_immutable(self):
        a = PadicCtx(5, 1, 2).zq(3)
        with pytest.raises(AttributeError):
            a.coeffs = (1,)

    def test_json(self):
        ctx = PadicCtx(3, 2, 4)
        a = ctx.zq([40, 7])
        obj = json.loads(json.dumps(a.to_json()))
        assert obj == {"coeffs": ["40", "7"]}
        assert ZqElem.from_json(ctx, obj) == a


class TestTeichmuller:
    def test_golden(self):
        # oracles: 2^5 = 32 = 7 mod 25 with 7^4 = 2401 = 1 mod 25; 2^3 = 8 with 8^2 = 64 = 1 mod 9
        assert pow(2, 5, 25) == 7 and pow(7, 4, 25) == 1
        assert pow(2, 3, 9) == 8 and pow(8, 2, 9) == 1
        c5, c3 = PadicCtx(5, 1, 2), PadicCtx(3, 1, 2)
        assert teichmuller(c5.fq(2), c5) == 7
        assert teichmuller(c3.fq(2), c3) == 8

    @pytest.mark.parametrize("ctx", [PadicCtx(5, 1, 3), PadicCtx(2, 3, 4)])
    def test_fixed_points(self, ctx):
        assert teichmuller(ctx.fq(1)) == 1
        assert teichmuller(ctx.fq(0)).is_zero()

    @pytest.mark.parametrize(
        "ctx",
        [PadicCtx(p, d, k) for p, d in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)] for k in (1, 3)],
    )
    def test_multiplicative_and_frobenius(self, ctx):
        assert ctx.q <= 49
        lifts = {a.coeffs: teichmuller(a) for a in ctx.fq_elements()}
        for a, b in itertools.product(ctx.fq_elements(), repeat=2):
            assert lifts[(a * b).coeffs] == lifts[a.coeffs] * lifts[b.coeffs]
        for a in ctx.fq_elements():
            t = lifts[a.coeffs]
            assert reduce(t) == a
            assert lifts[a.frobenius().coeffs] == t**ctx.p
            if not a.is_zero():
                assert t ** (ctx.q - 1) == 1

    @pytest.mark.parametrize(
        "ctx", [PadicCtx(5, 1, 4), PadicCtx(5, 2, 2), PadicCtx(3, 2, 2), PadicCtx(2, 2, 4), PadicCtx(3, 1, 4)]
    )
    def test_image_characterization(self, ctx):
        assert ctx.p ** (ctx.d * ctx.k) <= 5**4
        for c in itertools.product(range(ctx.pk), repeat=ctx.d):
            u = ctx.zq(c)
            if not u.is_unit():
                continue
            assert (u == teichmuller(reduce(u))) == (u ** (ctx.q - 1) == 1)


class TestQq:
    def test_normalize(self):
        ctx = PadicCtx(5, 1, 3)
        assert qq_normalize(0, ctx.zq(10)) == QqElem(ctx, 1, ctx.zq(2))
        assert qq_normalize(1, ctx.zq(1)) == QqElem(ctx, -1, ctx.zq(1))
        zero = qq_normalize(0, ctx.zq(0))
        assert zero.is_zero and zero.v == 3
        with pytest.raises(PrecisionInsufficient):
            qq_normalize(0, ctx.zq(0), certify=True)

    def test_json(self):
        ctx = PadicCtx(5, 1, 3)
        x = QqElem(ctx, -2, ctx.zq(7))
        assert QqElem.from_json(ctx, json.loads(json.dumps(x.to_json()))) == x
        z = qq_normalize(0, ctx.zq(0))
        assert z.to_json()["zero"] is True
        assert QqElem.from_json(ctx, z.to_json()).is_zero
