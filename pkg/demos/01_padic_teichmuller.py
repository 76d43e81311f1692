"""Unramified p-adic integers at fixed precision, and Teichmuller lifts."""

# %% A context fixes p, the residue degree d and the precision k.
from topjordan import PadicCtx, teichmuller

ctx = PadicCtx(5, 1, 4)
print(ctx.q, ctx.pk)

# %% Elements of Z_q live modulo p^k.  Units invert, non-units do not.
a = ctx.zq(2)
print(a * a.inverse())
print(ctx.zq(10).valuation(), ctx.zq(10).is_unit())

# %% The Teichmuller lift of 2 is the unique (q-1)-th root of unity
# congruent to 2 mod p.
t = teichmuller(a)
print(t, t ** (ctx.q - 1) == ctx.zq(1), t.reduce())

# %% The lift is multiplicative.  In Z_5 every root of unity is one of four lifts.
lifts = [teichmuller(ctx.zq(x)) for x in range(1, 5)]
print(lifts)
print(teichmuller(ctx.zq(6)) == lifts[0] * lifts[0])

# %% Degree 2: Z_9 = Z_3[x]/(x^2 + 2x + 2), with Frobenius acting on residues.
ctx9 = PadicCtx(3, 2, 3)
x = ctx9.fq([0, 1])
print(ctx9.modulus, teichmuller(x) ** 3 == teichmuller(x.frobenius()))
