"""Multiplicative Jordan decomposition over a finite field."""

# %% Over F_q every invertible matrix splits as s u, with s of order prime to p
# and u of p-power order.  Both parts are powers of g.
from topjordan import MatFq, PadicCtx, fin_jordan, is_semisimple_fq, is_unipotent_fq, mult_order

F5 = PadicCtx(5)
g = MatFq(F5, [[2, 1], [0, 2]])
pair = fin_jordan(g)
print(pair.s, pair.u, pair.exponents)
print(pair.s @ pair.u == g, is_semisimple_fq(pair.s), is_unipotent_fq(pair.u))

# %% Orders split along p.
print(mult_order(g), mult_order(pair.s), mult_order(pair.u))

# %% Over F_4 a companion matrix of an irreducible cubic is already semisimple.
F4 = PadicCtx(2, 2)
c = MatFq(F4, [[0, 0, 1], [1, 0, 1], [0, 1, 0]])
print(fin_jordan(c).u.is_identity())
