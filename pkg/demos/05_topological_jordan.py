"""Topological Jordan decomposition of a bounded element of GL_n(Q_q)."""

# %% tjd returns commuting factors: gamma_ts has finite prime-to-p order and
# gamma_tu is topologically unipotent.
from fractions import Fraction

from topjordan import MatQq, PadicCtx, check_projection, tjd

ctx = PadicCtx(5, 1, 2)
res = tjd(MatQq(ctx, [[2, 0], [0, 3]]))
print(res.gamma_ts, res.gamma_tu)

# %% Both factors are one power of g.  The certificate records the exponent.
cert = res.certificate
print(cert.M, cert.a, cert.c)

# %% Reducing mod p recovers the finite-field Jordan decomposition.
g = MatQq(PadicCtx(3, 2, 5), [[[1, 2], [0, 1], 4], [3, [2, 2], 0], [1, 0, [0, 1]]])
res = tjd(g)
print(check_projection(g, res), res.checks(g))

# %% The topologically unipotent part tends to 1 under p-power iteration.
p, k = g.ctx.p, g.ctx.k
print((res.gamma_tu ** (p ** (res.certificate.a + k))).is_identity(k))

# %% Non-integral input: work happens in a stable lattice, and some precision is lost.
ctx = PadicCtx(5, 1, 10)
res = tjd(MatQq.from_rows(ctx, [[0, 5], [Fraction(1, 5), 0]]))
print(res.gamma_ts, res.effective_precision)
