"""Decomposition modulo the centre, and the filtration of a split torus."""

# %% If every eigenvalue has valuation r, then g = p^r times a bounded element.
from topjordan import (
    MatQq,
    NeedsRamified,
    PadicCtx,
    is_abs_semisimple,
    is_top_unipotent,
    teichmuller,
    tjd_mod_center,
    torus_filtration,
)

ctx = PadicCtx(5, 1, 6)
z, res = tjd_mod_center(MatQq(ctx, [[10, 0], [0, 15]]))
print(z, res.gamma_ts, res.gamma_tu)

# %% Half-integral slopes would need a ramified extension.
try:
    tjd_mod_center(MatQq(ctx, [[0, 5], [1, 0]]))
except NeedsRamified as err:
    print("ramification index", err.e, "tame" if err.tame else "wild")

# %% Diagonal elements sit in the parahoric, in its pro-unipotent radical, or outside.
for rows in ([[7, 0], [0, 18]], [[6, 0], [0, 11]], [[5, 0], [0, 1]]):
    print(rows, torus_filtration(MatQq(ctx, rows)).value)

# %% Pointwise predicates: a Teichmuller lift is absolutely semisimple, 7 is not.
lift = teichmuller(ctx.zq(2))
print(is_abs_semisimple(MatQq(ctx, [[lift]])), is_abs_semisimple(MatQq(ctx, [[7]])))
print(is_top_unipotent(MatQq(ctx, [[6]])))
