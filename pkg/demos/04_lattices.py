"""Lattices in Q_q^n, boundedness and the stable lattice of a bounded element."""

# %% g = [[0, 5], [1/5, 0]] has non-integral entries but generates a bounded group.
from fractions import Fraction

from topjordan import MatQq, PadicCtx, conjugate_into_integral, hnf, is_bounded, lattice_stabilizes, stable_lattice

ctx = PadicCtx(5, 1, 8)
g = MatQq.from_rows(ctx, [[0, 5], [Fraction(1, 5), 0]])
print(is_bounded(g), is_bounded(MatQq(ctx, [[5, 0], [0, 1]])))

# %% The stable lattice sum g^i O^n is g-fixed; conjugating into it makes g integral.
L = stable_lattice(g)
print(L, lattice_stabilizes(g, L))
B, h = conjugate_into_integral(g)
print(h, h.prec)

# %% The standard lattice is not fixed, but the lattice with basis diag(5, 1) is.
print(lattice_stabilizes(g, hnf(ctx, [[1, 0], [0, 1]])))
print(lattice_stabilizes(g, hnf(ctx, [[5, 0], [0, 1]])))
