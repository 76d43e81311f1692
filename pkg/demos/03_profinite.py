"""p-Jordan decomposition in a finite group, shown on permutations."""

# %% A 6-cycle splits at p = 2 into a 3-cycle part and an involution.
from topjordan import Perm, p_jordan_pairs_exhaustive, p_jordan_perm, perm_order

g = Perm.cycle(6, 0, 1, 2, 3, 4, 5)
pair = p_jordan_perm(g, 2)
print(pair.s_exponent, pair.u_exponent)
print(perm_order(pair.s), perm_order(pair.u), pair.s * pair.u == g)

# %% Scanning all of S_6 finds exactly one commuting pair with those orders.
print(p_jordan_pairs_exhaustive(g, 2) == [(pair.s, pair.u)])

# %% Changing the prime swaps the roles of the factors.
three = p_jordan_perm(g, 3)
print(three.s == pair.u, three.u == pair.s)
