"""p-Jordan decompositions in finite groups, realized on permutations.

A finite group is the simplest profinite group: "topologically p-unipotent"
means p-power order and "absolutely p-semisimple" means order prime to p.
The decomposition of g is read off from the Sylow splitting of the cyclic
group generated by g.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._linalg import crt_exponent
from .errors import SearchTooLarge

__all__ = [
    "Perm",
    "PJordanPair",
    "perm_order",
    "p_jordan_perm",
    "p_jordan_pairs_exhaustive",
    "verify_unique_p_jordan",
    "split_order",
]

MAX_EXHAUSTIVE_DEGREE = 7


@dataclass(frozen=True)
class Perm:
    """Bijection of {0, ..., N-1}; ``images[i]`` is the image of i.

    Products compose right to left: ``(s * t)(i) == s(t(i))``.
    """

    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def cycle(cls, n: int, *points) -> "Perm":
        """The cycle (points[0] -> points[1] -> ...) on n points."""
        images = list(range(n))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return self.inverse() ** (-e)
        e %= perm_order(self)
        result, base = Perm.identity(self.degree), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def cycles(self):
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def embed(self, n: int) -> "Perm":
        """Image under the standard inclusion S_N -> S_n fixing the new points."""
        return Perm(self.images + tuple(range(self.degree, n)))

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.degree))

    def __str__(self):
        return " ".join(map(str, self.images))


@dataclass(frozen=True)
class PJordanPair:
    s: Perm
    u: Perm
    p: int
    s_exponent: int = 1
    u_exponent: int = 0


def perm_order(g: Perm) -> int:
    return math.lcm(*(len(c) for c in g.cycles()))


def split_order(order: int, p: int):
    """Write order = p^a * m with m prime to p; returns (p^a, m)."""
    pa = 1
    while order % p == 0:
        order //= p
        pa *= p
    return pa, order


def p_jordan_perm(g: Perm, p: int) -> PJordanPair:
    pa, m = split_order(perm_order(g), p)
    c_s = crt_exponent(pa, m) % (pa * m)
    c_u = crt_exponent(m, pa) % (pa * m)
    return PJordanPair(g**c_s, g**c_u, p, c_s, c_u)


@lru_cache(maxsize=None)
def _symmetric_group(n: int):
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)
    orders = np.array([perm_order(Perm(tuple(row))) for row in perms], dtype=np.int64)
    weights = n ** np.arange(n, dtype=np.int64)
    index = {int(code): i for i, code in enumerate(perms.astype(np.int64) @ weights)}
    inverse = np.argsort(perms, axis=1).astype(np.int8)
    return perms, orders, weights, index, inverse


def _is_p_power(n: int, p: int) -> bool:
    return split_order(n, p)[1] == 1


def p_jordan_pairs_exhaustive(g: Perm, p: int):
    """Every commuting pair (s, u) in S_N with s u = g, p' order s, p-power order u."""
    n = g.degree
    if n > MAX_EXHAUSTIVE_DEGREE:
        raise SearchTooLarge(f"exhaustive search limited to N <= {MAX_EXHAUSTIVE_DEGREE}")
    perms, orders, weights, index, inverse = _symmetric_group(n)
    garr = np.array(g.images, dtype=np.int64)
    s_after_g = perms[:, garr]
    g_after_s = garr[perms]
    commuting = np.all(s_after_g == g_after_s, axis=1)
    good_s = np.array([math.gcd(int(o), p) == 1 for o in orders])
    pairs = []
    for i in np.nonzero(commuting & good_s)[0]:
        # u = s^{-1} g
        u = inverse[i][garr]
        j = index[int(u.astype(np.int64) @ weights)]
        if _is_p_power(int(orders[j]), p):
            pairs.append((Perm(tuple(perms[i])), Perm(tuple(u))))
    return pairs


def verify_unique_p_jordan(g: Perm, p: int) -> bool:
    """Exactly one p-Jordan pair exists in S_N, and it is the CRT one."""
    pairs = p_jordan_pairs_exhaustive(g, p)
    if len(pairs) != 1:
        return False
    pair = p_jordan_perm(g, p)
    return pairs[0] == (pair.s, pair.u)
