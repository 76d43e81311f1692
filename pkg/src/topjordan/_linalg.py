"""Ring-generic helpers shared by the F_q and Q_q matrix modules.

Matrices here are plain tuples of row tuples whose entries support
``+``, ``-`` and ``*``; polynomials are coefficient lists, constant first.
"""

from __future__ import annotations

import math

import numpy as np


def identity(n, zero, one):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def matmul(a, b, zero):
    n, m, r = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            s = zero
            for t in range(m):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def berkowitz(a, zero, one):
    """Characteristic polynomial det(x - A), division free.

    Returns coefficients constant term first; the leading coefficient is
    ``one``.  Works over any commutative ring.
    """
    n = len(a)
    poly = [one]  # highest degree first while building
    for r in range(n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        sub = [a[i][:r] for i in range(r)]
        toeplitz = [one, -a[r][r]]
        v = col
        for _ in range(r):
            s = zero
            for x, y in zip(row, v):
                s = s + x * y
            toeplitz.append(-s)
            v = [sum((sub[i][j] * v[j] for j in range(r)), zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, len(poly) - 1) + 1):
                s = s + toeplitz[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly[::-1]


# --- polynomials over a field (entries expose .inverse() and .is_zero()) ---


def poly_trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def poly_divmod(a, b):
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = poly_trim(a)
    zero = b[0] - b[0]
    inv = b[-1].inverse()
    quot = [zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a = poly_trim(a)
    return quot, a


def poly_gcd(a, b):
    """Monic gcd (empty list for gcd(0, 0))."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def poly_derivative(a):
    return poly_trim([c * i for i, c in enumerate(a)][1:])


# --- integer kernels for big exponents --------------------------------------


def crt_exponent(zero_mod: int, one_mod: int) -> int:
    """Least positive c with c = 0 mod ``zero_mod`` and c = 1 mod ``one_mod``."""
    if math.gcd(zero_mod, one_mod) != 1:
        raise ValueError("moduli must be coprime")
    if one_mod == 1:
        return zero_mod
    c = zero_mod * pow(zero_mod, -1, one_mod) % (zero_mod * one_mod)
    return c or zero_mod * one_mod


def regular_matrix(rows, modulus, mod):
    """Integer matrix of the Z_p-linear map induced by a matrix over Z_q.

    ``rows`` holds coefficient tuples; each entry a becomes the d x d block of
    multiplication by a on the basis 1, x, ..., x^{d-1}.
    """
    n = len(rows)
    d = len(modulus) - 1
    dtype = _dtype(n * d, mod)
    out = np.zeros((n * d, n * d), dtype=dtype)
    for i in range(n):
        for j in range(n):
            cur = list(rows[i][j])
            for c in range(d):
                out[i * d : i * d + d, j * d + c] = [x % mod for x in cur]
                # multiply cur by x modulo the monic lift
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [x - top * m for x, m in zip(cur, modulus[:d])]
    return out


def from_regular(arr, n, d):
    return tuple(
        tuple(tuple(int(arr[i * d + c, j * d]) for c in range(d)) for j in range(n))
        for i in range(n)
    )


def _dtype(size, mod):
    return np.int64 if size * (mod - 1) ** 2 < 2**62 else object


def regular_pow(arr, e: int, mod: int):
    """arr**e modulo ``mod`` by square and multiply."""
    size = arr.shape[0]
    dtype = _dtype(size, mod)
    arr = arr.astype(dtype)
    result = np.eye(size, dtype=dtype)
    if dtype is object:
        result = np.array([[int(x) for x in row] for row in result], dtype=object)
    base = arr % mod
    while e:
        if e & 1:
            result = (result @ base) % mod
        e >>= 1
        if e:
            base = (base @ base) % mod
    return result
