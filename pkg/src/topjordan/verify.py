"""Seeded randomized invariant suites.

Each suite draws ``trials`` inputs from a :class:`random.Random` seeded by
the caller and tallies every invariant it checks.  A suite returns a dict
``{invariant: [passed, failed]}``; :func:`run_suite` wraps that in a report.
"""

from __future__ import annotations

import random
from collections import defaultdict

from .errors import NeedsRamified, UnknownSuite
from .ffield import is_unipotent_fq
from .matq import MatQq, stable_lattice
from .padic import PadicCtx, teichmuller
from .profinite import Perm, p_jordan_perm, verify_unique_p_jordan
from .sampling import (
    perturbed_lattice,
    permutation_matrix,
    random_bounded,
    random_context,
    random_integral_gl,
    random_unit,
    random_zq,
)
from .tjd import check_fixed_lattice, check_projection, tjd, tjd_mod_center

__all__ = ["SUITES", "run_suite", "brute_force_n1"]


class _Tally:
    def __init__(self):
        self.counts = defaultdict(lambda: [0, 0])

    def __call__(self, name, ok):
        self.counts[name][0 if ok else 1] += 1

    def result(self):
        return dict(self.counts)


def _integral_input(rng):
    ctx = random_context(rng)
    return random_integral_gl(ctx, rng.randint(1, 4), rng)


def _roundtrip(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        g = _integral_input(rng)
        res = tjd(g)
        ts, tu, m = res.gamma_ts, res.gamma_tu, res.effective_precision
        tally("product", (ts @ tu).congruent(g, m))
        tally("commute", (ts @ tu).congruent(tu @ ts, m))
        tally("ts_order", (ts**res.certificate.M).is_identity(m))
        tally("tu_reduction_unipotent", is_unipotent_fq(tu.reduce()))
        other = tjd(g, multiplier=rng.choice([c for c in (3, 5) if c != g.ctx.p]))
        tally(
            "over_multiple",
            other.gamma_ts.congruent(ts, m) and other.gamma_tu.congruent(tu, m),
        )
    return tally.result()


def _projection(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        g = _integral_input(rng)
        tally("projection", check_projection(g, tjd(g)))
    return tally.result()


def _equivariance(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        g = _integral_input(rng)
        h = random_integral_gl(g.ctx, g.n, rng)
        res = tjd(g)
        conj = tjd(h @ g @ h.inverse())
        m = min(res.effective_precision, conj.effective_precision)
        tally("conjugation_ts", conj.gamma_ts.congruent(h @ res.gamma_ts @ h.inverse(), m))
        tally("conjugation_tu", conj.gamma_tu.congruent(h @ res.gamma_tu @ h.inverse(), m))
    return tally.result()


def _functoriality(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        g = _integral_input(rng)
        one = MatQq.identity(g.ctx, 1)
        res = tjd(g)
        big = tjd(g.block_diag(one))
        m = min(res.effective_precision, big.effective_precision)
        tally("block_ts", big.gamma_ts.congruent(res.gamma_ts.block_diag(one), m))
        tally("block_tu", big.gamma_tu.congruent(res.gamma_tu.block_diag(one), m))
    return tally.result()


def _limit_law(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        g = _integral_input(rng)
        res = tjd(g)
        p, m = g.ctx.p, res.effective_precision
        tally("tu_power", (res.gamma_tu ** (p ** (res.certificate.a + m))).is_identity(m))
    return tally.result()


def brute_force_n1(ctx: PadicCtx, x):
    """Every factorization x = s u with s^(q-1) = 1 and u = 1 mod p, by enumeration."""
    units = [y for y in _all_zq(ctx) if y.is_unit()]
    roots = [s for s in units if s ** (ctx.q - 1) == ctx.zq(1)]
    out = []
    for s in roots:
        u = x * s.inverse()
        if (u - 1).valuation() >= 1:
            out.append((s, u))
    return out


def _all_zq(ctx):
    total = ctx.pk**ctx.d
    for code in range(total):
        coeffs = []
        for _ in range(ctx.d):
            code, c = divmod(code, ctx.pk)
            coeffs.append(c)
        yield ctx.zq(coeffs)


def _n1_oracle(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        p, k = rng.choice(((3, 2), (5, 2), (3, 3), (7, 2)))
        ctx = PadicCtx(p, 1, k)
        x = random_unit(ctx, rng)
        pairs = brute_force_n1(ctx, x)
        tally("unique_factorization", len(pairs) == 1)
        res = tjd(MatQq(ctx, [[x]]))
        got = (res.gamma_ts.entry(0, 0).unit, res.gamma_tu.entry(0, 0).unit)
        tally("matches_tjd", len(pairs) == 1 and got == pairs[0])
    return tally.result()


def _profinite(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        n = rng.randint(1, 6)
        p = rng.choice((2, 3, 5))
        images = list(range(n))
        rng.shuffle(images)
        g = Perm(images)
        tally("unique_pair", verify_unique_p_jordan(g, p))
        pair = p_jordan_perm(g, p)
        ctx = PadicCtx(p, 1, 3)
        res = tjd(permutation_matrix(ctx, g))
        tally(
            "matrix_cross_check",
            res.gamma_ts == permutation_matrix(ctx, pair.s)
            and res.gamma_tu == permutation_matrix(ctx, pair.u),
        )
    return tally.result()


def _nonintegral_bounded(rng, ctx, n):
    while True:
        g, lattice, u = random_bounded(ctx, n, rng)
        if not g.is_integral():
            return g, lattice


def _lattice(rng, trials, perturbations=5):
    tally = _Tally()
    for _ in range(trials):
        ctx = random_context(rng, min_k=24, max_k=32)
        g, lattice = _nonintegral_bounded(rng, ctx, rng.randint(2, 3))
        res = tjd(g)
        tally("stable_lattice", check_fixed_lattice(g, res, stable_lattice(g)))
        tally("source_lattice", check_fixed_lattice(g, res, lattice))
        for _ in range(perturbations):
            tally("perturbed_lattice", check_fixed_lattice(g, res, perturbed_lattice(lattice, rng)))
    return tally.result()


def slope_half_input(ctx: PadicCtx, rng: random.Random) -> MatQq:
    """Conjugate of a companion matrix of x^2 - b x - p a, a a unit, p | b, scaled by p^r."""
    a, b = random_unit(ctx, rng), random_zq(ctx, rng) * ctx.p
    c = MatQq(ctx, [[0, a * ctx.p], [1, b]])
    h = random_integral_gl(ctx, 2, rng)
    return (h @ c @ h.inverse()).scale_by_p(rng.randint(-2, 2))


def _mod_center(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        ctx = random_context(rng, min_k=24, max_k=32)
        r = rng.randint(-3, 3)
        g, _, _ = random_bounded(ctx, rng.randint(1, 3), rng)
        x = g.scale_by_p(r)
        z, res = tjd_mod_center(x)
        tally("center", z.v == r and z.unit == ctx.zq(1))
        tally("decomposition", all(res.checks(x.scale_by_p(-r)).values()))
        y = slope_half_input(random_context(rng, min_k=8, max_k=12), rng)
        try:
            tjd_mod_center(y)
            tally("needs_ramified", False)
        except NeedsRamified as err:
            tally("needs_ramified", err.e == 2)
    return tally.result()


def _teichmuller(rng, trials):
    tally = _Tally()
    for _ in range(trials):
        ctx = random_context(rng)
        a = ctx.fq([rng.randrange(ctx.p) for _ in range(ctx.d)])
        b = ctx.fq([rng.randrange(ctx.p) for _ in range(ctx.d)])
        ta, tb = teichmuller(a), teichmuller(b)
        tally("root_of_unity", ta**ctx.q == ta)
        tally("lifts_residue", ctx.fq(ta) == a)
        tally("multiplicative", teichmuller(a * b) == ta * tb)
        tally("frobenius", teichmuller(a.frobenius()) == ta**ctx.p)
    return tally.result()


SUITES = {
    "tjd-roundtrip": _roundtrip,
    "projection": _projection,
    "equivariance": _equivariance,
    "functoriality": _functoriality,
    "limit-law": _limit_law,
    "n1-oracle": _n1_oracle,
    "profinite": _profinite,
    "lattice": _lattice,
    "mod-center": _mod_center,
    "teichmuller": _teichmuller,
}


def run_suite(name: str, seed: int, trials: int) -> dict:
    """Run one suite; ``ok`` is False if any invariant failed."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    counts = SUITES[name](random.Random(seed), trials)
    return {
        "suite": name,
        "seed": seed,
        "trials": trials,
        "invariants": {k: {"passed": v[0], "failed": v[1]} for k, v in sorted(counts.items())},
        "ok": all(v[1] == 0 for v in counts.values()),
    }
