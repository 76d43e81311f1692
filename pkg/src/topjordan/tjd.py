"""Topological Jordan decomposition of bounded elements of GL_n(Q_q).

For g in GL_n(O) the absolutely semisimple part is the limit of g^c over
exponents c that are 1 modulo every prime-to-p order in GL_n(F_q) and
divisible by a high power of p.  A single such exponent already gives the
answer modulo p^k:

    M = lcm(q^e - 1 : 1 <= e <= n),   a = ceil(log_p n) (+1 when p = 2),
    c = 1 mod M,  c = 0 mod p^(a+k).

A bounded element that is not integral is first conjugated into GL_n(O)
using a lattice it stabilizes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _linalg
from .errors import (
    NeedsRamified,
    NonUnitDet,
    NotBounded,
    NotBoundedModCenter,
    NotDiagonal,
    NotIntegral,
    PrecisionInsufficient,
    Singular,
)
from .ffield import exponent_bound, fin_jordan, is_unipotent_fq, unipotent_exponent
from .matq import (
    Lattice,
    MatQq,
    _certified_valuations,
    integral_frame,
    is_bounded,
    lattice_stabilizes,
    standard_lattice,
)
from .padic import QqElem

__all__ = [
    "Certificate",
    "TJDResult",
    "FiltrationClass",
    "tjd_exponents",
    "tjd_integral",
    "tjd",
    "is_abs_semisimple",
    "is_top_unipotent",
    "check_projection",
    "tjd_mod_center",
    "torus_filtration",
    "check_fixed_lattice",
]


@dataclass(frozen=True)
class Certificate:
    """Exponent data behind a decomposition.

    ``lattice`` is the stabilized lattice whose basis conjugates g into
    GL_n(O); it is the standard lattice for integral input.
    """

    M: int
    a: int
    c: int
    lattice: Lattice

    def to_json(self) -> dict:
        return {
            "M": str(self.M),
            "a": self.a,
            "c": str(self.c),
            "lattice": self.lattice.to_json(),
        }


@dataclass(frozen=True)
class TJDResult:
    """gamma = gamma_ts * gamma_tu, with the integral-frame data used to get there.

    ``effective_precision`` is measured in the frame of the certificate's
    lattice: ``B^-1 gamma_ts B`` and ``B^-1 gamma_tu B`` are known modulo
    p^effective_precision.  For integral input that is ordinary absolute
    precision.
    """

    gamma_ts: MatQq
    gamma_tu: MatQq
    certificate: Certificate
    effective_precision: int
    frame: tuple  # (h, h_ts, h_tu), all integral

    def frame_of(self, g: MatQq) -> MatQq:
        """g conjugated into the certificate's integral frame."""
        return self.certificate.lattice.frame(g)

    def checks(self, g: MatQq) -> dict:
        """The invariants a caller may want to see, evaluated at effective precision."""
        h, ts, tu = self.frame
        m = self.effective_precision
        ident = MatQq.identity(g.ctx, g.n)
        return {
            "commute": (ts @ tu).congruent(tu @ ts, m),
            "product": (ts @ tu).congruent(h, m),
            "ts_order": (ts**self.certificate.M).congruent(ident, m),
            "tu_reduction_unipotent": is_unipotent_fq(tu.reduce()),
            "projection": _projection_holds(h, ts, tu),
        }


class FiltrationClass(enum.Enum):
    UNBOUNDED = "unbounded"
    BOUNDED = "bounded"
    PARAHORIC_0 = "parahoric_0"
    PARAHORIC_0PLUS = "parahoric_0plus"


def tjd_exponents(p: int, q: int, n: int, k: int, multiplier: int = 1):
    """(M, a, c) for the closed-form exponent; ``multiplier`` inflates M."""
    big_m = exponent_bound(q, n) * multiplier
    if math.gcd(big_m, p) != 1:
        raise ValueError("exponent multiplier must be prime to p")
    a = unipotent_exponent(p, n) + (1 if p == 2 else 0)
    c = _linalg.crt_exponent(p ** (a + k), big_m)
    return big_m, a, c


def tjd_integral(g: MatQq, multiplier: int = 1, lattice: Optional[Lattice] = None) -> TJDResult:
    """Decomposition of g in GL_n(O) by one big power of g."""
    if not g.is_integral():
        raise NotIntegral("matrix has non-integral entries")
    if g.prec < 1:
        raise PrecisionInsufficient("matrix not known modulo p")
    if g.reduce().det().is_zero():
        raise NonUnitDet("determinant is not a unit")
    ctx, k = g.ctx, g.prec
    big_m, a, c = tjd_exponents(ctx.p, ctx.q, g.n, k, multiplier)
    ts = g**c
    # ts has order dividing M, so its inverse is a power of it
    tu = ts ** (big_m - 1) @ g
    cert = Certificate(big_m, a, c, lattice or standard_lattice(ctx, g.n))
    return TJDResult(ts, tu, cert, k, (g, ts, tu))


def tjd(g: MatQq, multiplier: int = 1) -> TJDResult:
    """Topological Jordan decomposition of a bounded element."""
    if not is_bounded(g):
        raise NotBounded("element is not bounded")
    lattice, h = integral_frame(g)
    res = tjd_integral(h, multiplier, lattice)
    if lattice.is_standard():
        return res
    ts = lattice.unframe(res.gamma_ts)
    tu = lattice.unframe(res.gamma_tu)
    return TJDResult(ts, tu, res.certificate, res.effective_precision, res.frame)


def is_abs_semisimple(g: MatQq) -> bool:
    """g^M = 1 in the integral frame (finite prime-to-p order)."""
    if not is_bounded(g):
        raise NotBounded("element is not bounded")
    _, h = integral_frame(g)
    big_m = exponent_bound(g.ctx.q, g.n)
    return (h**big_m).is_identity(h.prec)


def is_top_unipotent(g: MatQq) -> bool:
    """Reduction of the integral conjugate is unipotent."""
    if not is_bounded(g):
        raise NotBounded("element is not bounded")
    _, h = integral_frame(g)
    return is_unipotent_fq(h.reduce())


def _projection_holds(h: MatQq, ts: MatQq, tu: MatQq) -> bool:
    fin = fin_jordan(h.reduce())
    return ts.reduce() == fin.s and tu.reduce() == fin.u


def check_projection(g: MatQq, result: TJDResult) -> bool:
    """Reductions of the parts equal the Jordan parts of the reduction.

    For non-integral g this is evaluated in the integral frame of the
    result's lattice, i.e. in the reductive quotient at that vertex.
    """
    h, ts, tu = result.frame
    m = min(result.effective_precision, 1)
    if not result.frame_of(g).congruent(h, m):
        return False
    return _projection_holds(h, ts, tu)


def _newton_single_segment(g: MatQq):
    """Return ord(det) after checking every root has valuation ord(det)/n."""
    vals = _certified_valuations(g)
    n = g.n
    det_v, _ = vals[0]
    if det_v is None:
        raise Singular("determinant vanishes at the available precision")
    for i, (v, prec) in enumerate(vals[1:], start=1):
        # need n * ord(a_i) >= (n - i) * ord(a_0)
        bound = Fraction((n - i) * det_v, n)
        if v is not None:
            if v < bound:
                raise NotBoundedModCenter("Newton polygon has more than one slope")
        elif prec < bound:
            raise PrecisionInsufficient("cannot certify the Newton polygon")
    return det_v


def tjd_mod_center(g: MatQq, multiplier: int = 1):
    """(z, tjd(z^-1 g)) with z = p^r central, r = ord(det g)/n.

    Raises :class:`NeedsRamified` when r is not an integer.
    """
    det_v = _newton_single_segment(g)
    r = Fraction(det_v, g.n)
    if r.denominator != 1:
        raise NeedsRamified(r.denominator, g.ctx.p)
    r = int(r)
    z = QqElem(g.ctx, r, g.ctx.zq(1))
    return z, tjd(g.scale_by_p(-r), multiplier)


def torus_filtration(g: MatQq) -> FiltrationClass:
    """Position of a diagonal element in the filtration of the split torus."""
    if not g.is_diagonal():
        raise NotDiagonal("matrix is not diagonal")
    diag = [g.entry(i, i) for i in range(g.n)]
    if any(x.is_zero for x in diag):
        raise Singular("zero diagonal entry at the available precision")
    if any(x.v != 0 for x in diag):
        return FiltrationClass.UNBOUNDED
    if g.prec < 1:
        raise PrecisionInsufficient("entries not known modulo p")
    if all((x.unit - 1).valuation() >= 1 for x in diag):
        return FiltrationClass.PARAHORIC_0PLUS
    return FiltrationClass.PARAHORIC_0


def check_fixed_lattice(g: MatQq, result: TJDResult, lattice: Lattice) -> bool:
    """g fixes the lattice iff both of its parts do.

    The parts are read in the result's integral frame, where their
    precision is highest.
    """
    fixed = lattice_stabilizes(g, lattice)
    _, ts, tu = result.frame
    source = result.certificate.lattice
    parts = lattice_stabilizes(ts, lattice, source) and lattice_stabilizes(tu, lattice, source)
    return fixed == parts
