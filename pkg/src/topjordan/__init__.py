"""Topological Jordan decompositions in GL_n over unramified p-adic fields.

Quick start::

    >>> from topjordan import PadicCtx, MatQq, tjd
    >>> ctx = PadicCtx(5, 1, 2)
    >>> res = tjd(MatQq(ctx, [[2]]))
    >>> res.gamma_ts.entry(0, 0).unit, res.gamma_tu.entry(0, 0).unit
    (ZqElem(7 mod 5^2), ZqElem(11 mod 5^2))
"""

from .errors import (
    ContextMismatch,
    InvalidContext,
    NeedsRamified,
    NonUnit,
    NonUnitDet,
    NotBounded,
    NotBoundedModCenter,
    NotDiagonal,
    NotIntegral,
    PrecisionInsufficient,
    RankDeficient,
    SearchTooLarge,
    Singular,
    TopJordanError,
    UnknownSuite,
)
from .ffield import (
    FinJordanPair,
    MatFq,
    charpoly_fq,
    fin_jordan,
    is_semisimple_fq,
    is_unipotent_fq,
    minimal_polynomial_fq,
    mult_order,
)
from .matq import (
    Lattice,
    MatQq,
    charpoly_zq,
    conjugate_into_integral,
    hnf,
    integral_frame,
    is_bounded,
    lattice_stabilizes,
    stable_lattice,
    standard_lattice,
)
from .padic import (
    FqElem,
    PadicCtx,
    QqElem,
    ZqElem,
    qq_normalize,
    reduce,
    teichmuller,
    zq_arith,
    zq_inv,
)
from .profinite import (
    Perm,
    PJordanPair,
    p_jordan_pairs_exhaustive,
    p_jordan_perm,
    perm_order,
    verify_unique_p_jordan,
)
from .tjd import (
    Certificate,
    FiltrationClass,
    TJDResult,
    check_fixed_lattice,
    check_projection,
    is_abs_semisimple,
    is_top_unipotent,
    tjd,
    tjd_integral,
    tjd_mod_center,
    torus_filtration,
)

__version__ = "0.1.0"
