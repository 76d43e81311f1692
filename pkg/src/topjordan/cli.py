"""Command-line front end.

    topjordan tjd decompose --ctx '{"p":5,"d":1,"k":4}' --matrix mat.json [--mod-center]
    topjordan tjd check --ctx ... --matrix mat.json
    topjordan teichmuller --ctx ... --element 2
    topjordan profinite decompose --perm "1 2 3 4 5 0" --p 2
    topjordan verify --suite tjd-roundtrip --seed 1 --trials 100

The ``tjd`` script is shorthand for ``topjordan tjd``.  Reports are JSON
with every number written as a decimal string.

Matrix files hold a list of rows, a bare scalar for 1x1, or an object with
``entries`` and optional ``prec`` and ``ctx``.  An entry is an integer, a
fraction string such as ``"1/5"``, or a list of such coefficients in the
power basis of the residue field extension.

Exit codes: 0 ok, 1 verify failure, 2 not bounded, 3 precision
insufficient, 4 needs a ramified extension, 5 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import NeedsRamified, NotBounded, PrecisionInsufficient, TopJordanError
from .matq import MatQq, is_bounded
from .padic import PadicCtx, teichmuller
from .profinite import Perm, p_jordan_perm, perm_order
from .tjd import (
    is_abs_semisimple,
    is_top_unipotent,
    tjd,
    tjd_mod_center,
    torus_filtration,
)
from .verify import run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NOT_BOUNDED = 2
EXIT_PRECISION = 3
EXIT_RAMIFIED = 4
EXIT_INPUT = 5


class _Parser(argparse.ArgumentParser):
    # argparse's own exit status 2 would collide with "not bounded"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# --- JSON plumbing -----------------------------------------------------------


def _stringify(obj):
    """Render every number as a decimal string; booleans and None pass through."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _load_json_arg(text: str):
    """Inline JSON, or a path to a JSON file ('-' for stdin)."""
    if text == "-":
        return json.load(sys.stdin)
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        with open(text) as fh:
            return json.load(fh)


def _parse_entry(x):
    if isinstance(x, list):
        return [Fraction(str(c)) for c in x]
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ValueError(f"cannot read matrix entry {x!r}")
    return Fraction(str(x))


def read_matrix(obj, ctx: PadicCtx | None):
    """(ctx, MatQq) from parsed matrix JSON; ``ctx`` overrides an embedded one."""
    prec = None
    rows = obj
    if isinstance(obj, dict):
        if ctx is None and "ctx" in obj:
            ctx = PadicCtx.from_json(obj["ctx"])
        rows = obj["entries"]
        if obj.get("prec") is not None:
            prec = int(obj["prec"])
    if ctx is None:
        raise ValueError("no context given: pass --ctx or embed 'ctx' in the matrix file")
    if not isinstance(rows, list):
        rows = [[rows]]
    if not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    return ctx, MatQq.from_rows(ctx, [[_parse_entry(x) for x in r] for r in rows], prec)


def _encode_value(coeffs, d):
    return str(coeffs[0]) if d == 1 else [str(c) for c in coeffs]


def encode_matrix(m: MatQq):
    """Exact representative; a 1x1 matrix is written as its single entry."""
    d = m.ctx.d
    rows = [[_encode_value(x.c, d) for x in r] for r in m.exact()]
    return rows[0][0] if m.n == 1 else rows


# --- subcommands ---------------------------------------------------------------


def _ctx_arg(args):
    return PadicCtx.from_json(_load_json_arg(args.ctx)) if args.ctx else None


def _decompose(args):
    ctx, g = read_matrix(_load_json_arg(args.matrix), _ctx_arg(args))
    report = {}
    if args.mod_center:
        z, res = tjd_mod_center(g)
        report["center"] = {"p_power": z.v}
        g = g.scale_by_p(-z.v)
    else:
        res = tjd(g)
    report.update(
        {
            "gamma_ts": encode_matrix(res.gamma_ts),
            "gamma_tu": encode_matrix(res.gamma_tu),
            "certificate": res.certificate.to_json(),
            "effective_precision": res.effective_precision,
            "checks": res.checks(g),
        }
    )
    return report, EXIT_OK


def _check(args):
    _, g = read_matrix(_load_json_arg(args.matrix), _ctx_arg(args))
    bounded = is_bounded(g)
    report = {"bounded": bounded}
    if bounded:
        report["abs_semisimple"] = is_abs_semisimple(g)
        report["top_unipotent"] = is_top_unipotent(g)
    if g.is_diagonal():
        report["filtration"] = torus_filtration(g).value
    return report, EXIT_OK


def _teichmuller(args):
    ctx = _ctx_arg(args)
    if ctx is None:
        raise ValueError("--ctx is required")
    raw = _load_json_arg(args.element)
    element = ctx.fq(raw if isinstance(raw, list) else int(raw))
    lift = teichmuller(element, ctx)
    return _encode_value(lift.coeffs, ctx.d), EXIT_OK


def _profinite(args):
    g = Perm([int(t) for t in args.perm.split()])
    pair = p_jordan_perm(g, args.p)
    report = {
        "s": f"g^{pair.s_exponent}",
        "u": f"g^{pair.u_exponent}",
        "s_perm": str(pair.s),
        "u_perm": str(pair.u),
        "orders": {"g": perm_order(g), "s": perm_order(pair.s), "u": perm_order(pair.u)},
    }
    return report, EXIT_OK


def _verify(args):
    report = run_suite(args.suite, args.seed, args.trials)
    return report, EXIT_OK if report["ok"] else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topjordan", description="Topological Jordan decompositions in GL_n(Q_q).")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_flags(p):
        p.add_argument("--ctx", help='context JSON, e.g. \'{"p":5,"d":1,"k":4}\'')
        p.add_argument("--matrix", required=True, help="matrix JSON file, '-' for stdin")
        p.add_argument("--out", default=argparse.SUPPRESS)

    tjd_p = sub.add_parser("tjd", help="decompose or classify a matrix")
    tjd_sub = tjd_p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    dec = tjd_sub.add_parser("decompose")
    matrix_flags(dec)
    dec.add_argument("--mod-center", action="store_true", help="divide out p^(ord det / n) first")
    dec.set_defaults(func=_decompose)
    chk = tjd_sub.add_parser("check")
    matrix_flags(chk)
    chk.set_defaults(func=_check)

    tm = sub.add_parser("teichmuller", help="Teichmuller lift of a residue class")
    tm.add_argument("--ctx", required=True)
    tm.add_argument("--element", required=True, help="integer or JSON coefficient list")
    tm.add_argument("--out", default=argparse.SUPPRESS)
    tm.set_defaults(func=_teichmuller)

    pro = sub.add_parser("profinite", help="p-Jordan decomposition of a permutation")
    pro_sub = pro.add_subparsers(dest="action", required=True, parser_class=_Parser)
    pdec = pro_sub.add_parser("decompose")
    pdec.add_argument("--perm", required=True, help='images of 0..N-1, e.g. "1 2 0"')
    pdec.add_argument("--p", type=int, required=True)
    pdec.add_argument("--out", default=argparse.SUPPRESS)
    pdec.set_defaults(func=_profinite)

    ver = sub.add_parser("verify", help="run a seeded invariant suite")
    ver.add_argument("--suite", required=True)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--trials", type=int, default=100)
    ver.add_argument("--out", default=argparse.SUPPRESS)
    ver.set_defaults(func=_verify)
    return parser


def _error_report(err: Exception) -> dict:
    # KeyError.__str__ adds quotes
    message = str(err.args[0]) if err.args else type(err).__name__
    report = {"error": type(err).__name__, "message": message}
    if isinstance(err, NeedsRamified):
        report.update({"e": err.e, "tame": err.tame, "tame_is_advisory": True})
    return report


def _exit_code(err: Exception) -> int:
    if isinstance(err, NeedsRamified):
        return EXIT_RAMIFIED
    if isinstance(err, NotBounded):
        return EXIT_NOT_BOUNDED
    if isinstance(err, PrecisionInsufficient):
        return EXIT_PRECISION
    return EXIT_INPUT


def run(argv) -> tuple[dict, int, str | None]:
    """Parse ``argv`` and execute; returns (report, exit code, output path)."""
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except (TopJordanError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as err:
        report, code = _error_report(err), _exit_code(err)
    return _stringify(report), code, args.out


def main(argv=None) -> int:
    report, code, out = run(sys.argv[1:] if argv is None else argv)
    text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if isinstance(report, dict) and "error" in report:
        print(f"{report['error']}: {report['message']}", file=sys.stderr)
    return code


def tjd_main(argv=None) -> int:
    """Entry point for the ``tjd`` script."""
    return main(["tjd", *(sys.argv[1:] if argv is None else argv)])


if __name__ == "__main__":
    sys.exit(main())
