"""Command-line front end: ``koornasep <group> <command> [options]``.

Reports are JSON.  With ``--output`` the JSON goes to that file and a short
summary to stdout; without it the JSON itself is printed.  Exit status is 0
when every check passes, 1 when a check fails, 2 on bad input.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import asep, limits, mpa, suite
from .errors import KoornasepError
from .hecke import HeckeContext
from .koornwinder import apply_D, nonsymmetric_E, symmetric_P
from .params import ALTERNATE, DEFAULT, PHYSICAL, load_params

PRESETS = {"default": DEFAULT, "alternate": ALTERNATE, "physical": PHYSICAL}


def _num(v, digits=40):
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, mpmath.mpc):
        return [mpmath.nstr(v.real, digits), mpmath.nstr(v.imag, digits)]
    return mpmath.nstr(v, digits)


def _rationals(text):
    try:
        return [Fraction(p.strip()) for p in text.split(",") if p.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational list {text!r}") from exc


def _ints(text):
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc


def _params(args, fallback):
    if args.params is None:
        return fallback
    if args.params.lower() in PRESETS:
        return PRESETS[args.params.lower()]
    return load_params(args.params)


def _digits(args):
    return max(15, int(args.precision * 0.30103) - 5)


# subcommands

def cmd_koorn_nonsym(args):
    pp = _params(args, DEFAULT)
    lam = tuple(args.lam)
    ctx = HeckeContext(pp, len(lam))
    E = nonsymmetric_E(ctx, lam)
    rep = {"lambda": list(lam), "polynomial": E.poly.to_json_obj(),
           "y_eigenvalues": [_num(v) for v in E.eigenvalues]}
    return rep, True


def cmd_koorn_sym(args):
    pp = _params(args, DEFAULT)
    ctx = HeckeContext(pp, args.N)
    P = symmetric_P(ctx, args.m)
    res = apply_D(ctx, P.poly) - P.poly * P.d_eigenvalue
    size = max((abs(c) for c in res.terms.values()), default=Fraction(0))
    rep = {"lambda": [args.m] * args.N, "polynomial": P.poly.to_json_obj(),
           "d_eigenvalue": _num(P.d_eigenvalue), "d_residual": _num(size)}
    return rep, size == 0


def cmd_mpa_eval(args):
    pp = _params(args, DEFAULT)
    if len(args.x) != args.N:
        raise KoornasepError(f"--x has {len(args.x)} entries but --N is {args.N}")
    fn = mpa.psi_m if args.side == "right" else mpa.phi_m
    res = fn(pp, args.m, args.N, args.x, "numeric", args.K, args.backend, args.precision)
    d = _digits(args)
    rep = {"side": args.side, "m": args.m, "N": args.N, "backend": args.backend,
           "components": [_num(c, d) for c in res.components],
           "tail_estimate": _num(res.tail_estimate, 6),
           "omega": None if res.omega is None else _num(res.omega, d)}
    return rep, True


def cmd_asep_check(args):
    pp = _params(args, DEFAULT)
    report = suite.algebraic_identities(pp, args.seed)
    return {"residuals": {k: _num(v) for k, v in report.items()}}, \
        all(v == 0 for v in report.values())


def cmd_asep_lambda0(args):
    pp = _params(args, PHYSICAL)
    with mpmath.workprec(args.precision):
        if args.branch == "top":
            ev, it, resid = asep.lambda0(pp, args.N, args.xi, args.precision)
            rep = {"lambda0": _num(ev, _digits(args)), "iterations": it,
                   "residual": _num(resid, 6)}
        else:
            ev = asep.lambda0_stationary(pp, args.N, args.xi, args.precision)
            rep = {"lambda0": _num(ev, _digits(args))}
    rep["branch"] = args.branch
    return rep, True


def _limit_opts(args):
    return dict(m_list=tuple(args.m_list), K=args.K, precision=args.precision,
                backend=args.backend, allow_wide_xi=args.allow_wide_xi)


def cmd_limit_emu(args):
    pp = _params(args, PHYSICAL)
    with mpmath.workprec(args.precision):
        mu = mpmath.mpf(args.mu.numerator) / args.mu.denominator
        est = limits.E_mu_estimate(pp, args.N, mu, **_limit_opts(args))
        if pp.is_physical:
            ref = asep.lambda0(pp, args.N, mpmath.exp(mu), args.precision)[0]
        else:
            ref = asep.lambda0_stationary(pp, args.N, mpmath.exp(mu), args.precision)
        rep = est.to_json_obj()
        rep["lambda0_reference"] = _num(ref, 30)
        rep["reference_branch"] = "top" if pp.is_physical else "stationary"
        agree = bool(abs(est.extrapolated - ref) <= est.error_estimate)
        rep["agree"] = agree
    return rep, agree


def cmd_limit_f0char(args):
    pp = _params(args, PHYSICAL)
    if len(args.x) != args.N:
        raise KoornasepError(f"--x has {len(args.x)} entries but --N is {args.N}")
    with mpmath.workprec(args.precision):
        r = limits.check_F0_characterization(pp, args.N, args.xi, args.x, **_limit_opts(args))
        rep = r["lhs"].to_json_obj()
        rep["d0"] = _num(r["d0"], 30)
        rep["discrepancy"] = _num(r["discrepancy"], 6)
        rep["agree"] = bool(r["within_error"])
    return rep, rep["agree"]


def cmd_verify_all(args):
    pp = _params(args, DEFAULT)
    report = suite.verify_all(pp, args.seed)
    failed = sorted(k for k, v in report.items() if v != 0)
    return {"residuals": {k: _num(v) for k, v in report.items()}, "failed": failed}, not failed


# parser

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--params", help="parameter file, or one of: " + ", ".join(PRESETS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=int,
                   default=int(os.environ.get("KOORNASEP_PRECISION", "256")),
                   help="working precision in bits (env KOORNASEP_PRECISION)")
    p.add_argument("--output", help="write the JSON report here")
    return p


def _limit_args(p):
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m-list", type=_ints, default=list(limits.DEFAULT_M_LIST))
    p.add_argument("--K", type=int, default=64)
    p.add_argument("--backend", choices=("moments", "fock"), default="moments")
    p.add_argument("--allow-wide-xi", action="store_true")


def build_parser():
    common = _common()
    root = argparse.ArgumentParser(prog="koornasep", description=__doc__.splitlines()[0])
    groups = root.add_subparsers(dest="group", required=True)

    koorn = groups.add_parser("koorn").add_subparsers(dest="command", required=True)
    p = koorn.add_parser("nonsym", parents=[common], help="nonsymmetric E_lambda")
    p.add_argument("--lam", type=_ints, required=True, help="composition, e.g. -1,-1")
    p.set_defaults(func=cmd_koorn_nonsym)
    p = koorn.add_parser("sym", parents=[common], help="symmetric P_(m^N)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_koorn_sym)

    mp = groups.add_parser("mpa").add_subparsers(dest="command", required=True)
    p = mp.add_parser("eval", parents=[common], help="matrix-product state at a point")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--x", type=_rationals, required=True)
    p.add_argument("--K", type=int, default=64)
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--backend", choices=("fock", "moments"), default="fock")
    p.set_defaults(func=cmd_mpa_eval)

    ap = groups.add_parser("asep").add_subparsers(dest="command", required=True)
    p = ap.add_parser("check", parents=[common], help="integrability identities")
    p.set_defaults(func=cmd_asep_check)
    p = ap.add_parser("lambda0", parents=[common], help="top eigenvalue of M(xi)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--xi", type=_rational, required=True)
    p.add_argument("--branch", choices=("top", "stationary"), default="top")
    p.set_defaults(func=cmd_asep_lambda0)

    lp = groups.add_parser("limit").add_subparsers(dest="command", required=True)
    p = lp.add_parser("e-mu", parents=[common], help="E(mu) from the large-m limit")
    p.add_argument("--mu", type=_rational, required=True)
    _limit_args(p)
    p.set_defaults(func=cmd_limit_emu)
    p = lp.add_parser("f0-char", parents=[common], help="difference identity for F0")
    p.add_argument("--xi", type=_rational, required=True)
    p.add_argument("--x", type=_rationals, required=True)
    _limit_args(p)
    p.set_defaults(func=cmd_limit_f0char)

    vp = groups.add_parser("verify").add_subparsers(dest="command", required=True)
    p = vp.add_parser("all", parents=[common], help="every exact identity")
    p.set_defaults(func=cmd_verify_all)
    return root


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, ok = args.func(args)
    except (KoornasepError, ValueError, OSError) as exc:
        print(f"koornasep: error: {exc}", file=sys.stderr)
        return 2
    report = {"command": f"{args.group} {args.command}", "ok": ok, **report}
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(f"{report['command']}: {'ok' if ok else 'FAILED'} (report in {args.output})")
    else:
        print(text)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
