"""Command-line entry point: ``resbias <command> [--flags]``.

Exit codes: 0 success, 1 failed validation, 2 usage error, 3 I/O error.
Output is deterministic for a fixed command line.
"""

import argparse
import json
import os
import sys

from resbias import landscape as ls
from resbias.errors import ContractError, DomainError
from resbias.landscape import format_number
from resbias.prototype import PrototypeParams, bias_sin2
from resbias.quadrature import builtin, direct_bias
from resbias.resonance import arrows, chi_tilde_closed, chi_tilde_naive
from resbias.spectrum import (
    FourierSpectrum,
    bias_classical_alias,
    bias_rbf_general,
    estimate_spectrum_dft,
)
from resbias.tensor2d import Spectrum2D, bias_classical_2d, bias_rbf_2d

VALIDATE_TOL = 1e-9


class IOFailure(Exception):
    pass


def _fn_params(args):
    if args.fn == "sin2":
        if args.k is None:
            raise DomainError("--fn sin2 needs --k")
        return {"k": args.k}
    if args.fn == "cos2pin":
        if args.n is None:
            raise DomainError("--fn cos2pin needs --n")
        return {"n": args.n}
    return {}


def _load_spectrum(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IOFailure(f"cannot read spectrum {path}: {exc}") from exc
    try:
        if data.get("modes") and "k1" in data["modes"][0]:
            return Spectrum2D.from_dict(data)
        return FourierSpectrum.from_dict(data)
    except ContractError as exc:
        raise IOFailure(str(exc)) from exc


def _spectrum_for(args):
    if args.spectrum:
        return _load_spectrum(args.spectrum), None
    if not args.fn:
        raise DomainError("give --spectrum PATH or --fn NAME")
    f = builtin(args.fn, **_fn_params(args))
    if f.spectrum is not None:
        if f.dim == 2:
            return Spectrum2D(f.spectrum, symmetric_real=True), f
        return FourierSpectrum(f.spectrum, symmetric_real=True), f
    return estimate_spectrum_dft(f, args.N, drop_tol=args.drop_tol), f


def _csv(header, rows):
    lines = [",".join(header)]
    lines += [",".join(format_number(v) if v is not None else "" for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def cmd_chi(args):
    evaluate = chi_tilde_naive if args.method == "naive" else chi_tilde_closed
    rv = evaluate(args.P, args.y)
    if args.format == "json":
        return json.dumps({"re": rv.real, "im": rv.imag, "branch": rv.branch.value}) + "\n"
    return _csv(["re", "im"], [[rv.real, rv.imag]])


def cmd_arrows(args):
    dec = arrows(args.P, args.y)
    if args.format == "json":
        return json.dumps(
            {
                "arrows": [{"re": z.real, "im": z.imag} for z in dec.arrows.tolist()],
                "centroid": {"re": dec.centroid.real, "im": dec.centroid.imag},
            },
            indent=1,
        ) + "\n"
    rows = [[j, z.real, z.imag] for j, z in enumerate(dec.arrows.tolist())]
    out = _csv(["j", "re", "im"], rows)
    return out + f"centroid,{format_number(dec.centroid.real)},{format_number(dec.centroid.imag)}\n"


def cmd_bias(args):
    header = ["rbf_re", "rbf_im", "classical_re", "classical_im", "direct", "max_discrepancy"]
    if not args.spectrum and args.fn == "sin2":
        f = builtin("sin2", k=args.k)
        if f.spectrum is None:
            rbf = bias_sin2(args.P, PrototypeParams(args.k))
            direct = direct_bias(f, args.P)
            row = [rbf, 0.0, None, None, direct, abs(rbf - direct)]
            return _emit_bias(args, header, row)
    spec, f = _spectrum_for(args)
    l_max = args.lmax or max(1, -(-spec.max_mode // args.P))
    if not args.lmax and getattr(spec, "source_N", None):
        l_max = max(1, (spec.source_N // 2 - 1) // args.P)
    if isinstance(spec, Spectrum2D):
        rbf = bias_rbf_2d(spec, args.P, diagnostic=args.diagnostic)
        classical = bias_classical_2d(spec, args.P, l_max)
    else:
        rbf = bias_rbf_general(spec, args.P, diagnostic=args.diagnostic)
        classical = bias_classical_alias(spec, args.P, l_max)
    vals = [rbf, classical]
    direct = None
    if f is not None and f.exact_integral is not None:
        direct = direct_bias(f, args.P)
        vals.append(complex(direct))
    disc = max(abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:])
    row = [rbf.real, rbf.imag, classical.real, classical.imag, direct, disc]
    return _emit_bias(args, header, row)


def _emit_bias(args, header, row):
    if args.format == "json":
        return json.dumps(dict(zip(header, row))) + "\n"
    return _csv(header, [row])


def _threads():
    try:
        return max(0, int(os.environ.get("RBF_THREADS", "0")))
    except ValueError:
        return 0


def cmd_sweep(args):
    if not args.fn:
        raise DomainError("sweep needs --fn")
    rows = ls.sweep_bias(args.fn, _fn_params(args), args.pmin, args.pmax, threads=_threads())
    return _rows_out(args, rows, "sweep")


def cmd_landscape(args):
    rows = ls.sample_landscape(args.P, args.ymin, args.ymax, args.n)
    return _rows_out(args, rows, "landscape")


def cmd_landscape2d(args):
    rows = ls.sample_landscape_2d(args.P, args.range, args.n)
    return _rows_out(args, rows, "landscape2d")


def cmd_filter(args):
    spec, _ = _spectrum_for(args)
    if isinstance(spec, Spectrum2D):
        raise DomainError("filter view is 1D only")
    rows = ls.filter_view(spec, args.P, args.krange)
    return _rows_out(args, rows, "filterview")


def cmd_spectrum_estimate(args):
    if not args.fn:
        raise DomainError("spectrum-estimate needs --fn")
    f = builtin(args.fn, **_fn_params(args))
    if f.dim != 1:
        raise DomainError("spectrum estimation is 1D only")
    spec = estimate_spectrum_dft(f, args.N, drop_tol=args.drop_tol, k_max=args.kmax)
    return spec.dumps() + "\n"


def validation_table():
    """The three reference cases: (case, method, bias) rows and the max diff per case."""
    rows = []
    worst = 0.0

    f1 = builtin("sin2", k=2.3)
    d1 = direct_bias(f1, 20)
    t1 = bias_sin2(20, PrototypeParams(2.3))
    rows += [(1, "sin2(k=2.3) P=20", "direct", d1, 0.0), (1, "", "rbf_prototype", t1, abs(t1 - d1))]
    worst = max(worst, abs(t1 - d1))

    f2 = builtin("cos2pin", n=4)
    s2 = FourierSpectrum(f2.spectrum, symmetric_real=True)
    d2 = direct_bias(f2, 4)
    r2 = bias_rbf_general(s2, 4)
    c2 = bias_classical_alias(s2, 4, 2)
    rows += [
        (2, "cos(8 pi x) P=4", "direct", d2, 0.0),
        (2, "", "rbf_general", r2.real, abs(r2 - d2)),
        (2, "", "classical_alias", c2.real, abs(c2 - d2)),
    ]
    worst = max(worst, abs(r2 - d2), abs(c2 - d2), abs(r2 - c2))

    f3 = builtin("prod_cos8pi")
    s3 = Spectrum2D(f3.spectrum, symmetric_real=True)
    d3 = direct_bias(f3, 4)
    r3 = bias_rbf_2d(s3, 4)
    c3 = bias_classical_2d(s3, 4, 2)
    rows += [
        (3, "cos(8 pi x1) cos(8 pi x2) P=4", "direct_2d", d3, 0.0),
        (3, "", "rbf_2d", r3.real, abs(r3 - d3)),
        (3, "", "classical_2d", c3.real, abs(c3 - d3)),
    ]
    worst = max(worst, abs(r3 - d3), abs(c3 - d3), abs(r3 - c3))
    return rows, worst


def cmd_validate(args):
    rows, worst = validation_table()
    if args.format == "json":
        out = json.dumps(
            {
                "rows": [
                    {"case": c, "function": fn, "method": m, "bias": b, "diff": d}
                    for c, fn, m, b, d in rows
                ],
                "max_diff": worst,
                "passed": worst < VALIDATE_TOL,
            },
            indent=1,
        ) + "\n"
    else:
        out = _csv(["case", "function", "method", "bias", "diff"], [list(r) for r in rows])
        out += f"# max_diff={format_number(worst)} {'PASS' if worst < VALIDATE_TOL else 'FAIL'}\n"
    return out, (0 if worst < VALIDATE_TOL else 1)


def _rows_out(args, rows, kind):
    if args.format == "json":
        return ls.to_json(rows, kind)
    return ls.to_csv(rows, kind)


COMMANDS = {
    "chi": cmd_chi,
    "arrows": cmd_arrows,
    "bias": cmd_bias,
    "sweep": cmd_sweep,
    "landscape": cmd_landscape,
    "landscape2d": cmd_landscape2d,
    "filter": cmd_filter,
    "spectrum-estimate": cmd_spectrum_estimate,
    "validate": cmd_validate,
}

# flags each command cannot run without (after merging --config)
REQUIRED = {
    "chi": ("P", "y"),
    "arrows": ("P", "y"),
    "bias": ("P",),
    "sweep": ("fn",),
    "landscape": ("P",),
    "landscape2d": ("P",),
    "filter": ("P",),
    "spectrum-estimate": ("fn",),
    "validate": (),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", help="write to this path instead of stdout")
    common.add_argument("--config", help="JSON file of flag values (command line wins)")

    fn = argparse.ArgumentParser(add_help=False)
    fn.add_argument("--fn", choices=("sin2", "cos2pin", "expcos", "prod_cos8pi"))
    fn.add_argument("--k", type=float, help="sin2 frequency")
    fn.add_argument("--n", type=int, help="cos2pin mode")

    dft = argparse.ArgumentParser(add_help=False)
    dft.add_argument("--N", type=int, default=4096, help="DFT sample count")
    dft.add_argument("--drop-tol", type=float, default=0.0)

    parser = argparse.ArgumentParser(prog="resbias", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = subs["chi"] = sub.add_parser("chi", parents=[common], help="complex resonance value")
    p.add_argument("--P", type=int)
    p.add_argument("--y", type=float)
    p.add_argument("--method", choices=("closed", "naive"), default="closed")

    p = subs["arrows"] = sub.add_parser("arrows", parents=[common], help="unit phasors and centroid")
    p.add_argument("--P", type=int)
    p.add_argument("--y", type=float)

    p = subs["bias"] = sub.add_parser("bias", parents=[common, fn, dft], help="bias by every route")
    p.add_argument("--spectrum", help="spectrum JSON file")
    p.add_argument("--P", type=int)
    p.add_argument("--lmax", type=int)
    p.add_argument("--diagnostic", action="store_true", help="evaluate the filter at every mode")

    p = subs["sweep"] = sub.add_parser("sweep", parents=[common, fn], help="bias over a range of P")
    p.add_argument("--pmin", type=int, default=2)
    p.add_argument("--pmax", type=int, default=200)

    p = subs["landscape"] = sub.add_parser("landscape", parents=[common], help="1D resonance landscape")
    p.add_argument("--P", type=int)
    p.add_argument("--ymin", type=float, default=0.0)
    p.add_argument("--ymax", type=float, default=1.0)
    p.add_argument("--n", type=int, default=2001)

    p = subs["landscape2d"] = sub.add_parser("landscape2d", parents=[common], help="2D landscape grid")
    p.add_argument("--P", type=int)
    p.add_argument("--range", type=float, default=2.0)
    p.add_argument("--n", type=int, default=201)

    p = subs["filter"] = sub.add_parser("filter", parents=[common, fn, dft], help="filter view")
    p.add_argument("--spectrum", help="spectrum JSON file")
    p.add_argument("--P", type=int)
    p.add_argument("--krange", type=int, default=60)

    p = subs["spectrum-estimate"] = sub.add_parser(
        "spectrum-estimate", parents=[common, fn, dft], help="DFT spectrum to JSON"
    )
    p.add_argument("--kmax", type=int)

    subs["validate"] = sub.add_parser("validate", parents=[common], help="reference bias table")
    return parser, subs


def parse_args(argv):
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise IOFailure(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            parser.error("--config must hold a JSON object")
        sp = subs[args.command]
        known = {a.dest for a in sp._actions}
        unknown = sorted(k for k in (key.replace("-", "_") for key in cfg) if k not in known)
        if unknown:
            sp.error(f"unknown config keys: {', '.join(unknown)}")
        sp.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
        args = parser.parse_args(argv)
    missing = [f"--{name}" for name in REQUIRED[args.command] if getattr(args, name) is None]
    if missing:
        subs[args.command].error(f"missing required flags: {' '.join(missing)}")
    return args


def run(argv=None):
    """Parse, execute and write; returns the process exit code."""
    try:
        args = parse_args(argv)
    except IOFailure as exc:
        print(f"resbias: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        result = COMMANDS[args.command](args)
    except IOFailure as exc:
        print(f"resbias: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ContractError) as exc:
        print(f"resbias: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(result, tuple):
        result, code = result
    try:
        if args.output:
            with open(args.output, "w", newline="") as fh:
                fh.write(result)
        else:
            sys.stdout.write(result)
    except OSError as exc:
        print(f"resbias: cannot write output: {exc}", file=sys.stderr)
        return 3
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
