"""Command-line entry point: ``gelfand-stockwell <command> ...``.

Exit codes: 0 success, 1 an asserted audit check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog, io
from .audit import DEFAULT_TOL, run_verify
from .errors import GelfandError, UnknownPair
from .localization import bound_suite, build_localization
from .spherical import spherical_ft
from .stockwell import make_window, stockwell_forward, stockwell_inverse


def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(42), help="suite-level random seed")
    parser.add_argument("--tol", type=float, default=default(DEFAULT_TOL), help="tolerance for asserted checks")
    parser.add_argument("--output", "-o", default=default(None), help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=default("csv"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gelfand-stockwell", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    pairs = sub.add_parser("pairs", parents=[common], help="inspect the built-in pair catalog")
    pairs.add_argument("action", choices=("list", "show", "export"))
    pairs.add_argument("name", nargs="?")

    sp = sub.add_parser("spectrum", parents=[common], help="spherical Fourier transform of a signal")
    sp.add_argument("pair", help="catalog name or pair JSON path")
    sp.add_argument("signal")

    an = sub.add_parser("analyze", parents=[common], help="Stockwell coefficients of a signal")
    an.add_argument("pair")
    an.add_argument("signal")
    an.add_argument("window")
    an.add_argument("automorphism")
    an.add_argument("--sidecar", help="path for the JSON sidecar (default: next to --output)")

    sy = sub.add_parser("synthesize", parents=[common], help="invert Stockwell coefficients")
    sy.add_argument("pair")
    sy.add_argument("coeffs")
    sy.add_argument("window")
    sy.add_argument("automorphism")

    lo = sub.add_parser("localize", parents=[common], help="apply a localization operator")
    lo.add_argument("pair")
    lo.add_argument("signal")
    lo.add_argument("window")
    lo.add_argument("symbol")
    lo.add_argument("automorphism")
    lo.add_argument("--report", help="path for the operator report JSON (default: next to --output)")

    ve = sub.add_parser("verify", parents=[common], help="audit every identity and bound")
    ve.add_argument("pairs", nargs="*", help="catalog names (default: all)")
    return parser


def _automorphism(name, auts):
    if name not in auts:
        raise UnknownPair("unknown automorphism %r; known: %s" % (name, ", ".join(auts)))
    return auts[name]


def _sidecar_path(explicit, output):
    if explicit:
        return explicit
    if not output or output == "-":
        return None
    out = Path(output)
    return str(out.with_suffix(".meta.json" if out.suffix == ".json" else ".json"))


def _write_json(path, obj):
    """Write to ``path``, or to stderr when stdout already carries the main output."""
    text = json.dumps(obj, indent=2) + "\n"
    if path is None:
        sys.stderr.write(text)
    else:
        Path(path).write_text(text)


def cmd_pairs(args):
    if args.action == "list":
        for name in catalog.list_pairs():
            e = catalog.get_pair(name)
            print("%-12s |G|=%-4d classes=%-3d automorphisms=%d" % (
                name, e.pair.order, e.pair.n_classes, len(e.automorphisms)))
        return 0
    if not args.name:
        raise GelfandError("pairs %s needs a pair name" % args.action)
    e = catalog.get_pair(args.name)
    if args.action == "export":
        text = json.dumps(io.pair_to_json(e.pair.group, e.pair.k, e.automorphisms)) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    p, d = e.pair, e.dual
    print("%s: %s" % (e.name, e.notes))
    print("order %d, |K| = %d, abelian group: %s, certified Gelfand: %s" % (
        p.order, p.k.order, e.abelian, p.certified))
    print("double cosets (sizes): %s" % p.cosets.sizes.tolist())
    print("Plancherel weights: %s" % ", ".join("%.6g" % w for w in d.weights))
    print("automorphisms: %s" % ", ".join(e.automorphisms))
    for i, f in enumerate(d.functions):
        vals = ", ".join(_fmt_complex(z) for z in f.class_values)
        print("  phi_%d (mu=%.6g, positive-definite=%s): [%s]" % (i, d.weights[i], d.positive_definite[i], vals))
    return 0


def _fmt_complex(z):
    z = complex(np.round(z.real, 12), np.round(z.imag, 12))
    return ("%.6g" % z.real) if z.imag == 0 else ("%.6g%+.6gi" % (z.real, z.imag))


def cmd_spectrum(args):
    _, pair, dual, _ = io.load_pair(args.pair)
    f = io.read_signal(args.signal, pair.order)
    io.write_spectrum(args.output, spherical_ft(pair, dual, f), dual.mu, args.format)
    return 0


def cmd_analyze(args):
    _, pair, dual, auts = io.load_pair(args.pair)
    aut = _automorphism(args.automorphism, auts)
    f = io.read_signal(args.signal, pair.order)
    w = make_window(pair, io.read_signal(args.window, pair.order))
    c = stockwell_forward(pair, dual, f, w, aut)
    io.write_coeffs(args.output, c, args.format)
    _write_json(_sidecar_path(args.sidecar, args.output), {
        "signal_l2": float(np.linalg.norm(f)),
        "window_l2": w.l2norm,
        "coefficients_l2": c.norm(),
        "coefficients_sup": c.sup(),
        "weights": [float(x) for x in dual.mu],
        "automorphism": args.automorphism,
    })
    return 0


def cmd_synthesize(args):
    _, pair, dual, auts = io.load_pair(args.pair)
    aut = _automorphism(args.automorphism, auts)
    c = io.read_coeffs(args.coeffs, (pair.order, dual.size))
    w = make_window(pair, io.read_signal(args.window, pair.order))
    f, leak = stockwell_inverse(pair, dual, c, w, aut, return_leakage=True)
    io.write_signal(args.output, f, args.format)
    if leak > args.tol:
        print("warning: inversion left the bi-invariant subspace by %.3e" % leak, file=sys.stderr)
    return 0


def cmd_localize(args):
    _, pair, dual, auts = io.load_pair(args.pair)
    aut = _automorphism(args.automorphism, auts)
    f = io.read_signal(args.signal, pair.order)
    w = make_window(pair, io.read_signal(args.window, pair.order))
    u = io.read_symbol(args.symbol, (pair.order, dual.size))
    op = build_localization(pair, dual, u, w, aut)
    io.write_signal(args.output, op.apply(f), args.format)
    report_path = _sidecar_path(args.report, args.output)
    if abs(w.l2norm - 1.0) <= 1e-12:
        report = bound_suite(pair, dual, u, w, aut).as_dict()
    else:
        report = {"operator_norm": float(np.linalg.norm(op.matrix, 2)), "bi_invariance_leakage": op.leakage,
                  "note": "window is not unit-norm; bound margins not computed"}
    _write_json(report_path, report)
    return 0


def cmd_verify(args):
    report = run_verify(args.pairs or None, seed=args.seed, tol=args.tol)
    if args.output:
        Path(args.output).write_text(report.to_json())
    if args.format == "json" and not args.output:
        sys.stdout.write(report.to_json())
    else:
        print(report.table())
    return 0 if report.ok else 1


COMMANDS = {
    "pairs": cmd_pairs,
    "spectrum": cmd_spectrum,
    "analyze": cmd_analyze,
    "synthesize": cmd_synthesize,
    "localize": cmd_localize,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GelfandError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
