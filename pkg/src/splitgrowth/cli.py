"""Command-line front end.

Subcommands::

    simulate  --gamma G --steps N [--variant V] [--seed S] --out-prefix P
    dist      --kind K --gamma G --max-degree M --out F [--tail-tol T] [--plot PNG]
    fit       --kind K --input F
    gof       --kind K --input F [--nsynth N] [--seed S] [--workers W]
    extract   --root D --out F [--hist-prefix P]
    ccdf      --input F --out G [--plot PNG]

Exit status: 0 on success, 1 on a usage error, 2 on a data error
(unparsable input, degenerate data). Diagnostics go to standard error;
results are printed as ``key=value`` lines or written as CSV/TSV.
"""

import argparse
import sys

import numpy as np

from . import __version__
from .analytic import DEFAULT_TAIL_TOL, OutDist, in_pmf_table
from .extract import extract_import_graph, format_report
from .fit import DegenerateData, Kind, fit, fit_in, fit_out
from .gof import DEFAULT_NSYNTH, mc_pvalue
from .growth import ModelParams, Variant, degree_histograms, simulate
from .histogram import HistogramError
from .ingest import (ParseError, ccdf, fmt_float, format_dist_table, histograms_from_edges,
                     read_histogram, write_ccdf, write_edge_list, write_histogram)
from .rng import DEFAULT_SEED

SMALL_SAMPLE = 100


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _kv(out, **items):
    for key, val in items.items():
        if isinstance(val, float):
            val = fmt_float(val)
        elif isinstance(val, (Kind, Variant)):
            val = val.value
        out.write(f"{key}={val}\n")


def _gamma(text):
    try:
        g = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < g < 1.0:
        raise argparse.ArgumentTypeError("gamma must lie strictly between 0 and 1")
    return g


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _seed(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return n


def _tail_tol(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < x <= 1e-6:
        raise argparse.ArgumentTypeError("tail tolerance must lie in (0, 1e-6]")
    return x


def build_parser():
    p = _Parser(prog="splitgrowth", description="Splitting-model degree distributions: "
                "simulate, fit and test.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    kinds = [k.value for k in Kind]

    s = sub.add_parser("simulate", help="run the growth process and write degree histograms")
    s.add_argument("--gamma", type=_gamma, required=True)
    s.add_argument("--steps", type=_positive, required=True)
    s.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.BASELINE.value)
    s.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    s.add_argument("--out-prefix", required=True)

    d = sub.add_parser("dist", help="tabulate a model distribution")
    d.add_argument("--kind", choices=kinds, required=True)
    d.add_argument("--gamma", type=_gamma, required=True)
    d.add_argument("--max-degree", type=_positive, required=True)
    d.add_argument("--out", required=True)
    d.add_argument("--tail-tol", type=_tail_tol, default=DEFAULT_TAIL_TOL)
    d.add_argument("--plot", help="also render both model PMFs to this image file")

    f = sub.add_parser("fit", help="maximum-likelihood fit of a degree histogram")
    f.add_argument("--kind", choices=kinds, required=True)
    f.add_argument("--input", required=True)

    g = sub.add_parser("gof", help="KS goodness of fit with a bootstrap p-value")
    g.add_argument("--kind", choices=kinds, required=True)
    g.add_argument("--input", required=True)
    g.add_argument("--nsynth", type=_positive, default=DEFAULT_NSYNTH)
    g.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    g.add_argument("--workers", type=_positive, default=1)

    e = sub.add_parser("extract", help="import graph of a Java source tree")
    e.add_argument("--root", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--hist-prefix", help="also write DO/DOinv histograms as PREFIX.out.csv/.in.csv")

    c = sub.add_parser("ccdf", help="cumulative degree distribution for plotting")
    c.add_argument("--input", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--plot", help="also render the CCDF with fitted models to this image file")
    return p


def cmd_simulate(args, out):
    params = ModelParams(args.gamma, args.steps, Variant(args.variant), args.seed)
    state = simulate(params)
    h_out, h_in = degree_histograms(state)
    write_histogram(h_out, f"{args.out_prefix}.out.csv")
    write_histogram(h_in, f"{args.out_prefix}.in.csv")
    meta = dict(gamma=params.gamma, steps=params.steps, variant=params.variant,
                seed=params.seed, k=state.k, t=state.t, kt_ratio=state.k / state.t,
                n_splits=state.n_splits, rng="numpy.PCG64", version=__version__)
    with open(f"{args.out_prefix}.meta", "w", encoding="utf-8", newline="\n") as fh:
        _kv(fh, **meta)
    _kv(out, k=state.k, t=state.t, kt_ratio=state.k / state.t)


def cmd_dist(args, out):
    n = np.arange(1, args.max_degree + 1)
    if args.kind == Kind.OUT.value:
        dist = OutDist(args.gamma)
    else:
        dist = in_pmf_table(args.gamma, args.tail_tol)
    text = format_dist_table(n, dist.pmf(n), dist.cdf(n), dist.sf(n))
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    if args.plot:
        from .plotting import plot_model
        plot_model(args.gamma, args.max_degree, args.plot)


def cmd_fit(args, out):
    hist = read_histogram(args.input)
    res = fit(hist, args.kind)
    _kv(out, kind=res.kind, gamma_hat=res.gamma_hat, loglik=res.loglik, k=res.k, t=res.t,
        kt_ratio=res.kt_ratio, dropped_zeros=res.dropped_zeros, method=res.method.value)


def cmd_gof(args, out):
    hist = read_histogram(args.input)
    if hist.k < SMALL_SAMPLE:
        print(f"warning: only {hist.k} nodes; bootstrap p-values on small samples are noisy",
              file=sys.stderr)
    res = mc_pvalue(hist, args.kind, args.nsynth, args.seed, workers=args.workers)
    _kv(out, kind=res.kind, D=res.D, p_value=res.p_value, n_synth=res.n_synth,
        gamma_hat=res.gamma_hat, seed=res.seed, synthetic_size=res.sample_size)


def cmd_extract(args, out):
    el = extract_import_graph(args.root)
    write_edge_list(el, args.out)
    _kv(out, nodes=len(el.nodes), edges=len(el.edges))
    out.write(format_report(el))
    if args.hist_prefix:
        h_out, h_in = histograms_from_edges(el)
        write_histogram(h_out, f"{args.hist_prefix}.out.csv")
        write_histogram(h_in, f"{args.hist_prefix}.in.csv")


def cmd_ccdf(args, out):
    hist = read_histogram(args.input)
    if hist.is_empty():
        raise DegenerateData("histogram has no nodes of positive degree")
    table = ccdf(hist)
    write_ccdf(table, args.out)
    if args.plot:
        from .plotting import plot_ccdf
        try:
            g_out = fit_out(hist).gamma_hat
        except DegenerateData:
            g_out = None
        plot_ccdf(table, args.plot, g_out, fit_in(hist).gamma_hat)


COMMANDS = {
    "simulate": cmd_simulate,
    "dist": cmd_dist,
    "fit": cmd_fit,
    "gof": cmd_gof,
    "extract": cmd_extract,
    "ccdf": cmd_ccdf,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if not exc.code else 1
    try:
        COMMANDS[args.command](args, out)
    except (ParseError, HistogramError, DegenerateData) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
