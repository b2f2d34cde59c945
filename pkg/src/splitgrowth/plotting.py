"""Figures for degree data and fitted models, written straight to files."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analytic import in_pmf_closed, in_sf, out_pmf, out_sf  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": (4.0, 3.0),
    "savefig.dpi": 150,
}


def plot_ccdf(table, path, gamma_out=None, gamma_in=None, title=None):
    """Empirical CCDF with optional fitted model curves.

    Log horizontal axis, linear vertical axis. The out-degree model is a
    solid line, the in-degree model dashed.
    """
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.plot(table.degrees, table.fractions, "o", ms=3, color="k", label="data")
        x = np.arange(1, max(int(table.degrees[-1]), 2) + 1) if len(table.degrees) else np.arange(1, 3)
        if gamma_out is not None:
            ax.plot(x, out_sf(gamma_out, x), "-", color="0.5",
                    label=f"out model, $\\gamma$={gamma_out:.3f}")
        if gamma_in is not None:
            ax.plot(x, in_sf(gamma_in, x), "--", color="0.3",
                    label=f"in model, $\\gamma$={gamma_in:.3f}")
        ax.set_xscale("log")
        ax.set_ylim(0, 1.02)
        ax.set_xlabel("degree")
        ax.set_ylabel("fraction of nodes with degree $\\geq$ x")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def plot_model(gamma, max_degree, path):
    """Both model PMFs on lin-log (top) and log-log (bottom) axes."""
    n = np.arange(1, max_degree + 1)
    f = out_pmf(gamma, n)
    g = in_pmf_closed(gamma, n)
    with plt.rc_context(RC):
        fig, (top, bottom) = plt.subplots(2, 1, figsize=(4.0, 5.5))
        for ax in (top, bottom):
            ax.plot(n, f, "-", color="k", label="out")
            ax.plot(n, g, "--", color="k", label="in")
            ax.set_yscale("log")
            ax.set_xlabel("degree")
            ax.set_ylabel("probability")
        bottom.set_xscale("log")
        top.legend(frameon=False)
        top.set_title(f"$\\gamma$ = {gamma:g}")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
