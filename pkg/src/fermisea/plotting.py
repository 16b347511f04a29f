"""Quick-look figures for sweep reports.

plot.dat targets gnuplot and friends; the PNGs rendered here are the
eyeball check that goes next to it.  Everything uses the non-interactive
Agg backend so runs stay headless-safe.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_report_figures", "sweep_figure"]

_STYLE = {
    "figure.figsize": (6.4, 4.2),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
    "legend.fontsize": 9,
}


def sweep_figure(
    path,
    scales,
    values,
    *,
    fitted=None,
    xlabel: str = "L",
    ylabel: str = "value",
    title: str = "",
    logx: bool = True,
    logy: bool = False,
) -> None:
    """Scatter of a sweep with an optional fitted-model overlay."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(scales, values, "o", ms=4, label="measured")
        if fitted is not None:
            ax.plot(scales, fitted, "-", lw=1.2, label="fit")
        if logx:
            ax.set_xscale("log")
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if fitted is not None:
            ax.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)


# primary y column plotted per kind, and whether log axes make sense
_KIND_AXES = {
    "entropy1d": ("scale", "entropy", True, False),
    "cube": ("scale", "entropy", True, True),
    "lattice2d": ("scale", "entropy", True, False),
    "variance": ("scale", "variance", True, True),
    "fractal": ("scale", "variance", True, True),
    "moments1d": ("scale", "corrected", True, False),
    "thermal": ("beta", "entropy", True, True),
    "widom_coeff": ("order", "j_value", False, False),
}


def render_report_figures(kind, rows, outdir, fit=None) -> list:
    """Render the standard figure(s) for a finished run; returns file names.

    ``rows`` are the results.csv records (dicts), ``fit`` an optional
    FitResult used for the overlay.  Only the headline column is drawn;
    plot.dat keeps every column for finer-grained external plotting.
    """
    xcol, ycol, logx, logy = _KIND_AXES[kind]
    xs = np.array([float(r[xcol]) for r in rows])
    ys = np.array([float(r[ycol]) for r in rows])
    fitted = None
    if fit is not None:
        try:
            fitted = fit.predict(xs)
        except Exception:
            fitted = None
    if logy and np.any(ys <= 0):
        logy = False
    name = f"{kind}_sweep.png"
    sweep_figure(
        outdir / name,
        xs,
        ys,
        fitted=fitted,
        xlabel=xcol,
        ylabel=ycol,
        title=kind,
        logx=logx,
        logy=logy,
    )
    return [name]
