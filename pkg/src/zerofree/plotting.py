"""Figure rendering for the report paths.

Two figure kinds: the polynomial over [pi/2, pi] (where qualifying
polynomials hug zero) and the envelope of region widths against log t.
Everything renders off-screen and writes straight to a file.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

__all__ = ["save_polynomial_plot", "save_envelope_plot"]


def save_polynomial_plot(poly, path, lo=math.pi / 2, hi=math.pi,
                         points: int = 1200) -> None:
    """Plot P(x) = sum b_k cos(kx) over [lo, hi] and write the figure."""
    xs = np.linspace(lo, hi, points)
    bf = np.array([float(v) for v in poly.b])
    ks = np.arange(poly.degree + 1)
    ys = np.cos(np.outer(xs, ks)) @ bf
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(xs, ys, lw=1.2)
    ax.axhline(0.0, color="0.6", lw=0.6)
    ax.set_xlabel("x")
    ax.set_ylabel("P(x)")
    ax.set_title("degree-%d polynomial, b1 = %.6f" % (poly.degree, bf[1]))
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_envelope_plot(rows, path) -> None:
    """Plot (log_t, width, source) rows, one line segment per source."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    sources = []
    for _, _, src in rows:
        if src not in sources:
            sources.append(src)
    for src in sources:
        xs = [lt for lt, _, s in rows if s == src]
        ys = [w for _, w, s in rows if s == src]
        ax.plot(xs, ys, lw=1.4, label=src)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("log t")
    ax.set_ylabel("zero-free width")
    ax.set_title("widest known zero-free region by height")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
