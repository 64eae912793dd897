"""Figures for table and L-value reports (written to files, Agg backend)."""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import mpmath


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_n_values(reports, path):
    """Scatter of n against |D|, one marker colour per quaternion type."""
    fig, ax = plt.subplots(figsize=(7, 4))
    types = sorted({row.type_index for rep in reports for row in rep.rows})
    cmap = plt.get_cmap("tab10")
    for t in types:
        xs = [row.D for rep in reports for row in rep.rows if row.type_index == t]
        ys = [row.n for rep in reports for row in rep.rows if row.type_index == t]
        ax.scatter(xs, ys, s=28, color=cmap(t % 10), label=f"type {t}", alpha=0.8)
    ax.axhline(0, color="0.6", lw=0.8)
    ax.set_xlabel("|D|")
    ax.set_ylabel("n")
    ax.set_title(f"normalized theta quotients, N = {reports[0].N}")
    if len(types) > 1:
        ax.legend(fontsize=7, ncol=2)
    return _save(fig, path)


def plot_l_values(reports, path):
    """Central values in the complex plane, theta formula against oracle."""
    fig, ax = plt.subplots(figsize=(5, 5))
    fx = [float(mpmath.re(r.L_formula.value)) for r in reports]
    fy = [float(mpmath.im(r.L_formula.value)) for r in reports]
    ax.scatter(fx, fy, marker="o", facecolors="none", edgecolors="C0", s=60, label="theta formula")
    ok = [r for r in reports if r.L_oracle.err != mpmath.inf]
    if ok:
        ax.scatter([float(mpmath.re(r.L_oracle.value)) for r in ok],
                   [float(mpmath.im(r.L_oracle.value)) for r in ok],
                   marker="x", color="C3", s=30, label="oracle")
    for r, x, y in zip(reports, fx, fy):
        ax.annotate(str(r.D), (x, y), fontsize=6, xytext=(3, 3), textcoords="offset points")
    ax.axhline(0, color="0.7", lw=0.6)
    ax.axvline(0, color="0.7", lw=0.6)
    ax.set_xlabel("Re L")
    ax.set_ylabel("Im L")
    ax.set_title(f"L(psi_D, 1), N = {reports[0].N}")
    ax.legend(fontsize=7)
    return _save(fig, path)


def plot_root_numbers(reports, path):
    """Root numbers on the unit circle."""
    fig, ax = plt.subplots(figsize=(5, 5))
    t = [2 * mpmath.pi * k / 200 for k in range(201)]
    ax.plot([float(mpmath.cos(s)) for s in t], [float(mpmath.sin(s)) for s in t], color="0.7", lw=0.8)
    pts = [r for r in reports if r.w_psi.err != mpmath.inf]
    ax.scatter([float(mpmath.re(r.w_psi.value)) for r in pts],
               [float(mpmath.im(r.w_psi.value)) for r in pts],
               c=["C2" if r.xi2 == 1 else "C1" for r in pts], s=30)
    for r in pts:
        ax.annotate(str(r.D), (float(mpmath.re(r.w_psi.value)), float(mpmath.im(r.w_psi.value))),
                    fontsize=6, xytext=(3, 3), textcoords="offset points")
    ax.set_aspect("equal")
    ax.set_title("root numbers (green: xi2 = +1, orange: -1)", fontsize=9)
    return _save(fig, path)


def render_report_figures(reports, outdir, stem):
    os.makedirs(outdir, exist_ok=True)
    paths = [plot_n_values(reports, os.path.join(outdir, f"{stem}_n_values.png")),
             plot_l_values(reports, os.path.join(outdir, f"{stem}_l_values.png"))]
    if any(r.w_psi.err != mpmath.inf for r in reports):
        paths.append(plot_root_numbers(reports, os.path.join(outdir, f"{stem}_root_numbers.png")))
    return paths
