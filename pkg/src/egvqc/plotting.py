"""Figures from the CSV files the CLI writes.

CSV is the data contract; these renderings are a convenience and need the
optional ``matplotlib`` dependency.  Two layouts are recognised by header:
loss curves (``epoch,train_loss,val_loss,val_acc``) and bench timings
(``size,n_terms,t_encode,t_pca``).
"""

from __future__ import annotations

import csv
from pathlib import Path

from .errors import DomainError

LOSS_HEADER = ["epoch", "train_loss", "val_loss", "val_acc"]
BENCH_HEADER = ["size", "n_terms", "t_encode", "t_pca"]

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 7,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.figsize": (6.4, 3.2),
}


def read_csv(path) -> tuple[list[str], dict[str, list[float]]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DomainError(f"{path}: empty CSV")
    header, body = rows[0], rows[1:]
    cols = {h: [float(r[i]) for r in body] for i, h in enumerate(header)}
    return header, cols


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_loss_curves(paths, out):
    """Train (solid) and validation (dashed) loss per file, accuracy on the right."""
    plt = _pyplot()
    with plt.rc_context(STYLE):
        fig, (ax_loss, ax_acc) = plt.subplots(1, 2)
        for p in paths:
            _, c = read_csv(p)
            line = ax_loss.plot(c["epoch"], c["train_loss"], label=f"{Path(p).stem} train")[0]
            ax_loss.plot(c["epoch"], c["val_loss"], ls="--", color=line.get_color(), label=f"{Path(p).stem} val")
            ax_acc.plot(c["epoch"], c["val_acc"], color=line.get_color())
        ax_loss.set_xlabel("epoch")
        ax_loss.set_ylabel("BCE loss")
        ax_loss.legend(frameon=False)
        ax_acc.set_xlabel("epoch")
        ax_acc.set_ylabel("validation accuracy")
        ax_acc.set_ylim(0, 1)
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        plt.close(fig)


def plot_bench(path, out):
    """Log-log timings of encoding and spectral features."""
    plt = _pyplot()
    _, c = read_csv(path)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.loglog(c["size"], c["t_encode"], "o-", label="encode")
        ax.loglog(c["size"], c["t_pca"], "s-", label="spectral features")
        ax.set_xlabel("vertices")
        ax.set_ylabel("median wall time (s)")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        plt.close(fig)


def plot_csv_files(paths, out):
    headers = [read_csv(p)[0] for p in paths]
    if all(h == LOSS_HEADER for h in headers):
        return plot_loss_curves(paths, out)
    if len(paths) == 1 and headers[0] == BENCH_HEADER:
        return plot_bench(paths[0], out)
    raise DomainError("expected loss-curve CSVs or a single bench CSV")
