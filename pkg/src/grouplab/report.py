"""File artifacts for verification runs: delimited tables with matplotlib
figures rendered next to them."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["write_props_artifacts", "write_verify_artifacts"]


def write_verify_artifacts(report_dir, detail_rows, reports) -> list[Path]:
    """details.csv (spec, order, invariant, gap) and a scatter of the
    invariant against group order with the five classification gap lines."""
    out = Path(report_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / "details.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["spec", "order", "invariant", "gap"])
        for spec, order, lam in detail_rows:
            w.writerow([spec, order, lam, order - lam])
    written.append(csv_path)

    orders = [r[1] for r in detail_rows]
    lams = [r[2] for r in detail_rows]
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.scatter(orders, lams, s=22, zorder=3, label="catalog groups")
    hi = max(orders) if orders else 8
    xs = list(range(2, hi + 1))
    for t in range(1, 6):
        ax.plot(xs, [x - t for x in xs], linestyle="--", linewidth=0.8,
                label=f"order minus {t}")
    ax.set_xlabel("group order")
    ax.set_ylabel("max irredundant cover size")
    status = "all pass" if all(r.passed for r in reports) else "FAILURES"
    ax.set_title(f"classification sweep, {len(detail_rows)} groups ({status})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    png_path = out / "lambda_gaps.png"
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    written.append(png_path)
    return written


def write_props_artifacts(report_dir, suite_rows) -> list[Path]:
    """props.csv (spec, check, holds, detail) and a scatter of the max element
    order against its proven bound."""
    out = Path(report_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / "props.csv"
    bound_points = []
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["spec", "check", "holds", "detail"])
        for spec, checks in suite_rows:
            for c in checks:
                w.writerow([spec, c.name, "yes" if c.holds else "no", c.detail])
                if c.name == "max-order-bound":
                    # detail reads "max element order T vs bound B"
                    bits = c.detail.split()
                    try:
                        bound_points.append((int(bits[-1]), int(bits[3])))
                    except (IndexError, ValueError):
                        pass
    written.append(csv_path)

    fig, ax = plt.subplots(figsize=(6, 6))
    if bound_points:
        xs = [p[0] for p in bound_points]
        ys = [p[1] for p in bound_points]
        ax.scatter(xs, ys, s=22, zorder=3)
        lim = max(xs + ys) + 1
        ax.plot([0, lim], [0, lim], linestyle="--", linewidth=0.8)
    ax.set_xlabel("order minus invariant plus one")
    ax.set_ylabel("max element order")
    ax.set_title("element order bound across the catalog")
    fig.tight_layout()
    png_path = out / "bounds.png"
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    written.append(png_path)
    return written
