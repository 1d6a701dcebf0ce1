"""Figure rendering for comparison reports (headless, file output only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import ComparisonReport
from .complete import solve_complete
from .market import Market
from .partial import solve_partial
from .report import render_comparison_csv
from .single import solve_single


def save_comparison_figures(
    market: Market,
    report: ComparisonReport,
    out_dir: str | Path,
    label: str | None = None,
) -> list[Path]:
    """Render the comparison figures next to a copy of the CSV report.

    Writes revenue_curve.png (revenue against the number of price levels),
    group_prices.png (per-group prices under each scheme), and
    comparison.csv (same bytes as the CSV report on stdout). Returns the
    written paths in a fixed order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    title_suffix = f" — {label}" if label else ""
    written: list[Path] = []

    levels = sorted(report.revenues)
    revenues = [report.revenues[j] for j in levels]

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(levels, revenues, "o-", color="tab:blue", label="tiered optimum")
    ax.axhline(revenues[0], color="tab:gray", linestyle=":", label="single price")
    ax.axhline(revenues[-1], color="tab:green", linestyle="--", label="per-group prices")
    ax.set_xlabel("price levels")
    ax.set_ylabel("revenue")
    ax.set_xticks(levels)
    ax.set_title(f"revenue vs. pricing complexity{title_suffix}")
    ax.legend(loc="lower right")
    fig.tight_layout()
    curve_path = out / "revenue_curve.png"
    fig.savefig(curve_path, dpi=150)
    plt.close(fig)
    written.append(curve_path)

    solutions = [("single", solve_single(market)), ("complete", solve_complete(market))]
    if market.group_count >= 2:
        solutions.insert(1, ("tiered (2 levels)", solve_partial(market, 2)))

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    indices = range(1, market.group_count + 1)
    width = 0.8 / len(solutions)
    for slot, (name, solution) in enumerate(solutions):
        offsets = [i + (slot - (len(solutions) - 1) / 2) * width for i in indices]
        ax.bar(offsets, solution.prices, width=width, label=name)
    ax.set_xlabel("group")
    ax.set_ylabel("price")
    ax.set_xticks(list(indices))
    ax.set_title(f"prices by group and scheme{title_suffix}")
    ax.legend(loc="upper right")
    fig.tight_layout()
    prices_path = out / "group_prices.png"
    fig.savefig(prices_path, dpi=150)
    plt.close(fig)
    written.append(prices_path)

    csv_path = out / "comparison.csv"
    csv_path.write_text(render_comparison_csv(report), encoding="utf-8")
    written.append(csv_path)
    return written
