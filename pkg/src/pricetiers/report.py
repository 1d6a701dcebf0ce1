"""Deterministic text renderings: tables, CSV, and JSON.

All numbers print with six fractional digits (round-half-even, Python's
default float formatting), which is enough to express every pinned value in
the test suite while keeping golden files stable byte for byte.
"""

from __future__ import annotations

import json

from .analysis import ComparisonReport
from .market import Market
from .solution import SchemeSolution

SOLUTION_COLUMNS = (
    "group_index",
    "theta",
    "count",
    "price",
    "allocation_per_user",
    "served",
    "cluster",
)


def fnum(x: float) -> str:
    return f"{x:.6f}"


def _jnum(x: float) -> float:
    """Float carrying exactly the printed six-digit precision."""
    return float(f"{x:.6f}")


def _cluster_ids(market: Market, solution: SchemeSolution) -> list[int]:
    if solution.partition is not None:
        return [solution.partition.cluster_of(i) + 1 for i in range(market.group_count)]
    if solution.scheme == "single":
        return [1] * market.group_count
    return list(range(1, market.group_count + 1))


def solution_rows(market: Market, solution: SchemeSolution) -> list[tuple[str, ...]]:
    """Per-group report rows, formatted, in market order."""
    clusters = _cluster_ids(market, solution)
    rows = []
    for i, group in enumerate(market.groups):
        rows.append(
            (
                str(i + 1),
                fnum(group.theta),
                str(group.count),
                fnum(solution.prices[i]),
                fnum(solution.allocations[i]),
                str(solution.served[i]),
                str(clusters[i]),
            )
        )
    return rows


def render_solution_csv(market: Market, solution: SchemeSolution) -> str:
    lines = [",".join(SOLUTION_COLUMNS)]
    lines += [",".join(row) for row in solution_rows(market, solution)]
    return "\n".join(lines) + "\n"


def _format_table(header: tuple[str, ...], rows: list[tuple[str, ...]]) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return lines


def render_solution_table(
    market: Market, solution: SchemeSolution, label: str | None = None
) -> str:
    lines = ["pricing report", f"scheme: {solution.scheme}"]
    if label:
        lines.append(f"label: {label}")
    lines.append(f"market: groups={market.group_count} capacity={fnum(market.capacity)}")
    header = ("group", "theta", "count", "price", "allocation", "served", "cluster")
    lines += _format_table(header, solution_rows(market, solution))
    lines.append(f"revenue: {fnum(solution.revenue)}")
    lines.append(f"shadow_price: {fnum(solution.shadow_price)}")
    lines.append(f"effective_threshold: {solution.effective_threshold}")
    if solution.partition is not None:
        lines.append(f"levels: {solution.partition.levels}")
        clusters = " ".join(
            "[" + " ".join(str(i) for i in block) + "]"
            for block in solution.partition.group_index_lists()
        )
        lines.append(f"clusters: {clusters}")
    return "\n".join(lines) + "\n"


def render_solution_json(
    market: Market, solution: SchemeSolution, label: str | None = None
) -> str:
    doc: dict = {
        "scheme": solution.scheme,
        "label": label,
        "capacity": _jnum(market.capacity),
        "revenue": _jnum(solution.revenue),
        "shadow_price": _jnum(solution.shadow_price),
        "effective_threshold": solution.effective_threshold,
        "groups": [
            {
                "group_index": i + 1,
                "theta": _jnum(group.theta),
                "count": group.count,
                "price": _jnum(solution.prices[i]),
                "allocation_per_user": _jnum(solution.allocations[i]),
                "served": solution.served[i],
                "cluster": cluster,
            }
            for i, (group, cluster) in enumerate(
                zip(market.groups, _cluster_ids(market, solution))
            )
        ],
    }
    if solution.partition is not None:
        doc["partition"] = {
            "levels": solution.partition.levels,
            "clusters": [list(block) for block in solution.partition.group_index_lists()],
            "effective_counts": list(solution.partition.effective_counts),
            "cluster_prices": [_jnum(p) for p in solution.partition.cluster_prices],
        }
    else:
        doc["partition"] = None
    return json.dumps(doc, indent=2) + "\n"


def _curve_rows(report: ComparisonReport) -> list[tuple[str, str, str]]:
    base = report.revenues.get(1, 0.0)
    rows = []
    for levels in sorted(report.revenues):
        revenue = report.revenues[levels]
        gain = revenue / base if base > 0 else 1.0
        rows.append((str(levels), fnum(revenue), fnum(gain)))
    return rows


def render_comparison_csv(report: ComparisonReport) -> str:
    lines = ["levels,revenue,gain_vs_sp"]
    lines += [",".join(row) for row in _curve_rows(report)]
    return "\n".join(lines) + "\n"


def render_comparison_table(
    market: Market, report: ComparisonReport, label: str | None = None
) -> str:
    lines = ["comparison report"]
    if label:
        lines.append(f"label: {label}")
    lines.append(f"market: groups={market.group_count} capacity={fnum(market.capacity)}")
    lines += _format_table(("levels", "revenue", "gain_vs_sp"), _curve_rows(report))
    lines.append(f"differentiation_gain: {fnum(report.differentiation_gain)}")
    sizes = report.effective_market_sizes
    lines.append(
        f"effective_market_size: single={sizes['single']} complete={sizes['complete']}"
    )
    welfare = report.welfare_per_scheme
    lines.append(
        "welfare: optimum="
        + fnum(report.welfare_optimal)
        + f" single={fnum(welfare['single'])} complete={fnum(welfare['complete'])}"
    )
    return "\n".join(lines) + "\n"


def render_comparison_json(
    market: Market, report: ComparisonReport, label: str | None = None
) -> str:
    base = report.revenues.get(1, 0.0)
    doc = {
        "label": label,
        "capacity": _jnum(market.capacity),
        "groups": market.group_count,
        "revenue_by_levels": [
            {
                "levels": levels,
                "revenue": _jnum(report.revenues[levels]),
                "gain_vs_sp": _jnum(report.revenues[levels] / base if base > 0 else 1.0),
            }
            for levels in sorted(report.revenues)
        ],
        "differentiation_gain": _jnum(report.differentiation_gain),
        "effective_market_sizes": report.effective_market_sizes,
        "welfare": {
            "optimum": _jnum(report.welfare_optimal),
            "single": _jnum(report.welfare_per_scheme["single"]),
            "complete": _jnum(report.welfare_per_scheme["complete"]),
        },
    }
    return json.dumps(doc, indent=2) + "\n"
