"""Standalone SVG line charts from result tables.

Output is a self-contained SVG 1.1 document with one <polyline> per data
series, axis and tick marks drawn as <line> elements, and a legend.  Byte
output is a pure function of the inputs (fixed geometry, fixed palette,
fixed number formatting), so charts can be diffed and golden-tested.
"""

from __future__ import annotations

import math

from .tableio import Table, atomic_write_text

WIDTH = 720
HEIGHT = 480
MARGIN_LEFT = 72
MARGIN_RIGHT = 150
MARGIN_TOP = 36
MARGIN_BOTTOM = 54
TICK_COUNT = 6
TICK_LEN = 6

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _tick_label(value: float) -> str:
    return f"{value:.4g}"


def default_series(table: Table, x_column: str) -> tuple[str, ...]:
    """Every column except the abscissa and standard-error columns."""
    return tuple(c for c in table.columns if c != x_column and not c.startswith("se_"))


def render_svg(table: Table, x_column: str = "snr_db",
               series: tuple[str, ...] | None = None,
               yscale: str = "linear",
               title: str = "",
               y_label: str = "") -> str:
    """Render the chart and return the SVG document as a string."""
    if table.rows < 2:
        raise ValueError("need at least two rows to draw a line chart")
    if yscale not in ("linear", "log"):
        raise ValueError(f"yscale must be 'linear' or 'log', got {yscale!r}")
    if series is None:
        series = default_series(table, x_column)
    if not series:
        raise ValueError("no series to plot")

    x = table.column(x_column)
    columns = [table.column(name) for name in series]

    def transform(v):
        if yscale == "log":
            if v <= 0:
                raise ValueError("log scale requires strictly positive values")
            return math.log10(v)
        return v

    ys = [[transform(float(v)) for v in col] for col in columns]
    x_lo, x_hi = float(x.min()), float(x.max())
    y_lo = min(min(col) for col in ys)
    y_hi = max(max(col) for col in ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(v):
        return MARGIN_LEFT + plot_w * (v - x_lo) / (x_hi - x_lo)

    def py(v):
        return MARGIN_TOP + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo))

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')
    if title:
        out.append(
            f'<text x="{WIDTH // 2}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>'
        )

    x_axis_y = MARGIN_TOP + plot_h
    out.append(
        f'<line x1="{MARGIN_LEFT}" y1="{x_axis_y}" x2="{MARGIN_LEFT + plot_w}" '
        f'y2="{x_axis_y}" stroke="#000000" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{x_axis_y}" stroke="#000000" stroke-width="1"/>'
    )

    for i in range(TICK_COUNT):
        frac = i / (TICK_COUNT - 1)
        xv = x_lo + frac * (x_hi - x_lo)
        xp = _fmt(px(xv))
        out.append(
            f'<line x1="{xp}" y1="{x_axis_y}" x2="{xp}" y2="{x_axis_y + TICK_LEN}" '
            f'stroke="#000000" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{xp}" y="{x_axis_y + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_tick_label(xv)}</text>'
        )
        yv = y_lo + frac * (y_hi - y_lo)
        yp = _fmt(py(yv))
        label = 10.0 ** yv if yscale == "log" else yv
        out.append(
            f'<line x1="{MARGIN_LEFT - TICK_LEN}" y1="{yp}" x2="{MARGIN_LEFT}" y2="{yp}" '
            f'stroke="#000000" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{MARGIN_LEFT - 10}" y="{yp}" text-anchor="end" dy="4" '
            f'font-family="sans-serif" font-size="11">{_tick_label(label)}</text>'
        )

    out.append(
        f'<text x="{MARGIN_LEFT + plot_w // 2}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{x_column}</text>'
    )
    if y_label:
        out.append(
            f'<text x="18" y="{MARGIN_TOP + plot_h // 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 18 {MARGIN_TOP + plot_h // 2})">{y_label}</text>'
        )

    for idx, (name, col) in enumerate(zip(series, ys)):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{_fmt(px(float(xv)))},{_fmt(py(yv))}" for xv, yv in zip(x, col))
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        legend_y = MARGIN_TOP + 10 + 20 * idx
        swatch_x = MARGIN_LEFT + plot_w + 16
        out.append(
            f'<rect x="{swatch_x}" y="{legend_y - 9}" width="12" height="12" fill="{color}"/>'
        )
        out.append(
            f'<text x="{swatch_x + 18}" y="{legend_y + 2}" font-family="sans-serif" '
            f'font-size="12">{name}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(table: Table, path: str, x_column: str = "snr_db",
             series: tuple[str, ...] | None = None,
             yscale: str = "linear",
             title: str = "",
             y_label: str = "") -> None:
    """Render and write the chart atomically."""
    document = render_svg(table, x_column, series, yscale, title, y_label)
    atomic_write_text(path, lambda handle: handle.write(document))
