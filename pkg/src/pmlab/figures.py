"""Minimal self-contained SVG emission for the reproduction figures.

Charts are built from polyline/line/circle/text elements only, so the output
opens anywhere and needs no plotting dependency; the CSV next to it carries
the exact numbers for anyone who wants to re-render.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Series", "line_chart_svg", "scatter_svg"]

_PALETTE = ["#0173b2", "#de8f05", "#029e73", "#d55e00", "#cc78bc", "#56b4e9"]

_WIDTH, _HEIGHT = 820, 560
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 80, 30, 50, 60


@dataclass
class Series:
    label: str
    points: list[tuple[float, float]]
    color: str | None = None
    dashed: bool = False


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _log_ticks(lo: float, hi: float) -> list[float]:
    lo_e = math.floor(math.log10(lo) + 1e-12)
    hi_e = math.ceil(math.log10(hi) - 1e-12)
    return [10.0**e for e in range(int(lo_e), int(hi_e) + 1)]


def _fmt_tick(v: float) -> str:
    e = math.log10(v)
    if abs(e - round(e)) < 1e-9:
        return f"1e{int(round(e))}"
    return f"{v:g}"


def line_chart_svg(
    series: list[Series],
    x_label: str,
    y_label: str,
    title: str,
    log_x: bool = True,
    log_y: bool = True,
) -> str:
    """Log-log line chart with axes, tick labels, and a legend."""
    pts = [
        (x, y)
        for s in series
        for x, y in s.points
        if (not log_x or x > 0) and (not log_y or y > 0)
    ]
    if not pts:
        raise ValueError("no drawable points")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if log_x:
        x_lo, x_hi = math.log10(x_lo), math.log10(x_hi)
    if log_y:
        y_lo, y_hi = math.log10(y_lo), math.log10(y_hi)
    if x_hi - x_lo < 1e-9:
        x_hi = x_lo + 1.0
    if y_hi - y_lo < 1e-9:
        y_hi = y_lo + 1.0
    pad_y = 0.05 * (y_hi - y_lo)
    y_lo -= pad_y
    y_hi += pad_y

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        v = math.log10(x) if log_x else x
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        v = math.log10(y) if log_y else y
        return _MARGIN_T + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2}" y="26" text-anchor="middle" font-size="16">{_esc(title)}</text>',
    ]
    # frame
    x0, y0 = _MARGIN_L, _MARGIN_T + plot_h
    x1, y1 = _MARGIN_L + plot_w, _MARGIN_T
    out.append(
        f'<rect x="{x0}" y="{y1}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#444" stroke-width="1"/>'
    )
    # ticks
    if log_x:
        for t in _log_ticks(10.0**x_lo, 10.0**x_hi):
            if not (10.0**x_lo - 1e-15 <= t <= 10.0**x_hi * (1 + 1e-12)):
                continue
            x = px(t)
            out.append(f'<line x1="{x:.1f}" y1="{y0}" x2="{x:.1f}" y2="{y0 + 5}" stroke="#444"/>')
            out.append(
                f'<text x="{x:.1f}" y="{y0 + 20}" text-anchor="middle" font-size="11">'
                f"{_fmt_tick(t)}</text>"
            )
    if log_y:
        for t in _log_ticks(10.0**y_lo, 10.0**y_hi):
            if not (10.0**y_lo - 1e-15 <= t <= 10.0**y_hi * (1 + 1e-12)):
                continue
            y = py(t)
            out.append(f'<line x1="{x0 - 5}" y1="{y:.1f}" x2="{x0}" y2="{y:.1f}" stroke="#444"/>')
            out.append(
                f'<text x="{x0 - 8}" y="{y + 4:.1f}" text-anchor="end" font-size="11">'
                f"{_fmt_tick(t)}</text>"
            )
    out.append(
        f'<text x="{_MARGIN_L + plot_w / 2}" y="{_HEIGHT - 14}" text-anchor="middle" '
        f'font-size="13">{_esc(x_label)}</text>'
    )
    out.append(
        f'<text x="20" y="{_MARGIN_T + plot_h / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 20 {_MARGIN_T + plot_h / 2})">{_esc(y_label)}</text>'
    )

    legend_y = _MARGIN_T + 14
    for idx, s in enumerate(series):
        color = s.color or _PALETTE[idx % len(_PALETTE)]
        draw = [
            (x, y) for x, y in s.points if (not log_x or x > 0) and (not log_y or y > 0)
        ]
        if draw:
            path = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in draw)
            dash = ' stroke-dasharray="7,5"' if s.dashed else ""
            out.append(
                f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="2"{dash}/>'
            )
            for x, y in draw:
                out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.5" fill="{color}"/>')
        dash = ' stroke-dasharray="7,5"' if s.dashed else ""
        lx = _MARGIN_L + 12
        out.append(
            f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 26}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="2"{dash}/>'
        )
        out.append(
            f'<text x="{lx + 32}" y="{legend_y + 4}" font-size="12">{_esc(s.label)}</text>'
        )
        legend_y += 17
    out.append("</svg>")
    return "\n".join(out) + "\n"


@dataclass
class SegmentLayer:
    segments: list[tuple[float, float, float, float]]
    color: str
    width: float = 1.0
    label: str = ""


def scatter_svg(
    points: list[tuple[float, float]],
    layers: list[SegmentLayer],
    title: str,
    point_color: str = "#222222",
    point_radius: float = 1.6,
) -> str:
    """Point cloud with colored segment overlays (matching arrows, graph edges)."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    for layer in layers:
        for x0s, y0s, x1s, y1s in layer.segments:
            xs.extend((x0s, x1s))
            ys.extend((y0s, y1s))
    if not xs:
        raise ValueError("nothing to draw")
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    size = 760
    margin = 50

    def px(x: float) -> float:
        return margin + (x - lo_x) / span * size

    def py(y: float) -> float:
        return margin + size - (y - lo_y) / span * size

    w = h = size + 2 * margin
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h + 30}" '
        f'viewBox="0 0 {w} {h + 30}" font-family="sans-serif">',
        f'<rect width="{w}" height="{h + 30}" fill="white"/>',
        f'<text x="{w / 2}" y="24" text-anchor="middle" font-size="15">{_esc(title)}</text>',
    ]
    legend_y = 44
    for layer in layers:
        for x0s, y0s, x1s, y1s in layer.segments:
            out.append(
                f'<line x1="{px(x0s):.2f}" y1="{py(y0s):.2f}" x2="{px(x1s):.2f}" '
                f'y2="{py(y1s):.2f}" stroke="{layer.color}" stroke-width="{layer.width}"/>'
            )
        if layer.label:
            out.append(
                f'<line x1="{margin}" y1="{legend_y}" x2="{margin + 26}" y2="{legend_y}" '
                f'stroke="{layer.color}" stroke-width="2"/>'
            )
            out.append(
                f'<text x="{margin + 32}" y="{legend_y + 4}" font-size="12">'
                f"{_esc(layer.label)}</text>"
            )
            legend_y += 17
    for x, y in points:
        out.append(
            f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="{point_radius}" fill="{point_color}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
