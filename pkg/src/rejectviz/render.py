"""Deterministic SVG rendering of reject curves, stacks and pies.

All charts are plain SVG 1.1 text with inline styles and no external
resources; identical inputs produce byte-identical output, so renders
are golden-file testable. Geometry is emitted with enough precision
(12 decimal places, trailing zeros trimmed) that sizes and angles can
be recovered from the coordinates to better than 1e-9.

Emitted structure, stable for downstream parsing:

* axis ticks are ``<line class="xtick"/"ytick" data-value="...">``,
  which pins the pixel-to-data mapping;
* curve charts group each curve as ``<g class="curve" data-metric=...>``
  holding one ``<polyline>`` per run of defined points (undefined
  points split the line) and ``<circle>`` markers for isolated points;
* stack charts draw each confusion cell as one ``<path class="band"
  data-true=... data-pred=...>`` whose first K points are the cell's
  bottom boundary at the K columns (in decreasing acceptance rate) and
  whose last K points are the top boundary reversed; single-column
  stacks use ``<rect class="band">`` instead;
* pie charts hold one ``<g class="ring" data-rate=...>`` per column
  (outermost first) of ``<path class="sector">`` annular sectors whose
  arcs are split into sub-arcs spanning at most pi radians. Zero-count
  sectors are not drawn.

Colors are a pure function of the cell: each true class gets a hue,
its correct cell a saturated fill and its wrong cells progressively
lighter fills of the same hue.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .metrics import RejectCurve
from .stack import Align, CellId, ConfusionStack, Order

SvgDocument = str
"""Self-contained SVG 1.1 text with a fixed viewBox."""

TAU = 2.0 * math.pi

CURVE_COLORS = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)


@dataclass(frozen=True)
class ChartStyle:
    width: int = 800
    height: int = 500
    margin: int = 60
    font_family: str = "sans-serif"
    font_size: int = 12
    background: str = "#ffffff"


PIE_STYLE = ChartStyle(width=600, height=600)


def _fnum(v: float) -> str:
    """Fixed, trimmed decimal formatting; pure function of the value."""
    s = f"{v + 0.0:.12f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def _attrs(d: dict) -> str:
    return " ".join(f'{k}="{v}"' for k, v in d.items())


def cell_color(cell: CellId, num_classes: int) -> str:
    """Deterministic fill per confusion cell (distinct for C <= 6)."""
    hue = (210.0 + 360.0 * (cell.true_class - 1) / num_classes) % 360.0
    if cell.is_correct:
        sat, light = 0.65, 0.42
    else:
        if isinstance(cell.predicted_class, int):
            others = [p for p in range(1, num_classes + 1) if p != cell.true_class]
            k = others.index(cell.predicted_class)
        else:
            k = 0
        sat, light = 0.55, min(0.90, 0.62 + 0.07 * k)
    r, g, b = colorsys.hls_to_rgb(hue / 360.0, light, sat)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


class _Plot:
    """Linear data-to-pixel mapping inside the chart margins."""

    def __init__(self, style: ChartStyle, xmin, xmax, ymin, ymax):
        self.style = style
        self.left = style.margin
        self.top = style.margin
        self.w = style.width - 2 * style.margin
        self.h = style.height - 2 * style.margin
        self.xmin, self.xmax = xmin, xmax
        self.ymin, self.ymax = ymin, ymax

    def xp(self, x: float) -> float:
        return self.left + (x - self.xmin) / (self.xmax - self.xmin) * self.w

    def yp(self, y: float) -> float:
        return self.top + self.h - (y - self.ymin) / (self.ymax - self.ymin) * self.h


def _nice_step(span: float, target: int = 6) -> float:
    """Smallest 1/2/5 x 10^k step giving at most `target` intervals."""
    if span <= 0:
        return 1.0
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if mag * mult >= raw:
            return mag * mult
    return mag * 10.0


def _ticks(lo: float, hi: float, step: float) -> list[float]:
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [k * step for k in range(first, last + 1)]


def _header(style: ChartStyle, title: str | None) -> list[str]:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.width}" '
        f'height="{style.height}" viewBox="0 0 {style.width} {style.height}" '
        f'font-family="{style.font_family}" font-size="{style.font_size}">',
        f'<rect class="background" x="0" y="0" width="{style.width}" height="{style.height}" '
        f'fill="{style.background}"/>',
    ]
    if title:
        out.append(
            f'<text class="title" x="{_fnum(style.width / 2)}" y="{_fnum(style.margin / 2)}" '
            f'text-anchor="middle" font-size="{style.font_size + 3}">{escape(title)}</text>'
        )
    return out


def _axes(plot: _Plot, xlabel: str, ylabel: str, xstep: float, ystep: float) -> list[str]:
    s = plot.style
    out = ['<g class="axes" stroke="#333333" stroke-width="1">']
    out.append(
        f'<rect class="frame" x="{plot.left}" y="{plot.top}" width="{plot.w}" height="{plot.h}" '
        'fill="none"/>'
    )
    y_base = plot.top + plot.h
    for xv in _ticks(plot.xmin, plot.xmax, xstep):
        px = plot.xp(xv)
        out.append(
            f'<line class="xtick" data-value="{_fnum(xv)}" x1="{_fnum(px)}" y1="{_fnum(y_base)}" '
            f'x2="{_fnum(px)}" y2="{_fnum(y_base + 5)}"/>'
        )
        out.append(
            f'<text x="{_fnum(px)}" y="{_fnum(y_base + 18)}" text-anchor="middle" '
            f'stroke="none" fill="#333333">{_fnum(xv)}</text>'
        )
    for yv in _ticks(plot.ymin, plot.ymax, ystep):
        py = plot.yp(yv)
        out.append(
            f'<line class="ytick" data-value="{_fnum(yv)}" x1="{_fnum(plot.left - 5)}" '
            f'y1="{_fnum(py)}" x2="{_fnum(plot.left)}" y2="{_fnum(py)}"/>'
        )
        out.append(
            f'<text x="{_fnum(plot.left - 8)}" y="{_fnum(py + 4)}" text-anchor="end" '
            f'stroke="none" fill="#333333">{_fnum(yv)}</text>'
        )
    out.append(
        f'<text class="axis-label" x="{_fnum(plot.left + plot.w / 2)}" '
        f'y="{_fnum(y_base + 38)}" text-anchor="middle" stroke="none" '
        f'fill="#333333">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text class="axis-label" x="{_fnum(plot.left - 42)}" '
        f'y="{_fnum(plot.top + plot.h / 2)}" text-anchor="middle" stroke="none" fill="#333333" '
        f'transform="rotate(-90 {_fnum(plot.left - 42)} {_fnum(plot.top + plot.h / 2)})">'
        f"{escape(ylabel)}</text>"
    )
    out.append("</g>")
    if plot.ymin < 0 < plot.ymax:
        py = plot.yp(0.0)
        out.append(
            f'<line class="zero-line" x1="{plot.left}" y1="{_fnum(py)}" '
            f'x2="{plot.left + plot.w}" y2="{_fnum(py)}" stroke="#333333" '
            'stroke-width="1" stroke-dasharray="4 3"/>'
        )
    return out


def _legend(entries: list[tuple[str, str]], x: float, y: float, max_rows: int = 0) -> list[str]:
    """(color, label) swatches from (x, y), wrapping into 150px columns."""
    out = ['<g class="legend">']
    rows = max_rows if max_rows > 0 else len(entries)
    for i, (color, label) in enumerate(entries):
        xi = x + 150 * (i // rows)
        yi = y + 16 * (i % rows)
        out.append(f'<rect x="{_fnum(xi)}" y="{_fnum(yi)}" width="12" height="10" fill="{color}"/>')
        out.append(f'<text x="{_fnum(xi + 17)}" y="{_fnum(yi + 9)}" fill="#333333">{escape(label)}</text>')
    out.append("</g>")
    return out


def render_curves(
    curves: list[RejectCurve], style: ChartStyle | None = None, title: str | None = None
) -> SvgDocument:
    """Reject curves over acceptance rate; undefined points split the lines."""
    if not curves:
        raise ValueError("need at least one curve")
    style = style or ChartStyle()
    for curve in curves:
        if all(p.value is None for p in curve.points):
            raise ValueError(f"curve '{curve.metric.label}' has no defined points")
    plot = _Plot(style, 0.0, 1.0, 0.0, 1.0)
    out = _header(style, title)
    out += _axes(plot, "acceptance rate", "metric value", 0.2, 0.2)
    for idx, curve in enumerate(curves):
        color = CURVE_COLORS[idx % len(CURVE_COLORS)]
        out.append(f'<g class="curve" data-metric="{curve.metric.key}">')
        segment: list[tuple[float, float]] = []
        segments = []
        for p in curve.points:
            if p.value is None:
                if segment:
                    segments.append(segment)
                segment = []
            else:
                segment.append((p.acceptance_rate, p.value))
        if segment:
            segments.append(segment)
        for seg in segments:
            pts = " ".join(f"{_fnum(plot.xp(x))},{_fnum(plot.yp(y))}" for x, y in seg)
            if len(seg) == 1:
                (x, y) = seg[0]
                out.append(
                    f'<circle cx="{_fnum(plot.xp(x))}" cy="{_fnum(plot.yp(y))}" r="2.5" '
                    f'fill="{color}"/>'
                )
            else:
                out.append(
                    f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.8"/>'
                )
        out.append("</g>")
    out += _legend(
        [(CURVE_COLORS[i % len(CURVE_COLORS)], c.metric.label) for i, c in enumerate(curves)],
        plot.left + 10,
        plot.top + 12,
        max_rows=int(plot.h // 16),
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _stack_y_range(stack: ConfusionStack) -> tuple[float, float, float]:
    lo = min(col.baseline_offset for col in stack.columns)
    hi = max(col.boundaries()[-1] for col in stack.columns)
    step = _nice_step(hi - lo)
    return math.floor(lo / step) * step, math.ceil(hi / step) * step, step


def render_stack(
    stack: ConfusionStack, style: ChartStyle | None = None, title: str | None = None
) -> SvgDocument:
    """Stacked confusion area chart over acceptance rate."""
    style = style or ChartStyle()
    ymin, ymax, ystep = _stack_y_range(stack)
    plot = _Plot(style, 0.0, 1.0, ymin, ymax)
    ylabel = "share of accepted samples" if stack.normalized else "accepted samples"
    out = _header(style, title)
    out += _axes(plot, "acceptance rate", ylabel, 0.2, ystep)
    cells = stack.cell_ids
    num_classes = max(c.true_class for c in cells)
    bounds = [col.boundaries() for col in stack.columns]
    out.append('<g class="bands">')
    if len(stack.columns) == 1:
        col = stack.columns[0]
        x = plot.xp(col.acceptance_rate)
        for i, cell in enumerate(cells):
            y_top = plot.yp(bounds[0][i + 1])
            y_bot = plot.yp(bounds[0][i])
            out.append(
                "<rect "
                + _attrs(
                    {
                        "class": "band",
                        "data-true": cell.true_class,
                        "data-pred": cell.predicted_class,
                        "x": _fnum(x - 8),
                        "y": _fnum(y_top),
                        "width": "16",
                        "height": _fnum(y_bot - y_top),
                        "fill": cell_color(cell, num_classes),
                    }
                )
                + "/>"
            )
    else:
        xs = [plot.xp(col.acceptance_rate) for col in stack.columns]
        for i, cell in enumerate(cells):
            bottom = [f"{_fnum(xs[k])},{_fnum(plot.yp(bounds[k][i]))}" for k in range(len(xs))]
            top = [
                f"{_fnum(xs[k])},{_fnum(plot.yp(bounds[k][i + 1]))}"
                for k in reversed(range(len(xs)))
            ]
            d = "M " + " L ".join(bottom) + " L " + " L ".join(top) + " Z"
            out.append(
                "<path "
                + _attrs(
                    {
                        "class": "band",
                        "data-true": cell.true_class,
                        "data-pred": cell.predicted_class,
                        "d": d,
                        "fill": cell_color(cell, num_classes),
                        "stroke": "none",
                    }
                )
                + "/>"
            )
    out.append("</g>")
    out += _legend(
        [(cell_color(c, num_classes), c.label) for c in reversed(cells)],
        plot.left + 10,
        plot.top + 12,
        max_rows=int(plot.h // 16),
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _arc_points(cx, cy, r, a0, a1, max_span=math.pi):
    """Angles along an arc from a0 to a1, split into spans <= max_span."""
    span = a1 - a0
    segments = max(1, math.ceil(abs(span) / max_span - 1e-12))
    return [a0 + span * k / segments for k in range(segments + 1)]


def _pt(cx, cy, r, angle):
    return cx + r * math.cos(angle), cy - r * math.sin(angle)


def _sector_path(cx, cy, ro, ri, a0, a1) -> str:
    """Annular sector between angles a0 < a1 (counter-clockwise)."""
    outer = _arc_points(cx, cy, ro, a0, a1)
    x, y = _pt(cx, cy, ro, outer[0])
    d = [f"M {_fnum(x)},{_fnum(y)}"]
    for a in outer[1:]:
        x, y = _pt(cx, cy, ro, a)
        d.append(f"A {_fnum(ro)},{_fnum(ro)} 0 0 0 {_fnum(x)},{_fnum(y)}")
    if ri > 0:
        inner = _arc_points(cx, cy, ri, a1, a0)
        x, y = _pt(cx, cy, ri, inner[0])
        d.append(f"L {_fnum(x)},{_fnum(y)}")
        for a in inner[1:]:
            x, y = _pt(cx, cy, ri, a)
            d.append(f"A {_fnum(ri)},{_fnum(ri)} 0 0 1 {_fnum(x)},{_fnum(y)}")
    else:
        d.append(f"L {_fnum(cx)},{_fnum(cy)}")
    d.append("Z")
    return " ".join(d)


def render_pie(
    stack: ConfusionStack, style: ChartStyle | None = None, title: str | None = None
) -> SvgDocument:
    """Radial stack: radius is the acceptance rate, angle the cell share.

    The continuous radius axis is discretized into one annular ring per
    schedule column; each ring's outer radius is proportional to its
    acceptance rate and its thickness is the gap to the next lower
    rate, so the rings tile the disc. Angle zero points right and is
    the center of the correct block, which CORRECT_CENTER alignment
    makes mirror-symmetric about it; positive angles run
    counter-clockwise.
    """
    if not stack.normalized:
        raise ValueError("pie rendering requires a normalized stack")
    if stack.options.order is not Order.CORRECT_LAST:
        raise ValueError("pie rendering requires order=correct_last")
    if stack.options.align is not Align.CORRECT_CENTER:
        raise ValueError("pie rendering requires align=correct_center")
    style = style or PIE_STYLE
    cx = style.width / 2
    cy = style.height / 2
    radius = min(style.width, style.height) / 2 - style.margin
    cells = stack.cell_ids
    num_classes = max(c.true_class for c in cells)
    out = _header(style, title)
    out.append(
        f'<g class="pie" data-cx="{_fnum(cx)}" data-cy="{_fnum(cy)}" data-radius="{_fnum(radius)}">'
    )
    rates = [col.acceptance_rate for col in stack.columns]
    for k, col in enumerate(stack.columns):
        ro = radius * rates[k]
        ri = radius * rates[k + 1] if k + 1 < len(rates) else 0.0
        out.append(f'<g class="ring" data-rate="{_fnum(col.acceptance_rate)}">')
        bounds = col.boundaries()
        for i, sc in enumerate(col.cells):
            if sc.count == 0:
                continue
            a0 = TAU * bounds[i]
            a1 = TAU * bounds[i + 1]
            out.append(
                "<path "
                + _attrs(
                    {
                        "class": "sector",
                        "data-true": sc.cell.true_class,
                        "data-pred": sc.cell.predicted_class,
                        "d": _sector_path(cx, cy, ro, ri, a0, a1),
                        "fill": cell_color(sc.cell, num_classes),
                        "stroke": "none",
                    }
                )
                + "/>"
            )
        out.append("</g>")
    out.append("</g>")
    out += _legend(
        [(cell_color(c, num_classes), c.label) for c in reversed(cells)],
        8,
        14,
        max_rows=int((style.height - 28) // 16),
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
