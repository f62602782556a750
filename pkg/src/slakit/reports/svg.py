"""Deterministic SVG 1.1 timelines: one lane per row, one rect per span.

Identical report input yields byte-identical SVG (fixed coordinate
formatting, sorted rows, no randomness).
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from slakit.reports.reports import CoverageReport, LocationReport

LANE_HEIGHT = 22
LANE_GAP = 6
MARGIN_TOP = 34
MARGIN_BOTTOM = 18
LABEL_WIDTH = 150
MARGIN_RIGHT = 12
AXIS_COLOR = "#888888"
LANE_COLOR = "#eeeeee"
PALETTE = ("#4878a8", "#a85448", "#54a868", "#a89048", "#7858a8", "#48a0a8")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_timeline_svg(report: CoverageReport | LocationReport, width_px: int = 800) -> str:
    """Render a coverage or location report as an SVG timeline.

    Lanes: overall coverage then one per network for CoverageReport; one per
    (system, option) entry for LocationReport. The rectangle count always
    equals the number of spans in the report.
    """
    if width_px < 100:
        raise ValueError(f"width must be >= 100 px, got {width_px}")

    if isinstance(report, CoverageReport):
        rows = [("covered", report.intervals)]
        rows += [(f"net {n.network_id}", n.intervals) for n in report.networks]
        title = f"indexing coverage {report.covered_ms}/{report.duration_ms} ms"
    elif isinstance(report, LocationReport):
        rows = [(f"{e.system}:{e.option}", e.spans) for e in report.entries]
        title = "code locations"
    else:
        raise TypeError(f"cannot render {type(report).__name__}")

    duration = report.duration_ms
    inner = width_px - LABEL_WIDTH - MARGIN_RIGHT
    height = MARGIN_TOP + max(1, len(rows)) * (LANE_HEIGHT + LANE_GAP) + MARGIN_BOTTOM

    def x_of(t: int) -> float:
        return LABEL_WIDTH + inner * (t / duration)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width_px}" height="{height}" '
        f'viewBox="0 0 {width_px} {height}">',
        f'<text x="{LABEL_WIDTH}" y="16" font-family="sans-serif" font-size="13">'
        f"{escape(title)}</text>",
        # time axis lane
        f'<line x1="{LABEL_WIDTH}" y1="{MARGIN_TOP - 8}" x2="{width_px - MARGIN_RIGHT}" '
        f'y2="{MARGIN_TOP - 8}" stroke="{AXIS_COLOR}" stroke-width="1" />',
        f'<text x="{LABEL_WIDTH}" y="{MARGIN_TOP - 12}" font-family="sans-serif" '
        f'font-size="9" fill="{AXIS_COLOR}">0</text>',
        f'<text x="{width_px - MARGIN_RIGHT}" y="{MARGIN_TOP - 12}" text-anchor="end" '
        f'font-family="sans-serif" font-size="9" fill="{AXIS_COLOR}">{duration} ms</text>',
    ]

    for row_idx, (label, spans) in enumerate(rows):
        y = MARGIN_TOP + row_idx * (LANE_HEIGHT + LANE_GAP)
        color = PALETTE[row_idx % len(PALETTE)]
        parts.append(
            f'<rect x="{LABEL_WIDTH}" y="{y}" width="{inner}" height="{LANE_HEIGHT}" '
            f'fill="{LANE_COLOR}" />'
        )
        parts.append(
            f'<text x="{LABEL_WIDTH - 8}" y="{y + 15}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{escape(label)}</text>'
        )
        for start, end in spans:
            x = x_of(start)
            w = max(x_of(end) - x, 0.5)
            parts.append(
                f'<rect x="{_fmt(x)}" y="{y + 2}" width="{_fmt(w)}" '
                f'height="{LANE_HEIGHT - 4}" fill="{color}" class="span" />'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
