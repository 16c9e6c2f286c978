"""Dependency-free SVG charts for sweep reports and mode comparisons.

Everything here emits plain SVG markup as a string, with coordinates
rounded to fixed precision so identical inputs always produce identical
bytes.  No plotting library is involved, which keeps the artifacts
diffable in tests and the install footprint small.
"""

import json

from xml.sax.saxutils import escape

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
)

_MODE_COLORS = {"raw": "#7f7f7f", "bow": "#1f77b4", "tfidf": "#d62728"}

_MAX_LEGEND_ROWS = 12


def _fmt(x):
    return f"{float(x):.2f}"


def _report_payload(report):
    """Normalize a report (object or parsed JSON dict) to the JSON dict."""
    if isinstance(report, dict):
        payload = report
    else:
        from .selection import report_to_json

        payload = json.loads(report_to_json(report))
    for key in ("dataset", "mode", "cells", "best"):
        if key not in payload:
            raise ValueError(f"report is missing the {key!r} field")
    if not payload["cells"]:
        raise ValueError("report has no sweep cells to plot")
    return payload


def _combo_key(cell):
    return (
        cell.get("window_length"),
        cell.get("alphabet_size"),
        cell.get("min_freq"),
        cell.get("max_freq"),
    )


def _combo_label(key):
    window, alphabet, min_freq, max_freq = key
    parts = []
    if window is not None:
        parts.append(f"w={window}")
    if alphabet is not None:
        parts.append(f"a={alphabet}")
    if min_freq is not None:
        parts.append(f"f={min_freq:g}-{max_freq:g}")
    return " ".join(parts) if parts else "all"


def silhouette_plot_svg(report):
    """Render silhouette-versus-k curves, one polyline per parameter combo.

    ``report`` is either a selection report object or the dict parsed
    from its JSON form.  The winning cell is marked with a ring and
    annotated with its k.
    """
    payload = _report_payload(report)
    cells = payload["cells"]
    combos = {}
    for cell in cells:
        combos.setdefault(_combo_key(cell), []).append(cell)
    combo_keys = sorted(
        combos,
        key=lambda key: tuple(-1.0 if v is None else float(v) for v in key),
    )
    for key in combo_keys:
        combos[key].sort(key=lambda cell: cell["k"])

    ks = sorted({cell["k"] for cell in cells})
    scores = [cell["silhouette"] for cell in cells]
    k_lo, k_hi = min(ks), max(ks)
    k_span = max(k_hi - k_lo, 1)
    y_lo, y_hi = min(scores), max(scores)
    if y_hi - y_lo < 1e-12:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    width, height = 720.0, 440.0
    left, right, top, bottom = 64.0, 200.0, 44.0, 52.0
    plot_w = width - left - right
    plot_h = height - top - bottom

    def sx(k):
        return left + plot_w * (k - k_lo) / k_span

    def sy(v):
        return top + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo))

    best = payload["best"]
    title = f"{payload['dataset']} ({payload['mode']}): silhouette by cluster count"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}" font-family="sans-serif">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
        f'<text x="{_fmt(left)}" y="24" font-size="15">{escape(title)}</text>',
    ]

    for i in range(5):
        v = y_lo + (y_hi - y_lo) * i / 4
        y = sy(v)
        out.append(
            f'<line x1="{_fmt(left)}" y1="{_fmt(y)}" x2="{_fmt(left + plot_w)}" '
            f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(left - 8)}" y="{_fmt(y + 4)}" font-size="11" '
            f'text-anchor="end">{v:.2f}</text>'
        )
    for k in ks:
        x = sx(k)
        out.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(top + plot_h)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(top + plot_h + 5)}" stroke="#444444" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(top + plot_h + 20)}" font-size="11" '
            f'text-anchor="middle">{k}</text>'
        )
    out.append(
        f'<text x="{_fmt(left + plot_w / 2)}" y="{_fmt(height - 12)}" font-size="12" '
        f'text-anchor="middle">number of clusters k</text>'
    )
    out.append(
        f'<text x="16" y="{_fmt(top + plot_h / 2)}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {_fmt(top + plot_h / 2)})">mean silhouette</text>'
    )
    out.append(
        f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(plot_w)}" '
        f'height="{_fmt(plot_h)}" fill="none" stroke="#444444" stroke-width="1"/>'
    )

    for i, key in enumerate(combo_keys):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            f"{_fmt(sx(cell['k']))},{_fmt(sy(cell['silhouette']))}" for cell in combos[key]
        )
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        for cell in combos[key]:
            out.append(
                f'<circle cx="{_fmt(sx(cell["k"]))}" cy="{_fmt(sy(cell["silhouette"]))}" '
                f'r="2.5" fill="{color}"/>'
            )

    bx, by = sx(best["k"]), sy(best["silhouette"])
    out.append(
        f'<circle cx="{_fmt(bx)}" cy="{_fmt(by)}" r="6" fill="none" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )
    out.append(
        f'<text x="{_fmt(bx + 9)}" y="{_fmt(by - 6)}" font-size="12" '
        f'font-weight="bold">best k={best["k"]}</text>'
    )

    lx = left + plot_w + 16
    shown = combo_keys[:_MAX_LEGEND_ROWS]
    for i, key in enumerate(shown):
        color = _PALETTE[i % len(_PALETTE)]
        y = top + 14 * i
        out.append(
            f'<line x1="{_fmt(lx)}" y1="{_fmt(y + 5)}" x2="{_fmt(lx + 18)}" '
            f'y2="{_fmt(y + 5)}" stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{_fmt(lx + 24)}" y="{_fmt(y + 9)}" font-size="10">'
            f"{escape(_combo_label(key))}</text>"
        )
    if len(combo_keys) > len(shown):
        y = top + 14 * len(shown)
        out.append(
            f'<text x="{_fmt(lx + 24)}" y="{_fmt(y + 9)}" font-size="10">'
            f"+{len(combo_keys) - len(shown)} more</text>"
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def comparison_plot_svg(mode_summaries):
    """Render a grouped-bar chart of verdict percentages per mode.

    ``mode_summaries`` maps a mode name to its summary dict with keys
    ``correct_pct``, ``close_pct``, ``wrong_pct``.  Bars are grouped by
    verdict with one bar per mode in the mapping's order.
    """
    if not mode_summaries:
        raise ValueError("no mode summaries to plot")
    modes = list(mode_summaries)
    groups = (("Correct", "correct_pct"), ("Close", "close_pct"), ("Wrong", "wrong_pct"))

    width, height = 560.0, 360.0
    left, right, top, bottom = 56.0, 120.0, 40.0, 48.0
    plot_w = width - left - right
    plot_h = height - top - bottom
    group_w = plot_w / len(groups)
    bar_w = min(36.0, 0.8 * group_w / len(modes))

    def sy(pct):
        return top + plot_h * (1.0 - pct / 100.0)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}" font-family="sans-serif">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
        f'<text x="{_fmt(left)}" y="24" font-size="15">Verdict share by scoring mode</text>',
    ]
    for pct in (0, 25, 50, 75, 100):
        y = sy(pct)
        out.append(
            f'<line x1="{_fmt(left)}" y1="{_fmt(y)}" x2="{_fmt(left + plot_w)}" '
            f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(left - 8)}" y="{_fmt(y + 4)}" font-size="11" '
            f'text-anchor="end">{pct}%</text>'
        )
    for gi, (label, key) in enumerate(groups):
        gx = left + gi * group_w
        span = bar_w * len(modes)
        start = gx + (group_w - span) / 2
        for mi, mode in enumerate(modes):
            pct = float(mode_summaries[mode][key])
            x = start + mi * bar_w
            y = sy(pct)
            color = _MODE_COLORS.get(mode, _PALETTE[mi % len(_PALETTE)])
            out.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_w - 2)}" '
                f'height="{_fmt(top + plot_h - y)}" fill="{color}"/>'
            )
            out.append(
                f'<text x="{_fmt(x + (bar_w - 2) / 2)}" y="{_fmt(y - 4)}" font-size="10" '
                f'text-anchor="middle">{pct:.1f}</text>'
            )
        out.append(
            f'<text x="{_fmt(gx + group_w / 2)}" y="{_fmt(top + plot_h + 18)}" '
            f'font-size="12" text-anchor="middle">{label}</text>'
        )
    out.append(
        f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(plot_w)}" '
        f'height="{_fmt(plot_h)}" fill="none" stroke="#444444" stroke-width="1"/>'
    )
    lx = left + plot_w + 16
    for mi, mode in enumerate(modes):
        color = _MODE_COLORS.get(mode, _PALETTE[mi % len(_PALETTE)])
        y = top + 18 * mi
        out.append(f'<rect x="{_fmt(lx)}" y="{_fmt(y)}" width="12" height="12" fill="{color}"/>')
        out.append(f'<text x="{_fmt(lx + 18)}" y="{_fmt(y + 10)}" font-size="11">{escape(mode)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
