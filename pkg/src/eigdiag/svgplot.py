"""Dependency-free SVG scatter plot of the eigenvalue diagram.

Linear axes, one semi-transparent dot per record, the four reference
hyperbolas as 256-point polylines, the two strip lines, and a marker at
the disc vertex.  The affine data-to-pixel map is written into the file
as a comment so dots can be checked by hand.
"""

import math

from .inequalities import _bc

VIEW_W = 900.0
VIEW_H = 600.0
MARGIN = 55.0


class AffineMap:
    def __init__(self, x_range, y_range):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.sx = (VIEW_W - 2 * MARGIN) / (self.x1 - self.x0)
        self.sy = (VIEW_H - 2 * MARGIN) / (self.y1 - self.y0)

    def px(self, x):
        return MARGIN + (x - self.x0) * self.sx

    def py(self, y):
        return VIEW_H - MARGIN - (y - self.y0) * self.sy


def _polyline(points, color, dash=None, width=1.2):
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline fill="none" stroke="{color}" stroke-width="{width}"{dash_attr} points="{pts}"/>'


def write_svg(records, curves, path, x_range=None, y_range=None):
    """Render records (objects with .x/.y) and reference curves to path."""
    if x_range is None:
        # curves-only default is wide enough to show all four hyperbolas
        x_hi = max((r.x for r in records), default=None)
        x_range = (15.0, 60.0) if x_hi is None else (15.0, max(x_hi * 1.05, 21.0))
    if y_range is None:
        y_range = (0.0, 11.5)
    amap = AffineMap(x_range, y_range)
    bc = _bc()
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW_W:.0f} {VIEW_H:.0f}">',
        f"<!-- data-to-pixel map: px = {MARGIN} + (x - {amap.x0:.6g}) * {amap.sx:.6g}; "
        f"py = {VIEW_H - MARGIN} - (y - {amap.y0:.6g}) * {amap.sy:.6g} -->",
        f'<rect x="0" y="0" width="{VIEW_W:.0f}" height="{VIEW_H:.0f}" fill="white"/>',
        # axes
        _polyline(
            [
                (amap.px(amap.x0), amap.py(amap.y1)),
                (amap.px(amap.x0), amap.py(amap.y0)),
                (amap.px(amap.x1), amap.py(amap.y0)),
            ],
            "#000000",
            width=1.0,
        ),
    ]
    # axis ticks and labels
    for xt in _ticks(amap.x0, amap.x1):
        parts.append(_polyline([(amap.px(xt), amap.py(amap.y0)), (amap.px(xt), amap.py(amap.y0) + 5)], "#000", width=1.0))
        parts.append(f'<text x="{amap.px(xt):.1f}" y="{amap.py(amap.y0) + 18:.1f}" font-size="11" text-anchor="middle">{xt:g}</text>')
    for yt in _ticks(amap.y0, amap.y1):
        parts.append(_polyline([(amap.px(amap.x0) - 5, amap.py(yt)), (amap.px(amap.x0), amap.py(yt))], "#000", width=1.0))
        parts.append(f'<text x="{amap.px(amap.x0) - 8:.1f}" y="{amap.py(yt) + 4:.1f}" font-size="11" text-anchor="end">{yt:g}</text>')
    colors = {
        "theorem-lower-hyperbola": "#cc0000",
        "theorem-upper-hyperbola": "#cc0000",
        "conjecture-lower-hyperbola": "#ff8800",
        "conjecture-upper-hyperbola": "#ff8800",
        "strip-line-x": "#006600",
        "strip-line-y": "#006600",
    }
    legend = []
    for name, c, kind in curves:
        color = colors.get(kind, "#555555")
        dash = "5,4" if "conjecture" in kind else None
        if kind.endswith("hyperbola"):
            pts = []
            for i in range(256):
                x = amap.x0 + (amap.x1 - amap.x0) * i / 255.0
                y = c / x
                if amap.y0 <= y <= amap.y1:
                    pts.append((amap.px(x), amap.py(y)))
            if pts:
                parts.append(_polyline(pts, color, dash))
        elif kind == "strip-line-x":
            if amap.x0 <= c <= amap.x1:
                parts.append(_polyline([(amap.px(c), amap.py(amap.y0)), (amap.px(c), amap.py(amap.y1))], color, dash))
        elif kind == "strip-line-y":
            if amap.y0 <= c <= amap.y1:
                parts.append(_polyline([(amap.px(amap.x0), amap.py(c)), (amap.px(amap.x1), amap.py(c))], color, dash))
        legend.append((name, color, dash))
    # disc vertex marker
    ax = math.pi * bc.j01**2
    ay = math.pi * bc.j11p**2
    parts.append(
        f'<g id="vertex-A"><circle cx="{amap.px(ax):.2f}" cy="{amap.py(ay):.2f}" r="4" '
        'fill="none" stroke="#000000" stroke-width="1.5"/>'
        f'<text x="{amap.px(ax) + 7:.1f}" y="{amap.py(ay) - 7:.1f}" font-size="12">A (disc)</text></g>'
    )
    for rec in records:
        parts.append(
            f'<circle cx="{amap.px(rec.x):.2f}" cy="{amap.py(rec.y):.2f}" r="1.5" '
            'fill="#1f4fa0" fill-opacity="0.45"/>'
        )
    ly = 20.0
    parts.append('<g id="legend" font-size="11">')
    for name, color, dash in legend:
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        parts.append(f'<line x1="{VIEW_W - 230:.0f}" y1="{ly:.1f}" x2="{VIEW_W - 205:.0f}" y2="{ly:.1f}" stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        parts.append(f'<text x="{VIEW_W - 198:.0f}" y="{ly + 4:.1f}">{name}</text>')
        ly += 15.0
    parts.append("</g>")
    parts.append("</svg>")
    with open(path, "w") as f:
        f.write("\n".join(parts) + "\n")


def _ticks(lo, hi, target=8):
    span = hi - lo
    step = 10 ** math.floor(math.log10(span / target))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= target:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(round(t, 10))
        t += step
    return ticks
