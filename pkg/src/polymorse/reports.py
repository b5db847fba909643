"""Serialization: JSON run reports, CSV tables, SVG star figures and flow sheets."""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from xml.sax.saxutils import escape

import numpy as np

from . import __version__
from .errors import CenterOnBoundary
from .polygon import Polygon, StarSpec, oriented_area, perimeter, winding_number

SCHEMA_VERSION = 1


def _clean(obj):
    """Recursively convert numpy scalars/arrays and complex numbers to JSON types."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


@dataclass
class RunReport:
    command: str
    n_range: list[int]
    config: dict = field(default_factory=dict)
    tables: dict[str, list[dict]] = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    passed: bool = True
    schema_version: int = SCHEMA_VERSION
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def to_json(self, timestamp: bool = True) -> str:
        d = asdict(self)
        if not timestamp:
            d.pop("timestamp")
        return json.dumps(_clean(d), indent=2)


def open_output(path: str):
    """File handle for ``path``; '-' means stdout (not closed by the caller's context)."""
    if path == "-":
        return _NoClose(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="")


class _NoClose:
    def __init__(self, stream):
        self.stream = stream

    def __enter__(self):
        return self.stream

    def __exit__(self, *exc):
        self.stream.flush()
        return False


def write_text(path: str, text: str) -> None:
    with open_output(path) as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")


INDEX_CSV_HEADER = [
    "n", "critical_point", "winding", "predicted", "printed", "computed", "degenerate", "min_eigen_ratio",
]


def index_table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=INDEX_CSV_HEADER, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def star_json(spec: StarSpec, poly: Polygon) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "critical_point": spec.label(),
        "n": spec.n,
        "kind": spec.kind,
        "w": None if spec.is_fold else spec.w,
        "perimeter": perimeter(poly),
        "area": oriented_area(poly),
        "vertices": poly.vertices.tolist(),
    }


def _fit(z: np.ndarray, size: float, margin: float):
    lo = np.array([z.real.min(), z.imag.min()])
    hi = np.array([z.real.max(), z.imag.max()])
    span = max(float(np.max(hi - lo)), 1e-12)
    s = (size - 2 * margin) / span
    mid = (lo + hi) / 2

    def tr(p: complex) -> tuple[float, float]:
        return (size / 2 + s * (p.real - mid[0]), size / 2 - s * (p.imag - mid[1]))

    return tr


def star_svg(spec: StarSpec, poly: Polygon, size: int = 320) -> str:
    """SVG 1.1 drawing: n edges, vertex dots with labels, centroid mark, caption."""
    z = poly.z
    tr = _fit(z, size, 40)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size + 30}" '
        f'viewBox="0 0 {size} {size + 30}">',
        f'<rect width="{size}" height="{size + 30}" fill="white"/>',
        '<g id="edges" stroke="black" stroke-width="1.5" fill="none">',
    ]
    for k in range(poly.n):
        (x1, y1), (x2, y2) = tr(z[k]), tr(z[(k + 1) % poly.n])
        parts.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}"/>')
    parts.append("</g>")
    parts.append('<g id="vertices" fill="#c03030" font-size="10" font-family="sans-serif">')
    seen: dict[tuple[float, float], int] = {}
    for k in range(poly.n):
        x, y = tr(z[k])
        key = (round(x, 3), round(y, 3))
        stack = seen.get(key, 0)
        seen[key] = stack + 1
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3"/>')
        parts.append(f'<text x="{x + 5:.3f}" y="{y - 5 - 11 * stack:.3f}">p{k + 1}</text>')
    parts.append("</g>")
    cx, cy = tr(complex(*poly.centroid()))
    parts.append(
        f'<g id="centroid" stroke="#3050c0" stroke-width="1"><line x1="{cx - 5:.3f}" y1="{cy:.3f}" '
        f'x2="{cx + 5:.3f}" y2="{cy:.3f}"/><line x1="{cx:.3f}" y1="{cy - 5:.3f}" x2="{cx:.3f}" '
        f'y2="{cy + 5:.3f}"/></g>'
    )
    if spec.is_fold:
        caption = f"complete fold, n = {spec.n}: segment traversed {spec.n // 2} times each way"
    else:
        try:
            w = winding_number(poly)
        except CenterOnBoundary:
            w = spec.w
        caption = f"S({spec.n}, {spec.w}), winding number {w}"
    parts.append(
        f'<text x="{size / 2:.1f}" y="{size + 18}" text-anchor="middle" font-size="13" '
        f'font-family="sans-serif">{escape(caption)}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts)


def flow_svg(trajectories: list[list[float]], target: float | None = None, size=(480, 300)) -> str:
    """Normalized area against iteration for a batch of flows."""
    W, H = size
    m = 40
    vals = [v for t in trajectories for v in t]
    if target is not None:
        vals.append(target)
    lo, hi = min(vals), max(vals)
    hi = hi if hi > lo else lo + 1e-12
    longest = max(len(t) for t in trajectories)
    lx = max(np.log10(longest), 1e-12)

    def tr(i, v):
        x = m + (W - 2 * m) * (np.log10(i + 1) / lx)
        y = H - m - (H - 2 * m) * (v - lo) / (hi - lo)
        return x, y

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{m}" y1="{H - m}" x2="{W - m}" y2="{H - m}" stroke="black"/>',
        f'<line x1="{m}" y1="{m}" x2="{m}" y2="{H - m}" stroke="black"/>',
        f'<text x="{W / 2}" y="{H - 10}" text-anchor="middle" font-size="11" font-family="sans-serif">'
        "iteration (log scale)</text>",
        '<g stroke="#3050c0" stroke-opacity="0.35" fill="none">',
    ]
    for t in trajectories:
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (tr(i, v) for i, v in enumerate(t)))
        parts.append(f'<polyline points="{pts}"/>')
    parts.append("</g>")
    if target is not None:
        _, y = tr(0, target)
        parts.append(f'<line x1="{m}" y1="{y:.2f}" x2="{W - m}" y2="{y:.2f}" stroke="#c03030" stroke-dasharray="4 3"/>')
    parts.append("</svg>")
    return "\n".join(parts)
