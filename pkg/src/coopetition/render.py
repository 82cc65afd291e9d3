"""Deterministic CSV and SVG emission for payoff-space scenes.

CSV columns are exactly ``x,y[,z],p1,p2,tag``; floats are written with
``repr`` so they round-trip bit-exactly.  SVG output is hand-assembled
with fixed formatting: payoff axes at 100 px per unit, an origin cross,
and a text legend.  Neither format embeds timestamps or locale-dependent
content, so identical inputs produce identical bytes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
import numpy as np

from .games import Orientation, PayoffPoint

__all__ = ["SceneRow", "Scene", "write_csv", "write_svg"]

#: Cloud points drawn into an SVG are thinned to at most this many.
SVG_CLOUD_CAP = 4000
PX_PER_UNIT = 100.0
PAD_PX = 60.0

_COLORS = {
    "cloud": "#b8b8b8",
    "pareto": "#1f77b4",
    "nash": "#2ca02c",
    "tu": "#d62728",
    "solution": "#7b2d8b",
}


@dataclass(frozen=True)
class SceneRow:
    preimage: tuple[float, ...]
    p1: float
    p2: float
    tag: str


@dataclass
class Scene:
    """Everything one figure shows, in emission order."""

    title: str
    orientation: Orientation
    arity: int
    rows: list[SceneRow] = field(default_factory=list)
    tu_segment: tuple[PayoffPoint, PayoffPoint] | None = None

    def add(self, preimages, payoffs, tag: str) -> None:
        preimages = np.atleast_2d(np.asarray(preimages, dtype=float))
        payoffs = np.atleast_2d(np.asarray(payoffs, dtype=float))
        for pre, pay in zip(preimages, payoffs):
            self.rows.append(
                SceneRow(tuple(float(v) for v in pre), float(pay[0]), float(pay[1]), tag)
            )

    def add_solution(self, name: str, preimage, payoff: PayoffPoint) -> None:
        pre = tuple(float(v) for v in preimage) if preimage is not None else ()
        pre = pre + (0.0,) * (self.arity - len(pre))
        self.rows.append(SceneRow(pre[: self.arity], payoff.p1, payoff.p2, f"solution:{name}"))


def write_csv(path: str | Path, scene: Scene) -> None:
    header = ["x", "y", "z"][: scene.arity] + ["p1", "p2", "tag"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in scene.rows:
            writer.writerow(
                [repr(v) for v in row.preimage[: scene.arity]]
                + [repr(row.p1), repr(row.p2), row.tag]
            )


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Frame:
    def __init__(self, points: np.ndarray):
        lo = np.minimum(points.min(axis=0), [0.0, 0.0])
        hi = np.maximum(points.max(axis=0), [0.0, 0.0])
        span = np.maximum(hi - lo, 1e-9)
        self.lo, self.hi = lo, hi
        self.width = span[0] * PX_PER_UNIT + 2 * PAD_PX
        self.height = span[1] * PX_PER_UNIT + 2 * PAD_PX

    def to_px(self, p1: float, p2: float) -> tuple[float, float]:
        x = PAD_PX + (p1 - self.lo[0]) * PX_PER_UNIT
        y = PAD_PX + (self.hi[1] - p2) * PX_PER_UNIT
        return x, y


def _thin(points: np.ndarray, cap: int) -> np.ndarray:
    if len(points) <= cap:
        return points
    stride = int(np.ceil(len(points) / cap))
    return points[::stride]


def write_svg(path: str | Path, scene: Scene) -> None:
    by_tag: dict[str, list[SceneRow]] = {}
    for row in scene.rows:
        by_tag.setdefault(row.tag, []).append(row)
    all_pts = np.array([[r.p1, r.p2] for r in scene.rows])
    frame = _Frame(all_pts)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(frame.width)}" '
        f'height="{_fmt(frame.height)}" viewBox="0 0 {_fmt(frame.width)} {_fmt(frame.height)}">',
        f'<rect width="{_fmt(frame.width)}" height="{_fmt(frame.height)}" fill="white"/>',
    ]
    # Origin cross spanning the frame.
    ox, oy = frame.to_px(0.0, 0.0)
    parts.append(
        f'<line x1="{_fmt(ox)}" y1="0" x2="{_fmt(ox)}" y2="{_fmt(frame.height)}" '
        'stroke="#888888" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="0" y1="{_fmt(oy)}" x2="{_fmt(frame.width)}" y2="{_fmt(oy)}" '
        'stroke="#888888" stroke-width="1"/>'
    )

    legend = [scene.title]
    better = "up-right" if scene.orientation is Orientation.GAIN else "down-left"
    legend.append(f"orientation: {scene.orientation.value} (better = {better})")
    legend.append("scale: 1 payoff unit = 100 px")

    cloud = by_tag.pop("cloud", None)
    if cloud:
        pts = _thin(np.array([[r.p1, r.p2] for r in cloud]), SVG_CLOUD_CAP)
        for p1, p2 in pts:
            x, y = frame.to_px(p1, p2)
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="1.2" fill="{_COLORS["cloud"]}"/>'
            )
        note = f" ({len(pts)} of {len(cloud)} shown)" if len(pts) < len(cloud) else ""
        legend.append(f"cloud: {len(cloud)} sampled payoffs{note}")

    pareto = by_tag.pop("pareto", None)
    if pareto:
        pts = sorted((r.p1, r.p2) for r in pareto)
        path_d = " ".join(
            ("M" if i == 0 else "L") + f"{_fmt(frame.to_px(*p)[0])},{_fmt(frame.to_px(*p)[1])}"
            for i, p in enumerate(pts)
        )
        parts.append(
            f'<path d="{path_d}" fill="none" stroke="{_COLORS["pareto"]}" stroke-width="2"/>'
        )
        legend.append(f"pareto boundary: {len(pts)} points (blue)")

    nash = by_tag.pop("nash", None)
    if nash:
        pts = _thin(np.array([[r.p1, r.p2] for r in nash]), SVG_CLOUD_CAP)
        for p1, p2 in pts:
            x, y = frame.to_px(p1, p2)
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="1.6" fill="{_COLORS["nash"]}"/>'
            )
        legend.append(f"nash zone: {len(nash)} points (green)")

    tu = by_tag.pop("tu", None)
    if scene.tu_segment is not None:
        (a, b) = scene.tu_segment
        x1, y1 = frame.to_px(a.p1, a.p2)
        x2, y2 = frame.to_px(b.p1, b.p2)
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{_COLORS["tu"]}" stroke-width="2"/>'
        )
        legend.append("tu line (red)")
    if tu:
        for r in tu:
            x, y = frame.to_px(r.p1, r.p2)
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="none" '
                f'stroke="{_COLORS["tu"]}" stroke-width="1.5"/>'
            )
        legend.append(f"tu witnesses: {len(tu)} points (red circles)")

    solution_tags = sorted(tag for tag in by_tag if tag.startswith("solution:"))
    for tag in solution_tags:
        for r in by_tag[tag]:
            x, y = frame.to_px(r.p1, r.p2)
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{_COLORS["solution"]}"/>'
            )
            parts.append(
                f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" font-size="12" '
                f'fill="{_COLORS["solution"]}">{tag.split(":", 1)[1]}</text>'
            )
            legend.append(
                f"{tag}: ({r.p1:.4g}, {r.p2:.4g})"
            )

    for i, line in enumerate(legend):
        parts.append(
            f'<text x="8" y="{_fmt(16 + 14 * i)}" font-size="11" fill="#333333">{line}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
