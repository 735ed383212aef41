"""Figures: deterministic SVG for configurations, walls and loops, plus
matplotlib renderings for reports.

A condition is drawn through its point configuration 0, Z_1, Z_1+Z_2, ...;
the stable class [P_ij] is the straight segment from point i-1 to point j.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from .braids import config_from_charge
from .exact import GaussianRational
from .stability import StabilityCondition

SIZE = 400
MARGIN = 30
_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]


class _Frame:
    """Affine map from the bounding box of some points onto the SVG canvas."""

    def __init__(self, pts: Iterable[GaussianRational]):
        xs, ys = [], []
        for p in pts:
            xs.append(float(p.re))
            ys.append(float(p.im))
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0, 1e-9)
        self.scale = (SIZE - 2 * MARGIN) / span

    def __call__(self, p: GaussianRational) -> Tuple[str, str]:
        x = MARGIN + (float(p.re) - self.x0) * self.scale
        y = SIZE - MARGIN - (float(p.im) - self.y0) * self.scale
        return f"{x:.3f}", f"{y:.3f}"


def _header(title: str) -> List[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]


def _condition_layer(S: StabilityCondition, fr: _Frame, label: str = "", opacity: str = "1") -> List[str]:
    pts = config_from_charge(S.Z, center=False).points
    ident = f' id="{label}"' if label else ""
    out = [f'<g class="layer" opacity="{opacity}"{ident}>']
    for e in sorted(S.stables, key=lambda e: e.cls):
        i, j = e.cls
        (x1, y1), (x2, y2) = fr(pts[i - 1]), fr(pts[j])
        col = _COLORS[(j - i) % len(_COLORS)]
        out.append(
            f'<line class="stable" data-class="{i},{j}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{col}" stroke-width="2"/>'
        )
    for n, p in enumerate(pts):
        x, y = fr(p)
        out.append(f'<circle class="point" data-index="{n}" cx="{x}" cy="{y}" r="4" fill="black"/>')
    out.append("</g>")
    return out


def condition_svg(S: StabilityCondition, title: str = "configuration") -> str:
    fr = _Frame(config_from_charge(S.Z, center=False).points)
    return "\n".join(_header(title) + _condition_layer(S, fr) + ["</svg>"]) + "\n"


def walls_svg(S: StabilityCondition, events: Sequence, Z_target: Sequence[GaussianRational], title: str = "walls") -> str:
    """Start and end configurations with each wall hit annotated by time and classes."""
    start = config_from_charge(S.Z, center=False).points
    end = config_from_charge(Z_target, center=False).points
    fr = _Frame(list(start) + list(end))
    lines = _header(title) + _condition_layer(S, fr, "start")
    for a, b in zip(start, end):
        (x1, y1), (x2, y2) = fr(a), fr(b)
        lines.append(
            f'<line class="track" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#999" stroke-dasharray="4 3"/>'
        )
    for n, e in enumerate(events):
        cls = " ".join(f"P{i}{j}" for i, j in e.colliding)
        lines.append(
            f'<text class="wall" x="8" y="{16 + 14 * n}" font-size="11">t={float(e.time):.6f} {e.kind} {cls}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def loop_svg(frames: Sequence[StabilityCondition], events: Sequence = (), title: str = "loop") -> str:
    """One layer per polygon side, the last drawn opaque."""
    pts = [p for S in frames for p in config_from_charge(S.Z, center=False).points]
    fr = _Frame(pts)
    lines = _header(title)
    for n, S in enumerate(frames):
        op = "1" if n == len(frames) - 1 else "0.35"
        lines += [l.replace('class="layer"', 'class="frame"') for l in _condition_layer(S, fr, f"frame-{n}", op)]
    for n, e in enumerate(events):
        cls = " ".join(f"P{i}{j}" for i, j in e.colliding)
        lines.append(f'<text class="wall" x="8" y="{16 + 14 * n}" font-size="11">{e.kind} {cls}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# -- matplotlib reports -----------------------------------------------------------------


def _mpl():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "akstab"
    return plt


def plot_condition(S: StabilityCondition, path: str, title: Optional[str] = None) -> str:
    plt = _mpl()
    pts = config_from_charge(S.Z, center=False).points
    fig, (ax, bx) = plt.subplots(1, 2, figsize=(9, 4))
    for e in sorted(S.stables, key=lambda e: e.cls):
        i, j = e.cls
        a, b = pts[i - 1], pts[j]
        ax.plot([float(a.re), float(b.re)], [float(a.im), float(b.im)], color=_COLORS[(j - i) % len(_COLORS)], lw=1.5)
    ax.plot([float(p.re) for p in pts], [float(p.im) for p in pts], "ko", ms=5)
    for n, p in enumerate(pts):
        ax.annotate(str(n), (float(p.re), float(p.im)), textcoords="offset points", xytext=(4, 4))
    ax.set_aspect("equal")
    ax.set_title("points and stable segments")
    ents = sorted(S.stables, key=lambda e: e.phase)
    bx.barh(range(len(ents)), [float(e.phase) for e in ents], color="#777")
    bx.set_yticks(range(len(ents)))
    bx.set_yticklabels([str(e.obj) if len(str(e.obj)) < 28 else f"[P{e.cls[0]}{e.cls[1]}]" for e in ents], fontsize=7)
    bx.set_xlabel("phase")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None} if path.endswith(".svg") else None)
    plt.close(fig)
    return path


def plot_hn(filt, path: str, title: str = "HN factors") -> str:
    plt = _mpl()
    fig, ax = plt.subplots(figsize=(5, 3))
    phases = [float(f.phase) for f in filt.factors]
    masses = [abs(f.charge.to_complex()) for f in filt.factors]
    ax.bar(range(len(phases)), masses, color="#1f77b4")
    ax.set_xticks(range(len(phases)))
    ax.set_xticklabels([f"{p:.3f}" for p in phases])
    ax.set_xlabel("phase")
    ax.set_ylabel("|Z|")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_loop(frames: Sequence[StabilityCondition], path: str, title: str = "loop") -> str:
    plt = _mpl()
    fig, ax = plt.subplots(figsize=(5, 5))
    tracks = list(zip(*[config_from_charge(S.Z, center=False).points for S in frames]))
    for n, tr in enumerate(tracks):
        ax.plot([float(p.re) for p in tr], [float(p.im) for p in tr], "-o", ms=2, color=_COLORS[n % len(_COLORS)])
    ax.set_aspect("equal")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
