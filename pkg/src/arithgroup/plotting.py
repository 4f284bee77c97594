"""
SVG illustration of the fundamental domain D and the SL2(Z)-translates of
the arc D_0 = {|z| = 1, |Re z| <= 1/2}.

Arc endpoints are computed exactly; only the drawing uses floats.
"""

from __future__ import annotations

import io
import math
from fractions import Fraction

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure
from matplotlib.patches import Arc

from .exact import InputError
from .modular import IDENTITY, TOKENS, HPoint, SL2Element, moebius

# the corners rho = -1/2 + i sqrt(3)/2 and rho + 1 of D
RHO = HPoint.make(Fraction(-1, 2), Fraction(1, 2), 3)
RHO1 = HPoint.make(Fraction(1, 2), Fraction(1, 2), 3)

SVG_SALT = "arithgroup"


def _canonical(g: SL2Element) -> SL2Element:
    """Representative of {g, -g}."""
    return g if g.c > 0 or (g.c == 0 and g.d > 0) else -g


def words_up_to(depth: int):
    """Distinct elements of PSL2(Z) given by words of length <= depth in S, T, T^-1, in BFS order."""
    if depth < 0:
        raise InputError("depth must be >= 0")
    seen = {_canonical(IDENTITY): ()}
    frontier = [(IDENTITY, ())]
    for _ in range(depth):
        nxt = []
        for g, w in frontier:
            for tok in ("S", "T", "T^-1"):
                h = g * TOKENS[tok]
                key = _canonical(h)
                if key not in seen:
                    seen[key] = w + (tok,)
                    nxt.append((h, w + (tok,)))
        frontier = nxt
    return list(seen.items())


def translates(depth: int):
    """[(word, (gamma(rho), gamma(rho + 1)))] for distinct image arcs, identity first."""
    out, arcs = [], set()
    for g, word in words_up_to(depth):
        ends = (moebius(g, RHO), moebius(g, RHO1))
        key = frozenset(ends)
        if key not in arcs:
            arcs.add(key)
            out.append((word, ends))
    return out


def _geodesic(ax, p: HPoint, q: HPoint, **style):
    if p.re == q.re:
        x = float(p.re)
        y0, y1 = sorted((math.sqrt(p.im2), math.sqrt(q.im2)))
        ax.plot([x, x], [y0, y1], **style)
        return
    # the circle centred on the real axis through p and q
    c = (p.abs2 - q.abs2) / (2 * (p.re - q.re))
    r = math.sqrt((p.re - c) ** 2 + p.im2)
    a1 = math.degrees(math.atan2(math.sqrt(p.im2), float(p.re - c)))
    a2 = math.degrees(math.atan2(math.sqrt(q.im2), float(q.re - c)))
    lo, hi = sorted((a1, a2))
    ax.add_patch(Arc((float(c), 0.0), 2 * r, 2 * r, theta1=lo, theta2=hi,
                     color=style.get("color"), lw=style.get("lw", 1.0)))


def domain_figure(depth: int = 2, xrange=(-1.5, 1.5)) -> Figure:
    x0, x1 = xrange
    if not x0 < x1:
        raise InputError("empty plotting range")
    top = 2.0
    fig = Figure(figsize=(6, 6 * top / (x1 - x0) + 0.4))
    FigureCanvasSVG(fig)
    ax = fig.add_subplot(1, 1, 1)

    # the strip |Re z| <= 1/2 above the unit circle
    h = math.sqrt(3) / 2
    ax.fill_between([-0.5, 0.5], [top, top], [0, 0], color="0.93", lw=0)
    theta = [math.pi / 3 + k * math.pi / 3 / 60 for k in range(61)]
    ax.fill_between([math.cos(t) for t in theta], [math.sin(t) for t in theta], [0] * 61, color="white", lw=0)
    for x in (-0.5, 0.5):
        ax.plot([x, x], [h, top], color="0.4", lw=0.8, ls="--")
    ax.add_patch(Arc((0, 0), 2, 2, theta1=0, theta2=180, color="0.7", lw=0.6, ls=":"))

    for word, (p, q) in translates(depth):
        style = {"color": "black" if not word else "tab:blue", "lw": 1.6 if not word else 0.9}
        _geodesic(ax, p, q, **style)

    ax.axhline(0, color="0.2", lw=0.8)
    ax.set_xlim(x0, x1)
    ax.set_ylim(0, top)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(f"D and translates of D_0, words of length <= {depth}")
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    return fig


def render_domain(depth: int = 2, xrange=(-1.5, 1.5)) -> str:
    """SVG text; identical bytes for identical arguments."""
    fig = domain_figure(depth, xrange)
    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "path"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()
