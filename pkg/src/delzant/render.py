"""Deterministic SVG pictures of planar polytopes and b-polytopes.

Coordinates are exact until the final formatting step, which rounds to
three decimals with rational arithmetic, so identical input always gives
identical bytes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple, Union
from xml.sax.saxutils import escape

from .bstruct import BDelzantPolytope, glued_drawing
from .errors import UnsupportedDimension
from .polytope import Polytope

SCALE = 100  # pixels per lattice unit
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
MINUS = "−"


def _num(q: Fraction) -> str:
    r = round(Fraction(q) * SCALE * 1000)
    sign = "-" if r < 0 else ""
    r = abs(r)
    whole, frac = divmod(r, 1000)
    if not frac:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:03d}".rstrip("0")


def _rat_text(q: Fraction) -> str:
    s = str(Fraction(q))
    return s.replace("-", MINUS)


def weight_label(c: Fraction, m: Sequence[int]) -> str:
    """Human label of the weight ``-c * m`` in the dual basis, e.g. ``−1·t₂*``."""
    terms = []
    for i, a in enumerate(m):
        if a == 0:
            continue
        coef = -Fraction(c) * a
        name = f"t{str(i + 1).translate(_SUB)}*"
        if terms:
            op = " + " if coef > 0 else f" {MINUS} "
            terms.append(f"{op}{_rat_text(abs(coef))}·{name}")
        else:
            terms.append(f"{_rat_text(coef)}·{name}")
    return "".join(terms)


def _cycle(P: Polytope) -> List[int]:
    """Vertex indices of a polygon in boundary order."""
    order = [0]
    prev = None
    while True:
        nxt = [j for j in P.neighbors(order[-1]) if j != prev]
        if not nxt or nxt[0] == order[0]:
            return order
        prev = order[-1]
        order.append(nxt[0])


def _pt(x: Sequence[Fraction]) -> Tuple[str, str]:
    # svg y axis points down
    return _num(x[0]), _num(-x[1])


def _pieces(obj: Union[Polytope, BDelzantPolytope]):
    """(id, polytope in drawing coordinates, marked facets) per piece, plus labels."""
    if isinstance(obj, Polytope):
        if obj.dim != 2:
            raise UnsupportedDimension("only 2-dimensional inputs can be rendered", dim=obj.dim)
        return [("v1", obj, {})], []
    if obj.dim != 2:
        raise UnsupportedDimension("only 2-dimensional inputs can be rendered", dim=obj.dim)
    drawing = glued_drawing(obj)
    pieces = [(v, drawing.polytopes[v], drawing.marked[v]) for v in drawing.order]
    labels = []
    for i, e in enumerate(obj.graph.edges):
        mids = []
        for v in e.ends:
            P = drawing.polytopes[v]
            f = drawing.marked[v][i]
            a, b = (P.vertices[j] for j in P.facet_vertices(f))
            mids.append(tuple((p + q) / 2 for p, q in zip(a, b)))
        at = tuple((p + q) / 2 for p, q in zip(*mids))
        labels.append((at, weight_label(e.c, e.m)))
    return pieces, labels


def render_svg(obj: Union[Polytope, BDelzantPolytope]) -> str:
    pieces, labels = _pieces(obj)
    pts = [v for _, P, _ in pieces for v in P.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    mx = (w or h) / 10
    my = (h or w) / 10
    x0, y0 = min(xs) - mx, -(max(ys) + my)
    vw, vh = w + 2 * mx, h + 2 * my
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_num(x0)} {_num(y0)} {_num(vw)} {_num(vh)}" '
        f'width="{_num(vw)}" height="{_num(vh)}">',
    ]
    for cid, P, marked in pieces:
        out.append(f'  <g id="{escape(cid)}">')
        ring = " ".join(",".join(_pt(P.vertices[i])) for i in _cycle(P))
        out.append(f'    <polygon points="{ring}" fill="#e8e8e8" stroke="none"/>')
        dashed = set(marked.values())
        for f in range(len(P.halfspaces)):
            a, b = (P.vertices[j] for j in P.facet_vertices(f))
            (x1, y1), (x2, y2) = _pt(a), _pt(b)
            style = 'stroke="#000" stroke-width="2"'
            if f in dashed:
                style += ' stroke-dasharray="8 6" class="infinity"'
            out.append(f'    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>')
        out.append("  </g>")
    for at, text in labels:
        x, y = _pt(at)
        out.append(
            f'  <text x="{x}" y="{y}" font-family="serif" font-size="14" '
            f'text-anchor="middle" dominant-baseline="middle">{escape(text)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
