"""Deterministic SVG drawings of string diagrams.

The canonical diagram is drawn top to bottom, one horizontal band per
slice.  Wires sit on an integer grid; wires to the right of a generator
bend to their new column inside its band.  All coordinates are integers,
so identical canonical diagrams give identical bytes.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .diagram import Diagram, canonical, to_term
from .dsl import show
from .terms import Generator, Term

PITCH = 40  # horizontal distance between wires
BAND = 48  # height of one slice
MARGIN = 24
DOT = 4

_STYLE = 'fill="none" stroke="black" stroke-width="2"'


def _x(i: int) -> int:
    return MARGIN + PITCH // 2 + i * PITCH


def _wire(x0: int, y0: int, x1: int, y1: int) -> str:
    if x0 == x1:
        return f'<path d="M{x0} {y0} V{y1}" {_STYLE}/>'
    ym = (y0 + y1) // 2
    return f'<path d="M{x0} {y0} C{x0} {ym} {x1} {ym} {x1} {y1}" {_STYLE}/>'


def _generator(gen: Generator, ins: list[int], outs: list[int], top: int) -> list[str]:
    bot, mid = top + BAND, top + BAND // 2
    if gen is Generator.MULT:
        (a, b), (c,) = ins, outs
        return [f'<path d="M{a} {top} C{a} {mid} {c} {mid} {c} {mid + 8} V{bot}" {_STYLE}/>',
                f'<path d="M{b} {top} C{b} {mid} {c} {mid} {c} {mid + 8}" {_STYLE}/>']
    if gen is Generator.COMULT:
        (c,), (a, b) = ins, outs
        return [f'<path d="M{c} {top} V{mid - 8} C{c} {mid} {a} {mid} {a} {bot}" {_STYLE}/>',
                f'<path d="M{c} {mid - 8} C{c} {mid} {b} {mid} {b} {bot}" {_STYLE}/>']
    if gen is Generator.UNIT:
        (c,) = outs
        return [f'<path d="M{c} {mid} V{bot}" {_STYLE}/>',
                f'<circle cx="{c}" cy="{mid}" r="{DOT}" fill="black"/>']
    if gen is Generator.COUNIT:
        (c,) = ins
        return [f'<path d="M{c} {top} V{mid}" {_STYLE}/>',
                f'<circle cx="{c}" cy="{mid}" r="{DOT}" fill="black"/>']
    if gen is Generator.ZAG:
        a, b = outs
        return [f'<path d="M{a} {bot} C{a} {mid - 8} {b} {mid - 8} {b} {bot}" {_STYLE}/>']
    raise ValueError(gen)


def render_diagram(d: Diagram) -> str:
    widths = d.widths()
    width = 2 * MARGIN + PITCH * max(max(widths), 1)
    height = 2 * MARGIN + BAND * max(len(d.slices), 1)
    title = escape(show(to_term(d)))
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<title>{title}</title>']
    if not d.slices:
        for i in range(d.dom):
            out.append(_wire(_x(i), MARGIN, _x(i), height - MARGIN))
    for k, (s, w) in enumerate(zip(d.slices, widths)):
        top = MARGIN + k * BAND
        n_in, n_out = s.gen.n_in, s.gen.n_out
        for i in range(s.offset):
            out.append(_wire(_x(i), top, _x(i), top + BAND))
        for i in range(s.offset + n_in, w):
            out.append(_wire(_x(i), top, _x(i + n_out - n_in), top + BAND))
        ins = [_x(s.offset + j) for j in range(n_in)]
        outs = [_x(s.offset + j) for j in range(n_out)]
        out.extend(_generator(s.gen, ins, outs, top))
    out.append('</svg>')
    return "\n".join(out) + "\n"


def render_svg(t: Term) -> str:
    """SVG document for the canonical diagram of ``t``."""
    return render_diagram(canonical(t))
