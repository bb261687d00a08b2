"""Independent reference implementations used by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from frobtangle.diagram import Diagram, Slice, orbit
from frobtangle.frobenius import structure_maps
from frobtangle.terms import Generator

GENERATORS = list(Generator)


def random_diagram(rng: random.Random, n: int, dom: int, cap: int | None = None,
                   gens=GENERATORS) -> Diagram:
    """Random slice diagram; ``cap`` bounds the width after every slice."""
    slices, w = [], dom
    for _ in range(n):
        cands = [g for g in gens if g.n_in <= w and (cap is None or w - g.n_in + g.n_out <= cap)]
        if not cands:
            break
        g = rng.choice(cands)
        slices.append(Slice(g, rng.randint(0, w - g.n_in)))
        w += g.n_out - g.n_in
    return Diagram(dom, w, tuple(slices))


def _index(digits, dim: int) -> int:
    # wire 0 is the least significant digit
    return sum(x * dim ** k for k, x in enumerate(digits))


def _digits(index: int, width: int, dim: int) -> tuple[int, ...]:
    return tuple((index // dim ** k) % dim for k in range(width))


def basis_eval(d: Diagram, A) -> tuple[tuple[Fraction, ...], ...]:
    """Push every input basis tensor through the slices as a sparse dict."""
    maps, n = structure_maps(A), A.dim
    cols = []
    for j in range(n ** d.dom):
        vec = {_digits(j, d.dom, n): Fraction(1)}
        for s in d.slices:
            m, k, o = maps[s.gen], s.gen.n_in, s.gen.n_out
            new: dict = {}
            for key, c in vec.items():
                col = _index(key[s.offset:s.offset + k], n)
                for r in range(n ** o):
                    x = m[r][col]
                    if x:
                        out = key[:s.offset] + _digits(r, o, n) + key[s.offset + k:]
                        new[out] = new.get(out, 0) + c * x
            vec = {key: c for key, c in new.items() if c}
        cols.append(vec)
    return tuple(tuple(Fraction(cols[j].get(_digits(i, d.cod, n), 0)) for j in range(n ** d.dom))
                 for i in range(n ** d.cod))


def orbit_min(d: Diagram) -> tuple[Slice, ...]:
    return min(orbit(d), key=lambda sl: [s.key for s in sl])


def orbit_max(d: Diagram) -> tuple[Slice, ...]:
    return max(orbit(d), key=lambda sl: [s.key for s in sl])


def enumerate_diagrams(gens, max_gens: int, max_width: int) -> list[Diagram]:
    """Every canonical diagram with at most ``max_gens`` slices and dom, cod <= ``max_width``.

    Grown slice by slice; a prefix is kept only if it is canonical, which is
    safe because prefixes of canonical diagrams are canonical.
    """
    from frobtangle.diagram import canonicalize
    out = []
    for dom in range(max_width + 1):
        layer = [Diagram(dom, dom, ())]
        for n in range(max_gens + 1):
            nxt = []
            for d in layer:
                if d.cod <= max_width:
                    out.append(d)
                if n == max_gens:
                    continue
                for g in gens:
                    for o in range(d.cod - g.n_in + 1):
                        w = d.cod - g.n_in + g.n_out
                        if w - (max_gens - n - 1) > max_width:
                            continue  # cannot shrink back in time
                        new = Diagram(dom, w, d.slices + (Slice(g, o),))
                        if canonicalize(new) == new:
                            nxt.append(new)
            layer = nxt
    return out
