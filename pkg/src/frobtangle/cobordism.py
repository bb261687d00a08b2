"""Planar open cobordisms denoted by terms.

Each generator is a disk whose boundary circle carries marked intervals:
source ports ``S`` on top, target ports ``T`` at the bottom.  Boundary
circles are traversed with the top edge running left to right and the bottom
edge right to left, so the identity strip reads ``(S1, T1)``.  Composing a
diagram glues the surfaces slice by slice; the resulting components are
classified by Euler characteristic, their marked boundary words, and the
number of unmarked boundary circles (windows).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable

from .diagram import Diagram, to_diagram
from .terms import ArityMismatch, Gen, Generator, Id, Term, par, seq

Label = tuple[str, int]  # ("S", i), ("T", j), or ("P", n) for an internal port


class NonPlanarInternal(RuntimeError):
    """A component came out with positive genus; this is an engine defect."""


class Unrealizable(ValueError):
    pass


# boundary word of each generator disk, in traversal order
_GENERATOR_WORDS = {
    Generator.MULT: (("S", 1), ("S", 2), ("T", 1)),
    Generator.UNIT: (("T", 1),),
    Generator.COMULT: (("S", 1), ("T", 2), ("T", 1)),
    Generator.COUNIT: (("S", 1),),
    Generator.ZAG: (("T", 1), ("T", 2)),
}


@dataclass
class Component:
    euler: int
    circles: list[list[Hashable]] = field(default_factory=list)


class SurfaceComplex:
    """Disjoint surfaces with labelled boundary intervals, glued in place."""

    def __init__(self) -> None:
        self.components: dict[int, Component] = {}
        self._owner: dict[Hashable, int] = {}
        self._next = 0

    def add_disk(self, word: Iterable[Hashable]) -> int:
        cid = self._next
        self._next += 1
        word = list(word)
        self.components[cid] = Component(1, [word])
        for lab in word:
            if lab in self._owner:
                raise ValueError(f"duplicate boundary label {lab!r}")
            self._owner[lab] = cid
        return cid

    def total_euler(self) -> int:
        return sum(c.euler for c in self.components.values())

    def _locate(self, lab: Hashable) -> tuple[int, int, int]:
        cid = self._owner[lab]
        for ci, circle in enumerate(self.components[cid].circles):
            if lab in circle:
                return cid, ci, circle.index(lab)
        raise KeyError(lab)

    def glue(self, p: Hashable, q: Hashable) -> None:
        """Sew interval ``p`` to interval ``q``; drops total Euler characteristic by one."""
        c1, i1, k1 = self._locate(p)
        c2, i2, k2 = self._locate(q)
        del self._owner[p], self._owner[q]
        if c1 == c2 and i1 == i2:
            circ = self.components[c1].circles.pop(i1)
            rot = circ[k1:] + circ[:k1]  # p first
            j = rot.index(q)
            self.components[c1].circles += [rot[1:j], rot[j + 1:]]
            self.components[c1].euler -= 1
            return
        a = self.components[c1].circles[i1]
        b = self.components[c2].circles[i2]
        joined = a[k1 + 1:] + a[:k1] + b[k2 + 1:] + b[:k2]
        if c1 == c2:
            comp = self.components[c1]
            comp.circles = [c for n, c in enumerate(comp.circles) if n not in (i1, i2)] + [joined]
            comp.euler -= 1
            return
        left, right = self.components[c1], self.components.pop(c2)
        left.circles = [c for n, c in enumerate(left.circles) if n != i1]
        left.circles += [c for n, c in enumerate(right.circles) if n != i2] + [joined]
        left.euler += right.euler - 1
        for c in right.circles:
            for lab in c:
                self._owner[lab] = c1

    def relabel(self, old: Hashable, new: Hashable) -> None:
        cid, ci, k = self._locate(old)
        self.components[cid].circles[ci][k] = new
        del self._owner[old]
        self._owner[new] = cid


def generator_surface(g: Generator) -> SurfaceComplex:
    sc = SurfaceComplex()
    sc.add_disk(_GENERATOR_WORDS[g])
    return sc


def fold(d: Diagram) -> SurfaceComplex:
    """Glue the generator disks of a diagram; boundary ports end up as S/T labels."""
    sc = SurfaceComplex()
    fresh = itertools.count()
    pending: list[Hashable] = []
    for i in range(d.dom):
        bottom = ("P", next(fresh))
        sc.add_disk([("S", i + 1), bottom])
        pending.append(bottom)
    for s in d.slices:
        ins = [("P", next(fresh)) for _ in range(s.gen.n_in)]
        outs = [("P", next(fresh)) for _ in range(s.gen.n_out)]
        names = {("S", k + 1): ins[k] for k in range(s.gen.n_in)}
        names.update({("T", k + 1): outs[k] for k in range(s.gen.n_out)})
        sc.add_disk(names[lab] for lab in _GENERATOR_WORDS[s.gen])
        for upper, lower in zip(pending[s.offset:s.offset + s.gen.n_in], ins):
            sc.glue(upper, lower)
        pending = pending[:s.offset] + outs + pending[s.offset + s.gen.n_in:]
    for j, lab in enumerate(pending):
        sc.relabel(lab, ("T", j + 1))
    return sc


def _label_key(lab: Label) -> tuple[int, int]:
    return (0 if lab[0] == "S" else 1, lab[1])


def canonical_word(word: Iterable[Label]) -> tuple[Label, ...]:
    """Rotation of a cyclic word that is smallest with S(i) < T(j), then index."""
    w = tuple(word)
    if not w:
        return w
    rots = [w[k:] + w[:k] for k in range(len(w))]
    return min(rots, key=lambda r: [_label_key(x) for x in r])


def _words_key(words: tuple[tuple[Label, ...], ...]):
    return [[_label_key(x) for x in w] for w in words]


@dataclass(frozen=True, order=True)
class ComponentKey:
    genus: int
    words: tuple[tuple[Label, ...], ...]
    windows: int

    def sort_key(self):
        return (self.genus, _words_key(self.words), self.windows)


@dataclass(frozen=True)
class CobInvariant:
    dom: int
    cod: int
    components: tuple[ComponentKey, ...]

    def labels(self) -> Counter:
        return Counter(lab for c in self.components for w in c.words for lab in w)


def _make_invariant(dom: int, cod: int, keys: Iterable[ComponentKey]) -> CobInvariant:
    return CobInvariant(dom, cod, tuple(sorted(keys, key=ComponentKey.sort_key)))


def component_key(comp: Component) -> ComponentKey:
    b = len(comp.circles)
    twice_genus = 2 - comp.euler - b
    if twice_genus % 2:
        raise NonPlanarInternal(f"odd Euler bookkeeping: chi={comp.euler}, circles={b}")
    words = [canonical_word(c) for c in comp.circles if c]
    words.sort(key=lambda w: [_label_key(x) for x in w])
    windows = sum(1 for c in comp.circles if not c)
    return ComponentKey(twice_genus // 2, tuple(words), windows)


def invariant_of_diagram(d: Diagram) -> CobInvariant:
    sc = fold(d)
    keys = [component_key(c) for c in sc.components.values()]
    for k in keys:
        if k.genus != 0:
            raise NonPlanarInternal(f"component of genus {k.genus}: {k}")
    return _make_invariant(d.dom, d.cod, keys)


def invariant(t: Term) -> CobInvariant:
    return invariant_of_diagram(to_diagram(t))


def cob_eq(t1: Term, t2: Term) -> bool:
    if (t1.dom, t1.cod) != (t2.dom, t2.cod):
        raise ArityMismatch((), t1.dom if t1.dom != t2.dom else t1.cod,
                            t2.dom if t1.dom != t2.dom else t2.cod)
    return invariant(t1) == invariant(t2)


# ---------------------------------------------------------------- synthesis

def _mult_comb(n: int) -> Term:
    if n == 0:
        return Gen(Generator.UNIT)
    return seq(Id(1), *(par(Gen(Generator.MULT), Id(k - 2)) for k in range(n, 1, -1)))


def _comult_comb(n: int) -> Term:
    if n == 0:
        return Gen(Generator.COUNIT)
    return seq(Id(1), *(par(Gen(Generator.COMULT), Id(k - 1)) for k in range(1, n)))


def spider(n_in: int, n_out: int, windows: int = 0) -> Term:
    """Connected genus-0 surface n_in -> n_out with a single marked circle."""
    handle = [Gen(Generator.COMULT), Gen(Generator.MULT)] * windows
    return seq(_mult_comb(n_in), *handle, _comult_comb(n_out))


def _boundary_position(lab: Label, dom: int, cod: int) -> int:
    # cyclic order around the rectangle: S1..S_dom, then T_cod..T1
    return lab[1] - 1 if lab[0] == "S" else dom + (cod - lab[1])


def synthesize(inv: CobInvariant) -> Term:
    """Build a G1 term whose invariant is ``inv``."""
    dom, cod = inv.dom, inv.cod
    expected = Counter([("S", i) for i in range(1, dom + 1)] + [("T", j) for j in range(1, cod + 1)])
    if inv.labels() != expected:
        raise Unrealizable("each boundary port must occur exactly once")
    closed: list[ComponentKey] = []
    blocks: list[tuple[list[Label], int]] = []
    for comp in inv.components:
        if comp.genus != 0:
            raise Unrealizable(f"genus {comp.genus} component is not planar")
        if not comp.words:
            if comp.windows < 1:
                raise Unrealizable("a closed component needs at least one boundary circle")
            closed.append(comp)
            continue
        if len(comp.words) > 1:
            raise Unrealizable("marked intervals on two boundary circles of one component")
        word = comp.words[0]
        ordered = sorted(word, key=lambda lab: _boundary_position(lab, dom, cod))
        if canonical_word(ordered) != canonical_word(word):
            raise Unrealizable(f"word {word} does not follow the boundary order")
        blocks.append((ordered, comp.windows))

    for b1, b2 in itertools.combinations(range(len(blocks)), 2):
        p1 = sorted(_boundary_position(x, dom, cod) for x in blocks[b1][0])
        # all of b2 must fall in one cyclic gap between consecutive ports of b1
        gaps = {sum(1 for q in p1 if q < _boundary_position(x, dom, cod)) % len(p1) for x in blocks[b2][0]}
        if len(gaps) > 1:
            raise Unrealizable("boundary words cross")

    block_of = {lab: b for b, (labs, _) in enumerate(blocks) for lab in labs}

    def solve(srcs: list[int], tgts: list[int]) -> Term:
        if not srcs and not tgts:
            return Id(0)
        first = ("S", srcs[0]) if srcs else ("T", tgts[0])
        labs, windows = blocks[block_of[first]]
        bs = sorted(lab[1] for lab in labs if lab[0] == "S")
        bt = sorted(lab[1] for lab in labs if lab[0] == "T")

        def gaps(ports: list[int], anchors: list[int]) -> list[list[int]]:
            return [[x for x in ports if a < x < b] for a, b in zip(anchors, anchors[1:])]

        caps = [solve(g, []) for g in gaps(srcs, bs)]
        cups = [solve([], g) for g in gaps(tgts, bt)]
        closing = par(*itertools.chain.from_iterable((Id(1), c) for c in caps), Id(1)) if bs else Id(0)
        opening = par(*itertools.chain.from_iterable((Id(1), c) for c in cups), Id(1)) if bt else Id(0)
        body = seq(closing, spider(len(bs), len(bt), windows), opening)
        if not bs:
            rest = solve([], [x for x in tgts if x > bt[-1]])
            return par(body, rest)
        if not bt:
            rest = solve([x for x in srcs if x > bs[-1]], tgts)
            return par(body, rest)
        left = solve([], [x for x in tgts if x < bt[0]])
        right = solve([x for x in srcs if x > bs[-1]], [x for x in tgts if x > bt[-1]])
        return par(left, body, right)

    main = solve(list(range(1, dom + 1)), list(range(1, cod + 1)))
    scalars = [spider(0, 0, c.windows - 1) for c in closed]
    return par(*scalars, main) if scalars else main


# ---------------------------------------------------------------- JSON

def _label_str(lab: Label) -> str:
    return f"{lab[0]}{lab[1]}"


def _label_from_str(s: str) -> Label:
    if len(s) < 2 or s[0] not in "ST" or not s[1:].isdigit():
        raise ValueError(f"bad port label {s!r}")
    return (s[0], int(s[1:]))


def invariant_to_json(inv: CobInvariant) -> dict[str, Any]:
    return {
        "dom": inv.dom,
        "cod": inv.cod,
        "components": [
            {"genus": c.genus, "words": [[_label_str(x) for x in w] for w in c.words], "windows": c.windows}
            for c in inv.components
        ],
    }


def invariant_from_json(obj: dict[str, Any]) -> CobInvariant:
    keys = []
    for c in obj["components"]:
        words = [canonical_word(_label_from_str(x) for x in w) for w in c["words"]]
        words.sort(key=lambda w: [_label_key(x) for x in w])
        keys.append(ComponentKey(int(c.get("genus", 0)), tuple(words), int(c["windows"])))
    return _make_invariant(int(obj["dom"]), int(obj["cod"]), keys)
