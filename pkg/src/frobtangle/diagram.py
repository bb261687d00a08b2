"""Slice diagrams: one generator per horizontal band.

A diagram lists its generators top to bottom; each slice records how many
wires run strictly to the left of the generator.  Two diagrams denote the
same morphism of the free strict monoidal category exactly when one can be
reached from the other by swapping adjacent independent slices.  The
canonical representative of such an orbit is its lexicographically smallest
slice sequence, comparing slices by ``(offset, generator rank)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Iterable, NamedTuple

from .terms import Gen, Generator, Id, Par, Seq, Term, par, seq, typecheck


class Slice(NamedTuple):
    gen: Generator
    offset: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.offset, self.gen.rank)

    def shifted(self, k: int) -> "Slice":
        return Slice(self.gen, self.offset + k)


@dataclass(frozen=True)
class Diagram:
    dom: int
    cod: int
    slices: tuple[Slice, ...]

    def __post_init__(self) -> None:
        w = self.dom
        for i, s in enumerate(self.slices):
            if s.offset < 0 or s.offset + s.gen.n_in > w:
                raise ValueError(f"slice {i} ({s.gen.value}@{s.offset}) does not fit width {w}")
            w += s.gen.n_out - s.gen.n_in
        if w != self.cod:
            raise ValueError(f"slices end at width {w}, declared codomain {self.cod}")

    def widths(self) -> list[int]:
        """Width above each slice, followed by the final width."""
        out = [self.dom]
        for s in self.slices:
            out.append(out[-1] + s.gen.n_out - s.gen.n_in)
        return out

    def __len__(self) -> int:
        return len(self.slices)


def to_diagram(t: Term) -> Diagram:
    typecheck(t)
    return Diagram(t.dom, t.cod, tuple(_layers(t)))


def _layers(t: Term) -> list[Slice]:
    if isinstance(t, Gen):
        return [Slice(t.gen, 0)]
    if isinstance(t, Id):
        return []
    if isinstance(t, Seq):
        return _layers(t.first) + _layers(t.then)
    if isinstance(t, Par):
        # left factor first, then the right one beside the left's outputs
        return _layers(t.left) + [s.shifted(t.left.cod) for s in _layers(t.right)]
    raise TypeError(f"not a term: {t!r}")


def to_term(d: Diagram) -> Term:
    """Read a diagram back as a term, one tensor layer per slice."""
    if not d.slices:
        return Id(d.dom)
    layers = []
    for s, w in zip(d.slices, d.widths()):
        layers.append(par(Id(s.offset), Gen(s.gen), Id(w - s.offset - s.gen.n_in)))
    return seq(*layers)


def swap_options(first: Slice, second: Slice) -> list[tuple[Slice, Slice]]:
    """All ways of running ``second`` before ``first`` (they are adjacent).

    Returns pairs ``(second', first')`` with adjusted offsets.  Both options
    exist only when a generator without inputs meets one without outputs at
    the same place; then either side is a legal placement.
    """
    h, oh = first
    g, og = second
    out = []
    if og + g.n_in <= oh:
        out.append((Slice(g, og), Slice(h, oh - g.n_in + g.n_out)))
    if og >= oh + h.n_out:
        out.append((Slice(g, og - h.n_out + h.n_in), Slice(h, oh)))
    return out


def canonicalize(d: Diagram) -> Diagram:
    return Diagram(d.dom, d.cod, _canon(d.dom, tuple(d.slices)))


@lru_cache(maxsize=1 << 16)
def _canon(dom: int, slices: tuple[Slice, ...]) -> tuple[Slice, ...]:
    if len(slices) < 2:
        return slices
    return _Sweep(Diagram(dom, _cod(dom, slices), slices)).lexmin()


def _cod(dom: int, slices: Iterable[Slice]) -> int:
    for s in slices:
        dom += s.gen.n_out - s.gen.n_in
    return dom


def canonical(t: Term) -> Diagram:
    return canonicalize(to_diagram(t))


def structural_eq(t1: Term, t2: Term) -> bool:
    return canonical(t1) == canonical(t2)


def orbit(d: Diagram) -> set[tuple[Slice, ...]]:
    """All slice sequences reachable by adjacent swaps (brute force)."""
    start = tuple(d.slices)
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for i in range(len(cur) - 1):
            for a, b in swap_options(cur[i], cur[i + 1]):
                nxt = cur[:i] + (a, b) + cur[i + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return seen


class Wiring(NamedTuple):
    """Wire identities threaded through a diagram.

    ``levels[k]`` lists the wire ids present above slice ``k`` (``levels[-1]``
    is the bottom boundary).  ``inputs[k]``/``outputs[k]`` are the wires a
    slice consumes and creates.  ``producer``/``consumer`` map a wire id to
    ``(slice, port)``, with slice ``-1`` meaning the diagram boundary.
    """

    levels: list[list[int]]
    inputs: list[list[int]]
    outputs: list[list[int]]
    producer: dict[int, tuple[int, int]]
    consumer: dict[int, tuple[int, int]]


def wiring(d: Diagram) -> Wiring:
    cur = list(range(d.dom))
    producer = {w: (-1, w) for w in cur}
    consumer: dict[int, tuple[int, int]] = {}
    nxt = d.dom
    levels, inputs, outputs = [], [], []
    for k, s in enumerate(d.slices):
        levels.append(cur)
        ins = cur[s.offset:s.offset + s.gen.n_in]
        outs = list(range(nxt, nxt + s.gen.n_out))
        nxt += s.gen.n_out
        for p, w in enumerate(ins):
            consumer[w] = (k, p)
        for p, w in enumerate(outs):
            producer[w] = (k, p)
        inputs.append(ins)
        outputs.append(outs)
        cur = cur[:s.offset] + outs + cur[s.offset + s.gen.n_in:]
    levels.append(cur)
    for p, w in enumerate(cur):
        consumer[w] = (-1, p)
    return Wiring(levels, inputs, outputs, producer, consumer)


def diagram_to_json(d: Diagram) -> dict[str, Any]:
    return {
        "dom": d.dom,
        "cod": d.cod,
        "slices": [{"gen": s.gen.value, "offset": s.offset} for s in d.slices],
    }


def diagram_from_json(obj: dict[str, Any]) -> Diagram:
    slices = tuple(Slice(Generator.from_letter(s["gen"]), int(s["offset"])) for s in obj["slices"])
    return Diagram(int(obj["dom"]), int(obj["cod"]), slices)


def slice_components(d: Diagram) -> tuple[list[int], set[int]]:
    """Connected-component label per slice, and the labels touching no boundary."""
    w = wiring(d)
    parent = list(range(len(d.slices)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    open_wires = []
    for wire, (p, _) in w.producer.items():
        c = w.consumer[wire][0]
        if p >= 0 and c >= 0:
            parent[find(p)] = find(c)
        elif p >= 0 or c >= 0:
            open_wires.append(max(p, c))
    labels = [find(k) for k in range(len(d.slices))]
    touching = {find(k) for k in open_wires}
    return labels, set(labels) - touching


def strip_closed(d: Diagram) -> Diagram:
    """Delete every component with no boundary wires (floating closed surfaces)."""
    labels, closed = slice_components(d)
    if not closed:
        return d
    w = wiring(d)
    dead = {wire for k, lab in enumerate(labels) if lab in closed for wire in w.outputs[k]}
    kept = []
    for k, s in enumerate(d.slices):
        if labels[k] in closed:
            continue
        level = w.levels[k]
        offset = sum(1 for wire in level[:s.offset] if wire not in dead)
        kept.append(Slice(s.gen, offset))
    return canonicalize(Diagram(d.dom, d.cod, tuple(kept)))


class _Sweep:
    """Lexicographic minimum of an interchange orbit, built one slice at a time.

    The orbit is explored through its states instead of its members.  A
    state is the set of generators drawn so far, the left-to-right cut of
    wires below them, and, for each closed component not yet started, the
    face of the undrawn region it floats in.  Faces come from the rotation
    system fixed by the port order; wire sides are ``2w`` (left) and
    ``2w + 1`` (right), and the two edges of the strip get their own ids.
    A source may start in any gap of its own face, except where the order
    of its outputs against a cut wire is forced by a shared descendant or
    by the bottom boundary.
    """

    def __init__(self, d: Diagram):
        w = wiring(d)
        self.n = n = len(d.slices)
        self.gens = [s.gen for s in d.slices]
        self.ins, self.outs = w.inputs, w.outputs
        nw = len(w.producer)
        self.left, self.right = 2 * nw, 2 * nw + 1
        self.nsides = 2 * nw + 2
        self.prod = [w.producer[x][0] for x in range(nw)]
        self.cons = [w.consumer[x][0] for x in range(nw)]
        self.top = tuple(w.levels[0])
        self.bottom = w.levels[-1]
        bpos = {x: p for p, x in enumerate(self.bottom)}

        self.node_pairs = []
        for k in range(n):
            i, o = self.ins[k], self.outs[k]
            pairs = []
            if i and o:
                pairs += [(2 * i[0], 2 * o[0]), (2 * i[-1] + 1, 2 * o[-1] + 1)]
            elif o:
                pairs.append((2 * o[0], 2 * o[-1] + 1))
            else:
                pairs.append((2 * i[0], 2 * i[-1] + 1))
            for row in (i, o):
                pairs += [(2 * a + 1, 2 * b) for a, b in zip(row, row[1:])]
            self.node_pairs.append(pairs)
        self.bottom_pairs = self._row_pairs(self.bottom)

        # descendants of every node as a bit mask, and the leftmost bottom wire reached
        self.cone = [0] * n
        self.reach = [None] * n
        for k in range(n - 1, -1, -1):
            mask, low = 0, None
            for x in self.outs[k]:
                c = self.cons[x]
                if c < 0:
                    b = bpos[x]
                else:
                    mask |= 1 << c | self.cone[c]
                    b = self.reach[c]
                if b is not None and (low is None or b < low):
                    low = b
            self.cone[k], self.reach[k] = mask, low
        self._sides: dict[tuple[int, int], int] = {}
        self._face_cache: dict = {}

        labels, closed = slice_components(d)
        self.comp_of: dict[int, int] = {}
        self.outer: dict[int, int] = {}
        self.comp_sides: dict[int, frozenset[int]] = {}
        anchors = []
        for k, lab in enumerate(labels):
            if lab not in closed:
                continue
            self.comp_of[k] = lab
            if lab not in self.outer:
                self.outer[lab] = 2 * self.outs[k][0]
                off, level = d.slices[k].offset, w.levels[k]
                anchors.append((lab, 2 * level[off - 1] + 1 if off else self.left))
        for lab in self.outer:
            ks = [k for k, c in self.comp_of.items() if c == lab]
            self.comp_sides[lab] = frozenset(s for k in ks for x in self.outs[k] for s in (2 * x, 2 * x + 1))
        start = (0, self.top, ())
        self.start = (0, self.top, self._relabel(0, self.top, tuple(anchors))) if anchors else start

    def _row_pairs(self, row) -> list[tuple[int, int]]:
        if not row:
            return [(self.left, self.right)]
        return ([(self.left, 2 * row[0]), (2 * row[-1] + 1, self.right)]
                + [(2 * a + 1, 2 * b) for a, b in zip(row, row[1:])])

    def _faces(self, drawn: int, cut, tracked=()) -> list[int]:
        key = (drawn, cut, tracked)
        got = self._face_cache.get(key)
        if got is not None:
            return got
        parent = list(range(self.nsides))

        def find(x):
            while parent[x] != x:
                parent[x] = x = parent[parent[x]]
            return x

        pairs = [pr for k in range(self.n) if not drawn >> k & 1 for pr in self.node_pairs[k]]
        pairs += self.bottom_pairs
        pairs += self._row_pairs(cut)
        pairs += [(self.outer[lab], anchor) for lab, anchor in tracked]
        for a, b in pairs:
            a, b = find(a), find(b)
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
        out = [find(x) for x in range(self.nsides)]
        self._face_cache[key] = out
        return out

    def _present(self, drawn: int) -> set[int]:
        out = {self.left, self.right}
        for x, c in enumerate(self.cons):
            if c < 0 or not drawn >> c & 1:
                out.update((2 * x, 2 * x + 1))
        return out

    def _relabel(self, drawn: int, cut, tracked) -> tuple[tuple[int, int], ...]:
        """Name each floating component's face by a side it cannot own."""
        face = self._faces(drawn, cut, tracked)
        members: dict[int, list[int]] = {}
        for x in self._present(drawn):
            members.setdefault(face[x], []).append(x)
        inside: dict[int, set[int]] = {}
        for lab, _ in tracked:
            inside.setdefault(face[self.outer[lab]], set()).update(self.comp_sides[lab])
        out = []
        for lab, anchor in tracked:
            r = face[anchor]
            out.append((lab, min(x for x in members[r] if x not in inside[r])))
        return tuple(sorted(out))

    def _side(self, k: int, t: int) -> int:
        """-1 if the outputs of source ``k`` must lie left of wire ``t``, 1 if right, else 0."""
        key = (k, t)
        if key in self._sides:
            return self._sides[key]
        vmask, tmask = self.cone[k], 0
        c = self.cons[t]
        tb = self.bottom.index(t) if c < 0 else self.reach[c]
        if c >= 0:
            tmask = 1 << c | self.cone[c]
        common = vmask & tmask
        res = 0
        if common:
            w = (common & -common).bit_length() - 1
            mine = set(self.outs[k])
            vp = [p for p, x in enumerate(self.ins[w]) if x in mine or (self.prod[x] >= 0 and vmask >> self.prod[x] & 1)]
            tp = [p for p, x in enumerate(self.ins[w]) if x == t or (self.prod[x] >= 0 and tmask >> self.prod[x] & 1)]
            if vp and tp:
                res = -1 if max(vp) < min(tp) else 1
        elif self.reach[k] is not None and tb is not None:
            res = -1 if self.reach[k] < tb else 1
        self._sides[key] = res
        return res

    def _moves(self, state, face):
        drawn, cut, _ = state
        pos = {x: j for j, x in enumerate(cut)}
        for k in range(self.n):
            if drawn >> k & 1:
                continue
            i = self.ins[k]
            if i:
                p = pos.get(i[0])
                if p is not None and tuple(cut[p:p + len(i)]) == tuple(i):
                    yield k, p
                continue
            mine = face[2 * self.outs[k][0]]
            sides = [self._side(k, t) for t in cut]
            for p in range(len(cut) + 1):
                if face[2 * cut[p - 1] + 1 if p else self.left] != mine:
                    continue
                if any(x == -1 for x in sides[:p]) or any(x == 1 for x in sides[p:]):
                    continue
                yield k, p

    def _advance(self, state, face, k: int, p: int) -> list:
        drawn, cut, tracked = state
        ndrawn = drawn | 1 << k
        ncut = cut[:p] + tuple(self.outs[k]) + cut[p + len(self.ins[k]):]
        tracked = tuple((lab, a) for lab, a in tracked if lab != self.comp_of.get(k))
        if not tracked:
            return [(ndrawn, ncut, ())]
        new = self._faces(ndrawn, ncut)
        present = self._present(ndrawn)
        owned = set().union(*(self.comp_sides[lab] for lab, _ in tracked))
        members: dict[int, list[int]] = {}
        for x in self._present(drawn):
            members.setdefault(face[x], []).append(x)
        options = []
        for lab, anchor in tracked:
            free = [x for x in members[face[anchor]] if x not in owned]
            if not free:
                options.append([anchor])
                continue
            groups: dict[int, int] = {}
            for x in free:
                if x in present:
                    r = new[x]
                    groups[r] = min(x, groups.get(r, x))
            if not groups:
                return []
            options.append(sorted(groups.values()))
        labs = [lab for lab, _ in tracked]
        return [(ndrawn, ncut, self._relabel(ndrawn, ncut, tuple(zip(labs, choice))))
                for choice in product(*options)]

    def _alive(self, state) -> bool:
        """Whether some drawing of the whole diagram passes through ``state``."""
        if state in self._memo:
            return self._memo[state]
        if state[0] == self.full:
            return True
        face = self._faces(*state)
        ok = False
        for k, p in self._moves(state, face):
            nxt = self._advance(state, face, k, p)
            if any(self._alive(x) for x in nxt):
                ok = True
                break
            if nxt and self.ins[k]:
                # a generator whose inputs sit together on the cut can always go
                # next unless it would swallow a floating component
                break
        self._memo[state] = ok
        return ok

    def lexmin(self) -> tuple[Slice, ...]:
        self.full = (1 << self.n) - 1
        self._memo: dict = {}
        states = {self.start}
        out = []
        for _ in range(self.n):
            by_key: dict[tuple[int, int], list] = {}
            for st in states:
                face = self._faces(*st)
                for k, p in self._moves(st, face):
                    by_key.setdefault((p, self.gens[k].rank), []).append((st, face, k, p))
            for key in sorted(by_key):
                states = set()
                for st, face, k, p in by_key[key]:
                    nxt = self._advance(st, face, k, p)
                    # states kept here are alive, and so is the result of drawing a
                    # generator with inputs unless floating components had to choose
                    if len(nxt) > 1 or not self.ins[k]:
                        nxt = [x for x in nxt if self._alive(x)]
                    states.update(nxt)
                if states:
                    out.append(Slice(self.gens[by_key[key][0][2]], key[0]))
                    break
        return tuple(out)
