"""Axiom rewrites on canonical diagrams, traces of rewrites, and search.

A rule replaces a connected redex by another diagram with the same
boundary.  Redexes are found by following wires from an anchor slice; the
slices in between are then shuffled out of the way with legal interchange
moves so that the redex occupies consecutive slices.  Rules whose left side
is a bare wire (the inverses of the unit, counit and zig-zag laws) insert
their right side on any wire segment.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

from .diagram import Diagram, Slice, canonical, canonicalize, slice_components, swap_options, to_term, wiring
from .dsl import parse, show
from .terms import (ArityMismatch, Gen, Generator, GeneratorSet, Id, Par, Seq, Term, generator_set,
                    term_from_json, term_to_json)


class Rule(enum.Enum):
    A = "a"
    R = "r"
    L = "l"
    D = "d"
    P = "p"
    Q = "q"
    B = "b"
    C = "c"
    Z = "z"
    N = "n"
    X = "X"
    W = "w"


# left side => right side, in the term language
RULE_SIDES: dict[Rule, tuple[str, str]] = {
    Rule.A: ("id(1)*m ; m", "m*id(1) ; m"),
    Rule.R: ("id(1)*u ; m", "id(1)"),
    Rule.L: ("u*id(1) ; m", "id(1)"),
    Rule.D: ("d ; id(1)*d", "d ; d*id(1)"),
    Rule.P: ("d ; id(1)*e", "id(1)"),
    Rule.Q: ("d ; e*id(1)", "id(1)"),
    Rule.B: ("id(1)*d ; m*id(1)", "m ; d"),
    Rule.C: ("d*id(1) ; id(1)*m", "m ; d"),
    Rule.Z: ("g*id(1) ; id(1)*m ; id(1)*e", "id(1)"),
    Rule.N: ("id(1)*g ; m*id(1) ; e*id(1)", "id(1)"),
    Rule.W: ("id(1)*g ; m*id(1)", "g*id(1) ; id(1)*m"),
}


@dataclass(frozen=True)
class RuleId:
    rule: Rule
    inverse: bool = False

    @property
    def reversed(self) -> "RuleId":
        if self.rule is Rule.X:
            return self
        return RuleId(self.rule, not self.inverse)

    def __str__(self) -> str:
        return self.rule.value + ("^-1" if self.inverse else "")

    @classmethod
    def parse(cls, s: str) -> "RuleId":
        inverse = s.endswith("^-1")
        name = s[:-3] if inverse else s
        if name == "ℓ":
            name = "l"
        return cls(Rule(name), inverse)


G1_RULES = (Rule.A, Rule.R, Rule.L, Rule.D, Rule.P, Rule.Q, Rule.B, Rule.C, Rule.X)
G2_RULES = (Rule.A, Rule.R, Rule.L, Rule.Z, Rule.N, Rule.X)


class Position(NamedTuple):
    """Slice index and wire offset of a redex in the canonical diagram.

    ``variant`` separates redexes at the same place that differ in how
    floating closed pieces around them are set aside.
    """

    slice: int
    offset: int
    variant: int = 0


class NoRedex(LookupError):
    def __init__(self, rule: RuleId, position: Position | None):
        self.rule, self.position = rule, position
        super().__init__(f"no redex for rule {rule} at {position}")


class SourceTargetMismatch(ValueError):
    pass


class InvalidTrace(ValueError):
    pass


class WrongGeneratorSet(ValueError):
    pass


@lru_cache(maxsize=None)
def template(rule: Rule, inverse: bool = False) -> tuple[Diagram, Diagram]:
    """Canonical (left, right) diagrams of a rule in the given direction."""
    lhs, rhs = (canonical(parse(s)) for s in RULE_SIDES[rule])
    return (rhs, lhs) if inverse else (lhs, rhs)


class Redex(NamedTuple):
    position: Position
    result: Diagram  # canonical


def _connected_match(d: Diagram, wd, lhs: Diagram, lw, anchor: int) -> dict[int, int] | None:
    image = {0: anchor}
    changed = True
    while changed:
        changed = False
        for k in range(len(lhs.slices)):
            if k not in image:
                continue
            dk = image[k]
            for port, wire in enumerate(lw.outputs[k]):
                cons, cport = lw.consumer[wire]
                if cons < 0:
                    continue
                dcons, dport = wd.consumer[wd.outputs[dk][port]]
                if dcons < 0 or dport != cport or d.slices[dcons].gen != lhs.slices[cons].gen:
                    return None
                if cons in image:
                    if image[cons] != dcons:
                        return None
                else:
                    image[cons] = dcons
                    changed = True
            for port, wire in enumerate(lw.inputs[k]):
                prod, pport = lw.producer[wire]
                if prod < 0:
                    continue
                dprod, dport = wd.producer[wd.inputs[dk][port]]
                if dprod < 0 or dport != pport or d.slices[dprod].gen != lhs.slices[prod].gen:
                    return None
                if prod in image:
                    if image[prod] != dprod:
                        return None
                else:
                    image[prod] = dprod
                    changed = True
    if len(image) != len(lhs.slices) or len(set(image.values())) != len(image):
        return None
    return image


_GATHER_BUDGET = 256


def _gather(d: Diagram, wd, chosen: Sequence[int]) -> Iterator[tuple[list[Slice], int]]:
    """Reorderings that make the chosen slices consecutive, as (slices, start index).

    Slices between the redex pieces that feed it go above, those fed by it go
    below.  Independent ones (typically floating closed pieces) may go either
    way; both placements are tried per connected group, and so are both
    sides of every tied interchange move.
    """
    chosen_set = set(chosen)
    lo, hi = min(chosen), max(chosen)
    middle = [k for k in range(lo + 1, hi) if k not in chosen_set]
    ancestors: set[int] = set()
    for k in reversed(middle):
        if any((c := wd.consumer[w][0]) in chosen_set or c in ancestors for w in wd.outputs[k]):
            ancestors.add(k)
    descendants: set[int] = set()
    for k in middle:
        if k in ancestors:
            continue
        if any((p := wd.producer[w][0]) in chosen_set or p in descendants for w in wd.inputs[k]):
            descendants.add(k)
    free = [k for k in middle if k not in ancestors and k not in descendants]
    labels, _ = slice_components(d)
    groups = sorted({labels[k] for k in free})
    if len(groups) <= 3:
        choices = list(itertools.product((3, 1), repeat=len(groups)))
    else:
        choices = [(3,) * len(groups), (1,) * len(groups)]
    seen: set[tuple[Slice, ...]] = set()
    budget = _GATHER_BUDGET
    for choice in choices:
        side = dict(zip(groups, choice))
        rank = {}
        for k in range(len(d.slices)):
            if k < lo or k > hi:
                rank[k] = (0 if k < lo else 4, k)
            elif k in chosen_set:
                rank[k] = (2, k)
            elif k in ancestors:
                rank[k] = (1, k)
            elif k in descendants:
                rank[k] = (3, k)
            else:
                rank[k] = (side[labels[k]], k)
        stack = [tuple(enumerate(d.slices))]
        while stack and budget > 0:
            budget -= 1
            cur = stack.pop()
            j = next((j for j in range(lo, hi) if rank[cur[j][0]] > rank[cur[j + 1][0]]), None)
            if j is None:
                slices = tuple(x for _, x in cur)
                if slices not in seen:
                    seen.add(slices)
                    yield list(slices), next(i for i, (k, _) in enumerate(cur) if k in chosen_set)
                continue
            (ka, sa), (kb, sb) = cur[j], cur[j + 1]
            for nb, na in reversed(swap_options(sa, sb)):
                stack.append(cur[:j] + ((kb, nb), (ka, na)) + cur[j + 2:])


class _Match(NamedTuple):
    position: Position
    slices: list[Slice]  # the whole diagram, redex gathered at ``start``
    start: int
    shift: int


def _matches(d: Diagram, lhs: Diagram) -> Iterator[_Match]:
    wd = wiring(d)
    lw = wiring(lhs)
    n = len(lhs.slices)
    for anchor, s in enumerate(d.slices):
        if s.gen != lhs.slices[0].gen:
            continue
        image = _connected_match(d, wd, lhs, lw, anchor)
        if image is None:
            continue
        chosen = sorted(image.values())
        for slices, start in _gather(d, wd, chosen):
            gw = wiring(Diagram(d.dom, d.cod, tuple(slices)))
            level = gw.levels[start]
            ins = [i for i, w in enumerate(level) if start <= gw.consumer[w][0] < start + n]
            if len(ins) != lhs.dom or ins[-1] - ins[0] + 1 != lhs.dom:
                continue
            shift = ins[0]
            try:
                sub = Diagram(lhs.dom, lhs.cod, tuple(x.shifted(-shift) for x in slices[start:start + n]))
            except ValueError:
                continue
            if canonicalize(sub) != lhs:
                continue
            yield _Match(Position(chosen[0], shift), slices, start, shift)


def raw_redexes(d: Diagram, rule: RuleId) -> Iterator[tuple[Position, Diagram]]:
    """Every application of ``rule`` to ``d``, results not canonicalized or deduplicated."""
    if rule.rule is Rule.X:
        for k in range(len(d.slices) - 1):
            for a, b in swap_options(d.slices[k], d.slices[k + 1]):
                yield Position(k, a.offset), Diagram(d.dom, d.cod, d.slices[:k] + (a, b) + d.slices[k + 2:])
        return
    lhs, rhs = template(rule.rule, rule.inverse)
    if not lhs.slices:
        yield from _insertions(d, rhs)
        return
    n = len(lhs.slices)
    for m in _matches(d, lhs):
        new = (tuple(m.slices[:m.start]) + tuple(x.shifted(m.shift) for x in rhs.slices)
               + tuple(m.slices[m.start + n:]))
        yield m.position, Diagram(d.dom, d.cod, new)


def find_redexes(d: Diagram, rule: RuleId) -> list[Redex]:
    """All applications of ``rule`` to the canonical diagram ``d``, one per distinct result."""
    if rule.rule is Rule.X:
        return [Redex(p, canonicalize(d)) for p, _ in raw_redexes(d, rule)]
    found: dict[Position, Diagram] = {}
    results: set[Diagram] = set()
    for pos, raw in raw_redexes(d, rule):
        res = canonicalize(raw)
        if res in results:
            continue
        results.add(res)
        while pos in found:  # same anchor, different surroundings
            pos = pos._replace(variant=pos.variant + 1)
        found[pos] = res
    return [Redex(p, r) for p, r in sorted(found.items())]


def _insertions(d: Diagram, rhs: Diagram) -> Iterator[tuple[Position, Diagram]]:
    wd = wiring(d)
    for wire, (prod, _) in sorted(wd.producer.items()):
        cons = wd.consumer[wire][0]
        last = len(d.slices) if cons < 0 else cons
        # every level along the wire segment; they differ only around floating pieces
        for level in range(prod + 1, last + 1):
            p = wd.levels[level].index(wire)
            new = d.slices[:level] + tuple(x.shifted(p) for x in rhs.slices) + d.slices[level:]
            yield Position(level, p), Diagram(d.dom, d.cod, new)


def apply_rule(t: Term, rule: RuleId, position: Position | tuple[int, int]) -> Term:
    position = Position(*position)
    d = canonical(t)
    if rule.rule is Rule.X:
        k = position.slice
        if 0 <= k < len(d.slices) - 1:
            for a, b in swap_options(d.slices[k], d.slices[k + 1]):
                if a.offset == position.offset:
                    sl = d.slices[:k] + (a, b) + d.slices[k + 2:]
                    return to_term(Diagram(d.dom, d.cod, sl))
        raise NoRedex(rule, position)
    for r in find_redexes(d, rule):
        if r.position == position:
            return to_term(r.result)
    raise NoRedex(rule, position)


# ---------------------------------------------------------------- traces

@dataclass(frozen=True)
class RewriteStep:
    rule: RuleId
    position: Position
    before: Term
    after: Term

    def to_json(self) -> dict[str, Any]:
        return {
            "rule": self.rule.rule.value,
            "direction": "backward" if self.rule.inverse else "forward",
            "position": {"slice": self.position.slice, "offset": self.position.offset,
                         "variant": self.position.variant},
            "before": show(self.before),
            "after": show(self.after),
        }


@dataclass(frozen=True)
class RewriteTrace:
    source: Term
    target: Term
    steps: tuple[RewriteStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def depth(self) -> int:
        """Number of non-structural steps."""
        return sum(1 for s in self.steps if s.rule.rule is not Rule.X)

    def to_json(self) -> dict[str, Any]:
        return {
            "source": show(self.source),
            "target": show(self.target),
            "steps": [s.to_json() for s in self.steps],
        }


def identity_trace(t: Term) -> RewriteTrace:
    return RewriteTrace(t, t, ())


def validate_trace(u: RewriteTrace) -> None:
    """Raise ``InvalidTrace`` unless every step is a genuine rule instance and steps chain."""
    cur = u.source
    for i, step in enumerate(u.steps):
        if canonical(step.before) != canonical(cur):
            raise InvalidTrace(f"step {i}: before does not match the previous term")
        try:
            got = apply_rule(step.before, step.rule, step.position)
        except NoRedex as exc:
            raise InvalidTrace(f"step {i}: {exc}") from None
        if canonical(got) != canonical(step.after):
            raise InvalidTrace(f"step {i}: after is not the rewrite of before")
        cur = step.after
    if canonical(cur) != canonical(u.target):
        raise InvalidTrace("last step does not end at the target")


def compose_traces(u: RewriteTrace, v: RewriteTrace) -> RewriteTrace:
    if canonical(u.target) != canonical(v.source):
        raise SourceTargetMismatch("target of the first trace differs from source of the second")
    return RewriteTrace(u.source, v.target, u.steps + v.steps)


def locate(before: Term, rule: RuleId, after: Term) -> Position:
    """Find a position where ``rule`` rewrites ``before`` into ``after``."""
    want = canonical(after)
    d = canonical(before)
    if rule.rule is Rule.X:
        if d != want:
            raise NoRedex(rule, None)
        for r in find_redexes(d, rule):
            return r.position
        raise NoRedex(rule, None)
    for r in find_redexes(d, rule):
        if r.result == want:
            return r.position
    raise NoRedex(rule, None)


def inverse_trace(u: RewriteTrace) -> RewriteTrace:
    steps = []
    for s in reversed(u.steps):
        rid = s.rule.reversed
        if s.rule.rule is Rule.X:
            steps.append(RewriteStep(rid, locate(s.after, rid, s.before), s.after, s.before))
        else:
            steps.append(RewriteStep(rid, locate(s.after, rid, s.before), s.after, s.before))
    return RewriteTrace(u.target, u.source, tuple(steps))


def whisker(u: RewriteTrace, left: Term | None = None, right: Term | None = None) -> RewriteTrace:
    """Tensor every term of the trace with ``left`` and ``right``."""
    def wrap(t: Term) -> Term:
        if left is not None:
            t = Par(left, t)
        if right is not None:
            t = Par(t, right)
        return t

    steps = []
    for s in u.steps:
        b, a = wrap(s.before), wrap(s.after)
        if s.rule.rule is Rule.X and left is not None and not left.size():
            pos = Position(s.position.slice, s.position.offset + left.cod)
        else:
            pos = locate(b, s.rule, a)
        steps.append(RewriteStep(s.rule, pos, b, a))
    return RewriteTrace(wrap(u.source), wrap(u.target), tuple(steps))


def trace_to_json(u: RewriteTrace) -> dict[str, Any]:
    return u.to_json()


def trace_from_json(obj: dict[str, Any]) -> RewriteTrace:
    steps = []
    for s in obj["steps"]:
        rid = RuleId(Rule(s["rule"]), s.get("direction", "forward") == "backward")
        pos = Position(int(s["position"]["slice"]), int(s["position"]["offset"]), int(s["position"].get("variant", 0)))
        steps.append(RewriteStep(rid, pos, parse(s["before"]), parse(s["after"])))
    return RewriteTrace(parse(obj["source"]), parse(obj["target"]), tuple(steps))


# ---------------------------------------------------------------- search

class NotFound(LookupError):
    pass


def rule_ids(rules: Iterable[Rule]) -> list[RuleId]:
    out = []
    for r in rules:
        if r is Rule.X:
            continue
        out += [RuleId(r), RuleId(r, True)]
    return out


def neighbours(d: Diagram, rules: Sequence[RuleId], max_size: int | None = None) -> Iterator[tuple[RuleId, Position, Diagram]]:
    for rid in rules:
        lhs, rhs = template(rid.rule, rid.inverse)
        if max_size is not None and len(d.slices) - len(lhs.slices) + len(rhs.slices) > max_size:
            continue
        for r in find_redexes(d, rid):
            yield rid, r.position, r.result


def default_rules(t1: Term, t2: Term) -> tuple[Rule, ...]:
    if generator_set(t1, GeneratorSet.G2) and generator_set(t2, GeneratorSet.G2):
        return G2_RULES
    if generator_set(t1, GeneratorSet.G1) and generator_set(t2, GeneratorSet.G1):
        return G1_RULES
    raise WrongGeneratorSet("terms must both lie in G1 or both in G2")


def search(t1: Term, t2: Term, max_depth: int = 8, rules: Iterable[Rule] | None = None,
           max_size: int | None = None, size_slack: int = 3) -> RewriteTrace:
    """Breadth-first search for a rewrite trace from ``t1`` to ``t2``.

    The two frontiers grow alternately and meet in the middle; states are
    canonical diagrams, so interchange moves cost nothing.  Intermediate
    diagrams are limited to ``max_size`` generators (by default the larger
    endpoint plus ``size_slack``).  Raises ``NotFound`` once every path of
    length ``max_depth`` has been explored.
    """
    if (t1.dom, t1.cod) != (t2.dom, t2.cod):
        raise ArityMismatch((), t1.dom if t1.dom != t2.dom else t1.cod, t2.dom if t1.dom != t2.dom else t2.cod)
    rules = tuple(rules) if rules is not None else default_rules(t1, t2)
    rids = rule_ids(rules)
    d1, d2 = canonical(t1), canonical(t2)
    if max_size is None:
        max_size = max(len(d1.slices), len(d2.slices)) + size_slack
    path = _bidirectional(d1, d2, rids, max_depth, max_size)
    if path is None:
        raise NotFound(f"no trace within depth {max_depth}")
    return _build_trace(t1, t2, path)


def _bidirectional(d1: Diagram, d2: Diagram, rids, max_depth: int, max_size: int):
    if d1 == d2:
        return [d1]
    parents = [{d1: None}, {d2: None}]
    frontiers = [[d1], [d2]]
    depths = [0, 0]
    while depths[0] + depths[1] < max_depth:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        if not frontiers[side]:
            side = 1 - side
            if not frontiers[side]:
                return None
        nxt = []
        mine, theirs = parents[side], parents[1 - side]
        for cur in frontiers[side]:
            for rid, pos, res in neighbours(cur, rids, max_size):
                if res in mine:
                    continue
                mine[res] = cur
                if res in theirs:
                    return _join(parents, res, side)
                nxt.append(res)
        frontiers[side] = nxt
        depths[side] += 1
        if not nxt and not frontiers[1 - side]:
            return None
    return None


def _join(parents, meet: Diagram, side: int) -> list[Diagram]:
    def chain(p, node):
        out = []
        while node is not None:
            out.append(node)
            node = p[node]
        return out

    forward = chain(parents[0], meet)[::-1]
    backward = chain(parents[1], meet)
    return forward + backward[1:]


def _build_trace(t1: Term, t2: Term, path: list[Diagram]) -> RewriteTrace:
    rids_all = rule_ids(list(Rule))
    steps = []
    terms = [t1] + [to_term(d) for d in path[1:-1]] + [t2]
    for a, b, ta, tb in zip(path, path[1:], terms, terms[1:]):
        for rid in rids_all:
            if rid.rule is Rule.W:
                continue
            hit = next((r for r in find_redexes(a, rid) if r.result == b), None)
            if hit is not None:
                steps.append(RewriteStep(rid, hit.position, ta, tb))
                break
        else:
            raise InvalidTrace("internal: could not recover a search step")
    return RewriteTrace(t1, t2, tuple(steps))


# ---------------------------------------------------------------- translations

THETA_COMULT = "g*id(1) ; id(1)*m"
THETA_BAR_ZAG = "u ; d"


def _substitute(t: Term, gen: Generator, image: Term) -> Term:
    if isinstance(t, Gen):
        return image if t.gen is gen else t
    if isinstance(t, Id):
        return t
    if isinstance(t, Seq):
        return Seq(_substitute(t.first, gen, image), _substitute(t.then, gen, image))
    if isinstance(t, Par):
        return Par(_substitute(t.left, gen, image), _substitute(t.right, gen, image))
    raise TypeError(t)


def translate(t: Term, direction: str) -> Term:
    """``"G1->G2"`` replaces comultiplication; ``"G2->G1"`` replaces the zag."""
    direction = direction.replace("→", "->").upper()
    if direction == "G1->G2":
        if not generator_set(t, GeneratorSet.G1):
            raise WrongGeneratorSet("term is not over G1")
        return _substitute(t, Generator.COMULT, parse(THETA_COMULT))
    if direction == "G2->G1":
        if not generator_set(t, GeneratorSet.G2):
            raise WrongGeneratorSet("term is not over G2")
        return _substitute(t, Generator.ZAG, parse(THETA_BAR_ZAG))
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------- the w composite

W_SOURCE = "id(1)*g ; m*id(1)"
W_TARGET = "g*id(1) ; id(1)*m"
W_AFTER_INSERT = "id(1)*g ; m*id(1) ; g*id(2) ; id(1)*m*id(1) ; id(1)*e*id(1)"


def _swap_term(t: Term) -> tuple[Position, Term]:
    d = canonical(t)
    for k in range(len(d.slices) - 1):
        for a, b in swap_options(d.slices[k], d.slices[k + 1]):
            return Position(k, a.offset), to_term(Diagram(d.dom, d.cod, d.slices[:k] + (a, b) + d.slices[k + 2:]))
    raise NoRedex(RuleId(Rule.X), None)


@lru_cache(maxsize=None)
def w_composite() -> RewriteTrace:
    """The derived cell w spelled out as z^-1, interchange, a, interchange, n."""
    source, target = parse(W_SOURCE), parse(W_TARGET)
    steps = []
    z_inv = RuleId(Rule.Z, True)
    t1 = parse(W_AFTER_INSERT)
    steps.append(RewriteStep(z_inv, locate(source, z_inv, t1), source, t1))
    pos, t2 = _swap_term(t1)
    steps.append(RewriteStep(RuleId(Rule.X), pos, t1, t2))
    a = RuleId(Rule.A)
    (hit,) = find_redexes(canonical(t2), a)
    t3 = to_term(hit.result)
    steps.append(RewriteStep(a, hit.position, t2, t3))
    pos, t4 = _swap_term(t3)
    steps.append(RewriteStep(RuleId(Rule.X), pos, t3, t4))
    n = RuleId(Rule.N)
    steps.append(RewriteStep(n, locate(t4, n, target), t4, target))
    return RewriteTrace(source, target, tuple(steps))


def expand(u: RewriteTrace) -> RewriteTrace:
    """Replace every w step by its defining composite, whiskered into place."""
    out = identity_trace(u.source)
    for s in u.steps:
        if s.rule.rule is not Rule.W:
            out = RewriteTrace(out.source, s.after, out.steps + (s,))
            continue
        piece = _expand_w_step(s)
        out = RewriteTrace(out.source, piece.target, out.steps + piece.steps)
    return RewriteTrace(u.source, u.target, out.steps)


def _expand_w_step(s: RewriteStep) -> RewriteTrace:
    core = w_composite()
    if s.rule.inverse:
        core = inverse_trace(core)
    lhs, rhs = template(Rule.W, s.rule.inverse)
    d = canonical(s.before)
    want = canonical(s.after)
    n = len(lhs.slices)
    for m in _matches(d, lhs):
        new = tuple(m.slices[:m.start]) + tuple(x.shifted(m.shift) for x in rhs.slices) + tuple(m.slices[m.start + n:])
        if canonicalize(Diagram(d.dom, d.cod, new)) != want:
            continue
        width = d.dom + sum(x.gen.n_out - x.gen.n_in for x in m.slices[:m.start])
        above = to_term(Diagram(d.dom, width, tuple(m.slices[:m.start])))
        below = to_term(Diagram(width - lhs.dom + lhs.cod, d.cod, tuple(m.slices[m.start + n:])))
        right = width - m.shift - lhs.dom
        steps = []
        for st in core.steps:
            b = Seq(Seq(above, _pad(st.before, m.shift, right)), below)
            a = Seq(Seq(above, _pad(st.after, m.shift, right)), below)
            steps.append(RewriteStep(st.rule, locate(b, st.rule, a), b, a))
        return RewriteTrace(s.before, s.after, tuple(steps))
    raise NoRedex(s.rule, s.position)


def _pad(t: Term, left: int, right: int) -> Term:
    if left:
        t = Par(Id(left), t)
    if right:
        t = Par(t, Id(right))
    return t
