"""Registry of coherence axioms and their check in the trivial backend.

Each axiom is a small graph of string diagrams whose edges are generating
2-cells: a rewrite rule applied once (in either direction) or an
interchange move.  In the trivial backend every 2-cell is an identity, so
an axiom holds when every edge is a genuine 2-cell and every seam joins
diagrams with the same evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .diagram import canonical
from .dsl import parse
from .frobenius import FrobAlgebra, Report
from .rewrite import Rule, RuleId, find_redexes
from .terms import Generator, Term
from .tqft import Backend, TensorMap, backend_for, eval_diagram

INTERCHANGE = "x"


class UnknownAxiom(KeyError):
    pass


@dataclass(frozen=True)
class Axiom:
    name: str
    group: str
    vertices: tuple[tuple[str, str], ...]  # (label, term in the DSL)
    edges: tuple[tuple[str, str, str], ...]  # (source, cell, target)

    def term(self, label: str) -> Term:
        return parse(dict(self.vertices)[label])

    def source(self) -> str:
        targets = {t for _, _, t in self.edges}
        return next(v for v, _ in self.vertices if v not in targets)

    def sink(self) -> str:
        sources = {s for s, _, _ in self.edges}
        return next(v for v, _ in self.vertices if v not in sources)


def _ax(name, group, vertices, edges) -> Axiom:
    edges = tuple(tuple(e.split()) for e in edges)
    return Axiom(name, group, tuple(vertices.items()), edges)


_HEX = ("TL {} TM", "TL {} BL", "TM {} TR", "TR {} BR", "BL {} BM", "BM {} BR")
_SQUARE = ("TL x TR", "TL {} BL", "BL {} BR", "TR {} BR")


def _hexagon(cells: str) -> tuple[str, ...]:
    return tuple(f.format(c) for f, c in zip(_HEX, cells.split()))


def _square(first: str, second: str) -> tuple[str, ...]:
    return tuple(f.format(c) for f, c in zip(_SQUARE, ("", first, second, second)))


_FROBENIUS = "frobenius-object"

AXIOMS: tuple[Axiom, ...] = (
    _ax("assoc-pentagon", _FROBENIUS, {
        "TL": "id(2)*m ; id(1)*m ; m", "TM": "id(2)*m ; m*id(1) ; m", "TR": "m*id(2) ; id(1)*m ; m",
        "BL": "id(1)*m*id(1) ; id(1)*m ; m", "BM": "id(1)*m*id(1) ; m*id(1) ; m",
        "BR": "m*id(2) ; m*id(1) ; m"}, _hexagon("a a x a a a")),
    _ax("coassoc-pentagon", _FROBENIUS, {
        "TL": "d ; id(1)*d ; id(2)*d", "TM": "d ; d*id(1) ; id(2)*d", "TR": "d ; id(1)*d ; d*id(2)",
        "BL": "d ; id(1)*d ; id(1)*d*id(1)", "BM": "d ; d*id(1) ; id(1)*d*id(1)",
        "BR": "d ; d*id(1) ; d*id(2)"}, _hexagon("d d x d d d")),
    _ax("assoc-frobenius-right", _FROBENIUS, {
        "TL": "id(2)*d ; id(1)*m*id(1) ; m*id(1)", "TM": "id(2)*d ; m*id(2) ; m*id(1)",
        "TR": "m*id(1) ; id(1)*d ; m*id(1)", "BL": "id(1)*m ; id(1)*d ; m*id(1)",
        "BM": "id(1)*m ; m ; d", "BR": "m*id(1) ; m ; d"}, _hexagon("a b x b b a")),
    _ax("coassoc-frobenius-left", _FROBENIUS, {
        "TL": "d*id(1) ; id(1)*d*id(1) ; id(2)*m", "TM": "d*id(1) ; d*id(2) ; id(2)*m",
        "TR": "d*id(1) ; id(1)*m ; d*id(1)", "BL": "d*id(1) ; id(1)*m ; id(1)*d",
        "BM": "m ; d ; id(1)*d", "BR": "m ; d ; d*id(1)"}, _hexagon("d c x c c d")),
    _ax("coassoc-frobenius-right", _FROBENIUS, {
        "TL": "id(1)*d ; id(2)*d ; m*id(2)", "TM": "id(1)*d ; m*id(1) ; id(1)*d",
        "TR": "m ; d ; id(1)*d", "BL": "id(1)*d ; id(1)*d*id(1) ; m*id(2)",
        "BM": "id(1)*d ; m*id(1) ; d*id(1)", "BR": "m ; d ; d*id(1)"},
        ("TL x TM", "TL d BL", "TM b TR", "TR d BR", "BL b BM", "BM b BR")),
    _ax("assoc-frobenius-left", _FROBENIUS, {
        "TL": "d*id(2) ; id(2)*m ; id(1)*m", "TM": "id(1)*m ; d*id(1) ; id(1)*m",
        "TR": "id(1)*m ; m ; d", "BL": "d*id(2) ; id(1)*m*id(1) ; id(1)*m",
        "BM": "m*id(1) ; d*id(1) ; id(1)*m", "BR": "m*id(1) ; m ; d"},
        ("TL x TM", "TL a BL", "TM c TR", "TR a BR", "BL c BM", "BM c BR")),
    _ax("frobenius-mixed-mult", _FROBENIUS, {
        "TL": "id(1)*d*id(1) ; id(2)*m ; m*id(1)", "TM": "id(1)*d*id(1) ; m*id(2) ; id(1)*m",
        "TR": "m*id(1) ; d*id(1) ; id(1)*m", "BL": "id(1)*m ; id(1)*d ; m*id(1)",
        "BM": "id(1)*m ; m ; d", "BR": "m*id(1) ; m ; d"},
        ("TL x TM", "TL c BL", "TM b TR", "TR c BR", "BL b BM", "BM a BR")),
    _ax("frobenius-mixed-comult", _FROBENIUS, {
        "TL": "d*id(1) ; id(2)*d ; id(1)*m*id(1)", "TM": "id(1)*d ; d*id(2) ; id(1)*m*id(1)",
        "TR": "id(1)*d ; m*id(1) ; d*id(1)", "BL": "d*id(1) ; id(1)*m ; id(1)*d",
        "BM": "m ; d ; id(1)*d", "BR": "m ; d ; d*id(1)"},
        ("TL x TM", "TL b BL", "TM c TR", "TR b BR", "BL c BM", "BM d BR")),
    # BR is forced to be d by the boundary (one wire in, two out) and both unit edges
    _ax("unit-left-frobenius", _FROBENIUS, {
        "TL": "u*id(1) ; id(1)*d ; m*id(1)", "TR": "d ; u*id(2) ; m*id(1)",
        "BL": "u*id(1) ; m ; d", "BR": "d"}, _square("b", "l")),
    _ax("counit-left-frobenius", _FROBENIUS, {
        "TL": "d*id(1) ; id(1)*m ; e*id(1)", "TR": "d*id(1) ; e*id(2) ; m",
        "BL": "m ; d ; e*id(1)", "BR": "m"}, _square("c", "q")),
    _ax("unit-right-frobenius", _FROBENIUS, {
        "TL": "id(1)*u ; d*id(1) ; id(1)*m", "TR": "d ; id(2)*u ; id(1)*m",
        "BL": "id(1)*u ; m ; d", "BR": "d"}, _square("c", "r")),
    _ax("counit-right-frobenius", _FROBENIUS, {
        "TL": "id(1)*d ; m*id(1) ; id(1)*e", "TR": "id(1)*d ; id(2)*e ; m",
        "BL": "m ; d ; id(1)*e", "BR": "m"}, _square("b", "p")),
    _ax("unit-right-assoc", _FROBENIUS, {
        "TL": "id(2)*u ; m*id(1) ; m", "TR": "m ; id(1)*u ; m",
        "BL": "id(2)*u ; id(1)*m ; m", "BR": "m"}, _square("a", "r")),
    # left vertices ordered so that the a-edge and the l-edges are single rewrites
    _ax("unit-left-assoc", _FROBENIUS, {
        "TL": "u*id(2) ; id(1)*m ; m", "TR": "m ; u*id(1) ; m",
        "BL": "u*id(2) ; m*id(1) ; m", "BR": "m"}, _square("a", "l")),
    _ax("counit-left-coassoc", _FROBENIUS, {
        "TL": "d ; id(1)*d ; e*id(2)", "TR": "d ; e*id(1) ; d",
        "BL": "d ; d*id(1) ; e*id(2)", "BR": "d"}, _square("d", "q")),
    # left vertices ordered so that the d-edge and the p-edges are single rewrites
    _ax("counit-right-coassoc", _FROBENIUS, {
        "TL": "d ; d*id(1) ; id(2)*e", "TR": "d ; id(1)*e ; d",
        "BL": "d ; id(1)*d ; id(2)*e", "BR": "d"}, _square("d", "p")),
    _ax("unit-middle-triangle", _FROBENIUS, {
        "TL": "id(1)*u*id(1) ; m*id(1) ; m", "TR": "id(1)*u*id(1) ; id(1)*m ; m", "B": "m"},
        ("TL a TR", "TL r B", "TR l B")),
    _ax("counit-middle-triangle", _FROBENIUS, {
        "TL": "d ; d*id(1) ; id(1)*e*id(1)", "TR": "d ; id(1)*d ; id(1)*e*id(1)", "B": "d"},
        ("TL d TR", "TL p B", "TR q B")),
    # the top edge is an interchange, not coassociativity
    _ax("unit-unit-triangle", _FROBENIUS, {
        "TL": "u ; id(1)*u ; m", "TR": "u ; u*id(1) ; m", "B": "u"},
        ("TL x TR", "TL r B", "TR l B")),
    # an interchange and the two counit laws
    _ax("counit-counit-triangle", _FROBENIUS, {
        "TL": "d ; id(1)*e ; e", "TR": "d ; e*id(1) ; e", "B": "e"},
        ("TL x TR", "TL p B", "TR q B")),
    _ax("zigzag-triangle", "copairing", {
        "TL": "g", "TR": "g ; id(2)*g ; id(1)*m*id(1) ; id(1)*e*id(1)",
        "BR": "g ; g*id(2) ; id(1)*m*id(1) ; id(1)*e*id(1)"},
        ("TL n TR", "TR x BR", "TL z BR")),
    _ax("copairing-slide-octagon", "copairing", {
        "LT": "id(2)*g ; id(1)*m*id(1) ; m*id(1)", "LM": "id(2)*g ; m*id(2) ; m*id(1)",
        "LB": "m ; id(1)*g ; m*id(1)", "MT": "id(1)*g*id(1) ; id(2)*m ; m*id(1)",
        "MB": "m ; g*id(1) ; id(1)*m", "RT": "id(1)*g*id(1) ; m*id(2) ; id(1)*m",
        "RM": "g*id(2) ; id(1)*m*id(1) ; id(1)*m", "RB": "g*id(2) ; id(2)*m ; id(1)*m"},
        ("LT a LM", "LM x LB", "LB w MB", "MB x RB", "RB a RM",
         "LT w MT", "MT x RT", "RT w RM")),
    _ax("pseudomonoid-pentagon", "pseudomonoid", {
        "TL": "id(2)*m ; id(1)*m ; m", "TM": "id(2)*m ; m*id(1) ; m", "TR": "m*id(2) ; id(1)*m ; m",
        "BL": "id(1)*m*id(1) ; id(1)*m ; m", "BM": "id(1)*m*id(1) ; m*id(1) ; m",
        "BR": "m*id(2) ; m*id(1) ; m"}, _hexagon("a a x a a a")),
    _ax("pseudomonoid-triangle", "pseudomonoid", {
        "TL": "id(1)*u*id(1) ; m*id(1) ; m", "TR": "id(1)*u*id(1) ; id(1)*m ; m", "B": "m"},
        ("TL a TR", "TL r B", "TR l B")),
    _ax("form-zigzag-triangle", "frobenius-pseudomonoid", {
        "TL": "m ; e", "TR": "id(1)*g*id(1) ; m*id(2) ; e*id(2) ; m ; e",
        "BR": "id(1)*g*id(1) ; id(2)*m ; id(2)*e ; m ; e"},
        ("TL n TR", "TR x BR", "TL z BR")),
    _ax("copairing-zigzag-triangle", "frobenius-pseudomonoid", {
        "TL": "g", "TR": "g ; id(2)*g ; id(1)*m*id(1) ; id(1)*e*id(1)",
        "BR": "g ; g*id(2) ; id(1)*m*id(1) ; id(1)*e*id(1)"},
        ("TL n TR", "TR x BR", "TL z BR")),
)

_BY_NAME = {a.name: a for a in AXIOMS}


def axiom_names() -> list[str]:
    return [a.name for a in AXIOMS]


def get_axiom(name: str) -> Axiom:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownAxiom(name) from None


@lru_cache(maxsize=None)
def cell_ok(src: str, cell: str, tgt: str) -> bool:
    """Is there a single generating 2-cell between the two terms?"""
    a, b = canonical(parse(src)), canonical(parse(tgt))
    if cell == INTERCHANGE:
        return a == b
    rule = Rule(cell)
    return any(r.result == b for r in find_redexes(a, RuleId(rule))) or \
        any(r.result == a for r in find_redexes(b, RuleId(rule)))


def _backend(A: FrobAlgebra | Backend) -> Backend:
    return A if isinstance(A, Backend) else backend_for(A)


def verify_coherence(axiom: str | Axiom, A: FrobAlgebra | Backend) -> Report:
    """Check one axiom: one row per edge (seam) and one for the outer boundary."""
    ax = axiom if isinstance(axiom, Axiom) else get_axiom(axiom)
    backend = _backend(A)
    terms = dict(ax.vertices)
    values: dict[str, TensorMap] = {v: eval_diagram(canonical(parse(s)), backend) for v, s in terms.items()}
    rep = Report()
    for s, cell, t in ax.edges:
        shape = cell_ok(terms[s], cell, terms[t])
        same = values[s] == values[t]
        detail = "" if shape and same else ("not a single 2-cell" if not shape else "evaluations differ")
        rep.add(f"{s} =[{cell}]=> {t}", shape and same, detail)
    src, snk = ax.source(), ax.sink()
    rep.add(f"boundary {src} -> {snk}", values[src] == values[snk])
    return rep


def coherence_table(A: FrobAlgebra | Backend) -> list[tuple[str, bool]]:
    """Every registered axiom in fixed order with its verdict."""
    backend = _backend(A)
    return [(a.name, verify_coherence(a, backend).ok) for a in AXIOMS]


# ---------------------------------------------------------------- mutations

def _bump(m, delta: Fraction = Fraction(1)):
    rows = [list(r) for r in m]
    rows[-1][-1] += delta
    return tuple(tuple(r) for r in rows)


def mutations(A: FrobAlgebra | Backend) -> Iterator[tuple[str, Backend]]:
    """Backends with exactly one structure map corrupted."""
    backend = _backend(A)
    for g in Generator:
        if g not in backend.maps:
            continue
        m = backend.maps[g]
        yield f"{g.value}:scaled", backend.replace(g, tuple(tuple(2 * x for x in r) for r in m))
        yield f"{g.value}:bumped", backend.replace(g, _bump(m))
