"""Term language over the Frobenius generators.

Terms are unreduced trees: ``Seq(first, then)`` runs ``first`` and feeds its
outputs into ``then`` (diagrammatic order), ``Par(left, right)`` places two
terms side by side.  No strictness is applied here; equality modulo the
monoidal structure is decided on diagrams.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterator


class Generator(enum.Enum):
    MULT = "m"
    UNIT = "u"
    COMULT = "d"
    COUNIT = "e"
    ZAG = "g"

    @property
    def arity(self) -> tuple[int, int]:
        return _ARITY[self]

    @property
    def n_in(self) -> int:
        return _ARITY[self][0]

    @property
    def n_out(self) -> int:
        return _ARITY[self][1]

    @property
    def rank(self) -> int:
        return _RANK[self]

    @classmethod
    def from_letter(cls, letter: str) -> "Generator":
        try:
            return cls(letter)
        except ValueError:
            raise ValueError(f"unknown generator {letter!r}") from None


_ARITY = {
    Generator.MULT: (2, 1),
    Generator.UNIT: (0, 1),
    Generator.COMULT: (1, 2),
    Generator.COUNIT: (1, 0),
    Generator.ZAG: (0, 2),
}
_RANK = {g: i for i, g in enumerate(Generator)}


class GeneratorSet(enum.Enum):
    G1 = "G1"
    G2 = "G2"

    @property
    def members(self) -> frozenset[Generator]:
        if self is GeneratorSet.G1:
            return frozenset({Generator.MULT, Generator.UNIT, Generator.COMULT, Generator.COUNIT})
        return frozenset({Generator.MULT, Generator.UNIT, Generator.ZAG, Generator.COUNIT})


class ArityMismatch(ValueError):
    """A sequential composite whose interface widths disagree.

    ``path`` is the route from the root to the offending ``Seq`` node, written
    as a tuple of child names (``"first"``, ``"then"``, ``"left"``, ``"right"``).
    """

    def __init__(self, path: tuple[str, ...], expected: int, found: int):
        self.path = path
        self.expected = expected
        self.found = found
        where = "/".join(path) or "<root>"
        super().__init__(f"arity mismatch at {where}: expected {expected} wires, found {found}")


class Term:
    """Base class of the four term node types."""

    __slots__ = ()
    dom: int
    cod: int

    def __rshift__(self, other: "Term") -> "Seq":
        return Seq(self, other)

    def __matmul__(self, other: "Term") -> "Par":
        return Par(self, other)

    def generators(self) -> Iterator[Generator]:
        raise NotImplementedError

    def size(self) -> int:
        return sum(1 for _ in self.generators())


@dataclass(frozen=True)
class Gen(Term):
    gen: Generator
    dom: int = field(init=False, compare=False, repr=False)
    cod: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dom", self.gen.n_in)
        object.__setattr__(self, "cod", self.gen.n_out)

    def generators(self) -> Iterator[Generator]:
        yield self.gen


@dataclass(frozen=True)
class Id(Term):
    width: int
    dom: int = field(init=False, compare=False, repr=False)
    cod: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValueError("identity width must be nonnegative")
        object.__setattr__(self, "dom", self.width)
        object.__setattr__(self, "cod", self.width)

    def generators(self) -> Iterator[Generator]:
        return iter(())


@dataclass(frozen=True)
class Seq(Term):
    first: Term
    then: Term
    dom: int = field(init=False, compare=False, repr=False)
    cod: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dom", self.first.dom)
        object.__setattr__(self, "cod", self.then.cod)

    def generators(self) -> Iterator[Generator]:
        yield from self.first.generators()
        yield from self.then.generators()


@dataclass(frozen=True)
class Par(Term):
    left: Term
    right: Term
    dom: int = field(init=False, compare=False, repr=False)
    cod: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dom", self.left.dom + self.right.dom)
        object.__setattr__(self, "cod", self.left.cod + self.right.cod)

    def generators(self) -> Iterator[Generator]:
        yield from self.left.generators()
        yield from self.right.generators()


M = Gen(Generator.MULT)
U = Gen(Generator.UNIT)
D = Gen(Generator.COMULT)
E = Gen(Generator.COUNIT)
G = Gen(Generator.ZAG)


def typecheck(t: Term) -> tuple[int, int]:
    """Return ``(dom, cod)`` or raise ``ArityMismatch`` at the first bad ``Seq``."""
    # explicit stack so deep terms do not hit the recursion limit
    stack: list[tuple[Term, tuple[str, ...]]] = [(t, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, Seq):
            if node.first.cod != node.then.dom:
                raise ArityMismatch(path, node.first.cod, node.then.dom)
            stack.append((node.then, path + ("then",)))
            stack.append((node.first, path + ("first",)))
        elif isinstance(node, Par):
            stack.append((node.right, path + ("right",)))
            stack.append((node.left, path + ("left",)))
    return t.dom, t.cod


def generator_set(t: Term, gset: GeneratorSet | str) -> bool:
    members = GeneratorSet(gset).members
    return all(g in members for g in t.generators())


def seq(*terms: Term) -> Term:
    """Sequential composite that drops identity factors."""
    kept = [t for t in terms if not isinstance(t, Id)]
    if not kept:
        if not terms:
            raise ValueError("seq() needs at least one term")
        return terms[0]
    out = kept[0]
    for t in kept[1:]:
        out = Seq(out, t)
    return out


def par(*terms: Term) -> Term:
    """Tensor product that fuses neighbouring identities and drops Id(0)."""
    kept: list[Term] = []
    for t in terms:
        if isinstance(t, Id):
            if t.width == 0:
                continue
            if kept and isinstance(kept[-1], Id):
                kept[-1] = Id(kept[-1].width + t.width)
                continue
        kept.append(t)
    if not kept:
        return Id(0)
    out = kept[0]
    for t in kept[1:]:
        out = Par(out, t)
    return out


def whisker_term(t: Term, left: int, right: int) -> Term:
    return par(Id(left), t, Id(right))


def term_to_json(t: Term) -> Any:
    if isinstance(t, Gen):
        return {"gen": t.gen.value}
    if isinstance(t, Id):
        return {"id": t.width}
    if isinstance(t, Seq):
        return {"seq": [term_to_json(t.first), term_to_json(t.then)]}
    if isinstance(t, Par):
        return {"par": [term_to_json(t.left), term_to_json(t.right)]}
    raise TypeError(f"not a term: {t!r}")


def term_from_json(obj: Any) -> Term:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"malformed term object: {obj!r}")
    (key, val), = obj.items()
    if key == "gen":
        return Gen(Generator.from_letter(val))
    if key == "id":
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise ValueError(f"malformed identity width: {val!r}")
        return Id(val)
    if key in ("seq", "par"):
        if not isinstance(val, list) or len(val) != 2:
            raise ValueError(f"{key} expects a list of two terms")
        a, b = term_from_json(val[0]), term_from_json(val[1])
        return Seq(a, b) if key == "seq" else Par(a, b)
    raise ValueError(f"unknown term tag {key!r}")
