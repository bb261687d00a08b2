import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from frobtangle.diagram import (Diagram, Slice, canonical, canonicalize, diagram_from_json, diagram_to_json,
                                orbit, structural_eq, to_diagram, to_term)
from frobtangle.dsl import parse
from frobtangle.terms import D, E, Generator, Id, M, Par, Seq, U

from oracles import GENERATORS, orbit_max, orbit_min, random_diagram

MUL, UNIT, COUNIT = Generator.MULT, Generator.UNIT, Generator.COUNIT


def test_layering_examples():
    assert to_diagram(Par(U, U)).slices == (Slice(UNIT, 0), Slice(UNIT, 1))
    assert to_diagram(Id(3)) == Diagram(3, 3, ())
    d = to_diagram(Seq(Par(Id(1), M), M))
    assert (d.dom, d.cod, d.slices) == (3, 1, (Slice(MUL, 1), Slice(MUL, 0)))


def test_canonical_fixpoint():
    d = Diagram(5, 3, (Slice(MUL, 0), Slice(MUL, 2)))
    assert canonicalize(d) == d


def test_unit_counit_orders_agree():
    a = to_diagram(parse("u * e ; id(1)"))
    b = to_diagram(parse("(id(1) ; e) ; u"))
    c = to_diagram(parse("e ; u"))
    assert canonicalize(a) == canonicalize(b) == canonicalize(c)


def test_structural_eq_examples():
    f = parse("d ; m * id(0)")
    assert structural_eq(Seq(f, Id(1)), f)
    assert structural_eq(parse("m * id(1) ; id(1) * e"), parse("id(2) * e ; m"))
    assert not structural_eq(M, D)


def _all_diagrams(max_n, doms=(0, 1, 2)):
    for dom in doms:
        frontier = [Diagram(dom, dom, ())]
        for _ in range(max_n):
            nxt = []
            for d in frontier:
                for g in GENERATORS:
                    for off in range(d.cod - g.n_in + 1):
                        nxt.append(Diagram(d.dom, d.cod - g.n_in + g.n_out, d.slices + (Slice(g, off),)))
            yield from nxt
            frontier = nxt


def test_exhaustive_small_confluence():
    count = 0
    for d in _all_diagrams(3):
        canon = canonicalize(d).slices
        assert canon == orbit_min(d)
        for other in orbit(d):
            assert canonicalize(Diagram(d.dom, d.cod, other)).slices == canon
        count += 1
    assert count > 1000


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 7), st.integers(0, 2))
def test_canonical_matches_orbit_oracle(seed, n, dom):
    d = random_diagram(random.Random(seed), n, dom)
    assert canonicalize(d).slices == orbit_min(d)
    assert canonicalize(Diagram(d.dom, d.cod, orbit_max(d))).slices == orbit_min(d)


def test_idempotent_on_random_diagrams():
    rng = random.Random(2024)
    for _ in range(1000):
        d = random_diagram(rng, rng.randint(0, 12), rng.randint(0, 2), cap=4)
        c = canonicalize(d)
        assert canonicalize(c) == c
        assert to_diagram(to_term(c)) == c


@pytest.mark.parametrize("src", ["id(2)", "d ; m", "g * u ; id(1) * m ; e * id(1)"])
def test_json_round_trip(src):
    d = canonical(parse(src))
    assert diagram_from_json(diagram_to_json(d)) == d


def test_bad_slice_rejected():
    with pytest.raises(ValueError):
        Diagram(1, 0, (Slice(MUL, 0),))
