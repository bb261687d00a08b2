import pytest
from hypothesis import given, strategies as st

from frobtangle.dsl import TermSyntaxError, parse, show
from frobtangle.terms import (D, E, G, ArityMismatch, Gen, Generator, GeneratorSet, Id, M, Par, Seq, U,
                              generator_set, term_from_json, term_to_json, typecheck)


def test_arities():
    assert typecheck(M) == (2, 1)
    assert typecheck(Seq(D, M)) == (1, 1)
    assert typecheck(Par(U, Id(2))) == (2, 3)


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        typecheck(Seq(M, M))


def test_generator_sets():
    assert not generator_set(G, GeneratorSet.G1)
    assert generator_set(D, GeneratorSet.G1)
    assert generator_set(Seq(Par(G, Id(1)), Par(Id(1), M)), "G2")


def test_parse_examples():
    assert parse("d ; m") == Seq(D, M)
    assert parse("g * id(1) ; id(1) * m") == Seq(Par(G, Id(1)), Par(Id(1), M))
    assert parse("  (m)*e\n;e ") == Seq(Par(M, E), E)


def test_parse_error_location():
    with pytest.raises(TermSyntaxError) as info:
        parse("m ;; d")
    assert (info.value.line, info.value.column) == (1, 4)


@pytest.mark.parametrize("src", ["", "m ;", "id(", "id()", "x", "(m", "m)", "m ** d"])
def test_parse_rejects(src):
    with pytest.raises(TermSyntaxError):
        parse(src)


def _terms():
    leaves = st.sampled_from([M, U, D, E, G]) | st.integers(0, 3).map(Id)
    return st.recursive(leaves, lambda ch: st.builds(Seq, ch, ch) | st.builds(Par, ch, ch), max_leaves=8)


@given(_terms())
def test_print_parse_round_trip(t):
    assert parse(show(t)) == t
    assert parse(show(parse(show(t)))) == parse(show(t))


@given(_terms())
def test_json_round_trip(t):
    assert term_from_json(term_to_json(t)) == t


def test_generator_letters():
    assert [g.value for g in Generator] == ["m", "u", "d", "e", "g"]
    assert Gen(Generator.from_letter("g")) == G
    with pytest.raises(ValueError):
        Generator.from_letter("z")
