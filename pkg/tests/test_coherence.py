import pytest

from frobtangle.coherence import (AXIOMS, UnknownAxiom, axiom_names, cell_ok, coherence_table, get_axiom,
                                  mutations, verify_coherence)
from frobtangle.diagram import canonical
from frobtangle.dsl import parse
from frobtangle.frobenius import BUILTIN_NAMES, builtin
from frobtangle.terms import Generator
from frobtangle.tqft import backend_for, eval_diagram


def test_registry_shape():
    names = axiom_names()
    assert len(names) == 26 and len(set(names)) == 26
    assert names[0] == "assoc-pentagon"
    groups = [a.group for a in AXIOMS]
    assert groups.count("frobenius-object") == 20
    assert groups.count("copairing") == 2


def test_every_vertex_is_well_typed():
    for ax in AXIOMS:
        types = {(ax.term(v).dom, ax.term(v).cod) for v, _ in ax.vertices}
        assert len(types) == 1, ax.name
        assert ax.source() != ax.sink()


def test_unknown_axiom():
    with pytest.raises(UnknownAxiom):
        get_axiom("no-such-axiom")
    with pytest.raises(KeyError):
        verify_coherence("no-such-axiom", builtin("kx2"))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_all_axioms_pass(name):
    table = coherence_table(builtin(name))
    assert [n for n, _ in table] == axiom_names()
    assert all(ok for _, ok in table)


def test_frobenius_object_group_on_kx2():
    A = builtin("kx2")
    for ax in AXIOMS:
        if ax.group == "frobenius-object":
            rep = verify_coherence(ax, A)
            assert rep.ok, rep


def test_copairing_group_on_m2():
    A = builtin("m2-trace")
    for ax in AXIOMS:
        if ax.group == "copairing":
            assert verify_coherence(ax, A).ok


def test_report_rows():
    ax = get_axiom("assoc-pentagon")
    rep = verify_coherence(ax, builtin("z2"))
    assert len(rep.checks) == len(ax.edges) + 1
    assert rep.checks[-1].name.startswith("boundary ")


def test_cell_ok():
    assert cell_ok("m * id(1) ; m", "a", "id(1) * m ; m")
    assert not cell_ok("m * id(1) ; m", "b", "id(1) * m ; m")
    assert not cell_ok("m * e", "x", "e * m")
    assert cell_ok("m * e", "x", "id(2) * e ; m")


def test_non_coassociative_comult_breaks_pentagon():
    backend = backend_for(builtin("kx2"))
    bad = dict(mutations(backend))["d:bumped"]
    left = eval_diagram(canonical(parse("d ; d * id(1)")), bad)
    right = eval_diagram(canonical(parse("d ; id(1) * d")), bad)
    assert left != right
    assert not verify_coherence("coassoc-pentagon", bad).ok


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_every_mutation_is_caught(name):
    muts = list(mutations(builtin(name)))
    assert len(muts) == 2 * len(Generator)
    for label, backend in muts:
        assert not all(ok for _, ok in coherence_table(backend)), label
