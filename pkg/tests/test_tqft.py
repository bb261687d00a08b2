import random
from fractions import Fraction

import pytest

from frobtangle.diagram import to_term
from frobtangle.dsl import parse
from frobtangle.frobenius import BUILTIN_NAMES, builtin, builtins
from frobtangle.terms import ArityMismatch, Id
from frobtangle.tqft import backend_for, eval_diagram, eval_eq, evaluate, evaluate_canonical

from oracles import basis_eval, random_diagram


def test_identity():
    m = evaluate(Id(2), builtin("kx2")).matrix
    assert m == tuple(tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4))


def test_handle_m2():
    m = evaluate(parse("d ; m"), builtin("m2-trace")).matrix
    assert m == tuple(tuple(Fraction(2 * (i == j)) for j in range(4)) for i in range(4))


def test_handle_kx2():
    m = evaluate(parse("d ; m"), builtin("kx2")).matrix
    assert m == ((0, 0), (2, 0))  # 1 -> 2x, x -> 0


def test_unit_then_counit():
    assert evaluate(parse("u ; e"), builtin("kx2")).matrix == ((0,),)
    assert evaluate(parse("u ; e"), builtin("z3")).matrix == ((1,),)


def test_eval_eq_examples():
    m2 = builtin("m2-trace")
    assert eval_eq(parse("d * id(1) ; id(1) * m"), parse("m ; d"), m2)
    assert not eval_eq(parse("d ; m"), Id(1), builtin("kx2"))
    t = parse("g ; id(1) * d ; m * id(1)")
    assert eval_eq(t, t, m2)
    with pytest.raises(ArityMismatch):
        eval_eq(parse("m"), parse("d"), m2)


@pytest.mark.parametrize("A", builtins(), ids=BUILTIN_NAMES)
def test_matches_basis_oracle(A):
    rng = random.Random(hash(A.name) & 0xFFFF)
    B = backend_for(A)
    for _ in range(60):
        d = random_diagram(rng, rng.randint(0, 7), rng.randint(0, 2), cap=3)
        assert eval_diagram(d, B).matrix == basis_eval(d, A)
        assert evaluate_canonical(to_term(d), A) == eval_diagram(d, B)


def test_large_values_stay_exact():
    t = parse(" ; ".join(["d ; m"] * 70))
    m = evaluate(t, builtin("z2")).matrix
    assert m[0][0] == 2 ** 70 and m[0][1] == 0
