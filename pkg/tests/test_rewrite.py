import pytest

from frobtangle.cobordism import cob_eq, invariant
from frobtangle.diagram import canonical, structural_eq
from frobtangle.dsl import parse
from frobtangle.frobenius import builtins
from frobtangle.rewrite import (G1_RULES, G2_RULES, NoRedex, NotFound, Position, Rule, RuleId,
                                SourceTargetMismatch, WrongGeneratorSet, apply_rule, compose_traces, expand,
                                find_redexes, identity_trace, inverse_trace, search, trace_from_json,
                                trace_to_json, translate, validate_trace, w_composite, whisker)
from frobtangle.terms import ArityMismatch, D, E, G, Id, M, Par, Seq, U
from frobtangle.tqft import eval_eq

B = RuleId(Rule.B)


def _only_position(t, rid):
    (r,) = find_redexes(canonical(t), rid)
    return r.position


def test_rule_b():
    t = Seq(Par(Id(1), D), Par(M, Id(1)))
    assert structural_eq(apply_rule(t, B, _only_position(t, B)), Seq(M, D))


def test_rule_r():
    t = Seq(Par(Id(1), U), M)
    rid = RuleId(Rule.R)
    assert apply_rule(t, rid, _only_position(t, rid)) == Id(1)


def test_rule_z():
    t = parse("g * id(1) ; id(1) * m ; id(1) * e")
    rid = RuleId(Rule.Z)
    assert apply_rule(t, rid, _only_position(t, rid)) == Id(1)


def test_no_redex():
    with pytest.raises(NoRedex):
        apply_rule(M, B, (0, 0))


def test_rule_sets():
    assert set(G1_RULES) == {Rule.A, Rule.R, Rule.L, Rule.D, Rule.P, Rule.Q, Rule.B, Rule.C, Rule.X}
    assert set(G2_RULES) == {Rule.A, Rule.R, Rule.L, Rule.Z, Rule.N, Rule.X}


@pytest.mark.parametrize("rule", list(Rule))
def test_every_rule_is_sound(rule):
    from frobtangle.rewrite import RULE_SIDES
    if rule is Rule.X:
        return
    lhs, rhs = (parse(s) for s in RULE_SIDES[rule])
    assert cob_eq(lhs, rhs)
    for A in builtins():
        assert eval_eq(lhs, rhs, A)


def test_search_frobenius_pair():
    trace = search(parse("id(1) * d ; m * id(1)"), parse("m ; d"), 4)
    assert [s.rule for s in trace.steps] == [B]
    validate_trace(trace)


def test_search_copairing_slide_in_g2():
    trace = search(parse("g * id(1) ; id(1) * m"), parse("id(1) * g ; m * id(1)"), 8)
    validate_trace(trace)
    assert trace.depth <= 8
    assert all(s.rule.rule in G2_RULES for s in trace.steps)


def test_search_handle_not_found():
    with pytest.raises(NotFound):
        search(parse("d ; m"), Id(1), 6)
    assert not cob_eq(parse("d ; m"), Id(1))


def test_search_arity_mismatch():
    with pytest.raises(ArityMismatch):
        search(M, D, 3)


def test_trace_algebra():
    u = search(parse("id(1) * d ; m * id(1)"), parse("m ; d"), 4)
    assert compose_traces(u, identity_trace(u.target)) == u
    back = compose_traces(u, inverse_trace(u))
    assert structural_eq(back.source, u.source) and structural_eq(back.target, u.source)
    validate_trace(back)
    with pytest.raises(SourceTargetMismatch):
        compose_traces(u, u)


def test_whisker_shifts_positions():
    u = search(parse("id(1) * d ; m * id(1)"), parse("m ; d"), 4)
    w = whisker(u, left=Id(1))
    validate_trace(w)
    assert [s.position.offset for s in w.steps] == [s.position.offset + 1 for s in u.steps]


def test_trace_json_round_trip():
    u = search(parse("m * id(1) ; m"), parse("id(1) * m ; m"), 4)
    assert trace_from_json(trace_to_json(u)).to_json() == u.to_json()


def test_translate_images():
    assert translate(D, "G1->G2") == Seq(Par(G, Id(1)), Par(Id(1), M))
    assert translate(G, "G2->G1") == Seq(U, D)
    with pytest.raises(WrongGeneratorSet):
        translate(G, "G1->G2")


@pytest.mark.parametrize("x", [M, U, D, E])
def test_round_trip_from_g1(x):
    y = translate(translate(x, "G1->G2"), "G2->G1")
    assert cob_eq(x, y)
    assert all(eval_eq(x, y, A) for A in builtins())


@pytest.mark.parametrize("x", [M, U, G, E])
def test_round_trip_from_g2(x):
    y = translate(translate(x, "G2->G1"), "G1->G2")
    assert cob_eq(x, y)
    assert all(eval_eq(x, y, A) for A in builtins())


def test_translate_preserves_invariant():
    t = parse("d * id(1) ; id(1) * m ; m ; d")
    assert invariant(translate(t, "G1->G2")) == invariant(t)


def test_w_composite_validates():
    u = w_composite()
    validate_trace(u)
    assert [s.rule.rule for s in u.steps] == [Rule.Z, Rule.X, Rule.A, Rule.X, Rule.N]
    for A in builtins():
        assert eval_eq(u.source, u.target, A)


def test_expand_w_step():
    t = parse("id(2) * g ; id(1) * m * id(1) ; m * id(1)")
    rid = RuleId(Rule.W)
    (r, *_) = find_redexes(canonical(t), rid)
    from frobtangle.rewrite import RewriteStep, RewriteTrace
    from frobtangle.diagram import to_term
    after = to_term(r.result)
    step = RewriteStep(rid, r.position, t, after)
    full = expand(RewriteTrace(t, after, (step,)))
    validate_trace(full)
    assert Rule.W not in {s.rule.rule for s in full.steps}
