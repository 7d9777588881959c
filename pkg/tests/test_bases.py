import os
from random import Random

import pytest

from src.bes_workbench.bases import (
    ABSURD,
    AtomicQuery,
    AtomicRule,
    Base,
    base_formulas,
    format_base,
    format_rule,
    load_base,
    parse_base,
    parse_rule,
    random_base,
    relevant_universe,
    rule_to_formula,
)
from src.bes_workbench.errors import BaseSyntaxError
from src.bes_workbench.parser import parse
from src.bes_workbench.syntax import Content, assertion, denial

WINSTON_PATH = os.path.join(os.path.dirname(__file__), "..", "data", "winston.base")

a, b, c = assertion("a"), assertion("b"), assertion("c")


def test_parse_axiom_and_first_level():
    assert parse_rule("=> a+") == AtomicRule.axiom(a)
    assert parse_rule("a-, b => c-") == AtomicRule.first_level([a.dual, b], c.dual)


def test_parse_higher_level():
    rule = parse_rule("(a+ => b+), c => a-")
    assert rule.subrules == ((frozenset({a}), b), (frozenset(), c))
    assert rule.head == a.dual
    assert not rule.is_first_level
    assert parse_rule("( => b) => a").subrules == ((frozenset(), b),)


def test_format_rule():
    assert format_rule(AtomicRule.axiom(b.dual)) == "=> b-"
    assert format_rule(AtomicRule.first_level([b, a], c)) == "b+, a+ => c+"
    assert format_rule(parse_rule("(b, a => c), a => b-")) == "(a+, b+ => c+), a+ => b-"


def test_format_and_parse_agree():
    rng = Random(12)
    for _ in range(200):
        base = random_base(rng, [Content("a"), Content("b"), Content("c")], 5)
        assert parse_base(format_base(base)) == base


def test_winston_base():
    base = load_base(WINSTON_PATH)
    assert base == Base.of(AtomicRule.axiom(b.dual), AtomicRule.first_level([a.dual], b))
    assert base.contents() == {Content("a"), Content("b")}


def test_comments_and_blank_lines():
    text = "# header\n\n=> a+   # trailing\n  \n"
    assert parse_base(text) == Base.of(AtomicRule.axiom(a))


def test_bot_is_not_a_rule_literal():
    with pytest.raises(BaseSyntaxError) as info:
        parse_base("=> a\nbot => a+")
    assert info.value.line_number == 2
    with pytest.raises(BaseSyntaxError):
        parse_rule("a => top")


def test_malformed_rules():
    with pytest.raises(BaseSyntaxError):
        parse_rule("a+ b+ => c")
    with pytest.raises(BaseSyntaxError):
        parse_rule("a+ =>")


def test_rule_to_formula():
    assert rule_to_formula(AtomicRule.axiom(a)) == parse("a")
    assert rule_to_formula(parse_rule("a-, b => c")) == parse("a- & b -> c")
    assert rule_to_formula(parse_rule("(b, a => c) => a-")) == parse("(a & b -> c) -> a-")
    assert base_formulas(Base.of(AtomicRule.axiom(a), AtomicRule.axiom(b))) == [
        parse("a"),
        parse("b"),
    ]


def test_relevant_universe_is_closed_under_duals():
    base = Base.of(AtomicRule.axiom(a))
    universe = relevant_universe(base, AtomicQuery.of([b], ABSURD))
    assert universe == {a, a.dual, b, b.dual}


def test_query_text():
    assert str(AtomicQuery.of([b, a], c)) == "a+, b+ |- c+"
    assert str(AtomicQuery.of([], ABSURD)) == "|- bot"
    assert denial("a") == a.dual
