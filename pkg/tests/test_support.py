from random import Random

import pytest

from src.bes_workbench.bases import (
    ABSURD,
    EMPTY_BASE,
    AtomicQuery,
    AtomicRule,
    Base,
    parse_rule,
    random_base,
    random_query,
)
from src.bes_workbench.config import Config
from src.bes_workbench.corpus import CorpusSpec, generate_sequents
from src.bes_workbench.derivation import derives
from src.bes_workbench.errors import ModePreconditionError, ResourceLimitError
from src.bes_workbench.parser import parse
from src.bes_workbench.semantics import Valuation
from src.bes_workbench.support import (
    Mode,
    Status,
    SupportQuery,
    candidate_pool,
    cross_check,
    support,
    support_universe,
)
from src.bes_workbench.syntax import BOT, Content, Lit, assertion, random_formula

from . import EXCLUDED_MIDDLE, PEIRCE, config

a, b = assertion("a"), assertion("b")


def query(gamma: str, goal: str, base: Base = EMPTY_BASE) -> SupportQuery:
    context = [parse(part) for part in gamma.split(",")] if gamma else []
    return SupportQuery.of(context, parse(goal), base)


def test_oracle_examples():
    assert support(SupportQuery.of([], PEIRCE), Mode.ORACLE).status is Status.SUPPORTED

    verdict = support(query("", "a"), Mode.ORACLE)
    assert verdict.status is Status.REFUTED
    assert verdict.witness is not None
    assert verdict.witness.extension == (AtomicRule.axiom(a.dual),)
    assert verdict.witness.valuation == Valuation.from_mapping({Content("a"): 0})
    assert verdict.mode_label == "oracle"


def test_oracle_needs_the_empty_base():
    with pytest.raises(ModePreconditionError):
        support(query("", "a", Base.of(AtomicRule.axiom(a))), Mode.ORACLE)


def test_literal_mode():
    base = Base.of(parse_rule("a => b"))
    assert support(query("a", "b", base), Mode.LITERAL).status is Status.SUPPORTED
    refuted = support(query("", "b", base), Mode.LITERAL)
    assert refuted.status is Status.REFUTED
    assert refuted.mode_label == "literal-exact"
    assert support(query("bot", "b"), Mode.LITERAL).status is Status.SUPPORTED
    assert support(query("a, a-", "bot"), Mode.LITERAL).status is Status.SUPPORTED


def test_literal_mode_precondition():
    with pytest.raises(ModePreconditionError):
        support(query("", "a -> a"), Mode.LITERAL)
    with pytest.raises(ModePreconditionError):
        support(query("a & b", "a"), Mode.LITERAL)


def test_bounded_refutes_with_the_base_alone():
    base = Base.of(parse_rule("=> a-"))
    verdict = support(query("", "a", base), Mode.BOUNDED)
    assert verdict.status is Status.REFUTED
    assert verdict.witness is not None
    assert verdict.witness.extension == ()
    assert verdict.witness.literal == a
    assert verdict.pool_size == 13
    assert verdict.mode_label == "bounded(pool=13, depth=1)"


def test_bounded_shortcuts():
    for gamma, goal in (
        ("", "a -> a"),
        ("", "top"),
        ("bot", "a & b"),
        ("", "a | top"),
        ("", "(a -> a) & top"),
        ("a & b", "b"),
    ):
        assert support(query(gamma, goal), Mode.BOUNDED).status is Status.SUPPORTED, goal


def test_bounded_refutes_through_an_extension():
    verdict = support(query("a | b", "a"), Mode.BOUNDED)
    assert verdict.status is Status.REFUTED
    assert verdict.witness is not None
    assert len(verdict.witness.extension) == 1


def test_bounded_is_honest_about_unknowns():
    verdict = support(SupportQuery.of([], EXCLUDED_MIDDLE), Mode.BOUNDED)
    assert verdict.status is Status.UNKNOWN
    assert verdict.witness is None


def test_measure_decreases_along_nested_judgements():
    for gamma, goal in (
        ("a | b", "a"),
        ("", "(a -> b) | a"),
        ("a -> b", "b | a-"),
        ("", "((a -> b) -> a) -> a"),
    ):
        verdict = support(query(gamma, goal), Mode.BOUNDED)
        assert verdict.measure_edges
        assert all(parent > child for parent, child in verdict.measure_edges)


def test_literal_fragment_agreement():
    rng = Random(21)
    contents = [Content("a"), Content("b")]
    for _ in range(200):
        base = random_base(rng, contents, 4)
        atomic = random_query(rng, contents)
        goal = BOT if atomic.goal is ABSURD else Lit(atomic.goal)
        q = SupportQuery.of([Lit(literal) for literal in atomic.context], goal, base)
        literal = support(q, Mode.LITERAL, config).status
        bounded = support(q, Mode.BOUNDED, config).status
        assert literal is bounded
        expected = derives(base, AtomicQuery(atomic.context, atomic.goal)).derivable
        assert (literal is Status.SUPPORTED) == expected


def test_literal_support_survives_larger_bases():
    rng = Random(23)
    contents = [Content("a"), Content("b")]
    for _ in range(200):
        base = random_base(rng, contents, 4)
        atomic = random_query(rng, contents)
        goal = BOT if atomic.goal is ABSURD else Lit(atomic.goal)
        context = [Lit(literal) for literal in atomic.context]
        if support(SupportQuery.of(context, goal, base), Mode.LITERAL, config).status is Status.REFUTED:
            continue
        larger = base.extend(random_base(rng, contents, 3).rules)
        q = SupportQuery.of(context, goal, larger)
        assert support(q, Mode.LITERAL, config).status is Status.SUPPORTED, str(q)
        assert support(q, Mode.BOUNDED, config).status is Status.SUPPORTED, str(q)


def test_oracle_supported_is_never_refuted():
    rng = Random(5)
    signature = [Content("a")]
    for _ in range(200):
        gamma = [random_formula(rng, signature, 3) for _ in range(rng.randint(0, 1))]
        goal = random_formula(rng, signature, 3)
        q = SupportQuery.of(gamma, goal)
        if support(q, Mode.ORACLE, config).status is Status.SUPPORTED:
            assert support(q, Mode.BOUNDED, config).status is not Status.REFUTED, str(q)


def test_cross_check_on_the_exhaustive_corpus():
    corpus = [SupportQuery.of(gamma, goal) for gamma, goal in generate_sequents(CorpusSpec())]
    assert len(corpus) == 52 * 53
    result = cross_check(corpus, depth=1, config=config)
    assert result.hard_failures == []
    assert result.unknown_rate < 1.0


def test_candidate_pool():
    universe = support_universe(EMPTY_BASE, [parse("a")])
    pool = candidate_pool(EMPTY_BASE, universe)
    assert len(pool) == 14
    assert pool[0] == AtomicRule.axiom(a)
    assert len(candidate_pool(EMPTY_BASE, support_universe(EMPTY_BASE, [parse("a & b")]))) == 84
    with pytest.raises(ResourceLimitError):
        candidate_pool(EMPTY_BASE, universe, Config(max_pool_size=10))


def test_query_text():
    assert str(query("a, b", "a & b")) == "a+, b+ ||- a+ & b+"
    assert str(query("", "a")) == "||- a+"
