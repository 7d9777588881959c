import os
from random import Random

import pytest

from src.bes_workbench.bases import (
    ABSURD,
    AtomicQuery,
    AtomicRule,
    Base,
    StepKind,
    base_formulas,
    load_base,
    random_base,
    random_query,
)
from src.bes_workbench.config import Config
from src.bes_workbench.derivation import (
    ClosureOracle,
    IntuitionisticEngine,
    RefutationEngine,
    SaturationEngine,
    derives,
    derives_oracle,
    derives_saturation,
    replay,
    replay_trace,
)
from src.bes_workbench.errors import ResourceLimitError
from src.bes_workbench.semantics import consequence
from src.bes_workbench.syntax import BOT, Content, Lit, assertion

from . import config

WINSTON_PATH = os.path.join(os.path.dirname(__file__), "..", "data", "winston.base")
CONTENTS = [Content("a"), Content("b"), Content("c")]

a, b, c = assertion("a"), assertion("b"), assertion("c")


def random_cases(seed: int, count: int, max_rules: int = 5):
    rng = Random(seed)
    for _ in range(count):
        yield random_base(rng, CONTENTS, max_rules), random_query(rng, CONTENTS), rng


def test_winston():
    base = load_base(WINSTON_PATH)
    assert derives(base, AtomicQuery.of([], a)).derivable
    assert not derives(base, AtomicQuery.of([], a), classical=False).derivable
    assert not derives(base, AtomicQuery.of([], ABSURD)).derivable


def test_rule_application():
    base = Base.of(AtomicRule.first_level([a], b))
    assert derives(base, AtomicQuery.of([a], b)).derivable
    answer = derives(base, AtomicQuery.of([], b))
    assert not answer.derivable
    assert answer.countermodel is not None and b.dual in answer.countermodel


def test_higher_level_rule():
    # (a => b) => c with b as an axiom
    base = Base.of(AtomicRule(((frozenset({a}), b),), c), AtomicRule.axiom(b))
    assert derives(base, AtomicQuery.of([], c)).derivable
    assert derives(base, AtomicQuery.of([], c), classical=False).derivable


def test_clashing_context_derives_everything():
    query = AtomicQuery.of([a, a.dual], c)
    assert derives(Base(), query).derivable
    assert derives(Base(), AtomicQuery.of([a, a.dual], ABSURD)).derivable
    assert not derives(Base(), query, classical=False).derivable


def test_derives_matches_classical_consequence():
    for base, query, _ in random_cases(1, 500):
        premises = [*base_formulas(base), *(Lit(literal) for literal in query.context)]
        goal = BOT if query.goal is ABSURD else Lit(query.goal)
        expected = consequence(premises, goal, config).holds
        assert derives(base, query, config=config).derivable == expected, (base, query)


def test_weakening():
    for base, query, rng in random_cases(2, 500):
        if not derives(base, query).derivable:
            continue
        extra = random_query(rng, CONTENTS).context
        assert derives(base, AtomicQuery(query.context | extra, query.goal)).derivable


def test_monotone_in_the_base():
    for base, query, rng in random_cases(3, 500):
        if not derives(base, query).derivable:
            continue
        larger = base.extend(random_base(rng, CONTENTS, 3).rules)
        assert derives(larger, query).derivable


def test_atomic_cut():
    for base, query, rng in random_cases(4, 500):
        cut = random_query(rng, CONTENTS).goal
        if cut is ABSURD:
            continue
        first = derives(base, AtomicQuery(query.context, cut)).derivable
        second = derives(base, AtomicQuery(query.context | {cut}, query.goal)).derivable
        if first and second:
            assert derives(base, query).derivable


def test_cut_against_axioms():
    # assuming M in the context is the same as adding M to the base as axioms
    for base, query, rng in random_cases(10, 500):
        assumed = random_query(rng, CONTENTS).context
        axioms = base.extend(AtomicRule.axiom(literal) for literal in assumed)
        moved = AtomicQuery(query.context | assumed, query.goal)
        assert derives(axioms, query).derivable == derives(base, moved).derivable, (base, query)


def test_absurdity_is_deriving_everything():
    fresh = assertion("z")
    for base, query, _ in random_cases(5, 500):
        absurd = derives(base, AtomicQuery(query.context, ABSURD)).derivable
        assert absurd == derives(base, AtomicQuery(query.context, fresh)).derivable
        assert absurd == derives(base, AtomicQuery(query.context, fresh.dual)).derivable


def test_oracle_agrees_with_refutation():
    oracle = ClosureOracle(config)
    engine = RefutationEngine(config)
    for base, query, _ in random_cases(6, 500, max_rules=4):
        assert oracle.derives(base, query).derivable == engine.derives(base, query).derivable


def test_saturation_agrees_with_refutation():
    for base, query, _ in random_cases(11, 500):
        expected = derives(base, query, config=config).derivable
        assert derives_saturation(base, query, config=config).derivable == expected, (base, query)


def test_saturation_agrees_with_oracle():
    oracle = ClosureOracle(config)
    engine = SaturationEngine(config)
    for base, query, _ in random_cases(12, 300, max_rules=4):
        assert engine.derives(base, query).derivable == oracle.derives(base, query).derivable


def test_saturation_fixpoint_ignores_order():
    for base, query, _ in random_cases(13, 200):
        fixpoint = SaturationEngine(config).saturate(base, query)
        for seed in range(3):
            shuffled = SaturationEngine(config, order_seed=seed).saturate(base, query)
            # the contexts visited depend on the order, their closures do not
            shared = fixpoint.keys() & shuffled.keys()
            assert query.context in shared
            assert all(shuffled[context] == fixpoint[context] for context in shared), (base, seed)


def test_saturation_closure():
    base = Base.of(AtomicRule.first_level([a], b))
    engine = SaturationEngine(config)
    closure = engine.saturate(base, AtomicQuery.of([a], c))
    assert {a, b} <= closure[frozenset({a})]
    assert ABSURD not in closure[frozenset({a})]
    assert {a, b, c} <= closure[frozenset({a, c})]
    clash = engine.saturate(base, AtomicQuery.of([a, a.dual], c))
    assert clash[frozenset({a, a.dual})] >= {ABSURD, c, c.dual}


def test_saturation_universe_cap():
    base = Base.of(*(AtomicRule.axiom(assertion(name)) for name in "abc"))
    with pytest.raises(ResourceLimitError):
        derives_saturation(base, AtomicQuery.of([], a), config=Config(max_saturation_universe=4))


def test_oracle_is_stable_under_fresh_pairs():
    for base, query, _ in random_cases(7, 200, max_rules=4):
        plain = derives_oracle(base, query, config=config).derivable
        assert derives_oracle(base, query, 2, config).derivable == plain


def test_oracle_universe_cap():
    base = Base.of(*(AtomicRule.axiom(assertion(name)) for name in "abcdef"))
    with pytest.raises(ResourceLimitError):
        derives_oracle(base, AtomicQuery.of([], a), config=Config(max_oracle_universe=10))
    with pytest.raises(ValueError):
        ClosureOracle(config, extra_fresh_pairs=-1)


def test_universe_cap():
    base = Base.of(*(AtomicRule.axiom(assertion(name)) for name in "abc"))
    with pytest.raises(ResourceLimitError):
        derives(base, AtomicQuery.of([], a), config=Config(max_universe=4))


def test_intuitionistic_implies_classical():
    engine = IntuitionisticEngine(config)
    for base, query, _ in random_cases(8, 500):
        if engine.derives(base, query).derivable:
            assert derives(base, query).derivable
        if query.goal is ABSURD:
            assert not engine.derives(base, query).derivable


def test_traces_replay():
    for base, query, _ in random_cases(9, 500):
        answer = derives(base, query, trace=True)
        assert answer.trace is not None
        assert replay_trace(base, query, answer)
        assert replay(base, query, answer.trace).derivable == answer.derivable


def test_tampered_trace_is_rejected():
    base = Base.of(AtomicRule.first_level([a], b))
    query = AtomicQuery.of([a], b)
    answer = derives(base, query, trace=True)
    assert answer.trace is not None
    assert [step.kind for step in answer.trace][:2] == [StepKind.REF, StepKind.NEGATE]

    other = AtomicQuery.of([c], b)
    assert not replay_trace(base, other, answer)
    assert not replay_trace(Base(), query, answer)


def test_engine_names():
    engines = (RefutationEngine(), SaturationEngine(), ClosureOracle(), IntuitionisticEngine())
    names = [engine.name for engine in engines]
    assert names == ["refutation", "saturation", "oracle", "intuitionistic"]
