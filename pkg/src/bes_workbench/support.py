import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations, product
from typing import Iterable, Iterator, NamedTuple

from .bases import (
    ABSURD,
    EMPTY_BASE,
    AtomicQuery,
    AtomicRule,
    Base,
    Goal,
    dual_closure,
    format_rule,
)
from .config import DEFAULT_CONFIG, Config
from .derivation import RefutationEngine
from .errors import ModePreconditionError, ResourceLimitError
from .semantics import Valuation, consequence
from .syntax import (
    BOT,
    TOP,
    And,
    Bot,
    Content,
    Formula,
    Imp,
    Lit,
    Literal,
    Or,
    Top,
    literals_of,
    sort_key,
    to_text,
    weight,
)
from .utils import fresh_name, subsets_smallest_first

logger = logging.getLogger(__name__)


class Mode(Enum):
    ORACLE = "oracle"
    LITERAL = "literal"
    BOUNDED = "bounded"


class Status(Enum):
    SUPPORTED = "Supported"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SupportQuery:
    base: Base
    context: tuple[Formula, ...]
    goal: Formula

    @classmethod
    def of(
        cls, context: Iterable[Formula], goal: Formula, base: Base = EMPTY_BASE
    ) -> "SupportQuery":
        return cls(base, tuple(context), goal)

    def __str__(self) -> str:
        return f"{', '.join(map(to_text, self.context))} ||- {to_text(self.goal)}".strip()


@dataclass(frozen=True)
class SupportWitness:
    extension: tuple[AtomicRule, ...]
    literal: Goal | None = None
    valuation: Valuation | None = None

    def describe(self) -> dict[str, object]:
        return {
            "extension": [format_rule(rule) for rule in self.extension],
            "literal": None if self.literal is None else str(self.literal),
            "valuation": None if self.valuation is None else str(self.valuation),
        }


@dataclass(frozen=True)
class SupportVerdict:
    status: Status
    mode: Mode
    witness: SupportWitness | None = None
    pool_size: int | None = None
    pool_depth: int | None = None
    # (parent, child) weights of nested empty-context judgements, bounded mode only
    measure_edges: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def mode_label(self) -> str:
        if self.mode is Mode.BOUNDED:
            return f"bounded(pool={self.pool_size}, depth={self.pool_depth})"
        return "literal-exact" if self.mode is Mode.LITERAL else self.mode.value


def _is_atomic_goal(phi: Formula) -> bool:
    return isinstance(phi, (Lit, Bot))


def _as_goal(phi: Formula) -> Goal:
    return phi.literal if isinstance(phi, Lit) else ABSURD


def support_universe(base: Base, formulae: Iterable[Formula]) -> frozenset[Literal]:
    return dual_closure(base.literals() | literals_of(formulae))


def candidate_pool(
    base: Base, universe: Iterable[Literal], config: Config = DEFAULT_CONFIG
) -> tuple[AtomicRule, ...]:
    """Rules over ``universe`` within the configured shape limits, minus those in ``base``."""
    literals = sorted(universe)
    hypothesis_sets = [
        frozenset(chosen)
        for size in range(config.pool_max_hypotheses + 1)
        for chosen in combinations(literals, size)
    ]
    subrule_shapes = [(h, p) for h in hypothesis_sets for p in literals]

    count = 0
    rules: list[AtomicRule] = []
    for size in range(config.pool_max_subrules + 1):
        for subrules in product(subrule_shapes, repeat=size):
            for head in literals:
                count += 1
                if count > config.max_pool_size:
                    raise ResourceLimitError("extension pool", count, config.max_pool_size)
                rule = AtomicRule(tuple(subrules), head)
                if rule not in base.rules:
                    rules.append(rule)
    return tuple(sorted(set(rules), key=lambda rule: (len(rule.subrules), format_rule(rule))))


class Judged(NamedTuple):
    status: Status
    witness: SupportWitness | None = None


SUPPORTED = Judged(Status.SUPPORTED)
UNKNOWN = Judged(Status.UNKNOWN)


class BoundedSupport:
    """Support clauses evaluated over a finite extension pool.

    Supported and Refuted are only returned when exact; everything the pool
    cannot settle is Unknown.
    """

    def __init__(
        self,
        pool: tuple[AtomicRule, ...],
        disjunction_range: tuple[Literal, ...],
        config: Config = DEFAULT_CONFIG,
    ) -> None:
        self.pool = pool
        self.disjunction_range = disjunction_range
        self.config = config
        self.engine = RefutationEngine(config)
        self.memo: dict[tuple, Judged] = {}
        self.derived: dict[tuple[Base, AtomicQuery], bool] = {}
        self.edges: list[tuple[int, int]] = []

    def derives(self, base: Base, context: Iterable[Literal], goal: Goal) -> bool:
        key = (base, AtomicQuery.of(context, goal))
        if key not in self.derived:
            self.derived[key] = self.engine.derives(*key).derivable
        return self.derived[key]

    @staticmethod
    def measure(context: frozenset[Formula], goal: Formula) -> int:
        return sum(map(weight, context)) + weight(goal) + (1 if context else 0)

    def judge(
        self,
        base: Base,
        context: frozenset[Formula],
        goal: Formula,
        budget: int,
        anchor: int | None = None,
    ) -> Judged:
        recorded = anchor is None or not context
        if recorded:
            measure = self.measure(context, goal)
            if anchor is not None:
                self.edges.append((anchor, measure))
            anchor = measure

        key = (base, context, goal, budget)
        if key not in self.memo:
            self.memo[key] = self._judge(base, context, goal, budget, anchor)
        return self.memo[key]

    def _judge(
        self,
        base: Base,
        context: frozenset[Formula],
        goal: Formula,
        budget: int,
        anchor: int,
    ) -> Judged:
        context = context - {TOP}
        if isinstance(goal, Top) or BOT in context or goal in context:
            return SUPPORTED

        conjunctions = [phi for phi in context if isinstance(phi, And)]
        if conjunctions:
            split = (context - set(conjunctions)) | {
                part for phi in conjunctions for part in (phi.left, phi.right)
            }
            return self.judge(base, frozenset(split), goal, budget, anchor)

        if all(isinstance(phi, Lit) for phi in context) and _is_atomic_goal(goal):
            literals = [phi.literal for phi in context if isinstance(phi, Lit)]
            if self.derives(base, literals, _as_goal(goal)):
                return SUPPORTED
            return Judged(Status.REFUTED, SupportWitness((), _as_goal(goal)))

        match goal:
            case And(left, right):
                first = self.judge(base, context, left, budget, anchor)
                if first.status is Status.REFUTED:
                    return first
                second = self.judge(base, context, right, budget, anchor)
                if second.status is Status.REFUTED:
                    return second
                if first.status is second.status is Status.SUPPORTED:
                    return SUPPORTED
                return UNKNOWN
            case Imp(left, right):
                return self.judge(base, context | {left}, right, budget, anchor)
            case Or(left, right) if not context:
                return self._disjunction(base, left, right, budget, anchor)
        return self._inference(base, context, goal, budget, anchor)

    def _extensions(
        self, base: Base, budget: int
    ) -> Iterator[tuple[tuple[AtomicRule, ...], Base, int]]:
        pool = [rule for rule in self.pool if rule not in base.rules]
        for subset in subsets_smallest_first(pool, budget):
            yield subset, base.extend(subset), budget - len(subset)

    def _inference(
        self,
        base: Base,
        context: frozenset[Formula],
        goal: Formula,
        budget: int,
        anchor: int,
    ) -> Judged:
        premises = sorted(context, key=sort_key)
        for subset, extended, remaining in self._extensions(base, budget):
            statuses = [
                self.judge(extended, frozenset(), premise, remaining, anchor).status
                for premise in premises
            ]
            if Status.REFUTED in statuses or Status.UNKNOWN in statuses:
                continue
            result = self.judge(extended, frozenset(), goal, remaining, anchor)
            if result.status is Status.REFUTED:
                literal = result.witness.literal if result.witness else None
                return Judged(Status.REFUTED, SupportWitness(subset, literal))
        return UNKNOWN

    def _disjunction(
        self, base: Base, left: Formula, right: Formula, budget: int, anchor: int
    ) -> Judged:
        for disjunct in (left, right):
            if self.judge(base, frozenset(), disjunct, budget, anchor).status is Status.SUPPORTED:
                return SUPPORTED
        for subset, extended, remaining in self._extensions(base, budget):
            for literal in self.disjunction_range:
                if self.derives(extended, (), literal):
                    continue
                target = Lit(literal)
                if all(
                    self.judge(extended, frozenset({disjunct}), target, remaining, anchor).status
                    is Status.SUPPORTED
                    for disjunct in (left, right)
                ):
                    return Judged(Status.REFUTED, SupportWitness(subset, literal))
        return UNKNOWN


def _fresh_pair(taken: Iterable[Content]) -> tuple[Literal, Literal]:
    name = fresh_name("q", {content.name for content in taken})
    literal = Literal(Content(name))
    return literal, literal.dual


def _oracle(q: SupportQuery, config: Config) -> SupportVerdict:
    if q.base:
        raise ModePreconditionError("oracle mode needs the empty base")
    verdict = consequence(q.context, q.goal, config)
    if verdict.holds:
        return SupportVerdict(Status.SUPPORTED, Mode.ORACLE)
    assert verdict.witness is not None
    axioms = tuple(AtomicRule.axiom(literal) for literal in verdict.witness.true_literals())
    witness = SupportWitness(axioms, None, verdict.witness)
    return SupportVerdict(Status.REFUTED, Mode.ORACLE, witness)


def _literal_exact(q: SupportQuery, config: Config) -> SupportVerdict:
    if not (all(_is_atomic_goal(phi) for phi in q.context) and _is_atomic_goal(q.goal)):
        raise ModePreconditionError("literal mode needs literal or bot formulae only")
    if BOT in q.context:
        return SupportVerdict(Status.SUPPORTED, Mode.LITERAL)
    literals = [phi.literal for phi in q.context if isinstance(phi, Lit)]
    answer = RefutationEngine(config).derives(q.base, AtomicQuery.of(literals, _as_goal(q.goal)))
    if answer.derivable:
        return SupportVerdict(Status.SUPPORTED, Mode.LITERAL)
    return SupportVerdict(Status.REFUTED, Mode.LITERAL, SupportWitness((), _as_goal(q.goal)))


def _bounded(q: SupportQuery, config: Config) -> SupportVerdict:
    universe = support_universe(q.base, [*q.context, q.goal])
    pool = candidate_pool(q.base, universe, config)
    contents = {literal.content for literal in universe}
    disjunction_range = (*sorted(universe), *_fresh_pair(contents))
    evaluator = BoundedSupport(pool, disjunction_range, config)
    judged = evaluator.judge(q.base, frozenset(q.context), q.goal, config.pool_depth)
    logger.debug(
        "bounded %s: %s after %d judgements", q, judged.status.value, len(evaluator.memo)
    )
    return SupportVerdict(
        judged.status,
        Mode.BOUNDED,
        judged.witness,
        pool_size=len(pool),
        pool_depth=config.pool_depth,
        measure_edges=tuple(evaluator.edges),
    )


def support(q: SupportQuery, mode: Mode, config: Config = DEFAULT_CONFIG) -> SupportVerdict:
    match mode:
        case Mode.ORACLE:
            return _oracle(q, config)
        case Mode.LITERAL:
            return _literal_exact(q, config)
        case Mode.BOUNDED:
            return _bounded(q, config)
    raise ValueError(f"{mode=} is not a support mode.")


@dataclass(frozen=True)
class CrossCheckRecord:
    query: SupportQuery
    oracle: Status
    bounded: Status

    @property
    def hard_failure(self) -> bool:
        return self.oracle is Status.SUPPORTED and self.bounded is Status.REFUTED


@dataclass(frozen=True)
class CrossCheck:
    records: tuple[CrossCheckRecord, ...]

    @property
    def hard_failures(self) -> list[CrossCheckRecord]:
        return [record for record in self.records if record.hard_failure]

    @property
    def unknown(self) -> int:
        return sum(record.bounded is Status.UNKNOWN for record in self.records)

    @property
    def unknown_rate(self) -> float:
        return self.unknown / len(self.records) if self.records else 0.0


def cross_check(
    corpus: Iterable[SupportQuery], depth: int, config: Config = DEFAULT_CONFIG
) -> CrossCheck:
    """Oracle against bounded mode (pool depth ``depth``) on empty-base queries."""
    bounded_config = replace(config, pool_depth=depth)
    records = []
    for query in corpus:
        oracle = support(query, Mode.ORACLE, config).status
        bounded = support(query, Mode.BOUNDED, bounded_config).status
        records.append(CrossCheckRecord(query, oracle, bounded))
    result = CrossCheck(tuple(records))
    logger.info(
        "cross-check: %d queries, %d hard failures, %d unknown",
        len(records),
        len(result.hard_failures),
        result.unknown,
    )
    return result
