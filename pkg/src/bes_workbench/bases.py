import logging
from dataclasses import dataclass
from enum import Enum
from random import Random
from typing import Iterable, Iterator, TypeAlias

import lark
from lark.exceptions import UnexpectedInput, VisitError

from .errors import BaseSyntaxError
from .parser import LITERAL_PATTERN, literal_from_token
from .syntax import And, Content, Formula, Imp, Lit, Literal, Polarity

logger = logging.getLogger(__name__)


class Absurd(Enum):
    """The absurdity marker: a possible goal, never a literal."""

    BOT = "bot"

    def __str__(self) -> str:
        return self.value


ABSURD = Absurd.BOT

Goal: TypeAlias = Literal | Absurd
Subrule: TypeAlias = tuple[frozenset[Literal], Literal]


@dataclass(frozen=True)
class AtomicRule:
    subrules: tuple[Subrule, ...]
    head: Literal

    @classmethod
    def axiom(cls, head: Literal) -> "AtomicRule":
        return cls((), head)

    @classmethod
    def first_level(cls, premises: Iterable[Literal], head: Literal) -> "AtomicRule":
        return cls(tuple((frozenset(), premise) for premise in premises), head)

    @property
    def is_axiom(self) -> bool:
        return not self.subrules

    @property
    def is_first_level(self) -> bool:
        return all(not hypotheses for hypotheses, _ in self.subrules)

    def literals(self) -> frozenset[Literal]:
        found = {self.head}
        for hypotheses, premise in self.subrules:
            found.update(hypotheses)
            found.add(premise)
        return frozenset(found)

    def __str__(self) -> str:
        return format_rule(self)


@dataclass(frozen=True)
class Base:
    rules: frozenset[AtomicRule] = frozenset()

    @classmethod
    def of(cls, *rules: AtomicRule) -> "Base":
        return cls(frozenset(rules))

    def __iter__(self) -> Iterator[AtomicRule]:
        return iter(sorted(self.rules, key=format_rule))

    def __len__(self) -> int:
        return len(self.rules)

    def __bool__(self) -> bool:
        return bool(self.rules)

    def extend(self, rules: Iterable[AtomicRule]) -> "Base":
        return Base(self.rules | frozenset(rules))

    def literals(self) -> frozenset[Literal]:
        return frozenset().union(*(rule.literals() for rule in self.rules))

    def contents(self) -> frozenset[Content]:
        return frozenset(literal.content for literal in self.literals())

    def __str__(self) -> str:
        return format_base(self)


EMPTY_BASE = Base()


@dataclass(frozen=True)
class AtomicQuery:
    context: frozenset[Literal]
    goal: Goal

    @classmethod
    def of(cls, context: Iterable[Literal], goal: Goal) -> "AtomicQuery":
        return cls(frozenset(context), goal)

    def __str__(self) -> str:
        context = ", ".join(map(str, sorted(self.context)))
        return f"{context} |- {self.goal}".strip()


class StepKind(Enum):
    REF = "REF"
    NEGATE = "NEGATE"
    APP = "APP"
    CONTRA = "CONTRA"
    SPLIT = "SPLIT"
    ABS = "ABS"
    OPEN = "OPEN"


@dataclass(frozen=True)
class TraceStep:
    kind: StepKind
    # the split decisions leading to this step's branch
    branch: tuple[Literal, ...]
    added: tuple[Literal, ...] = ()
    rule: AtomicRule | None = None
    subrule: int | None = None


@dataclass(frozen=True)
class DerivationAnswer:
    derivable: bool
    universe: frozenset[Literal]
    trace: tuple[TraceStep, ...] | None = None
    countermodel: frozenset[Literal] | None = None


def dual_closure(literals: Iterable[Literal]) -> frozenset[Literal]:
    found: set[Literal] = set()
    for literal in literals:
        found.add(literal)
        found.add(literal.dual)
    return frozenset(found)


def relevant_universe(b: Base, q: AtomicQuery) -> frozenset[Literal]:
    literals = set(b.literals()) | set(q.context)
    if isinstance(q.goal, Literal):
        literals.add(q.goal)
    return dual_closure(literals)


# ---- base files ----

BASE_GRAMMAR = rf"""
start: [premises] _RULE_ARROW atom

premises: premise (_COMMA premise)*

premise: atom -> plain
       | _LPAR [hypotheses] _RULE_ARROW atom _RPAR -> subrule

hypotheses: atom (_COMMA atom)*

atom: LITERAL | BOT | TOP

_RULE_ARROW: "=>"
_COMMA: ","
_LPAR: "("
_RPAR: ")"
BOT: "bot"
TOP: "top"
LITERAL: {LITERAL_PATTERN}

%import common.WS
%ignore WS
"""


class _RuleTransformer(lark.Transformer):
    def atom(self, children: list[lark.Token]) -> Literal:
        token = children[0]
        if token.type in ("BOT", "TOP"):
            raise ValueError(f"{token} not admissible in rules")
        return literal_from_token(str(token))

    def hypotheses(self, children: list[Literal]) -> frozenset[Literal]:
        return frozenset(children)

    def plain(self, children: list[Literal]) -> Subrule:
        return (frozenset(), children[0])

    def subrule(self, children: list) -> Subrule:
        hypotheses, premise = children
        return (hypotheses or frozenset(), premise)

    def premises(self, children: list[Subrule]) -> tuple[Subrule, ...]:
        return tuple(children)

    def start(self, children: list) -> AtomicRule:
        subrules, head = children
        return AtomicRule(subrules or (), head)


_base_parser = lark.Lark(BASE_GRAMMAR, parser="lalr", lexer="basic")
_rule_transformer = _RuleTransformer()


def parse_rule(line: str, line_number: int = 1) -> AtomicRule:
    try:
        return _rule_transformer.transform(_base_parser.parse(line))
    except VisitError as error:
        raise BaseSyntaxError(line_number, line, str(error.orig_exc)) from error
    except UnexpectedInput as error:
        reason = f"unexpected input at column {error.column}"
        raise BaseSyntaxError(line_number, line, reason) from error


def parse_base(text: str) -> Base:
    rules: list[AtomicRule] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rules.append(parse_rule(line, line_number))
    logger.debug("parsed %d rules", len(rules))
    return Base(frozenset(rules))


def load_base(filepath: str) -> Base:
    with open(filepath, "r", encoding="utf-8") as f:
        return parse_base(f.read())


def _format_literals(literals: Iterable[Literal]) -> str:
    return ", ".join(map(str, sorted(literals)))


def format_rule(rule: AtomicRule) -> str:
    if rule.is_axiom:
        return f"=> {rule.head}"
    if rule.is_first_level:
        return f"{', '.join(str(p) for _, p in rule.subrules)} => {rule.head}"
    parts = []
    for hypotheses, premise in rule.subrules:
        if hypotheses:
            parts.append(f"({_format_literals(hypotheses)} => {premise})")
        else:
            parts.append(str(premise))
    return f"{', '.join(parts)} => {rule.head}"


def format_base(b: Base) -> str:
    return "".join(f"{format_rule(rule)}\n" for rule in b)


# ---- rules read as formulae ----


def _conjoin(formulae: list[Formula]) -> Formula:
    result = formulae[0]
    for phi in formulae[1:]:
        result = And(result, phi)
    return result


def rule_to_formula(rule: AtomicRule) -> Formula:
    """Read ``(L1 => l1), ..., (Ln => ln) => l`` as ``(L1 -> l1) & ... & (Ln -> ln) -> l``."""
    head: Formula = Lit(rule.head)
    if rule.is_axiom:
        return head
    parts: list[Formula] = []
    for hypotheses, premise in rule.subrules:
        body: Formula = Lit(premise)
        if hypotheses:
            body = Imp(_conjoin([Lit(h) for h in sorted(hypotheses)]), body)
        parts.append(body)
    return Imp(_conjoin(parts), head)


def base_formulas(b: Base) -> list[Formula]:
    return [rule_to_formula(rule) for rule in b]


# ---- generators ----


def random_literal(rng: Random, contents: list[Content]) -> Literal:
    return Literal(rng.choice(contents), rng.choice(list(Polarity)))


def random_rule(
    rng: Random, contents: list[Content], max_subrules: int = 2, max_hypotheses: int = 2
) -> AtomicRule:
    head = random_literal(rng, contents)
    roll = rng.random()
    if roll < 0.2:
        return AtomicRule.axiom(head)
    size = rng.randint(1, max_subrules)
    if roll < 0.6:
        return AtomicRule.first_level(
            (random_literal(rng, contents) for _ in range(size)), head
        )
    subrules = tuple(
        (
            frozenset(
                random_literal(rng, contents)
                for _ in range(rng.randint(0, max_hypotheses))
            ),
            random_literal(rng, contents),
        )
        for _ in range(size)
    )
    return AtomicRule(subrules, head)


def random_base(
    rng: Random,
    contents: Iterable[Content],
    max_rules: int,
    max_subrules: int = 2,
    max_hypotheses: int = 2,
) -> Base:
    ordered = sorted(contents)
    count = rng.randint(0, max_rules)
    return Base(
        frozenset(
            random_rule(rng, ordered, max_subrules, max_hypotheses) for _ in range(count)
        )
    )


def random_query(rng: Random, contents: Iterable[Content], max_context: int = 2) -> AtomicQuery:
    ordered = sorted(contents)
    context = frozenset(
        random_literal(rng, ordered) for _ in range(rng.randint(0, max_context))
    )
    goal: Goal = ABSURD if rng.random() < 0.2 else random_literal(rng, ordered)
    return AtomicQuery(context, goal)
