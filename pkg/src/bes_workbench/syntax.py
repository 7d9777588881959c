import re
from dataclasses import dataclass
from enum import Enum
from functools import cache
from random import Random
from typing import Iterable, TypeAlias

CONTENT_NAME = re.compile(r"[a-z][A-Za-z0-9_]*")


@dataclass(frozen=True, order=True)
class Content:
    name: str

    def __post_init__(self) -> None:
        if not CONTENT_NAME.fullmatch(self.name):
            raise ValueError(f"{self.name=} is not a content name.")

    def __str__(self) -> str:
        return self.name


class Polarity(str, Enum):
    ASSERT = "+"
    DENY = "-"

    @property
    def flipped(self) -> "Polarity":
        return Polarity.DENY if self is Polarity.ASSERT else Polarity.ASSERT


@dataclass(frozen=True, order=True)
class Literal:
    content: Content
    polarity: Polarity = Polarity.ASSERT

    @property
    def dual(self) -> "Literal":
        return Literal(self.content, self.polarity.flipped)

    def __str__(self) -> str:
        return f"{self.content.name}{self.polarity.value}"


def assertion(name: str) -> Literal:
    return Literal(Content(name), Polarity.ASSERT)


def denial(name: str) -> Literal:
    return Literal(Content(name), Polarity.DENY)


@dataclass(frozen=True)
class Lit:
    literal: Literal


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula: TypeAlias = Lit | Bot | Top | And | Or | Imp
Binary: TypeAlias = And | Or | Imp

BOT = Bot()
TOP = Top()

CONNECTIVES: tuple[type[Binary], ...] = (Imp, And, Or)


def pos(name: str) -> Lit:
    return Lit(assertion(name))


def neg_lit(name: str) -> Lit:
    return Lit(denial(name))


@cache
def dual(phi: Formula) -> Formula:
    match phi:
        case Lit(literal):
            return Lit(literal.dual)
        case Bot():
            return TOP
        case Top():
            return BOT
        case And(left, right):
            return Or(dual(left), dual(right))
        case Or(left, right):
            return And(dual(left), dual(right))
        case Imp(left, right):
            return And(left, dual(right))
    raise TypeError(f"{phi!r} is not a formula.")


def cong(phi: Formula, psi: Formula) -> bool:
    """Congruence: equal duals."""
    return dual(phi) == dual(psi)


@cache
def weight(phi: Formula) -> int:
    match phi:
        case Lit():
            return 0
        case Bot() | Top():
            return 1
        case And(left, right) | Or(left, right) | Imp(left, right):
            return weight(left) + weight(right) + 1
    raise TypeError(f"{phi!r} is not a formula.")


@cache
def depth(phi: Formula) -> int:
    if isinstance(phi, (And, Or, Imp)):
        return max(depth(phi.left), depth(phi.right)) + 1
    return 1


def negation(phi: Formula) -> Formula:
    return Imp(phi, BOT)


def children(phi: Formula) -> tuple[Formula, ...]:
    if isinstance(phi, (And, Or, Imp)):
        return (phi.left, phi.right)
    return ()


def subformulae(gamma: Iterable[Formula], goal: Formula) -> frozenset[Formula]:
    seen: set[Formula] = set()
    stack = [*gamma, goal]
    while stack:
        phi = stack.pop()
        if phi in seen:
            continue
        seen.add(phi)
        stack.extend(children(phi))
    return frozenset(seen)


def contents_of(formulae: Iterable[Formula]) -> frozenset[Content]:
    found: set[Content] = set()
    stack = list(formulae)
    while stack:
        phi = stack.pop()
        if isinstance(phi, Lit):
            found.add(phi.literal.content)
        else:
            stack.extend(children(phi))
    return frozenset(found)


def literals_of(formulae: Iterable[Formula]) -> frozenset[Literal]:
    return frozenset(
        phi.literal for phi in subformulae(formulae, TOP) if isinstance(phi, Lit)
    )


# ---- printer ----

_PRECEDENCE: dict[type, int] = {Imp: 1, Or: 2, And: 3}
_SYMBOL: dict[type, str] = {Imp: "->", Or: "|", And: "&"}


def _to_text(phi: Formula, context: int) -> str:
    match phi:
        case Lit(literal):
            return str(literal)
        case Bot():
            return "bot"
        case Top():
            return "top"
    assert isinstance(phi, (And, Or, Imp))
    precedence = _PRECEDENCE[type(phi)]
    if isinstance(phi, Imp):
        left, right = precedence + 1, precedence
    else:
        left, right = precedence, precedence + 1
    text = (
        f"{_to_text(phi.left, left)} {_SYMBOL[type(phi)]} {_to_text(phi.right, right)}"
    )
    return f"({text})" if precedence < context else text


@cache
def to_text(phi: Formula) -> str:
    """Canonical text: minimal parentheses, every literal signed."""
    return _to_text(phi, 0)


def sort_key(phi: Formula) -> tuple[int, str]:
    return (weight(phi), to_text(phi))


def sorted_formulae(formulae: Iterable[Formula]) -> list[Formula]:
    return sorted(formulae, key=sort_key)


# ---- generators ----


def leaves(contents: Iterable[Content]) -> list[Formula]:
    result: list[Formula] = []
    for content in sorted(contents):
        result.append(Lit(Literal(content, Polarity.ASSERT)))
        result.append(Lit(Literal(content, Polarity.DENY)))
    result.extend((BOT, TOP))
    return result


def enumerate_formulas(contents: Iterable[Content], max_depth: int) -> list[Formula]:
    """Every formula over ``contents`` of depth at most ``max_depth``, lightest first."""
    if max_depth < 1:
        return []
    base = leaves(contents)
    level: list[Formula] = list(base)
    for _ in range(max_depth - 1):
        level = base + [
            connective(left, right)
            for connective in CONNECTIVES
            for left in level
            for right in level
        ]
    return sorted_formulae(level)


def random_formula(
    rng: Random, contents: Iterable[Content], max_depth: int, constants: float = 0.1
) -> Formula:
    ordered = sorted(contents)
    if not ordered:
        raise ValueError("random_formula needs at least one content.")

    def build(budget: int) -> Formula:
        if budget <= 1 or rng.random() < 0.25:
            if rng.random() < constants:
                return rng.choice((BOT, TOP))
            return Lit(Literal(rng.choice(ordered), rng.choice(list(Polarity))))
        connective = rng.choice(CONNECTIVES)
        return connective(build(budget - 1), build(budget - 1))

    return build(max_depth)
