import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Mapping, NamedTuple

from .config import DEFAULT_CONFIG, Config
from .constants import TYPE_BIT
from .errors import ResourceLimitError, TautologyError, ValuationDomainError
from .syntax import (
    BOT,
    And,
    Bot,
    Content,
    Formula,
    Imp,
    Lit,
    Literal,
    Or,
    Polarity,
    Top,
    contents_of,
    dual,
    enumerate_formulas,
    to_text,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Valuation:
    """Values of the assertion literals over a finite content set."""

    assignment: tuple[tuple[Content, TYPE_BIT], ...]

    @classmethod
    def from_mapping(cls, values: Mapping[Content, int]) -> "Valuation":
        return cls(tuple(sorted((c, 1 if v else 0) for c, v in values.items())))

    @property
    def domain(self) -> frozenset[Content]:
        return frozenset(content for content, _ in self.assignment)

    def as_dict(self) -> dict[Content, TYPE_BIT]:
        return dict(self.assignment)

    def value(self, literal: Literal) -> TYPE_BIT:
        for content, bit in self.assignment:
            if content == literal.content:
                return bit if literal.polarity is Polarity.ASSERT else 1 - bit  # type: ignore[return-value]
        raise ValuationDomainError(f"{literal} is outside {sorted(map(str, self.domain))}")

    def true_literals(self) -> list[Literal]:
        return [
            Literal(content, Polarity.ASSERT if bit else Polarity.DENY)
            for content, bit in self.assignment
        ]

    def __str__(self) -> str:
        return " ".join(f"{content}={bit}" for content, bit in self.assignment)


class Verdict(NamedTuple):
    holds: bool
    witness: Valuation | None = None


def eval_formula(v: Valuation | Mapping[Content, int], phi: Formula) -> TYPE_BIT:
    values = v.as_dict() if isinstance(v, Valuation) else v

    def evaluate(node: Formula) -> int:
        match node:
            case Lit(literal):
                if literal.content not in values:
                    raise ValuationDomainError(f"{literal.content} is not assigned")
                bit = values[literal.content]
                return bit if literal.polarity is Polarity.ASSERT else 1 - bit
            case Bot():
                return 0
            case Top():
                return 1
            case And(left, right):
                return min(evaluate(left), evaluate(right))
            case Or(left, right):
                return max(evaluate(left), evaluate(right))
            case Imp(left, right):
                return max(1 - evaluate(left), evaluate(right))
        raise TypeError(f"{node!r} is not a formula.")

    return 1 if evaluate(phi) else 0


def valuations(
    contents: Iterable[Content], config: Config = DEFAULT_CONFIG
) -> Iterable[dict[Content, int]]:
    """All valuations over ``contents`` in lexicographic order (by content name, 0 before 1)."""
    ordered = sorted(set(contents))
    if len(ordered) > config.max_contents:
        raise ResourceLimitError("contents", len(ordered), config.max_contents)
    for bits in product((0, 1), repeat=len(ordered)):
        yield dict(zip(ordered, bits))


def consequence(
    gamma: Iterable[Formula], phi: Formula, config: Config = DEFAULT_CONFIG
) -> Verdict:
    premises = list(dict.fromkeys(gamma))
    for values in valuations(contents_of([*premises, phi]), config):
        if all(eval_formula(values, gamma_i) for gamma_i in premises) and not eval_formula(
            values, phi
        ):
            return Verdict(False, Valuation.from_mapping(values))
    return Verdict(True)


def satisfiable(gamma: Iterable[Formula], config: Config = DEFAULT_CONFIG) -> bool:
    return not consequence(gamma, BOT, config).holds


def tautology(phi: Formula, config: Config = DEFAULT_CONFIG) -> bool:
    return consequence((), phi, config).holds


def equivalent(phi: Formula, psi: Formula, config: Config = DEFAULT_CONFIG) -> bool:
    return consequence([phi], psi, config).holds and consequence([psi], phi, config).holds


def countermodel(
    gamma: Iterable[Formula], phi: Formula, config: Config = DEFAULT_CONFIG
) -> Valuation | None:
    return consequence(gamma, phi, config).witness


class Side(Enum):
    FORMULA = "formula"
    DUAL = "dual"


@dataclass(frozen=True)
class LindenbaumResult:
    phi: Formula
    delta: tuple[Formula, ...]
    decided: tuple[tuple[Formula, Side], ...]
    valuation: Valuation


def lindenbaum(
    phi: Formula, enumeration_depth: int, config: Config = DEFAULT_CONFIG
) -> LindenbaumResult:
    """Extend {dual(phi)} to a maximal consistent set along the formula enumeration."""
    if enumeration_depth < 1:
        raise ValueError(f"{enumeration_depth=} must be at least 1.")
    if tautology(phi, config):
        raise TautologyError(f"{to_text(phi)} is a tautology; no countermodel exists.")

    enumeration = enumerate_formulas(contents_of([phi]), enumeration_depth)
    delta: list[Formula] = [dual(phi)]
    for psi in enumeration:
        if satisfiable([*delta, psi], config):
            delta.append(psi)
    logger.debug("lindenbaum %s: |delta|=%d of %d", to_text(phi), len(delta), len(enumeration))

    decided: list[tuple[Formula, Side]] = []
    for psi in enumeration:
        if consequence(delta, psi, config).holds:
            decided.append((psi, Side.FORMULA))
        elif consequence(delta, dual(psi), config).holds:
            decided.append((psi, Side.DUAL))
        else:
            raise RuntimeError("Something went wrong, delta is not maximal...")

    witness = consequence(delta, BOT, config).witness
    if witness is None:
        raise RuntimeError("Something went wrong, delta became inconsistent...")
    return LindenbaumResult(phi, tuple(delta), tuple(decided), witness)
