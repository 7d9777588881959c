"""Flattening formulae to fresh literals and the simulation base over them.

A simulation base mimics the natural deduction rules on the flattened
subformulae of a sequent, so that ``gamma |= goal`` can be decided as an
atomic derivability question ``flat(gamma) |- flat(goal)``.
"""

import logging
from dataclasses import dataclass
from random import Random
from typing import Callable, Iterable, NamedTuple

from .bases import (
    ABSURD,
    AtomicQuery,
    AtomicRule,
    Base,
    Goal,
)
from .config import DEFAULT_CONFIG, Config
from .constants import BOTTOM_CONTENT_PREFIX, FRESH_CONTENT_PREFIX
from .derivation import derives, replay
from .errors import NotInRangeError
from .semantics import consequence
from .syntax import (
    BOT,
    TOP,
    And,
    Content,
    Formula,
    Imp,
    Lit,
    Literal,
    Or,
    Polarity,
    contents_of,
    dual,
    sorted_formulae,
    subformulae,
    to_text,
)
from .utils import fresh_name

logger = logging.getLogger(__name__)


def stable(phi: Formula) -> Formula:
    """Apply ``dual`` twice until nothing changes."""
    current = phi
    while True:
        again = dual(dual(current))
        if again == current:
            return current
        current = again


def class_key(phi: Formula) -> str:
    """Formulae sharing a key must share a flat literal.

    Congruent formulae have equal duals; closing under ``dual . dual`` also
    ties ``phi`` to ``dual(dual(phi))``, which coherence with duality forces.
    """
    return to_text(stable(dual(phi)))


@dataclass(frozen=True)
class FlattenMap:
    assignments: dict[str, Literal]
    representatives: dict[Literal, Formula]
    fresh_contents: frozenset[Content]
    bottom: Content

    @property
    def flat_bottom(self) -> Literal:
        return Literal(self.bottom, Polarity.ASSERT)

    @property
    def flat_top(self) -> Literal:
        return Literal(self.bottom, Polarity.DENY)

    def range(self) -> frozenset[Literal]:
        return frozenset(self.representatives)

    def items(self) -> list[tuple[Literal, Formula]]:
        return sorted(self.representatives.items())


def flatten(m: FlattenMap, phi: Formula) -> Literal:
    try:
        return m.assignments[class_key(phi)]
    except KeyError:
        raise NotInRangeError(f"{to_text(phi)} is not in the flattening domain") from None


def sharpen(m: FlattenMap, literal: Literal) -> Formula:
    try:
        return m.representatives[literal]
    except KeyError:
        raise NotInRangeError(f"{literal} is not in the flattening range") from None


def sharpen_goal(m: FlattenMap, goal: Goal) -> Formula:
    return BOT if goal is ABSURD else sharpen(m, goal)  # type: ignore[arg-type]


def build_flatten(gamma: Iterable[Formula], goal: Formula) -> FlattenMap:
    gamma = list(gamma)
    members = sorted_formulae(subformulae(gamma, goal))
    taken = {content.name for content in contents_of([*gamma, goal])}

    bottom = Content(fresh_name(BOTTOM_CONTENT_PREFIX, taken, start=0))
    taken.add(bottom.name)
    assignments = {
        class_key(BOT): Literal(bottom, Polarity.ASSERT),
        class_key(TOP): Literal(bottom, Polarity.DENY),
    }
    fresh = {bottom}

    def assign(phi: Formula, literal: Literal) -> None:
        assignments[class_key(phi)] = literal
        assignments[class_key(dual(phi))] = literal.dual

    for phi in members:
        if class_key(phi) in assignments:
            continue
        if isinstance(phi, Lit):
            assign(phi, phi.literal)
            continue
        content = Content(fresh_name(FRESH_CONTENT_PREFIX, taken))
        taken.add(content.name)
        fresh.add(content)
        assign(phi, Literal(content, Polarity.ASSERT))

    representatives: dict[Literal, Formula] = {
        Literal(bottom, Polarity.ASSERT): BOT,
        Literal(bottom, Polarity.DENY): TOP,
    }
    for phi in members:
        representatives.setdefault(assignments[class_key(phi)], phi)
    for literal in list(representatives):
        representatives.setdefault(literal.dual, dual(representatives[literal]))

    logger.debug("flattened %d subformulae onto %d fresh contents", len(members), len(fresh))
    return FlattenMap(assignments, representatives, frozenset(fresh), bottom)


@dataclass(frozen=True)
class SimulationBase:
    base: Base
    map: FlattenMap
    gamma: tuple[Formula, ...]
    goal: Formula

    @property
    def members(self) -> list[Formula]:
        return sorted_formulae(subformulae(self.gamma, self.goal))


def _rules_for(
    phi: Formula,
    flat: Callable[[Formula], Literal],
    bottom: Literal,
    conclusions: list[Literal],
) -> list[AtomicRule]:
    here = flat(phi)
    rules = [
        AtomicRule.first_level([bottom], here),
        AtomicRule(((frozenset({here}), bottom),), here.dual),
        AtomicRule.first_level([here, here.dual], bottom),
    ]
    match phi:
        case Imp(left, right):
            rules += [
                AtomicRule(((frozenset({flat(left)}), flat(right)),), here),
                AtomicRule.first_level([here, flat(left)], flat(right)),
            ]
        case And(left, right):
            rules += [
                AtomicRule.first_level([flat(left), flat(right)], here),
                AtomicRule.first_level([here], flat(left)),
                AtomicRule.first_level([here], flat(right)),
            ]
        case Or(left, right):
            rules += [
                AtomicRule.first_level([flat(left)], here),
                AtomicRule.first_level([flat(right)], here),
            ]
            rules += [
                AtomicRule(
                    (
                        (frozenset(), here),
                        (frozenset({flat(left)}), chi),
                        (frozenset({flat(right)}), chi),
                    ),
                    chi,
                )
                for chi in conclusions
            ]
    return rules


def build_simulation_base(gamma: Iterable[Formula], goal: Formula) -> SimulationBase:
    gamma = tuple(gamma)
    m = build_flatten(gamma, goal)
    members = sorted_formulae(subformulae(gamma, goal))

    def flat(phi: Formula) -> Literal:
        return flatten(m, phi)

    bottom = m.flat_bottom
    conclusions = sorted(
        {flat(phi) for phi in members} | {flat(dual(phi)) for phi in members} | {bottom}
    )
    rules = {AtomicRule.axiom(m.flat_top)}
    for phi in members:
        rules.update(_rules_for(phi, flat, bottom, conclusions))

    logger.debug("simulation base: %d rules over %d subformulae", len(rules), len(members))
    return SimulationBase(Base(frozenset(rules)), m, gamma, goal)


class PipelineResult(NamedTuple):
    semantic: bool
    simulated: bool
    agree: bool
    universe: int = 0
    rules: int = 0


def pipeline(
    gamma: Iterable[Formula], goal: Formula, config: Config = DEFAULT_CONFIG
) -> PipelineResult:
    gamma = tuple(gamma)
    semantic = consequence(gamma, goal, config).holds

    sb = build_simulation_base(gamma, goal)
    query = AtomicQuery.of((flatten(sb.map, phi) for phi in gamma), flatten(sb.map, goal))
    answer = derives(
        sb.base, query, config=config, prefer=sorted(contents_of([*gamma, goal]))
    )
    simulated = answer.derivable
    if semantic != simulated:
        logger.warning(
            "pipeline disagrees on %s |= %s: semantic=%s simulated=%s",
            ", ".join(map(to_text, gamma)),
            to_text(goal),
            semantic,
            simulated,
        )
    return PipelineResult(
        semantic, simulated, semantic == simulated, len(answer.universe), len(sb.base)
    )


class Judgement(NamedTuple):
    context: frozenset[Literal]
    goal: Goal


@dataclass(frozen=True)
class NaturalizeReport:
    checked: int
    failures: tuple[Judgement, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def naturalize_check(
    sb: SimulationBase, samples: int, seed: int, config: Config = DEFAULT_CONFIG
) -> NaturalizeReport:
    """Derivable judgements of ``sb.base``, sharpened back to formulae, are classical consequences.

    Each sample runs a random query with tracing on; the judgement checked is
    a seeded choice among the steps its replay certifies.
    """
    rng = Random(seed)
    literals = sorted(sb.map.range())
    goals: list[Goal] = [*literals, ABSURD]
    checked = 0
    failures: list[Judgement] = []

    for _ in range(samples):
        context = frozenset(rng.sample(literals, rng.randint(0, min(2, len(literals)))))
        query = AtomicQuery(context, rng.choice(goals))
        answer = derives(sb.base, query, trace=True, config=config)
        assert answer.trace is not None
        judgements = [Judgement(*pair) for pair in replay(sb.base, query, answer.trace).judgements]
        if answer.derivable:
            judgements.append(Judgement(query.context, query.goal))
        if not judgements:
            continue

        judgement = rng.choice(judgements)
        premises = [sharpen(sb.map, literal) for literal in sorted(judgement.context)]
        conclusion = sharpen_goal(sb.map, judgement.goal)
        checked += 1
        if not consequence(premises, conclusion, config).holds:
            failures.append(judgement)

    logger.info("naturalize: %d judgements checked, %d failures", checked, len(failures))
    return NaturalizeReport(checked, tuple(failures))


def format_map(m: FlattenMap) -> str:
    return "".join(f"{literal}\t{to_text(phi)}\n" for literal, phi in m.items())
