from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .bases import (
    ABSURD,
    AtomicQuery,
    AtomicRule,
    Base,
    DerivationAnswer,
    Goal,
    StepKind,
    TraceStep,
)
from .config import DEFAULT_CONFIG, Config
from .engines import BaseEngine
from .engines.intuitionistic import IntuitionisticEngine
from .engines.oracle import ClosureOracle
from .engines.refutation import RefutationEngine
from .engines.saturation import SaturationEngine
from .syntax import Content, Literal

__all__ = [
    "BaseEngine",
    "ClosureOracle",
    "IntuitionisticEngine",
    "RefutationEngine",
    "SaturationEngine",
    "derives",
    "derives_oracle",
    "derives_saturation",
    "replay",
    "replay_trace",
]


def derives(
    b: Base,
    q: AtomicQuery,
    classical: bool = True,
    trace: bool = False,
    config: Config = DEFAULT_CONFIG,
    prefer: Iterable[Content] = (),
) -> DerivationAnswer:
    if not classical:
        return IntuitionisticEngine(config).derives(b, q)
    return RefutationEngine(config, trace=trace, prefer=prefer).derives(b, q)


def derives_oracle(
    b: Base, q: AtomicQuery, extra_fresh_pairs: int = 0, config: Config = DEFAULT_CONFIG
) -> DerivationAnswer:
    return ClosureOracle(config, extra_fresh_pairs).derives(b, q)


def derives_saturation(
    b: Base, q: AtomicQuery, config: Config = DEFAULT_CONFIG, order_seed: int | None = None
) -> DerivationAnswer:
    return SaturationEngine(config, order_seed).derives(b, q)


class TraceError(ValueError):
    def __init__(self, step_number: int, step: TraceStep, reason: str) -> None:
        self.step_number = step_number
        self.step = step
        super().__init__(f"step {step_number} ({step.kind.value}): {reason}")


@dataclass(frozen=True)
class Replay:
    derivable: bool
    # (L, l) pairs the trace shows derivable, in trace order
    judgements: tuple[tuple[frozenset[Literal], Goal], ...]


def _subrule_holds(subrule: tuple[frozenset[Literal], Literal], known: set[Literal]) -> bool:
    hypotheses, premise = subrule
    return premise in known or any(h.dual in known for h in hypotheses)


def _justify(step: TraceStep, b: Base, q: AtomicQuery, known: set[Literal]) -> str | None:
    """Why ``step`` is not justified by ``known``, or None when it is."""
    rule: AtomicRule | None = step.rule
    match step.kind:
        case StepKind.REF:
            if step.branch or not set(step.added) <= q.context:
                return "REF adds a literal outside the query context"
        case StepKind.NEGATE:
            if step.branch or not isinstance(q.goal, Literal) or step.added != (q.goal.dual,):
                return "NEGATE must assume the dual of the goal at the root"
        case StepKind.APP:
            if rule is None or rule not in b.rules:
                return "APP names a rule outside the base"
            if not all(_subrule_holds(sub, known) for sub in rule.subrules):
                return f"{rule} has an unmet subrule"
            if step.added != (rule.head,):
                return f"{rule} concludes {rule.head}"
        case StepKind.CONTRA:
            if rule is None or rule not in b.rules or step.subrule is None:
                return "CONTRA names a rule outside the base"
            if rule.head.dual not in known:
                return f"the head of {rule} is not refuted"
            others = [s for i, s in enumerate(rule.subrules) if i != step.subrule]
            if not all(_subrule_holds(sub, known) for sub in others):
                return f"{rule} leaves more than one subrule open"
            hypotheses, premise = rule.subrules[step.subrule]
            if set(step.added) != (set(hypotheses) | {premise.dual}) - known:
                return "CONTRA adds the wrong literals"
        case StepKind.ABS:
            if len(step.added) != 1 or not {step.added[0], step.added[0].dual} <= known:
                return "ABS without a clashing pair"
        case StepKind.OPEN:
            pass
    return None


def replay(b: Base, q: AtomicQuery, trace: Iterable[TraceStep]) -> Replay:
    """Re-check every step of a refutation trace; raises TraceError on the first bad one."""
    assignments: dict[tuple[Literal, ...], set[Literal]] = {(): set()}
    children: dict[tuple[Literal, ...], list[tuple[Literal, ...]]] = defaultdict(list)
    closed: set[tuple[Literal, ...]] = set()
    opened: set[tuple[Literal, ...]] = set()
    judgements: list[tuple[frozenset[Literal], Goal]] = []

    for number, step in enumerate(trace):
        if step.kind is StepKind.SPLIT:
            parent = step.branch[:-1]
            if parent not in assignments or parent in closed or len(step.added) != 1:
                raise TraceError(number, step, "split of an unknown or closed branch")
            assignments[step.branch] = assignments[parent] | {step.branch[-1]}
            children[parent].append(step.branch)
            continue

        known = assignments.get(step.branch)
        if known is None or step.branch in closed:
            raise TraceError(number, step, "step on an unknown or closed branch")
        reason = _justify(step, b, q, known)
        if reason is not None:
            raise TraceError(number, step, reason)

        if step.kind in (StepKind.APP, StepKind.CONTRA):
            before = frozenset(known)
            judgements.extend((before, literal) for literal in step.added)
        elif step.kind is StepKind.ABS:
            judgements.append((frozenset(known), ABSURD))
            closed.add(step.branch)
        elif step.kind is StepKind.OPEN:
            opened.add(step.branch)
        known.update(step.added)

    def is_closed(branch: tuple[Literal, ...]) -> bool:
        if branch in closed:
            return True
        kids = children.get(branch, [])
        return bool(kids) and all(is_closed(kid) for kid in kids)

    return Replay(is_closed(()) and not opened, tuple(judgements))


def replay_trace(b: Base, q: AtomicQuery, answer: DerivationAnswer) -> bool:
    if answer.trace is None:
        return False
    try:
        return replay(b, q, answer.trace).derivable == answer.derivable
    except TraceError:
        return False
