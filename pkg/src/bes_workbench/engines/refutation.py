"""Classical derivability in a finite base, decided by refutation.

``L |-_B l`` holds exactly when ``L`` together with the rules of ``B``, each
read as ``(L1 -> l1) & ... & (Ln -> ln) -> l``, classically entails ``l``.
The engine refutes ``L + {dual(l)}`` by unit propagation over the rules and
case splits on undecided contents; a branch that survives is a countermodel.
Cost grows with the branches explored rather than with the context lattice.
"""

import logging
from typing import Iterable, NamedTuple

from ..bases import (
    AtomicQuery,
    AtomicRule,
    Base,
    DerivationAnswer,
    StepKind,
    TraceStep,
)
from ..config import DEFAULT_CONFIG, Config
from ..syntax import Content, Literal
from ..universe import LiteralIndex
from . import BaseEngine

logger = logging.getLogger(__name__)


class CompiledSubrule(NamedTuple):
    hypotheses: int
    hypotheses_dual: int
    premise: int
    premise_dual: int


class CompiledRule(NamedTuple):
    rule: AtomicRule
    subrules: tuple[CompiledSubrule, ...]
    head: int
    head_dual: int
    support: int


def compile_rules(b: Base, index: LiteralIndex) -> list[CompiledRule]:
    compiled: list[CompiledRule] = []
    for rule in b:
        subrules = tuple(
            CompiledSubrule(
                index.encode(hypotheses),
                index.swap(index.encode(hypotheses)),
                index.bit(premise),
                index.swap(index.bit(premise)),
            )
            for hypotheses, premise in rule.subrules
        )
        head = index.bit(rule.head)
        support = index.encode(rule.literals())
        compiled.append(
            CompiledRule(rule, subrules, head, index.swap(head), support | index.swap(support))
        )
    return compiled


class _Refutation:
    def __init__(self, index: LiteralIndex, rules: list[CompiledRule], record: bool):
        self.index = index
        self.rules = rules
        self.steps: list[TraceStep] | None = [] if record else None
        self.branches = 0

    def log(
        self,
        kind: StepKind,
        branch: tuple[Literal, ...],
        added: int = 0,
        rule: AtomicRule | None = None,
        subrule: int | None = None,
    ) -> None:
        if self.steps is None:
            return
        literals = tuple(sorted(self.index.decode(added)))
        self.steps.append(TraceStep(kind, branch, literals, rule, subrule))

    def close_if_clashing(self, mask: int, branch: tuple[Literal, ...]) -> bool:
        clash = self.index.clashes(mask)
        if not clash:
            return False
        self.log(StepKind.ABS, branch, clash & -clash)
        return True

    def propagate(self, mask: int, branch: tuple[Literal, ...]) -> tuple[int, bool]:
        changed = True
        while changed:
            changed = False
            for compiled in self.rules:
                if mask & compiled.head:
                    continue
                open_subrule, pending, falsified = -1, 0, False
                for position, sub in enumerate(compiled.subrules):
                    if mask & sub.premise or mask & sub.hypotheses_dual:
                        continue
                    if mask & sub.premise_dual and mask & sub.hypotheses == sub.hypotheses:
                        falsified = True
                        break
                    open_subrule, pending = position, pending + 1
                if falsified:
                    continue
                if pending == 0:
                    mask |= compiled.head
                    self.log(StepKind.APP, branch, compiled.head, compiled.rule)
                elif pending == 1 and mask & compiled.head_dual:
                    sub = compiled.subrules[open_subrule]
                    added = (sub.hypotheses | sub.premise_dual) & ~mask
                    mask |= added
                    self.log(StepKind.CONTRA, branch, added, compiled.rule, open_subrule)
                else:
                    continue
                changed = True
                if self.close_if_clashing(mask, branch):
                    return mask, True
        return mask, False

    def split_position(self, mask: int) -> int | None:
        """Lowest-indexed undecided content mentioned by a rule not yet satisfied."""
        pending = 0
        for compiled in self.rules:
            if mask & compiled.head:
                continue
            if any(
                mask & sub.premise_dual and mask & sub.hypotheses == sub.hypotheses
                for sub in compiled.subrules
            ):
                continue
            pending |= compiled.support
        candidates = self.index.decided(pending) & ~self.index.decided(mask)
        if not candidates:
            return None
        return (candidates & -candidates).bit_length() - 1

    def search(self, mask: int, branch: tuple[Literal, ...]) -> int | None:
        """A complete countermodel extending ``mask``, or None when every branch closes."""
        self.branches += 1
        mask, closed = self.propagate(mask, branch)
        if closed:
            return None
        position = self.split_position(mask)
        if position is None:
            self.log(StepKind.OPEN, branch)
            return self.index.complete(mask)
        for choice in (1 << position, 1 << (position + 1)):
            child = (*branch, self.index.literal(choice.bit_length() - 1))
            self.log(StepKind.SPLIT, child, choice)
            model = self.search(mask | choice, child)
            if model is not None:
                return model
        return None


class RefutationEngine(BaseEngine):
    name = "refutation"

    def __init__(
        self,
        config: Config = DEFAULT_CONFIG,
        trace: bool = False,
        prefer: Iterable[Content] = (),
    ) -> None:
        self.config = config
        self.trace = trace
        # contents to split on before any other
        self.prefer: tuple[Content, ...] = tuple(prefer)

    def derives(self, b: Base, q: AtomicQuery) -> DerivationAnswer:
        universe = self.universe(b, q, self.config.max_universe)
        index = LiteralIndex.of_literals(universe, first=self.prefer)
        refutation = _Refutation(index, compile_rules(b, index), self.trace)

        mask = 0
        for literal in sorted(q.context):
            mask |= index.bit(literal)
            refutation.log(StepKind.REF, (), index.bit(literal))
        if isinstance(q.goal, Literal):
            negated = index.bit(q.goal.dual)
            mask |= negated
            refutation.log(StepKind.NEGATE, (), negated)

        if refutation.close_if_clashing(mask, ()):
            model = None
        else:
            model = refutation.search(mask, ())

        logger.debug(
            "%s: %s in %d branches over %d literals",
            q,
            "derivable" if model is None else "not derivable",
            refutation.branches,
            len(universe),
        )
        return DerivationAnswer(
            derivable=model is None,
            universe=universe,
            trace=tuple(refutation.steps) if refutation.steps is not None else None,
            countermodel=None if model is None else index.decode(model),
        )
