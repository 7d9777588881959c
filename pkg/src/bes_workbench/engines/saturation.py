"""Least-fixpoint derivability by joint saturation over contexts.

Each context ``C`` with ``L <= C <= L + U`` keeps the set of conclusions
derived from it so far, starting from ``C`` itself (REF). Evaluating a context
applies APP to every rule, ABS to clashing pairs and DM through the contexts
``C + {m}``. A context goes back on the worklist whenever a context it read
from grows; the result is the least fixpoint whatever order the worklist is
drained in. Which contexts get visited does depend on that order.
"""

import logging
from collections import defaultdict
from random import Random

from ..bases import ABSURD, AtomicQuery, Base, DerivationAnswer, Goal
from ..config import DEFAULT_CONFIG, Config
from ..syntax import Literal
from ..universe import LiteralIndex
from . import BaseEngine

logger = logging.getLogger(__name__)

CompiledRules = list[tuple[tuple[tuple[int, int], ...], int]]


class _Worklist:
    def __init__(self, index: LiteralIndex, rules: CompiledRules, rng: Random | None):
        self.index = index
        self.rules = rules
        self.bottom = 1 << len(index)
        self.rng = rng
        self.derived: dict[int, int] = {}
        self.readers: defaultdict[int, set[int]] = defaultdict(set)
        self.pending: list[int] = []
        self.queued: set[int] = set()
        self.evaluations = 0

    def push(self, context: int) -> None:
        if context not in self.queued:
            self.queued.add(context)
            self.pending.append(context)

    def take(self) -> int:
        last = len(self.pending) - 1
        if self.rng is not None:
            chosen = self.rng.randint(0, last)
            self.pending[chosen], self.pending[last] = self.pending[last], self.pending[chosen]
        context = self.pending.pop()
        self.queued.discard(context)
        return context

    def read(self, reader: int, context: int) -> int:
        if context not in self.derived:
            self.derived[context] = context
            self.push(context)
        self.readers[context].add(reader)
        return self.derived[context]

    def evaluate(self, context: int) -> int:
        index = self.index
        after = self.derived[context]
        for subrules, head in self.rules:
            if after & head:
                continue
            if all(self.read(context, context | hyps) & premise for hyps, premise in subrules):
                after |= head
        if index.clashes(after):
            after |= self.bottom
        for position in range(len(index)):
            bit = 1 << position
            dual = index.swap(bit)
            if not after & dual and self.read(context, context | bit) & self.bottom:
                after |= dual
        return after

    def run(self, start: int) -> None:
        self.read(start, start)
        while self.pending:
            context = self.take()
            self.evaluations += 1
            after = self.evaluate(context)
            if after != self.derived[context]:
                self.derived[context] = after
                for reader in self.readers[context]:
                    self.push(reader)


class SaturationEngine(BaseEngine):
    name = "saturation"

    def __init__(self, config: Config = DEFAULT_CONFIG, order_seed: int | None = None) -> None:
        self.config = config
        # None drains the worklist last-in first-out; a seed drains it in random order
        self.order_seed = order_seed

    def _saturate(
        self, b: Base, q: AtomicQuery
    ) -> tuple[frozenset[Literal], LiteralIndex, _Worklist, int]:
        universe = self.universe(b, q, self.config.max_saturation_universe)
        index = LiteralIndex.of_literals(universe)
        rules: CompiledRules = [
            (
                tuple((index.encode(hyps), index.bit(premise)) for hyps, premise in rule.subrules),
                index.bit(rule.head),
            )
            for rule in b
        ]
        rng = None if self.order_seed is None else Random(self.order_seed)
        worklist = _Worklist(index, rules, rng)
        start = index.encode(q.context)
        worklist.run(start)
        logger.debug(
            "%s: %d contexts, %d evaluations",
            q,
            len(worklist.derived),
            worklist.evaluations,
        )
        return universe, index, worklist, start

    def saturate(self, b: Base, q: AtomicQuery) -> dict[frozenset[Literal], frozenset[Goal]]:
        """Every context reached, with everything derived from it."""
        _, index, worklist, _ = self._saturate(b, q)
        closure: dict[frozenset[Literal], frozenset[Goal]] = {}
        for context, derived in worklist.derived.items():
            goals: set[Goal] = set(index.decode(derived & index.full))
            if derived & worklist.bottom:
                goals.add(ABSURD)
            closure[index.decode(context)] = frozenset(goals)
        return closure

    def derives(self, b: Base, q: AtomicQuery) -> DerivationAnswer:
        universe, index, worklist, start = self._saturate(b, q)
        goal = index.bit(q.goal) if isinstance(q.goal, Literal) else worklist.bottom
        return DerivationAnswer(bool(worklist.derived[start] & goal), universe)
