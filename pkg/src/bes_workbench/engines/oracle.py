"""Naive closure: every context between the query's and the whole universe,
every rule, applied until nothing changes."""

import logging

from ..bases import AtomicQuery, Base, DerivationAnswer, dual_closure, relevant_universe
from ..config import DEFAULT_CONFIG, Config
from ..errors import ResourceLimitError
from ..syntax import Content, Literal
from ..universe import LiteralIndex
from ..utils import fresh_name
from . import BaseEngine

logger = logging.getLogger(__name__)

FRESH_PREFIX = "fresh"


class ClosureOracle(BaseEngine):
    name = "oracle"

    def __init__(self, config: Config = DEFAULT_CONFIG, extra_fresh_pairs: int = 0) -> None:
        if extra_fresh_pairs < 0:
            raise ValueError(f"{extra_fresh_pairs=} must not be negative.")
        self.config = config
        self.extra_fresh_pairs = extra_fresh_pairs

    def extended_universe(self, b: Base, q: AtomicQuery) -> frozenset[Literal]:
        universe = relevant_universe(b, q)
        taken = {literal.content.name for literal in universe}
        fresh: list[Literal] = []
        for _ in range(self.extra_fresh_pairs):
            name = fresh_name(FRESH_PREFIX, taken)
            taken.add(name)
            fresh.append(Literal(Content(name)))
        extended = universe | dual_closure(fresh)
        if len(extended) > self.config.max_oracle_universe:
            raise ResourceLimitError(
                "oracle universe", len(extended), self.config.max_oracle_universe
            )
        return extended

    def derives(self, b: Base, q: AtomicQuery) -> DerivationAnswer:
        universe = self.extended_universe(b, q)
        index = LiteralIndex.of_literals(universe)
        bottom = 1 << len(index)
        literal_bits = [1 << position for position in range(len(index))]
        rules = [
            (
                [(index.encode(hyps), index.bit(premise)) for hyps, premise in rule.subrules],
                index.bit(rule.head),
            )
            for rule in b
        ]

        start = index.encode(q.context)
        contexts = [start | sub for sub in index.submasks(index.full & ~start)]
        derived = {context: context for context in contexts}

        rounds = 0
        changed = True
        while changed:
            changed = False
            rounds += 1
            for context in contexts:
                before = derived[context]
                after = before
                for subrules, head in rules:
                    if all(derived[context | hyps] & premise for hyps, premise in subrules):
                        after |= head
                if index.clashes(after & ~bottom):
                    after |= bottom
                for bit in literal_bits:
                    if derived[context | bit] & bottom:
                        after |= index.swap(bit)
                if after != before:
                    derived[context] = after
                    changed = True

        goal = index.bit(q.goal) if isinstance(q.goal, Literal) else bottom
        logger.debug("%s: closure over %d contexts in %d rounds", q, len(contexts), rounds)
        return DerivationAnswer(bool(derived[start] & goal), universe)
