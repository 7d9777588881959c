"""Derivability from REF and rule application alone.

Without ABS and DM nothing ever concludes absurdity, so a ``bot`` goal is
never derivable here.
"""

import logging

from ..bases import AtomicQuery, Base, DerivationAnswer
from ..config import DEFAULT_CONFIG, Config
from ..syntax import Literal
from ..universe import LiteralIndex
from . import BaseEngine

logger = logging.getLogger(__name__)


class IntuitionisticEngine(BaseEngine):
    name = "intuitionistic"

    def __init__(self, config: Config = DEFAULT_CONFIG) -> None:
        self.config = config

    def derives(self, b: Base, q: AtomicQuery) -> DerivationAnswer:
        universe = self.universe(b, q, self.config.max_universe)
        if not isinstance(q.goal, Literal):
            return DerivationAnswer(False, universe)

        index = LiteralIndex.of_literals(universe)
        axioms = 0
        rules: list[tuple[tuple[tuple[int, int], ...], int]] = []
        for rule in b:
            if rule.is_axiom:
                axioms |= index.bit(rule.head)
                continue
            subrules = tuple(
                (index.encode(hypotheses), index.bit(premise))
                for hypotheses, premise in rule.subrules
            )
            rules.append((subrules, index.bit(rule.head)))

        start = index.encode(q.context)
        # only contexts some rule application asks about are ever visited
        derived: dict[int, int] = {start: start | axioms}
        changed = True
        while changed:
            changed = False
            for context in list(derived):
                known = derived[context]
                for subrules, head in rules:
                    if known & head:
                        continue
                    applicable = True
                    for hypotheses, premise in subrules:
                        extended = context | hypotheses
                        if extended not in derived:
                            derived[extended] = extended | axioms
                            changed = True
                        if not derived[extended] & premise:
                            applicable = False
                            break
                    if applicable:
                        known |= head
                if known != derived[context]:
                    derived[context] = known
                    changed = True

        logger.debug("%s: %d contexts visited", q, len(derived))
        return DerivationAnswer(bool(derived[start] & index.bit(q.goal)), universe)
