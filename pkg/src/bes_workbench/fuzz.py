import logging
from random import Random
from typing import Callable, Iterable

from .calculus import CheckedProof, ProofNode, Rule, check
from .errors import ProofError
from .syntax import BOT, TOP, And, Content, Formula, Imp, Or, dual, random_formula

logger = logging.getLogger(__name__)

Scope = list[tuple[int, Formula]]

RULE_WEIGHTS: dict[str, int] = {
    "and_i": 2,
    "and_e": 1,
    "or_i": 2,
    "or_e": 1,
    "imp_i": 3,
    "imp_e": 2,
    "exc": 1,
    "dm": 2,
    "bot_e": 1,
}
CLASSICAL_ROOTS: tuple[str, ...] = ("dm", "exc", "bot_e")
# every n-th proof is rooted in a classical rule
CLASSICAL_EVERY: int = 4


class DerivationGenerator:
    """Builds checked NK± derivations bottom-up by forward rule application."""

    def __init__(self, rng: Random, signature: Iterable[Content], formula_depth: int = 2):
        self.rng = rng
        self.signature = sorted(signature)
        if not self.signature:
            raise ValueError("The signature must contain at least one content.")
        self.formula_depth = formula_depth
        self._label = 0

    def formula(self) -> Formula:
        return random_formula(self.rng, self.signature, self.formula_depth)

    def fresh_label(self) -> int:
        self._label += 1
        return self._label

    def generate(self, max_depth: int, classical: bool = False) -> ProofNode:
        self._label = 0
        if classical:
            return self._apply(self.rng.choice(CLASSICAL_ROOTS), max_depth, [])
        return self.derive(max_depth, [])

    def derive(self, budget: int, scope: Scope) -> ProofNode:
        if budget <= 1:
            return self.leaf(scope)
        names = list(RULE_WEIGHTS)
        name = self.rng.choices(names, weights=[RULE_WEIGHTS[n] for n in names])[0]
        return self._apply(name, budget, scope)

    def _apply(self, name: str, budget: int, scope: Scope) -> ProofNode:
        build: Callable[[int, Scope], ProofNode] = getattr(self, f"_{name}")
        return build(budget, scope)

    def leaf(self, scope: Scope) -> ProofNode:
        roll = self.rng.random()
        if scope and roll < 0.5:
            label, phi = self.rng.choice(scope)
            return ProofNode(Rule.HYP, phi, hyp_label=label)
        if roll < 0.6:
            return ProofNode(Rule.TOP_I, TOP)
        return ProofNode(Rule.ASSUME, self.formula())

    def proof_of(self, phi: Formula, scope: Scope) -> ProofNode:
        for label, hypothesis in scope:
            if hypothesis == phi:
                return ProofNode(Rule.HYP, phi, hyp_label=label)
        return ProofNode(Rule.TOP_I, TOP) if phi == TOP else ProofNode(Rule.ASSUME, phi)

    def _and_i(self, budget: int, scope: Scope) -> ProofNode:
        left = self.derive(budget - 1, scope)
        right = self.derive(budget - 1, scope)
        return ProofNode(Rule.AND_I, And(left.conclusion, right.conclusion), (left, right))

    def _and_e(self, budget: int, scope: Scope) -> ProofNode:
        premise = self.derive(budget - 1, scope)
        if not isinstance(premise.conclusion, And):
            other = self.derive(budget - 1, scope)
            return ProofNode(
                Rule.AND_I, And(premise.conclusion, other.conclusion), (premise, other)
            )
        if self.rng.random() < 0.5:
            return ProofNode(Rule.AND_E1, premise.conclusion.left, (premise,))
        return ProofNode(Rule.AND_E2, premise.conclusion.right, (premise,))

    def _or_i(self, budget: int, scope: Scope) -> ProofNode:
        premise = self.derive(budget - 1, scope)
        if self.rng.random() < 0.5:
            return ProofNode(Rule.OR_I1, Or(premise.conclusion, self.formula()), (premise,))
        return ProofNode(Rule.OR_I2, Or(self.formula(), premise.conclusion), (premise,))

    def _imp_i(self, budget: int, scope: Scope) -> ProofNode:
        label, phi = self.fresh_label(), self.formula()
        body = self.derive(budget - 1, [*scope, (label, phi)])
        return ProofNode(Rule.IMP_I, Imp(phi, body.conclusion), (body,), discharge=label)

    def _imp_e(self, budget: int, scope: Scope) -> ProofNode:
        major = self.derive(budget - 1, scope)
        if not isinstance(major.conclusion, Imp):
            return self._imp_i(budget, scope)
        minor = self.proof_of(major.conclusion.left, scope)
        return ProofNode(Rule.IMP_E, major.conclusion.right, (major, minor))

    def _exc(self, budget: int, scope: Scope) -> ProofNode:
        premise = self.derive(budget - 1, scope)
        opposite = self.proof_of(dual(premise.conclusion), scope)
        premises = (premise, opposite) if self.rng.random() < 0.5 else (opposite, premise)
        return ProofNode(Rule.EXC, BOT, premises)

    def _bot_e(self, budget: int, scope: Scope) -> ProofNode:
        absurd = self._exc(budget - 1, scope)
        return ProofNode(Rule.BOT_E, self.formula(), (absurd,))

    def _dm(self, budget: int, scope: Scope) -> ProofNode:
        label, phi = self.fresh_label(), self.formula()
        inner = [*scope, (label, phi)]
        if budget <= 2 or self.rng.random() < 0.5:
            hypothesis = ProofNode(Rule.HYP, phi, hyp_label=label)
            absurd = ProofNode(
                Rule.EXC, BOT, (hypothesis, self.proof_of(dual(phi), scope))
            )
        else:
            absurd = self._exc(budget - 1, inner)
        return ProofNode(Rule.DM, dual(phi), (absurd,), discharge=label, formula=phi)

    def _or_e(self, budget: int, scope: Scope) -> ProofNode:
        major = self.derive(budget - 1, scope)
        if not isinstance(major.conclusion, Or):
            major = ProofNode(Rule.OR_I1, Or(major.conclusion, self.formula()), (major,))
        assert isinstance(major.conclusion, Or)
        label = self.fresh_label()
        first = self.derive(budget - 1, [*scope, (label, major.conclusion.left)])
        goal = first.conclusion
        if self.rng.random() < 0.5:
            hypothesis = ProofNode(Rule.HYP, major.conclusion.right, hyp_label=label)
            absurd = ProofNode(
                Rule.EXC,
                BOT,
                (hypothesis, self.proof_of(dual(major.conclusion.right), scope)),
            )
            second = ProofNode(Rule.BOT_E, goal, (absurd,))
        else:
            second = self.proof_of(goal, scope)
        return ProofNode(Rule.OR_E, goal, (major, first, second), discharge=label)


def fuzz_derivations(
    seed: int, count: int, signature: Iterable[Content], max_depth: int
) -> list[CheckedProof]:
    generator = DerivationGenerator(Random(seed), signature)
    proofs: list[CheckedProof] = []
    for index in range(count):
        node = generator.generate(max_depth, classical=index % CLASSICAL_EVERY == 0)
        try:
            proofs.append(check(node))
        except ProofError as error:
            raise RuntimeError(
                "Something went wrong, a generated derivation failed its check..."
            ) from error
    classical = sum(proof.root.uses_classical_rules() for proof in proofs)
    logger.info("fuzzed %d derivations, %d use DM or EXC", count, classical)
    return proofs
