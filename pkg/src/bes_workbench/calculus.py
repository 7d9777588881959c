import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator

from .errors import (
    DischargeMismatchError,
    DualMismatchError,
    DuplicateLabelError,
    RuleShapeError,
    UnboundHypothesisError,
)
from .parser import parse
from .syntax import BOT, TOP, And, Formula, Imp, Or, cong, dual, to_text

logger = logging.getLogger(__name__)


class Rule(Enum):
    TOP_I = "TopI"
    BOT_E = "BotE"
    IMP_I = "ImpI"
    IMP_E = "ImpE"
    AND_I = "AndI"
    AND_E1 = "AndE1"
    AND_E2 = "AndE2"
    OR_I1 = "OrI1"
    OR_I2 = "OrI2"
    OR_E = "OrE"
    DM = "DM"
    EXC = "EXC"
    HYP = "Hyp"
    ASSUME = "Assume"


BINDERS = frozenset({Rule.IMP_I, Rule.OR_E, Rule.DM})
CLASSICAL = frozenset({Rule.DM, Rule.EXC})

ARITY: dict[Rule, int] = {
    Rule.TOP_I: 0,
    Rule.BOT_E: 1,
    Rule.IMP_I: 1,
    Rule.IMP_E: 2,
    Rule.AND_I: 2,
    Rule.AND_E1: 1,
    Rule.AND_E2: 1,
    Rule.OR_I1: 1,
    Rule.OR_I2: 1,
    Rule.OR_E: 3,
    Rule.DM: 1,
    Rule.EXC: 2,
    Rule.HYP: 0,
    Rule.ASSUME: 0,
}


class ProofSystem(Enum):
    NK_PM = "NK±"
    NJ = "NJ"


@dataclass(frozen=True)
class ProofNode:
    rule: Rule
    conclusion: Formula
    premises: tuple["ProofNode", ...] = ()
    discharge: int | None = None
    hyp_label: int | None = None
    # the discharged formula of a DM node, when stated explicitly
    formula: Formula | None = None

    def walk(self) -> Iterator["ProofNode"]:
        yield self
        for premise in self.premises:
            yield from premise.walk()

    @property
    def height(self) -> int:
        return 1 + max((premise.height for premise in self.premises), default=0)

    def rules(self) -> Counter[Rule]:
        return Counter(node.rule for node in self.walk())

    def uses_classical_rules(self) -> bool:
        return any(node.rule in CLASSICAL for node in self.walk())


@dataclass(frozen=True)
class CheckedProof:
    root: ProofNode
    open_assumptions: tuple[Formula, ...]
    system: ProofSystem = ProofSystem.NK_PM

    @property
    def conclusion(self) -> Formula:
        return self.root.conclusion


@dataclass
class _Binding:
    """What a discharge label stands for in the current scope."""

    formula: Formula | None
    binder_path: tuple[int, ...]
    leaves: list[tuple[int, ...]] = field(default_factory=list)


class _Checker:
    def __init__(self, system: ProofSystem) -> None:
        self.system = system
        self.open_assumptions: list[Formula] = []

    def check(
        self, node: ProofNode, path: tuple[int, ...], scope: dict[int, _Binding]
    ) -> None:
        rule = node.rule
        if self.system is ProofSystem.NJ and rule in CLASSICAL:
            raise RuleShapeError(path, f"{rule.value} is not a rule of NJ")
        if len(node.premises) != ARITY[rule]:
            raise RuleShapeError(
                path,
                f"{rule.value} takes {ARITY[rule]} premises, got {len(node.premises)}",
            )
        if node.discharge is not None and rule not in BINDERS:
            raise RuleShapeError(path, f"{rule.value} cannot discharge")

        handler = getattr(self, f"_check_{rule.name.lower()}")
        handler(node, path, scope)

    def _premise(
        self,
        node: ProofNode,
        index: int,
        path: tuple[int, ...],
        scope: dict[int, _Binding],
    ) -> Formula:
        self.check(node.premises[index], (*path, index), scope)
        return node.premises[index].conclusion

    def _bind(
        self,
        node: ProofNode,
        path: tuple[int, ...],
        scope: dict[int, _Binding],
        formula: Formula | None,
    ) -> tuple[dict[int, _Binding], _Binding | None]:
        if node.discharge is None:
            return scope, None
        if node.discharge <= 0:
            raise RuleShapeError(path, f"{node.discharge=} must be a positive integer")
        if node.discharge in scope:
            raise DuplicateLabelError(
                path, f"label {node.discharge} is already bound by an ancestor"
            )
        binding = _Binding(formula, path)
        return {**scope, node.discharge: binding}, binding

    def _expect(self, path: tuple[int, ...], actual: Formula, expected: Formula, what: str) -> None:
        if actual != expected:
            raise RuleShapeError(
                path, f"{what}: expected {to_text(expected)}, got {to_text(actual)}"
            )

    def _check_assume(self, node: ProofNode, path, scope) -> None:
        self.open_assumptions.append(node.conclusion)

    def _check_hyp(self, node: ProofNode, path, scope) -> None:
        if node.hyp_label is None or node.hyp_label not in scope:
            raise UnboundHypothesisError(
                path, f"unbound hypothesis label {node.hyp_label}"
            )
        binding = scope[node.hyp_label]
        if binding.formula is None:
            binding.formula = node.conclusion
        elif binding.formula != node.conclusion:
            raise DischargeMismatchError(
                path,
                f"hypothesis {to_text(node.conclusion)} does not match "
                f"{to_text(binding.formula)} discharged at label {node.hyp_label}",
            )
        binding.leaves.append(path)

    def _check_top_i(self, node: ProofNode, path, scope) -> None:
        self._expect(path, node.conclusion, TOP, "TopI conclusion")

    def _check_bot_e(self, node: ProofNode, path, scope) -> None:
        self._expect(path, self._premise(node, 0, path, scope), BOT, "BotE premise")

    def _check_imp_i(self, node: ProofNode, path, scope) -> None:
        if not isinstance(node.conclusion, Imp):
            raise RuleShapeError(path, "ImpI must conclude an implication")
        inner, _ = self._bind(node, path, scope, node.conclusion.left)
        body = self._premise(node, 0, path, inner)
        self._expect(path, body, node.conclusion.right, "ImpI premise")

    def _check_imp_e(self, node: ProofNode, path, scope) -> None:
        major = self._premise(node, 0, path, scope)
        minor = self._premise(node, 1, path, scope)
        if not isinstance(major, Imp):
            raise RuleShapeError(path, "ImpE major premise must be an implication")
        self._expect(path, minor, major.left, "ImpE minor premise")
        self._expect(path, node.conclusion, major.right, "ImpE conclusion")

    def _check_and_i(self, node: ProofNode, path, scope) -> None:
        left = self._premise(node, 0, path, scope)
        right = self._premise(node, 1, path, scope)
        self._expect(path, node.conclusion, And(left, right), "AndI conclusion")

    def _check_and_e(self, node: ProofNode, path, scope, side: int) -> None:
        premise = self._premise(node, 0, path, scope)
        if not isinstance(premise, And):
            raise RuleShapeError(path, f"{node.rule.value} premise must be a conjunction")
        self._expect(
            path,
            node.conclusion,
            premise.left if side == 1 else premise.right,
            f"{node.rule.value} conclusion",
        )

    def _check_and_e1(self, node: ProofNode, path, scope) -> None:
        self._check_and_e(node, path, scope, 1)

    def _check_and_e2(self, node: ProofNode, path, scope) -> None:
        self._check_and_e(node, path, scope, 2)

    def _check_or_i(self, node: ProofNode, path, scope, side: int) -> None:
        premise = self._premise(node, 0, path, scope)
        if not isinstance(node.conclusion, Or):
            raise RuleShapeError(path, f"{node.rule.value} must conclude a disjunction")
        disjunct = node.conclusion.left if side == 1 else node.conclusion.right
        self._expect(path, premise, disjunct, f"{node.rule.value} premise")

    def _check_or_i1(self, node: ProofNode, path, scope) -> None:
        self._check_or_i(node, path, scope, 1)

    def _check_or_i2(self, node: ProofNode, path, scope) -> None:
        self._check_or_i(node, path, scope, 2)

    def _check_or_e(self, node: ProofNode, path, scope) -> None:
        major = self._premise(node, 0, path, scope)
        if not isinstance(major, Or):
            raise RuleShapeError(path, "OrE major premise must be a disjunction")
        for index, disjunct in ((1, major.left), (2, major.right)):
            inner, _ = self._bind(node, path, scope, disjunct)
            branch = self._premise(node, index, path, inner)
            self._expect(path, branch, node.conclusion, f"OrE branch {index}")

    def _check_dm(self, node: ProofNode, path, scope) -> None:
        inner, binding = self._bind(node, path, scope, node.formula)
        self._expect(path, self._premise(node, 0, path, inner), BOT, "DM premise")
        discharged = binding.formula if binding is not None else node.formula
        if discharged is None:
            return  # vacuous: nothing discharged, nothing to compare
        if not cong(node.conclusion, dual(discharged)):
            raise DualMismatchError(
                path,
                f"DM conclusion {to_text(node.conclusion)} is not congruent to "
                f"the dual of {to_text(discharged)}",
            )

    def _check_exc(self, node: ProofNode, path, scope) -> None:
        first = self._premise(node, 0, path, scope)
        second = self._premise(node, 1, path, scope)
        self._expect(path, node.conclusion, BOT, "EXC conclusion")
        if not (cong(second, dual(first)) or cong(first, dual(second))):
            raise DualMismatchError(
                path,
                f"EXC premises {to_text(first)} and {to_text(second)} are not duals",
            )


def check(p: ProofNode, system: ProofSystem = ProofSystem.NK_PM) -> CheckedProof:
    checker = _Checker(system)
    checker.check(p, (), {})
    return CheckedProof(p, tuple(checker.open_assumptions), system)


# ---- proof scripts ----


def _field(data: dict[str, Any], key: str, kind: type, rule: Rule) -> Any:
    value = data.get(key)
    if value is None:
        return None
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ValueError(
            f"{rule.value} field {key!r} must be {kind.__name__}, got {value!r}"
        )
    return value


def proof_from_dict(data: dict[str, Any]) -> ProofNode:
    if not isinstance(data, dict):
        raise ValueError(f"proof node must be a json object, got {type(data).__name__}")
    try:
        rule = Rule(data["rule"])
    except (KeyError, ValueError, TypeError) as error:
        raise ValueError(f"unknown or missing rule in {data!r}") from error

    formula_text = _field(data, "formula", str, rule)
    conclusion_text = _field(data, "conclusion", str, rule)
    premises = _field(data, "premises", list, rule) or []
    formula = parse(formula_text) if formula_text is not None else None
    if conclusion_text is not None:
        conclusion = parse(conclusion_text)
    elif rule is Rule.ASSUME and formula is not None:
        conclusion = formula
    elif rule is Rule.EXC:
        conclusion = BOT
    else:
        raise ValueError(f"{rule.value} node without a conclusion")
    if rule is Rule.ASSUME:
        if formula is not None and formula != conclusion:
            raise ValueError(f"Assume formula and conclusion disagree in {data!r}")
        formula = None

    return ProofNode(
        rule=rule,
        conclusion=conclusion,
        premises=tuple(proof_from_dict(premise) for premise in premises),
        discharge=_field(data, "discharge", int, rule),
        hyp_label=_field(data, "label", int, rule),
        formula=formula,
    )


def proof_to_dict(p: ProofNode) -> dict[str, Any]:
    data: dict[str, Any] = {"rule": p.rule.value, "conclusion": to_text(p.conclusion)}
    if p.rule is Rule.ASSUME:
        data["formula"] = to_text(p.conclusion)
    if p.formula is not None:
        data["formula"] = to_text(p.formula)
    if p.discharge is not None:
        data["discharge"] = p.discharge
    if p.hyp_label is not None:
        data["label"] = p.hyp_label
    if p.premises:
        data["premises"] = [proof_to_dict(premise) for premise in p.premises]
    return data


def proof_from_json(text: str) -> ProofNode:
    return proof_from_dict(json.loads(text))


def proof_to_json(p: ProofNode, indent: int | None = 2) -> str:
    return json.dumps(proof_to_dict(p), indent=indent)


def load_proof(filepath: str) -> ProofNode:
    with open(filepath, "r", encoding="utf-8") as f:
        return proof_from_json(f.read())