import copy
import json
import os
from dataclasses import replace
from random import Random

import pytest

from src.bes_workbench.calculus import (
    ProofNode,
    ProofSystem,
    Rule,
    check,
    load_proof,
    proof_from_dict,
    proof_from_json,
    proof_to_json,
)
from src.bes_workbench.errors import (
    DischargeMismatchError,
    DualMismatchError,
    DuplicateLabelError,
    ProofError,
    RuleShapeError,
    UnboundHypothesisError,
)
from src.bes_workbench.fuzz import fuzz_derivations
from src.bes_workbench.parser import parse
from src.bes_workbench.syntax import BOT, TOP, And, Content, Imp, Or, dual, neg_lit, pos

from . import PEIRCE

PEIRCE_PATH = os.path.join(os.path.dirname(__file__), "..", "data", "peirce.proof.json")

a, b = pos("a"), pos("b")
SIGNATURE = [Content("a"), Content("b")]


def peirce_script() -> dict:
    with open(PEIRCE_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


def test_peirce_golden_proof():
    checked = check(load_proof(PEIRCE_PATH))
    assert checked.conclusion == PEIRCE
    assert checked.open_assumptions == ()
    assert checked.root.uses_classical_rules()
    assert checked.root.rules()[Rule.EXC] == 2


def test_peirce_without_dm_discharge():
    script = peirce_script()
    del script["premises"][0]["discharge"]
    with pytest.raises(UnboundHypothesisError) as info:
        check(proof_from_dict(script))
    assert "unbound hypothesis label" in str(info.value)


def test_peirce_with_non_dual_exc_premise():
    script = peirce_script()
    inner_exc = script["premises"][0]["premises"][0]["premises"][1]["premises"][1][
        "premises"
    ][0]["premises"][0]
    assert inner_exc["rule"] == "EXC"
    inner_exc["premises"][1] = {"rule": "Assume", "formula": "b-"}
    with pytest.raises(DualMismatchError):
        check(proof_from_dict(script))


def test_peirce_with_changed_conclusion():
    script = peirce_script()
    script["conclusion"] = "((a+ -> b+) -> a+) -> b+"
    with pytest.raises(RuleShapeError):
        check(proof_from_dict(script))


def test_exc_of_assumptions():
    node = ProofNode(
        Rule.EXC, BOT, (ProofNode(Rule.ASSUME, a), ProofNode(Rule.ASSUME, neg_lit("a")))
    )
    checked = check(node)
    assert checked.open_assumptions == (a, neg_lit("a"))


def test_exc_accepts_either_order():
    phi = Imp(a, b)
    node = ProofNode(
        Rule.EXC, BOT, (ProofNode(Rule.ASSUME, dual(phi)), ProofNode(Rule.ASSUME, phi))
    )
    assert check(node).conclusion == BOT


def test_exc_up_to_congruence():
    # dual(a -> b) is a & b-, and a- | b is congruent to a -> b
    node = ProofNode(
        Rule.EXC,
        BOT,
        (ProofNode(Rule.ASSUME, Or(neg_lit("a"), b)), ProofNode(Rule.ASSUME, And(a, neg_lit("b")))),
    )
    check(node)


def test_implication_intro_and_elim():
    hyp = ProofNode(Rule.HYP, a, hyp_label=1)
    identity = ProofNode(Rule.IMP_I, Imp(a, a), (hyp,), discharge=1)
    assert check(identity).open_assumptions == ()

    modus_ponens = ProofNode(
        Rule.IMP_E, b, (ProofNode(Rule.ASSUME, Imp(a, b)), ProofNode(Rule.ASSUME, a))
    )
    assert check(modus_ponens).open_assumptions == (Imp(a, b), a)


def test_vacuous_discharge():
    node = ProofNode(Rule.IMP_I, Imp(b, TOP), (ProofNode(Rule.TOP_I, TOP),), discharge=1)
    assert check(node).conclusion == Imp(b, TOP)


def test_discharge_mismatch():
    node = ProofNode(
        Rule.IMP_I, Imp(a, a), (ProofNode(Rule.HYP, b, hyp_label=1),), discharge=1
    )
    with pytest.raises(DischargeMismatchError):
        check(node)


def test_duplicate_label():
    inner = ProofNode(
        Rule.IMP_I, Imp(b, a), (ProofNode(Rule.HYP, a, hyp_label=1),), discharge=1
    )
    outer = ProofNode(Rule.IMP_I, Imp(a, Imp(b, a)), (inner,), discharge=1)
    with pytest.raises(DuplicateLabelError):
        check(outer)


def test_conjunction_rules():
    pair = ProofNode(Rule.AND_I, And(a, b), (ProofNode(Rule.ASSUME, a), ProofNode(Rule.ASSUME, b)))
    check(pair)
    check(ProofNode(Rule.AND_E2, b, (pair,)))
    with pytest.raises(RuleShapeError):
        check(ProofNode(Rule.AND_E1, b, (pair,)))


def test_disjunction_elimination():
    # a | b, a -> b |- b
    major = ProofNode(Rule.ASSUME, Or(a, b))
    left = ProofNode(
        Rule.IMP_E,
        b,
        (ProofNode(Rule.ASSUME, Imp(a, b)), ProofNode(Rule.HYP, a, hyp_label=1)),
    )
    right = ProofNode(Rule.HYP, b, hyp_label=1)
    checked = check(ProofNode(Rule.OR_E, b, (major, left, right), discharge=1))
    assert checked.open_assumptions == (Or(a, b), Imp(a, b))


def test_disjunction_intro():
    check(ProofNode(Rule.OR_I2, Or(a, b), (ProofNode(Rule.ASSUME, b),)))
    with pytest.raises(RuleShapeError):
        check(ProofNode(Rule.OR_I1, Or(a, b), (ProofNode(Rule.ASSUME, b),)))


def test_dm_concludes_dual_up_to_congruence():
    # a- | b is refuted by a & b-, so DM may conclude a & b-
    refutation = ProofNode(
        Rule.EXC,
        BOT,
        (ProofNode(Rule.HYP, Or(neg_lit("a"), b), hyp_label=1), ProofNode(Rule.ASSUME, And(a, neg_lit("b")))),
    )
    dm = ProofNode(Rule.DM, And(a, neg_lit("b")), (refutation,), discharge=1)
    check(dm)

    wrong = ProofNode(Rule.DM, Or(a, b), (refutation,), discharge=1)
    with pytest.raises(DualMismatchError):
        check(wrong)


def test_dm_with_formula_and_no_leaves():
    absurd = ProofNode(
        Rule.EXC, BOT, (ProofNode(Rule.ASSUME, b), ProofNode(Rule.ASSUME, neg_lit("b")))
    )
    check(ProofNode(Rule.DM, neg_lit("a"), (absurd,), discharge=1, formula=a))
    with pytest.raises(DualMismatchError):
        check(ProofNode(Rule.DM, a, (absurd,), discharge=1, formula=a))


def test_wrong_arity():
    with pytest.raises(RuleShapeError) as info:
        check(ProofNode(Rule.AND_I, And(a, b), (ProofNode(Rule.ASSUME, a),)))
    assert info.value.path == ()


def test_error_paths():
    bad = ProofNode(Rule.BOT_E, a, (ProofNode(Rule.ASSUME, b),))
    node = ProofNode(Rule.AND_I, And(a, a), (ProofNode(Rule.ASSUME, a), bad))
    with pytest.raises(ProofError) as info:
        check(node)
    assert info.value.path == (1,)
    assert str(info.value).startswith("root.1:")


def test_nj_rejects_classical_rules():
    with pytest.raises(RuleShapeError):
        check(load_proof(PEIRCE_PATH), ProofSystem.NJ)
    hyp = ProofNode(Rule.HYP, a, hyp_label=1)
    check(ProofNode(Rule.IMP_I, Imp(a, a), (hyp,), discharge=1), ProofSystem.NJ)


def test_script_round_trip():
    node = load_proof(PEIRCE_PATH)
    assert proof_from_json(proof_to_json(node)) == node
    again = copy.deepcopy(peirce_script())
    assert proof_from_dict(again) == node


def test_script_errors():
    with pytest.raises(ValueError):
        proof_from_dict({"rule": "Cut", "conclusion": "a"})
    with pytest.raises(ValueError):
        proof_from_dict({"rule": "AndI"})
    assert proof_from_dict({"rule": "Assume", "formula": "a -> b"}).conclusion == parse("a -> b")


def test_script_field_types():
    with pytest.raises(ValueError):
        proof_from_json('[{"rule": "TopI", "conclusion": "top"}]')
    with pytest.raises(ValueError):
        proof_from_dict({"rule": "ImpI", "conclusion": "a -> a", "discharge": "1"})
    with pytest.raises(ValueError):
        proof_from_dict({"rule": "Hyp", "conclusion": "a", "label": True})
    with pytest.raises(ValueError):
        proof_from_dict({"rule": "Assume", "conclusion": 3})
    with pytest.raises(ValueError):
        proof_from_dict({"rule": "BotE", "conclusion": "a", "premises": {"rule": "Assume"}})
    with pytest.raises(ValueError):
        proof_from_dict({"rule": ["DM"], "conclusion": "a"})


def _graft(node: ProofNode, path: tuple[int, ...], new: ProofNode) -> ProofNode:
    if not path:
        return new
    premises = list(node.premises)
    premises[path[0]] = _graft(premises[path[0]], path[1:], new)
    return replace(node, premises=tuple(premises))


def _paths(node: ProofNode, path: tuple[int, ...] = ()):
    yield path, node
    for index, premise in enumerate(node.premises):
        yield from _paths(premise, (*path, index))


def _closed_subproofs(root: ProofNode):
    for _, node in _paths(root):
        try:
            yield node, check(node)
        except ProofError:
            continue  # uses a hypothesis bound further down


def test_subproofs_can_be_swapped_locally():
    rng = Random(3)
    for proof in fuzz_derivations(seed=3, count=200, signature=SIGNATURE, max_depth=5):
        paths = list(_paths(proof.root))
        path, node = rng.choice(paths[1:] or paths)
        # the same conclusion by a detour, keeping every hypothesis leaf in place
        pair = ProofNode(Rule.AND_I, And(node.conclusion, TOP), (node, ProofNode(Rule.TOP_I, TOP)))
        detour = ProofNode(Rule.AND_E1, node.conclusion, (pair,))
        rechecked = check(_graft(proof.root, path, detour))
        assert rechecked.open_assumptions == proof.open_assumptions

        assumed = check(_graft(proof.root, path, ProofNode(Rule.ASSUME, node.conclusion)))
        assert assumed.conclusion == proof.conclusion
        assert node.conclusion in assumed.open_assumptions


def test_dm_and_negation_introduction_are_interchangeable():
    converted = 0
    for proof in fuzz_derivations(seed=5, count=300, signature=SIGNATURE, max_depth=5):
        for node, checked in _closed_subproofs(proof.root):
            if node.rule is Rule.DM and node.formula is not None:
                phi = node.formula
                swapped = ProofNode(
                    Rule.IMP_I, Imp(phi, BOT), node.premises, discharge=node.discharge
                )
            elif node.rule is Rule.IMP_I and node.conclusion.right == BOT:
                phi = node.conclusion.left
                swapped = ProofNode(
                    Rule.DM, dual(phi), node.premises, discharge=node.discharge, formula=phi
                )
            else:
                continue
            assert check(swapped).open_assumptions == checked.open_assumptions
            converted += 1
    assert converted >= 50
