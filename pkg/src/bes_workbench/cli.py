"""The ``bes`` command line: one subcommand per workbench operation."""

import argparse
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, replace
from typing import Callable, Sequence

from .bases import (
    ABSURD,
    EMPTY_BASE,
    AtomicQuery,
    Base,
    Goal,
    format_base,
    load_base,
    parse_base,
)
from .calculus import ProofSystem, check, load_proof
from .config import DEFAULT_CONFIG, Config
from .constants import (
    DEFAULT_SEED,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    SEED_ENV_VAR,
)
from .corpus import CorpusSpec, run_corpus
from .derivation import derives, replay_trace
from .errors import (
    BaseSyntaxError,
    FormulaSyntaxError,
    NotInRangeError,
    PreconditionError,
    ProofError,
    ResourceLimitError,
    TautologyError,
)
from .fuzz import fuzz_derivations
from .parser import parse, parse_context
from .report import Record, RecordStatus, Report
from .semantics import consequence, equivalent, eval_formula, lindenbaum
from .simulation import build_simulation_base, format_map, pipeline
from .support import Mode, Status, SupportQuery, support
from .syntax import Bot, Content, Formula, Lit, Literal, dual, to_text, weight
from .utils import elapsed_ms

logger = logging.getLogger(__name__)

COMMANDS = (
    "parse",
    "dual",
    "weight",
    "taut",
    "entails",
    "equiv",
    "countermodel",
    "lindenbaum",
    "check-proof",
    "fuzz-proofs",
    "derive",
    "support",
    "simulate",
    "pipeline",
    "corpus",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    gamma: str = ""
    goal: str = ""
    other: str = ""
    base: str | None = None
    rules: str | None = None
    proof: str | None = None
    system: str = "nk"
    mode: str = "bounded"
    seed: int = DEFAULT_SEED
    depth: int = 2
    count: int | None = None
    contents: int = 1
    pool_depth: int | None = None
    pool_subrules: int | None = None
    pool_hypotheses: int | None = None
    max_pool_size: int | None = None
    max_contents: int | None = None
    max_universe: int | None = None
    intuitionistic: bool = False
    trace: bool = False
    cross_check: bool = True
    format: str = "text"

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"{self.command=} is not a bes command.")
        for name in (
            "depth",
            "contents",
            "count",
            "pool_subrules",
            "max_pool_size",
            "max_contents",
            "max_universe",
        ):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name}={value} must be positive.")
        for name in ("pool_depth", "pool_hypotheses"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name}={value} must not be negative.")

    def engine_config(self) -> Config:
        overrides = {
            name: value
            for name, value in (
                ("max_contents", self.max_contents),
                ("max_universe", self.max_universe),
                ("pool_depth", self.pool_depth),
                ("pool_max_subrules", self.pool_subrules),
                ("pool_max_hypotheses", self.pool_hypotheses),
                ("max_pool_size", self.max_pool_size),
            )
            if value is not None
        }
        return replace(DEFAULT_CONFIG, **overrides)

    def echo(self) -> dict[str, object]:
        return {key: value for key, value in asdict(self).items() if key != "format"}


def _formula(text: str, what: str = "--goal") -> Formula:
    if not text.strip():
        raise PreconditionError(f"{what} is required.")
    return parse(text)


def _literal_goal(phi: Formula) -> Goal:
    if isinstance(phi, Lit):
        return phi.literal
    if isinstance(phi, Bot):
        return ABSURD
    raise PreconditionError(f"{to_text(phi)} is neither a literal nor bot.")


def _literal_context(text: str) -> list[Literal]:
    literals = []
    for phi in parse_context(text):
        if not isinstance(phi, Lit):
            raise PreconditionError(f"{to_text(phi)} in --gamma is not a literal.")
        literals.append(phi.literal)
    return literals


def _load_base(cfg: RunConfig) -> Base:
    if cfg.base:
        return load_base(cfg.base)
    if cfg.rules:
        return parse_base(cfg.rules.replace(";", "\n"))
    return EMPTY_BASE


def _sequent_input(gamma: Sequence[Formula], goal: Formula) -> dict[str, object]:
    return {"gamma": ", ".join(map(to_text, gamma)), "goal": to_text(goal)}


# ---- commands ----


def cmd_parse(cfg: RunConfig, config: Config, report: Report) -> bool:
    phi = _formula(cfg.goal)
    report.add(Record("parse", {"goal": cfg.goal}, to_text(phi)))
    return True


def cmd_dual(cfg: RunConfig, config: Config, report: Report) -> bool:
    phi = _formula(cfg.goal)
    report.add(Record("dual", {"goal": to_text(phi)}, to_text(dual(phi))))
    return True


def cmd_weight(cfg: RunConfig, config: Config, report: Report) -> bool:
    phi = _formula(cfg.goal)
    report.add(Record("weight", {"goal": to_text(phi)}, weight(phi)))
    return True


def _entailment(
    command: str, gamma: list[Formula], goal: Formula, config: Config, report: Report
) -> bool:
    verdict = consequence(gamma, goal, config)
    witness = None if verdict.witness is None else str(verdict.witness)
    report.add(Record(command, _sequent_input(gamma, goal), verdict.holds, witness=witness))
    return verdict.holds


def cmd_taut(cfg: RunConfig, config: Config, report: Report) -> bool:
    return _entailment("taut", [], _formula(cfg.goal), config, report)


def cmd_entails(cfg: RunConfig, config: Config, report: Report) -> bool:
    return _entailment("entails", parse_context(cfg.gamma), _formula(cfg.goal), config, report)


def cmd_equiv(cfg: RunConfig, config: Config, report: Report) -> bool:
    phi, psi = _formula(cfg.goal), _formula(cfg.other, "--other")
    holds = equivalent(phi, psi, config)
    report.add(Record("equiv", {"goal": to_text(phi), "other": to_text(psi)}, holds))
    return holds


def cmd_countermodel(cfg: RunConfig, config: Config, report: Report) -> bool:
    gamma, goal = parse_context(cfg.gamma), _formula(cfg.goal)
    witness = consequence(gamma, goal, config).witness
    verdict = None if witness is None else str(witness)
    report.add(Record("countermodel", _sequent_input(gamma, goal), verdict))
    return witness is not None


def cmd_lindenbaum(cfg: RunConfig, config: Config, report: Report) -> bool:
    phi = _formula(cfg.goal)
    result = lindenbaum(phi, cfg.depth, config)
    falsified = eval_formula(result.valuation, phi) == 0
    report.add(
        Record(
            "lindenbaum",
            {"goal": to_text(phi), "depth": cfg.depth},
            str(result.valuation),
            status=RecordStatus.PASS if falsified else RecordStatus.FAIL,
            witness={
                "delta": [to_text(psi) for psi in result.delta],
                "decided": {to_text(psi): side.value for psi, side in result.decided},
            },
        )
    )
    return falsified


def cmd_check_proof(cfg: RunConfig, config: Config, report: Report) -> bool:
    if not cfg.proof:
        raise PreconditionError("--proof is required.")
    system = ProofSystem.NJ if cfg.system == "nj" else ProofSystem.NK_PM
    node = load_proof(cfg.proof)
    inputs = {"proof": cfg.proof, "system": system.value}
    try:
        checked = check(node, system)
    except ProofError as error:
        report.add(
            Record(
                "check-proof",
                inputs,
                None,
                status=RecordStatus.FAIL,
                extra={"error": type(error).__name__, "message": str(error)},
            )
        )
        return False
    report.add(
        Record(
            "check-proof",
            inputs,
            to_text(checked.conclusion),
            witness={
                "open_assumptions": [to_text(phi) for phi in checked.open_assumptions],
                "height": checked.root.height,
            },
        )
    )
    return True


def cmd_fuzz_proofs(cfg: RunConfig, config: Config, report: Report) -> bool:
    signature = [Content(chr(ord("a") + i)) for i in range(cfg.contents)]
    proofs = fuzz_derivations(cfg.seed, cfg.count or 100, signature, cfg.depth)
    for index, proof in enumerate(proofs):
        sound = consequence(proof.open_assumptions, proof.conclusion, config).holds
        report.add(
            Record(
                "fuzz-proofs",
                {"index": index, **_sequent_input(proof.open_assumptions, proof.conclusion)},
                sound,
                status=RecordStatus.PASS if sound else RecordStatus.FAIL,
                extra={"classical": proof.root.uses_classical_rules()},
            )
        )
    return report.ok


def cmd_derive(cfg: RunConfig, config: Config, report: Report) -> bool:
    b = _load_base(cfg)
    query = AtomicQuery.of(_literal_context(cfg.gamma), _literal_goal(_formula(cfg.goal)))
    answer = derives(
        b, query, classical=not cfg.intuitionistic, trace=cfg.trace, config=config
    )
    status = RecordStatus.PASS
    extra: dict[str, object] = {}
    if cfg.trace and answer.trace is not None:
        extra["trace_steps"] = len(answer.trace)
        if not replay_trace(b, query, answer):
            status = RecordStatus.FAIL
    witness = None
    if answer.countermodel is not None:
        witness = sorted(map(str, answer.countermodel))
    report.add(
        Record(
            "derive",
            {
                "base": cfg.base or cfg.rules or "",
                "gamma": ", ".join(map(str, sorted(query.context))),
                "goal": str(query.goal),
            },
            answer.derivable,
            status=status,
            mode="intuitionistic" if cfg.intuitionistic else "classical",
            witness=witness,
            extra=extra,
        )
    )
    return answer.derivable


def cmd_support(cfg: RunConfig, config: Config, report: Report) -> bool:
    gamma, goal = parse_context(cfg.gamma), _formula(cfg.goal)
    query = SupportQuery.of(gamma, goal, _load_base(cfg))
    verdict = support(query, Mode(cfg.mode), config)
    status = RecordStatus.UNKNOWN if verdict.status is Status.UNKNOWN else RecordStatus.PASS
    report.add(
        Record(
            "support",
            {"base": cfg.base or cfg.rules or "", **_sequent_input(gamma, goal)},
            verdict.status.value,
            status=status,
            mode=verdict.mode_label,
            witness=None if verdict.witness is None else verdict.witness.describe(),
        )
    )
    return verdict.status is Status.SUPPORTED


def cmd_simulate(cfg: RunConfig, config: Config, report: Report) -> bool:
    gamma, goal = parse_context(cfg.gamma), _formula(cfg.goal)
    sb = build_simulation_base(gamma, goal)
    report.add(
        Record(
            "simulate",
            _sequent_input(gamma, goal),
            {
                "base": format_base(sb.base).splitlines(),
                "map": {str(literal): to_text(phi) for literal, phi in sb.map.items()},
            },
        )
    )
    report.body = f"{format_base(sb.base)}\n{format_map(sb.map)}"
    return True


def cmd_pipeline(cfg: RunConfig, config: Config, report: Report) -> bool:
    gamma, goal = parse_context(cfg.gamma), _formula(cfg.goal)
    result = pipeline(gamma, goal, config)
    report.add(
        Record(
            "pipeline",
            _sequent_input(gamma, goal),
            {"semantic": result.semantic, "simulated": result.simulated, "agree": result.agree},
            status=RecordStatus.PASS if result.agree else RecordStatus.FAIL,
            extra={"universe": result.universe, "rules": result.rules},
        )
    )
    return result.agree and result.semantic


def cmd_corpus(cfg: RunConfig, config: Config, report: Report) -> bool:
    spec = CorpusSpec(
        contents=cfg.contents,
        depth=cfg.depth,
        count=cfg.count,
        seed=cfg.seed,
        cross_check=cfg.cross_check,
    )
    report.records.extend(run_corpus(spec, config).records)
    return report.ok


HANDLERS: dict[str, Callable[[RunConfig, Config, Report], bool]] = {
    "parse": cmd_parse,
    "dual": cmd_dual,
    "weight": cmd_weight,
    "taut": cmd_taut,
    "entails": cmd_entails,
    "equiv": cmd_equiv,
    "countermodel": cmd_countermodel,
    "lindenbaum": cmd_lindenbaum,
    "check-proof": cmd_check_proof,
    "fuzz-proofs": cmd_fuzz_proofs,
    "derive": cmd_derive,
    "support": cmd_support,
    "simulate": cmd_simulate,
    "pipeline": cmd_pipeline,
    "corpus": cmd_corpus,
}


def _exit_code(error: Exception) -> int:
    if isinstance(error, ResourceLimitError):
        return EXIT_RESOURCE
    if isinstance(error, TautologyError):
        return EXIT_NEGATIVE
    if isinstance(
        error,
        (
            FormulaSyntaxError,
            BaseSyntaxError,
            PreconditionError,
            NotInRangeError,
            ValueError,
            OSError,
        ),
    ):
        return EXIT_USAGE
    # malformed input that slipped past validation, or an internal invariant
    logger.error("unexpected %s: %s", type(error).__name__, error, exc_info=error)
    return EXIT_NEGATIVE


def run(cfg: RunConfig) -> tuple[int, Report]:
    started = time.perf_counter()
    report = Report(cfg.command, cfg.echo())
    try:
        config = cfg.engine_config()
        positive = HANDLERS[cfg.command](cfg, config, report)
        code = EXIT_OK if positive and report.ok else EXIT_NEGATIVE
    except Exception as error:
        code = _exit_code(error)
        logger.debug("%s failed", cfg.command, exc_info=True)
        report.add(
            Record(
                cfg.command,
                {"gamma": cfg.gamma, "goal": cfg.goal},
                None,
                status=RecordStatus.FAIL,
                extra={"error": type(error).__name__, "message": str(error)},
            )
        )
    report.elapsed_ms = elapsed_ms(started)
    return code, report


# ---- argument parsing ----


def _default_seed() -> int:
    value = os.environ.get(SEED_ENV_VAR)
    if value is None:
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        logger.warning("ignoring %s=%r, not an integer", SEED_ENV_VAR, value)
        return DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", default="", help="comma-separated context formulae")
    common.add_argument("--goal", default="", help="goal formula")
    common.add_argument("--other", default="", help="second formula for equiv")
    common.add_argument("--base", default=None, help="base file")
    common.add_argument("--rules", default=None, help="inline base, rules separated by ';'")
    common.add_argument("--proof", default=None, help="proof script (json)")
    common.add_argument("--system", choices=("nk", "nj"), default="nk")
    common.add_argument("--mode", choices=[mode.value for mode in Mode], default="bounded")
    common.add_argument("--seed", type=int, default=_default_seed())
    common.add_argument("--depth", type=int, default=2)
    common.add_argument("--count", type=int, default=None)
    common.add_argument("--contents", type=int, default=1)
    common.add_argument("--pool-depth", type=int, default=None)
    common.add_argument(
        "--pool-subrules", type=int, default=None, help="max subrules per pool rule"
    )
    common.add_argument(
        "--pool-hypotheses", type=int, default=None, help="max hypotheses per subrule"
    )
    common.add_argument("--max-pool-size", type=int, default=None)
    common.add_argument("--max-contents", type=int, default=None)
    common.add_argument("--max-universe", type=int, default=None)
    common.add_argument("--intuitionistic", action="store_true")
    common.add_argument(
        "--trace", action="store_true", help="record and replay the derivation trace"
    )
    common.add_argument("--no-cross-check", dest="cross_check", action="store_false")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="bes", description="Literal-based classical logic workbench"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common])
    return parser


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    configure_logging(args.pop("verbose"))
    try:
        cfg = RunConfig(**args)
    except ValueError as error:
        parser.error(str(error))
    code, report = run(cfg)
    print(report.to_json() if cfg.format == "json" else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
