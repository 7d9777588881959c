import logging
import string
import time
from dataclasses import asdict, dataclass
from random import Random
from typing import Iterator

from .config import DEFAULT_CONFIG, Config
from .report import Record, RecordStatus, Report
from .simulation import pipeline
from .support import Mode, Status, SupportQuery, support
from .syntax import Content, Formula, enumerate_formulas, random_formula, to_text
from .utils import elapsed_ms

logger = logging.getLogger(__name__)

Sequent = tuple[tuple[Formula, ...], Formula]


@dataclass(frozen=True)
class CorpusSpec:
    contents: int = 1
    depth: int = 2
    # None enumerates every sequent; otherwise that many seeded random ones
    count: int | None = None
    seed: int = 0
    max_context: int = 2
    cross_check: bool = True

    def __post_init__(self) -> None:
        if not 1 <= self.contents <= len(string.ascii_lowercase):
            raise ValueError(f"{self.contents=} must be between 1 and 26.")
        if self.depth < 1:
            raise ValueError(f"{self.depth=} must be positive.")
        if self.count is not None and self.count < 0:
            raise ValueError(f"{self.count=} must not be negative.")

    @property
    def exhaustive(self) -> bool:
        return self.count is None

    def signature(self) -> list[Content]:
        return [Content(name) for name in string.ascii_lowercase[: self.contents]]


def generate_sequents(spec: CorpusSpec) -> Iterator[Sequent]:
    """Sequents for ``spec``.

    Exhaustive mode pairs every goal up to ``depth`` with the empty context
    and with every one-formula context.
    """
    signature = spec.signature()
    if spec.exhaustive:
        formulae = enumerate_formulas(signature, spec.depth)
        contexts: list[tuple[Formula, ...]] = [(), *((phi,) for phi in formulae)]
        for context in contexts:
            for goal in formulae:
                yield context, goal
        return

    rng = Random(spec.seed)
    for _ in range(spec.count or 0):
        size = rng.randint(0, spec.max_context)
        context = tuple(random_formula(rng, signature, spec.depth) for _ in range(size))
        yield context, random_formula(rng, signature, spec.depth)


def _record(gamma: tuple[Formula, ...], goal: Formula, spec: CorpusSpec, config: Config) -> Record:
    result = pipeline(gamma, goal, config)
    verdict: dict[str, object] = {
        "semantic": result.semantic,
        "simulated": result.simulated,
        "agree": result.agree,
    }
    status = RecordStatus.PASS if result.agree else RecordStatus.FAIL
    mode = None
    if spec.cross_check:
        bounded = support(SupportQuery.of(gamma, goal), Mode.BOUNDED, config)
        verdict["support"] = bounded.status.value
        mode = bounded.mode_label
        if result.semantic and bounded.status is Status.REFUTED:
            status = RecordStatus.FAIL
        elif status is RecordStatus.PASS and bounded.status is Status.UNKNOWN:
            status = RecordStatus.UNKNOWN
    return Record(
        command="corpus",
        input={"gamma": ", ".join(map(to_text, gamma)), "goal": to_text(goal)},
        verdict=verdict,
        status=status,
        mode=mode,
    )


def run_corpus(spec: CorpusSpec, config: Config = DEFAULT_CONFIG) -> Report:
    started = time.perf_counter()
    report = Report("corpus", {"corpus": asdict(spec), "pool_depth": config.pool_depth})
    for number, (gamma, goal) in enumerate(generate_sequents(spec), start=1):
        report.add(_record(gamma, goal, spec, config))
        if number % 500 == 0:
            logger.info("corpus: %d sequents done", number)
    report.elapsed_ms = elapsed_ms(started)
    logger.info("corpus: %s", report.summary)
    return report
