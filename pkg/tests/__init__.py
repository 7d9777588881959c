import json
from functools import wraps
from typing import Any, Callable, ParamSpec, TypeVar

from src.bes_workbench.config import Config
from src.bes_workbench.parser import parse
from src.bes_workbench.report import Report

config = Config(max_contents=8, max_universe=64, max_oracle_universe=10)

PEIRCE = parse("((a -> b) -> a) -> a")
EXCLUDED_MIDDLE = parse("a | a-")
CONTRADICTION = parse("a & a-")

P = ParamSpec("P")
R = TypeVar("R")


def _comparable(value: Any) -> Any:
    if isinstance(value, Report):
        data = value.to_dict()
        data.pop("elapsed_ms")
        return json.dumps(data, sort_keys=True)
    return value


def assert_reproducible(func: Callable[P, R]) -> Callable[P, None]:
    """
    Decorator to assert that a seeded test produces the same result
    when run twice. Reports are compared as json without ``elapsed_ms``.

    Usage:
        @assert_reproducible
        def test_something():
            return run_something(seed=7)
    """

    @wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> None:
        first = func(*args, **kwargs)
        second = func(*args, **kwargs)
        assert _comparable(first) == _comparable(second), "Seeded run not reproducible"

    return wrapper
