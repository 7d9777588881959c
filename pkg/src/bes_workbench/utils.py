import time
from itertools import combinations
from typing import Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")


def elapsed_ms(started: float) -> int:
    """Milliseconds since ``started``, a ``time.perf_counter()`` reading."""
    return int((time.perf_counter() - started) * 1000)


def fresh_name(prefix: str, taken: Iterable[str], start: int = 1) -> str:
    """The first ``prefix<n>`` (n >= start) not in ``taken``.

    ``start=0`` tries the bare prefix first.
    """
    taken = set(taken)
    if start == 0 and prefix not in taken:
        return prefix
    index = max(start, 1)
    while f"{prefix}{index}" in taken:
        index += 1
    return f"{prefix}{index}"


def subsets_smallest_first(items: Sequence[T], max_size: int) -> Iterator[tuple[T, ...]]:
    for size in range(0, min(max_size, len(items)) + 1):
        yield from combinations(items, size)
