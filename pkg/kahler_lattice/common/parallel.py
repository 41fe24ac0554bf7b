from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from kahler_lattice.common.logging_config import internal_logger

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], list[R]], items: Iterable[T], workers: int = 1) -> list[R]:
    """Run ``fn`` over disjoint search subtrees and concatenate the results.

    Results are gathered in submission order, so the merged list depends only
    on ``items``; callers still sort canonically before publishing.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [result for item in items for result in fn(item)]
    internal_logger.debug(f"Dispatching {len(items)} subtrees to {workers} workers")
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="kahler-search") as executor:
        chunks = list(executor.map(fn, items))
    return [result for chunk in chunks for result in chunk]
