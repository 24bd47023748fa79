import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List

from memkern.resource.config import MemkernEnv

logger = logging.getLogger(__name__)


def worker_count(requested: int = None) -> int:
    """
    Number of workers allowed for a pool, capped by MEMKERN_THREADS
    :param requested: optional requested count
    :return: int >= 1
    """
    cap = MemkernEnv().build()["threads"]
    if cap <= 0:
        cap = os.cpu_count() or 1
    if requested is None:
        return cap
    return max(1, min(int(requested), cap))


def ordered_map(fn: Callable, items: Iterable, workers: int = 1) -> List:
    """
    Apply fn to every item, returning results in input order
    :param fn: callable
    :param items: iterable of arguments
    :param workers: requested worker count; 1 runs inline
    :return: list
    """
    items = list(items)
    workers = worker_count(workers)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug("ordered_map(): %d items on %d workers", len(items), workers)
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(fn, items))
