# coulombxs/utils/parallel.py
import logging
from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence, TypeVar

from coulombxs.core.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """
    Evaluate fn over the sweep points, in worker processes when threads > 1.
    Results come back in input order, so output does not depend on the worker count.
    `fn` must be a module-level function (it is pickled).
    """
    workers = min(threads or get_settings().threads, len(items))
    if workers <= 1:
        return [fn(item) for item in items]

    logger.info(f"Evaluating {len(items)} sweep points on {workers} workers")
    with Pool(processes=workers) as pool:
        return pool.map(fn, items, chunksize=1)
