import os
from concurrent.futures import ProcessPoolExecutor

ENV_THREADS = "DIAMONDLAB_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(ENV_THREADS, "1")))
    except ValueError:
        return 1


def pmap(func, items, threads: int | None = None) -> list:
    """Order-preserving map; worker processes when threads > 1."""
    items = list(items)
    threads = default_threads() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(func, items, chunksize=max(1, len(items) // (4 * threads))))
