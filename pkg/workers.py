"""Order-preserving parallel map used by the enumerators."""
import logging
from multiprocessing import Pool

logger = logging.getLogger(__name__)

CHUNKS_PER_WORKER = 4


def parallel_map(fn, items, jobs=1):
    """[fn(x) for x in items], spread over `jobs` processes when jobs > 1

    fn must be picklable (a module-level function or a partial of one).
    Results keep the input order, so output never depends on jobs.
    """
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunksize = max(1, len(items) // (jobs * CHUNKS_PER_WORKER))
    logger.debug("mapping %d items over %d workers (chunksize %d)", len(items), jobs, chunksize)
    with Pool(processes=jobs) as pool:
        return pool.map(fn, items, chunksize=chunksize)
