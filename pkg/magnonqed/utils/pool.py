"""
Worker pool used to evaluate independent grid cells (scan points, sweep
cells). Results always come back in the order of the cells, whatever the
number of workers.
"""

import logging
from multiprocessing import Pool, cpu_count

from ..exceptions import MagnonQEDError

logger = logging.getLogger(__name__)


def available_jobs():
    """Number of workers used when none is requested"""
    return cpu_count() or 1


class Guarded:
    """Wrap a function so that a failing cell yields ``None`` and a log
    entry instead of aborting the whole grid. Only the errors of the
    library are caught.

    Args:
        func (callable): picklable function of one cell
    """
    def __init__(self, func):
        self.func = func

    def __call__(self, cell):
        try:
            return self.func(cell)
        except MagnonQEDError as error:
            logger.warning('Cell %s failed: %s', cell, error)
            return None


def map_grid(func, cells, jobs=1):
    """Evaluate ``func`` on every cell.

    Args:
        func (callable): picklable function of one cell
        cells (iterable): grid cells
        jobs (int, optional): number of worker processes. 1 evaluates in
            the current process; None uses all the available CPUs.
    Returns:
        list: one result per cell, in cell order
    """
    cells = list(cells)
    jobs = available_jobs() if jobs is None else jobs
    jobs = max(1, min(jobs, len(cells)))
    if jobs == 1:
        return [func(cell) for cell in cells]
    logger.info('Dispatching %s cells to %s workers', len(cells), jobs)
    with Pool(processes=jobs) as pool:
        return pool.map(func, cells)
