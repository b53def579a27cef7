"""
Process fan-out of sweeps

Sweep items are independent matches or certificates. `fan_out` maps a
module-level worker over picklable tasks, either in this process or in a
pool of processes; results always come back in task order, so that tables
do not depend on the number of workers.
"""

import logging
import os

from concurrent.futures import ProcessPoolExecutor


logger = logging.getLogger(__name__)


def resolve_jobs(n_jobs=None):
    """
    Number of worker processes: None means 1, negative values count from
    the number of CPUs (-1 uses all of them).
    """

    if n_jobs is None or n_jobs == 0:
        return 1
    if n_jobs < 0:
        return max(1, (os.cpu_count() or 1) + 1 + n_jobs)
    return n_jobs


def fan_out(worker, tasks, n_jobs=None, chunksize=1):
    """
    Apply `worker` to every task.

    Args:
        worker: module-level function (it is pickled for the pool).
        tasks: iterable of picklable arguments.
        n_jobs: number of processes, see `resolve_jobs`.
        chunksize: tasks sent to a process at once.

    Returns:
        list of results, in the order of `tasks`.
    """

    tasks = list(tasks)
    jobs = min(resolve_jobs(n_jobs), max(1, len(tasks)))

    if jobs == 1:
        return [worker(task) for task in tasks]

    logger.info("Running %d tasks of `%s` on %d processes.", len(tasks),
                getattr(worker, "__name__", worker), jobs)

    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(worker, tasks, chunksize=chunksize))
