from typing import Iterator, List, Optional, Tuple

import networkx as nx

from core.errors import ScheduleError
from core.models import NetworkModel
from scheduler.engine import FixedPolicy, compute_cores, dispatch
from scheduler.list_scheduler import judge, widen
from scheduler.models import ScheduleTable
from taskgraph.task_graph import TaskGraph
from utils.logger import get_logger

logger = get_logger("oracle")

MAX_ORACLE_JOBS = 6


def _assignments(length: int, cores: List[int]) -> Iterator[Tuple[int, ...]]:
    """Core sequences up to renaming of identical cores: a new core is always the lowest unused one"""

    def grow(prefix: Tuple[int, ...], used: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for index in range(min(used + 1, len(cores))):
            yield from grow(prefix + (cores[index],), max(used, index + 1))

    yield from grow((), 0)


def oracle_feasible(
    tg: TaskGraph,
    net: NetworkModel,
    cores: int,
    delta_us: int,
    max_jobs: int = MAX_ORACLE_JOBS,
) -> Optional[ScheduleTable]:
    """
    Exhaustive search for a feasible non-preemptive table

    Tries every topological dispatch order with every core assignment on 1..cores
    cores, using the same dispatch rules as the list scheduler.

    Args:
        tg: Task graph with at most max_jobs jobs
        net: Network of the task graph
        cores: Total core count
        delta_us: Cost of one engine transition
        max_jobs: Size limit of the search

    Returns:
        The first feasible table found, mapped onto `cores` cores, or None

    Raises:
        ScheduleError: If the task graph has more than max_jobs jobs
    """
    if len(tg.jobs) > max_jobs:
        raise ScheduleError(f"oracle is limited to {max_jobs} jobs, task graph has {len(tg.jobs)}")
    if cores < 1:
        raise ScheduleError(f"core count must be at least 1, got {cores}")

    graph = tg.graph()
    explored = 0
    for width in range(1, cores + 1):
        for sequence in nx.all_topological_sorts(graph):
            for assignment in _assignments(len(sequence), compute_cores(width)):
                explored += 1
                policy = FixedPolicy(sequence, dict(zip(sequence, assignment)))
                try:
                    result = dispatch(tg, width, delta_us, policy)
                except ScheduleError:
                    continue
                if len(result.completion) != len(tg.jobs):
                    continue
                verdict = judge(tg, result, width, delta_us)
                if verdict.feasible:
                    logger.debug(f"Oracle found a feasible table on {width} core(s) after {explored} candidate(s)")
                    table = ScheduleTable(
                        entries=tuple(result.entries), cores=width, delta_us=delta_us,
                        horizon_us=tg.horizon_us, verdict=verdict,
                    )
                    return widen(table, cores)
    logger.debug(f"Oracle exhausted {explored} candidate(s) without a feasible table")
    return None
