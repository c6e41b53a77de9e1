import random
from typing import Optional, Sequence

from core.errors import ScheduleError
from core.models import NetworkModel
from core.timebase import format_ms
from scheduler.analysis import demand
from scheduler.engine import DispatchResult, RankPolicy, dispatch
from scheduler.models import EntryKind, ScheduleTable, Verdict, entry_sort_key
from scheduler.priority import priority_order
from taskgraph.task_graph import TaskGraph
from utils.logger import get_logger

logger = get_logger("list_scheduler")


def judge(tg: TaskGraph, result: DispatchResult, cores: int, delta_us: int) -> Verdict:
    """Feasible iff every job completes by its absolute deadline"""
    misses = sorted(
        (result.completion[job.label], job.label, job.deadline_us)
        for job in tg.jobs
        if result.completion.get(job.label, job.deadline_us + 1) > job.deadline_us
    )
    if not misses:
        return Verdict(feasible=True)
    for figure in demand(tg, cores, delta_us):
        if figure.exceeded:
            return Verdict(feasible=False, reason=str(figure))
    completed_at, label, deadline = misses[0]
    return Verdict(
        feasible=False,
        reason=f"deadline miss: {label} completes at {format_ms(completed_at)} ms > deadline {format_ms(deadline)} ms",
    )


def table_from_order(tg: TaskGraph, order: Sequence[str], cores: int, delta_us: int) -> ScheduleTable:
    """Dispatch jobs by rank in `order` on exactly `cores` cores and judge the result"""
    result = dispatch(tg, cores, delta_us, RankPolicy(order))
    return ScheduleTable(
        entries=tuple(result.entries),
        cores=cores,
        delta_us=delta_us,
        horizon_us=tg.horizon_us,
        verdict=judge(tg, result, cores, delta_us),
    )


def widen(table: ScheduleTable, cores: int) -> ScheduleTable:
    """
    Map a table onto a platform with more cores

    A single-core table keeps its transitions on core 0 and moves its compute
    segments to core 1; other tables keep their placement. The result records
    the narrower core count in dispatch_cores.
    """
    if cores < table.cores:
        raise ScheduleError(f"cannot narrow a {table.cores}-core table to {cores} cores")
    entries = table.entries
    if table.cores == 1 and cores >= 2:
        entries = tuple(sorted(
            (entry.model_copy(update={"core": 1}) if entry.kind == EntryKind.COMPUTE else entry for entry in entries),
            key=entry_sort_key,
        ))
    update = {"entries": entries, "cores": cores}
    if cores > table.cores:
        update["dispatch_cores"] = table.dispatch_cores or table.cores
    return table.model_copy(update=update)


def list_schedule(
    tg: TaskGraph,
    net: NetworkModel,
    cores: int,
    delta_us: int,
    rng: Optional[random.Random] = None,
) -> ScheduleTable:
    """
    Static non-preemptive list schedule of a task graph

    Jobs are dispatched by priority_order. When the table on `cores` cores misses
    a deadline, narrower platforms are tried and the first feasible table is mapped
    back onto `cores` cores; if none is feasible the `cores`-core table is returned
    with its infeasible verdict.

    Args:
        tg: Acyclic task graph
        net: Network the task graph was built from
        cores: Total core count, engine core included when >= 2
        delta_us: Cost of one engine transition
        rng: Random tie-breaking among equally ranked jobs

    Returns:
        ScheduleTable with verdict

    Raises:
        ScheduleError: On cores < 1, delta < 0 or a cyclic task graph
    """
    if cores < 1:
        raise ScheduleError(f"core count must be at least 1, got {cores}")
    if delta_us < 0:
        raise ScheduleError(f"delta must be non-negative, got {delta_us}")

    order = priority_order(tg, net, rng=rng)
    table = table_from_order(tg, order, cores, delta_us)
    if table.verdict.feasible:
        logger.debug(f"{cores} core(s), delta {delta_us} us: feasible")
        return table

    for narrower in range(cores - 1, 0, -1):
        candidate = table_from_order(tg, order, narrower, delta_us)
        if candidate.verdict.feasible:
            logger.debug(f"{cores} core(s) infeasible, reusing the {narrower}-core table")
            return widen(candidate, cores)

    logger.debug(f"{cores} core(s), delta {delta_us} us: {table.verdict}")
    return table


def min_cores(tg: TaskGraph, net: NetworkModel, delta_us: int, max_cores: int) -> Optional[int]:
    """
    Smallest total core count with a feasible list schedule

    Returns:
        The core count, or None when no count up to max_cores is feasible

    Raises:
        ScheduleError: If max_cores < 1
    """
    if max_cores < 1:
        raise ScheduleError(f"max cores must be at least 1, got {max_cores}")
    for cores in range(1, max_cores + 1):
        if list_schedule(tg, net, cores, delta_us).verdict.feasible:
            logger.info(f"Feasible with {cores} core(s) at delta {delta_us} us")
            return cores
    logger.info(f"No feasible core count up to {max_cores} at delta {delta_us} us")
    return None
