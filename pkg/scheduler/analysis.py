from collections import defaultdict
from typing import Dict, List

from pydantic import BaseModel, ConfigDict

from core.errors import ScheduleError
from core.timebase import format_ms
from scheduler.models import ScheduleTable
from taskgraph.task_graph import TaskGraph


class DemandFigure(BaseModel):
    """Processor time a task graph asks for against what the platform offers over the horizon"""

    model_config = ConfigDict(frozen=True)

    name: str
    demand_us: int
    capacity_us: int

    @property
    def exceeded(self) -> bool:
        return self.demand_us > self.capacity_us

    def __str__(self) -> str:
        relation = ">" if self.exceeded else "<="
        return f"{self.name} {format_ms(self.demand_us)} ms {relation} {format_ms(self.capacity_us)} ms"


def demand(tg: TaskGraph, cores: int, delta_us: int) -> List[DemandFigure]:
    """
    Demand figures of a task graph on a platform

    On a single core every job needs its WCET plus four transitions. With an
    engine core, transitions and compute segments are accounted separately.

    Args:
        tg: Task graph over its horizon
        cores: Total core count
        delta_us: Cost of one engine transition

    Returns:
        One figure for a single core, two (engine, compute) otherwise
    """
    if cores < 1:
        raise ScheduleError(f"core count must be at least 1, got {cores}")
    compute = sum(job.wcet_us for job in tg.jobs)
    transitions = 4 * delta_us * len(tg.jobs)
    if cores == 1:
        return [DemandFigure(name="demand", demand_us=compute + transitions, capacity_us=tg.horizon_us)]
    return [
        DemandFigure(name="engine demand", demand_us=transitions, capacity_us=tg.horizon_us),
        DemandFigure(name="compute demand", demand_us=compute, capacity_us=tg.horizon_us * (cores - 1)),
    ]


def completion_times(table: ScheduleTable) -> Dict[str, int]:
    """End of the last entry of every scheduled job"""
    done: Dict[str, int] = {}
    for entry in table.entries:
        done[entry.label] = max(done.get(entry.label, 0), entry.end_us)
    return done


def makespan(table: ScheduleTable) -> int:
    return max((entry.end_us for entry in table.entries), default=0)


def period_completion(table: ScheduleTable, tg: TaskGraph, period_us: int) -> int:
    """
    Worst latency from the start of a period to the completion of the last job
    released in that period

    Raises:
        ScheduleError: If period_us does not divide the horizon
    """
    if period_us <= 0 or tg.horizon_us % period_us != 0:
        raise ScheduleError(f"period {format_ms(period_us)} ms does not divide the horizon {format_ms(tg.horizon_us)} ms")
    done = completion_times(table)
    latest: Dict[int, int] = defaultdict(int)
    for job in tg.jobs:
        if job.label not in done:
            continue
        index = job.arrival_us // period_us
        latest[index] = max(latest[index], done[job.label] - index * period_us)
    return max(latest.values(), default=0)
